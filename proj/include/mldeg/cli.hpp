#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mldeg {

// Batch command-line driver. Reports are JSON on `out` (or --out <file>);
// diagnostics go to `err`. Exit codes: 0 success, 1 usage or input error,
// 2 computation anomaly (count/mixed-volume disagreement after retry, lifting
// retries exhausted), 3 internal invariant violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mldeg
