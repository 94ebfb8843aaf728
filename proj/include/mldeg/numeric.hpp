#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mldeg {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

// Error taxonomy, mapped onto CLI exit codes: InputError -> 1,
// ComputationAnomaly -> 2, InternalError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : Error {
    using Error::Error;
};
struct ComputationAnomaly : Error {
    using Error::Error;
};
struct InternalError : Error {
    using Error::Error;
};

// Always-on invariant check; failure means a bug, not bad input.
#define MLDEG_CHECK(cond, msg)                                 \
    do {                                                       \
        if (!(cond)) throw ::mldeg::InternalError(msg);        \
    } while (0)

// Accepts "p/q", integer literals and plain decimals ("-3", "0.25").
BigRat parse_rational(const std::string& text);

// Canonical form: "p" or "p/q" with q > 1.
std::string format_rational(const BigRat& value);

// Exact dyadic rational equal to the given double. Throws on non-finite input.
BigRat rational_from_double(double x);

double rational_to_double(const BigRat& value);

int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

uint64_t fnv1a64(const void* data, std::size_t len);
uint64_t fnv1a64(const std::string& text);
std::string to_hex(uint64_t value);

BigInt factorial(int n);

}  // namespace mldeg
