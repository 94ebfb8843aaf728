#pragma once

#include <optional>
#include <string>

#include "mldeg/polynomial.hpp"

namespace mldeg {

struct ParsedSystem {
    PolynomialSystem system;
    std::optional<DataVector> data;
    std::optional<uint64_t> seed;
};

// Parses the JSON system document:
//   {"n": <int>,
//    "polynomials": [{"terms": [{"exponent": [<int>,...],
//                                "re": "<rational>", "im": "<rational>"}, ...]}, ...],
//    "u": [<decimal string>, ...]   (optional),
//    "seed": <uint64>               (optional)}
// Rational strings are "p/q", integer or decimal literals; raw JSON numbers
// are accepted and converted exactly. Errors name the offending polynomial.
ParsedSystem parse_system(const std::string& json_text);

// Emits the same schema; terms are sorted lexicographically by exponent and
// coefficients are written in exact rational form, so parse . serialize is the
// identity on the exact representation.
std::string serialize_system(const PolynomialSystem& system,
                             const std::optional<DataVector>& data = std::nullopt,
                             std::optional<uint64_t> seed = std::nullopt);

}  // namespace mldeg
