#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "mldeg/numeric.hpp"

namespace mldeg {

// Reproducibility handle: the same seed yields bit-identical sampled
// coefficients, liftings and start points across runs and platforms.
struct RandomSeed {
    uint64_t value = 0;
};

// Deterministic random stream. mt19937_64 output is fixed by the standard;
// all distributions below are hand-rolled from raw draws so results do not
// depend on the standard library implementation.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed);
    explicit SeededRng(RandomSeed seed) : SeededRng(seed.value) {}

    // Independent stream for a named purpose derived from the same seed.
    SeededRng derive(std::string_view tag, uint64_t salt = 0) const;

    uint64_t next_u64();
    // Inclusive bounds, unbiased.
    int64_t uniform_int(int64_t lo, int64_t hi);
    // Half-open [lo, hi), 53-bit resolution.
    double uniform_real(double lo, double hi);
    // Uniform on the complex unit circle.
    Complex unit_circle();

    uint64_t base_seed() const { return base_seed_; }

private:
    uint64_t base_seed_;
    std::mt19937_64 gen_;
};

}  // namespace mldeg
