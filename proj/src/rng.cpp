#include "mldeg/rng.hpp"

#include <cmath>

namespace mldeg {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

SeededRng::SeededRng(uint64_t seed) : base_seed_(seed), gen_(splitmix64(seed)) {}

SeededRng SeededRng::derive(std::string_view tag, uint64_t salt) const {
    uint64_t mix = fnv1a64(tag.data(), tag.size());
    mix = splitmix64(mix + salt * 0x9e3779b97f4a7c15ull);
    return SeededRng(base_seed_ ^ mix);
}

uint64_t SeededRng::next_u64() {
    return gen_();
}

int64_t SeededRng::uniform_int(int64_t lo, int64_t hi) {
    MLDEG_CHECK(lo <= hi, "uniform_int: empty range");
    const uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    if (span == 0) return static_cast<int64_t>(next_u64());  // full 64-bit range
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t draw;
    do {
        draw = next_u64();
    } while (draw >= limit);
    return lo + static_cast<int64_t>(draw % span);
}

double SeededRng::uniform_real(double lo, double hi) {
    const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

Complex SeededRng::unit_circle() {
    const double angle = uniform_real(0.0, 2.0 * M_PI);
    return Complex(std::cos(angle), std::sin(angle));
}

}  // namespace mldeg
