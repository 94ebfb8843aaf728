#pragma once

#include <map>
#include <vector>

#include "mldeg/polytope.hpp"
#include "mldeg/rng.hpp"

namespace mldeg {

// Raised when the two mixed-volume engines disagree: an implementation bug,
// never silently resolved (CLI exit code 3).
struct EngineDisagreement : InternalError {
    using InternalError::InternalError;
};

// Mixed volume of d polytopes in d-space via inclusion-exclusion over exact
// Euclidean volumes of Minkowski subset sums. Normalized so that d standard
// simplices give 1; the result is a nonnegative integer on lattice polytopes.
BigInt mixed_volume_ie(const std::vector<LatticePolytope>& polytopes);

struct LiftedSupport {
    MonomialSupport base;
    std::vector<int64_t> lift;  // aligned with base.exponents (sorted order)
};

struct MixedCell {
    // One edge per support, indexed like the input support list.
    std::vector<std::pair<Exponent, Exponent>> edges;
    std::vector<BigRat> normal;  // gamma; the lifted inner normal is (gamma, 1)
    BigInt det;                  // |det| of the edge direction matrix, >= 1
};

struct MixedSubdivision {
    std::vector<MixedCell> cells;
    BigInt total;  // sum of cell determinants
    std::vector<LiftedSupport> lifting;
    uint64_t lifting_seed = 0;
    int attempts = 1;  // liftings drawn until a fine subdivision appeared
};

// Random integer lifting in [0, 2^16); enumerates all edge tuples whose
// lifted Minkowski sum is a lower-hull facet, certified by exact rational LP
// feasibility. Non-fine liftings are resampled up to a retry budget.
MixedSubdivision mixed_cells(const std::vector<MonomialSupport>& supports, RandomSeed seed);

// Same enumeration with lifting values in [0, lift_bound]. The solver uses a
// small bound: the subdivision is identical in distribution, but the decay
// weights of the induced homotopies stay within a few decades, which keeps
// the paths trackable. Fineness failures are resampled as usual.
MixedSubdivision mixed_cells(const std::vector<MonomialSupport>& supports, RandomSeed seed,
                             int64_t lift_bound);

// Runs both engines and returns the common value; throws EngineDisagreement
// otherwise. Polytopes must be the hulls of the supports.
BigInt mixed_volume_cross_check(const std::vector<LatticePolytope>& polytopes,
                                const std::vector<MonomialSupport>& supports,
                                RandomSeed seed);
BigInt mixed_volume_cross_check(const std::vector<MonomialSupport>& supports,
                                RandomSeed seed);

}  // namespace mldeg
