#pragma once

#include <array>
#include <vector>

#include "mldeg/ml_system.hpp"
#include "mldeg/polytope.hpp"

namespace mldeg {

// Trichotomy of the faces a weight vector can expose on the common Newton
// polytope P of the multiplier equations, valid when the full monomial
// divides every model polynomial. The face is, after restricting to the
// active equations, either the origin, a mix of shifted model faces, or that
// mix together with the origin.
enum class FaceTag { Origin, PureFaceMix, MixedWithOrigin };

struct FaceCase {
    FaceTag tag = FaceTag::Origin;
    std::vector<int> active;   // model equation indices attaining the minimum
    BigInt gamma;              // common value b_j + val(f_j) on the active set
    BigInt value;              // min over P of <w, .>
    std::vector<LatticePoint> face_vertices;  // reconstructed exposed face of P

    int t() const { return static_cast<int>(active.size()); }
    int case_number() const {
        switch (tag) {
            case FaceTag::Origin: return 1;
            case FaceTag::PureFaceMix: return 2;
            default: return 3;
        }
    }
};

// Requires the system in divisible (hat) form and a nonzero weight vector of
// length n+k.
FaceCase classify_face(const MLSystem& system, const WeightVector& w);

// Componentwise initial polynomials of all n+k equations.
std::vector<SparsePolynomial> initial_ml_system(const MLSystem& system,
                                                const WeightVector& w);

// Exact certificate that the term-matrix of the active initial equations has
// a nontrivial left kernel: the vector (a_1..a_n, -val(f_j) over actives).
struct KernelCertificate {
    std::vector<BigInt> kernel_vector;            // length n + t
    std::vector<std::vector<int64_t>> matrix;     // (n + t) x (M_1 + ... + M_t)
    int n = 0;
    int t = 0;
    std::size_t columns() const { return matrix.empty() ? 0 : matrix[0].size(); }
};

// Requires classify_face(system, w) to land in the mixed-with-origin case and
// the x-part of w to be nonzero (the zero x-part case is excluded by a
// separate argument and rejected here). The certificate is verified exactly
// before it is returned.
KernelCertificate case3_kernel_certificate(const MLSystem& system, const WeightVector& w);

struct WeightClassRow {
    std::vector<int64_t> w;
    int case_number = 0;
    int t = 0;
    BigInt gamma;
};

struct WeightScan {
    int radius = 0;
    std::vector<WeightClassRow> rows;
    std::array<long, 3> counts = {0, 0, 0};
};

// Classifies every nonzero integer weight vector with max-norm at most
// radius; every vector lands in exactly one case.
WeightScan scan_weight_vectors(const MLSystem& system, int radius);

}  // namespace mldeg
