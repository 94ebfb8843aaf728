#pragma once

#include <string>
#include <vector>

#include "mldeg/mixed_volume.hpp"
#include "mldeg/polynomial.hpp"
#include "mldeg/polytope.hpp"

namespace mldeg {

// CLI warns when the total number of variables exceeds this; the subset-sum
// engine costs 2^(n+k) hull computations.
inline constexpr int kDeskScaleDimension = 6;

// The square critical system of the log-likelihood problem for the model F
// and data u: equations l_1..l_n, f_1..f_k in the variables
// (x_1..x_n, lambda_1..lambda_k), with l_i = u_i - x_i sum_j lambda_j d f_j / d x_i.
struct MLSystem {
    PolynomialSystem source;                  // F, in the x-variables only
    std::vector<SparsePolynomial> equations;  // n+k polynomials in n+k variables
    int n = 0;
    int k = 0;
    DataVector u;

    int total_dim() const { return n + k; }
    std::vector<MonomialSupport> supports() const;
};

MLSystem build_ml_system(const PolynomialSystem& model, const DataVector& u);

// Point of the ambient torus, coordinates split as (x, lambda).
struct TorusPoint {
    std::vector<Complex> coordinates;
    int n = 0;  // split position

    std::vector<Complex> x() const {
        return {coordinates.begin(), coordinates.begin() + n};
    }
    std::vector<Complex> lambda() const {
        return {coordinates.begin() + n, coordinates.end()};
    }
};

enum class RescaleDirection { Forward, Inverse };

// Forward divides every lambda coordinate by the product of the x
// coordinates; inverse multiplies. Both require a true torus point.
TorusPoint lambda_rescale(const TorusPoint& point, RescaleDirection direction);

struct MLDegreeResult {
    BigInt value;
    bool model_generically_empty = false;  // k > n
    std::string warning;                   // empty when nothing to report
    uint64_t lifting_seed = 0;
};

// Mixed volume of the n+k Newton polytopes of the critical system, computed
// with both engines cross-checked. k > n short-circuits to zero.
MLDegreeResult ml_degree_mixed_volume(const PolynomialSystem& model, const DataVector& u,
                                      RandomSeed seed);

// Unimodular map (x-part += sum of lambda-part) applied to every equation's
// Newton polytope.
std::vector<LatticePolytope> shear_polytopes(const MLSystem& system);
LatticePoint shear_point(const LatticePoint& point, int n, int k);

// Substitutes x_i -> t_i x_i with random nonzero t, preserving all supports.
PolynomialSystem rescale_for_simplex_constraint(const PolynomialSystem& model,
                                                RandomSeed seed);

}  // namespace mldeg
