#pragma once

#include <cstdint>
#include <vector>

#include "mldeg/numeric.hpp"
#include "mldeg/polynomial.hpp"

namespace mldeg {

using LatticePoint = std::vector<int64_t>;

struct WeightVector {
    std::vector<int64_t> entries;

    bool is_zero() const {
        for (int64_t v : entries)
            if (v != 0) return false;
        return true;
    }
};

// Convex hull of a finite set of lattice points, all arithmetic exact.
// Lower-dimensional polytopes are first class: their Euclidean volume is 0
// and faces remain computable. Construction is eager; instances are
// immutable afterwards and safe to share across threads.
class LatticePolytope {
public:
    explicit LatticePolytope(std::vector<LatticePoint> generators);

    int ambient_dim() const { return ambient_dim_; }
    int affine_dim() const { return affine_dim_; }
    // Deduplicated generators, lexicographically sorted.
    const std::vector<LatticePoint>& points() const { return points_; }
    // Extreme points, lexicographically sorted. Every vertex is a generator.
    const std::vector<LatticePoint>& vertices() const { return vertices_; }
    // Exact Euclidean volume; 0 when affine_dim < ambient_dim.
    const BigRat& volume() const { return volume_; }

private:
    int ambient_dim_ = 0;
    int affine_dim_ = 0;
    std::vector<LatticePoint> points_;
    std::vector<LatticePoint> vertices_;
    BigRat volume_;
};

struct ExposedFace {
    const LatticePolytope* polytope = nullptr;
    std::vector<LatticePoint> face_vertices;  // argmin vertices, sorted
    BigInt value;                             // the minimum of <w, .>
};

LatticePolytope newton_polytope(const SparsePolynomial& f);

// Face of P minimizing <w, .>; exact integer comparisons throughout.
ExposedFace exposed_face(const LatticePolytope& polytope, const WeightVector& w);

// Restriction of f to the terms whose exponents attain the minimal weight;
// all support points on the face are kept, not only vertices.
SparsePolynomial initial_polynomial(const SparsePolynomial& f, const WeightVector& w);

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);

BigRat exact_volume(const LatticePolytope& p);

BigInt weight_value(const WeightVector& w, const LatticePoint& point);

}  // namespace mldeg
