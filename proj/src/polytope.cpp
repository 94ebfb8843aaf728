#include "mldeg/polytope.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "mldeg/linalg.hpp"

namespace mldeg {

namespace {

// Projected coordinates used by the hull machinery. Projection onto the
// pivot columns of the difference matrix is an affine isomorphism of the
// affine hull, so hull combinatorics survive it unchanged.
using PPoint = std::vector<int64_t>;

struct Facet {
    std::vector<BigInt> normal;  // inner side satisfies <normal, x> >= offset
    BigInt offset;
};

BigInt dot(const std::vector<BigInt>& a, const PPoint& b) {
    BigInt acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Hyperplane through the r points of a facet in r-space, oriented so the
// given opposite vertex lies strictly on the inner side.
Facet facet_plane(const std::vector<int>& verts, const std::vector<PPoint>& pts,
                  const PPoint& opposite) {
    const int r = static_cast<int>(verts.size());
    Facet f;
    f.normal.assign(r, BigInt(0));
    // Cofactor expansion: normal_j = (-1)^j det of the difference matrix with
    // column j removed.
    for (int j = 0; j < r; ++j) {
        IntMatrix minor(r - 1, std::vector<BigInt>(r - 1));
        for (int i = 0; i + 1 < r; ++i) {
            int col = 0;
            for (int c = 0; c < r; ++c) {
                if (c == j) continue;
                minor[i][col++] = BigInt(pts[verts[i + 1]][c]) - BigInt(pts[verts[0]][c]);
            }
        }
        BigInt det = integer_determinant(std::move(minor));
        f.normal[j] = (j % 2 == 0) ? det : -det;
    }
    f.offset = dot(f.normal, pts[verts[0]]);
    const BigInt side = dot(f.normal, opposite);
    MLDEG_CHECK(side != f.offset, "degenerate facet in hull construction");
    if (side < f.offset) {
        for (auto& v : f.normal) v = -v;
        f.offset = -f.offset;
    }
    return f;
}

BigInt simplex_det(const std::vector<int>& verts, const std::vector<PPoint>& pts) {
    const int r = static_cast<int>(verts.size()) - 1;
    IntMatrix m(r, std::vector<BigInt>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            m[i][j] = BigInt(pts[verts[i + 1]][j]) - BigInt(pts[verts[0]][j]);
    return integer_determinant(std::move(m));
}

struct HullData {
    std::vector<int> vertex_ids;  // indices of extreme points
    BigInt det_sum;               // sum of |det| over triangulation simplices
};

// Incremental (beneath-beyond) hull with a placing triangulation over
// lexicographically sorted points; full-dimensional in r-space. Points with
// index in `pts` are assumed deduplicated and sorted.
HullData full_dim_hull(const std::vector<PPoint>& pts, int r) {
    const int m = static_cast<int>(pts.size());

    // Greedy affinely independent start simplex.
    std::vector<int> simplex = {0};
    std::vector<char> used(m, 0);
    used[0] = 1;
    for (int i = 1; i < m && static_cast<int>(simplex.size()) < r + 1; ++i) {
        IntMatrix diffs;
        for (std::size_t k = 1; k < simplex.size(); ++k) {
            std::vector<BigInt> row(r);
            for (int c = 0; c < r; ++c)
                row[c] = BigInt(pts[simplex[k]][c]) - BigInt(pts[simplex[0]][c]);
            diffs.push_back(std::move(row));
        }
        std::vector<BigInt> row(r);
        for (int c = 0; c < r; ++c) row[c] = BigInt(pts[i][c]) - BigInt(pts[simplex[0]][c]);
        diffs.push_back(std::move(row));
        if (integer_rank(std::move(diffs)) == static_cast<int>(simplex.size())) {
            simplex.push_back(i);
            used[i] = 1;
        }
    }
    MLDEG_CHECK(static_cast<int>(simplex.size()) == r + 1,
                "hull: affine dimension below the projected rank");

    HullData out;
    out.det_sum = boost::multiprecision::abs(simplex_det(simplex, pts));

    std::map<std::vector<int>, Facet> boundary;
    for (int drop = 0; drop <= r; ++drop) {
        std::vector<int> face;
        for (int i = 0; i <= r; ++i)
            if (i != drop) face.push_back(simplex[i]);
        boundary.emplace(face, facet_plane(face, pts, pts[simplex[drop]]));
    }

    auto toggle_facet = [&](std::vector<int> face, int opposite) {
        std::sort(face.begin(), face.end());
        auto it = boundary.find(face);
        if (it != boundary.end()) {
            boundary.erase(it);
        } else {
            Facet plane = facet_plane(face, pts, pts[opposite]);
            boundary.emplace(std::move(face), std::move(plane));
        }
    };

    for (int i = 0; i < m; ++i) {
        if (used[i]) continue;
        std::vector<std::vector<int>> visible;
        for (const auto& [face, plane] : boundary)
            if (dot(plane.normal, pts[i]) < plane.offset) visible.push_back(face);
        if (visible.empty()) continue;  // inside or on the current hull

        for (const auto& base : visible) {
            std::vector<int> cone = base;
            cone.push_back(i);
            std::sort(cone.begin(), cone.end());
            out.det_sum += boost::multiprecision::abs(simplex_det(cone, pts));
            for (std::size_t drop = 0; drop < cone.size(); ++drop) {
                std::vector<int> face;
                for (std::size_t k = 0; k < cone.size(); ++k)
                    if (k != drop) face.push_back(cone[k]);
                toggle_facet(std::move(face), cone[drop]);
            }
        }
    }

    // Vertex classification: a point is extreme iff the facet normals active
    // at it span the full projected space.
    for (int i = 0; i < m; ++i) {
        IntMatrix normals;
        for (const auto& [face, plane] : boundary)
            if (dot(plane.normal, pts[i]) == plane.offset) normals.push_back(plane.normal);
        if (static_cast<int>(normals.size()) >= r && integer_rank(std::move(normals)) == r)
            out.vertex_ids.push_back(i);
    }
    return out;
}

}  // namespace

LatticePolytope::LatticePolytope(std::vector<LatticePoint> generators) {
    if (generators.empty()) throw InputError("polytope needs at least one point");
    ambient_dim_ = static_cast<int>(generators[0].size());
    if (ambient_dim_ <= 0) throw InputError("polytope ambient dimension must be positive");
    for (const auto& p : generators)
        if (static_cast<int>(p.size()) != ambient_dim_)
            throw InputError("polytope generators mix dimensions");

    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    points_ = std::move(generators);

    if (points_.size() == 1) {
        affine_dim_ = 0;
        vertices_ = points_;
        volume_ = 0;
        return;
    }

    // Rank and pivot columns of the difference matrix fix the projection.
    IntMatrix diffs(points_.size() - 1, std::vector<BigInt>(ambient_dim_));
    for (std::size_t i = 1; i < points_.size(); ++i)
        for (int c = 0; c < ambient_dim_; ++c)
            diffs[i - 1][c] = BigInt(points_[i][c]) - BigInt(points_[0][c]);
    std::vector<int> pivots;
    affine_dim_ = integer_rank(std::move(diffs), &pivots);
    MLDEG_CHECK(affine_dim_ >= 1, "distinct points with affine dimension zero");

    std::vector<PPoint> projected(points_.size(), PPoint(affine_dim_));
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (int c = 0; c < affine_dim_; ++c) projected[i][c] = points_[i][pivots[c]];

    HullData hull = full_dim_hull(projected, affine_dim_);
    vertices_.reserve(hull.vertex_ids.size());
    for (int id : hull.vertex_ids) vertices_.push_back(points_[id]);
    std::sort(vertices_.begin(), vertices_.end());

    volume_ = affine_dim_ == ambient_dim_
                  ? BigRat(hull.det_sum, factorial(ambient_dim_))
                  : BigRat(0);
}

LatticePolytope newton_polytope(const SparsePolynomial& f) {
    if (f.is_zero()) throw InputError("zero polynomial has no Newton polytope");
    std::vector<LatticePoint> pts;
    pts.reserve(f.term_count());
    for (const auto& [e, c] : f.terms()) pts.push_back(e);
    return LatticePolytope(std::move(pts));
}

BigInt weight_value(const WeightVector& w, const LatticePoint& point) {
    MLDEG_CHECK(w.entries.size() == point.size(), "weight/point dimension mismatch");
    BigInt acc = 0;
    for (std::size_t i = 0; i < point.size(); ++i)
        acc += BigInt(w.entries[i]) * BigInt(point[i]);
    return acc;
}

ExposedFace exposed_face(const LatticePolytope& polytope, const WeightVector& w) {
    if (w.is_zero()) throw InputError("zero weight vector exposes no face");
    ExposedFace face;
    face.polytope = &polytope;
    bool first = true;
    for (const auto& v : polytope.vertices()) {
        BigInt value = weight_value(w, v);
        if (first || value < face.value) {
            face.value = value;
            face.face_vertices.clear();
            face.face_vertices.push_back(v);
            first = false;
        } else if (value == face.value) {
            face.face_vertices.push_back(v);
        }
    }
    return face;  // vertices() is sorted, so face_vertices is too
}

SparsePolynomial initial_polynomial(const SparsePolynomial& f, const WeightVector& w) {
    if (f.is_zero()) throw InputError("zero polynomial has no initial polynomial");
    if (w.is_zero()) throw InputError("zero weight vector");
    bool first = true;
    BigInt best;
    for (const auto& [e, c] : f.terms()) {
        BigInt value = weight_value(w, e);
        if (first || value < best) {
            best = value;
            first = false;
        }
    }
    SparsePolynomial init(f.dimension());
    for (const auto& [e, c] : f.terms())
        if (weight_value(w, e) == best) init.add_term(e, c);
    return init;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.ambient_dim() != q.ambient_dim())
        throw InputError("Minkowski sum of polytopes in different dimensions");
    std::vector<LatticePoint> sums;
    sums.reserve(p.vertices().size() * q.vertices().size());
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) {
            LatticePoint s(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) s[i] = checked_add(a[i], b[i]);
            sums.push_back(std::move(s));
        }
    return LatticePolytope(std::move(sums));
}

BigRat exact_volume(const LatticePolytope& p) {
    return p.volume();
}

}  // namespace mldeg
