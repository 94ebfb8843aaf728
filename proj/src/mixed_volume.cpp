#include "mldeg/mixed_volume.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <optional>

#include "mldeg/linalg.hpp"
#include "mldeg/lp.hpp"

namespace mldeg {

namespace {

constexpr int kLiftBits = 16;       // lifting values in [0, 2^16)
constexpr int kRetryBudget = 10;

// Internal signal: the lifted subdivision is not fine; resample the lifting.
struct FinenessFailure {};

struct Edge {
    int a, b;  // indices into the sorted exponent list of one support
};

// DFS node: the normals still compatible with the chosen edges form the
// affine set gamma0 + span(basis); inequality rows are kept in the reduced
// coordinates so each feasibility check stays a small exact LP.
struct Node {
    std::vector<BigRat> gamma0;               // length d
    std::vector<std::vector<BigRat>> basis;   // d x m (columns span the null space)
    std::vector<std::vector<BigRat>> rows;    // inequality normals, length m each
    std::vector<BigRat> bounds;

    int free_dims() const { return basis.empty() ? 0 : static_cast<int>(basis[0].size()); }
};

struct Enumeration {
    const std::vector<MonomialSupport>& supports;
    const std::vector<std::vector<int64_t>>& lifts;
    std::vector<int> order;  // supports sorted by size, ascending
    std::vector<std::vector<Edge>> candidate_edges;  // per order position
    int dim;
    std::vector<MixedCell> cells;

    Enumeration(const std::vector<MonomialSupport>& s,
                const std::vector<std::vector<int64_t>>& l, int d)
        : supports(s), lifts(l), dim(d) {}
};

// Appends support `index`'s inequality rows for edge anchor point `a` to the
// node, in the node's reduced coordinates. Returns false when some row with
// no free direction is violated.
bool append_rows(Node& node, const Enumeration& ctx, int index, const Edge& edge) {
    const auto& exps = ctx.supports[index].exponents;
    const auto& lift = ctx.lifts[index];
    const int m = node.free_dims();
    for (int c = 0; c < static_cast<int>(exps.size()); ++c) {
        if (c == edge.a || c == edge.b) continue;
        // <gamma, p_c - p_a> >= lift_a - lift_c, reduced by gamma = gamma0 + B z.
        std::vector<BigRat> diff(ctx.dim);
        for (int i = 0; i < ctx.dim; ++i)
            diff[i] = BigRat(exps[c][i] - exps[edge.a][i]);
        BigRat rhs = BigRat(lift[edge.a] - lift[c]);
        for (int i = 0; i < ctx.dim; ++i) rhs -= diff[i] * node.gamma0[i];
        std::vector<BigRat> row(m, BigRat(0));
        bool nonzero = false;
        for (int z = 0; z < m; ++z) {
            BigRat acc = 0;
            for (int i = 0; i < ctx.dim; ++i) acc += diff[i] * node.basis[i][z];
            row[z] = acc;
            nonzero = nonzero || acc != 0;
        }
        if (!nonzero) {
            if (rhs > 0) return false;
            continue;  // satisfied identically; drop the row
        }
        node.rows.push_back(std::move(row));
        node.bounds.push_back(std::move(rhs));
    }
    return true;
}

// Imposes the edge equality on the node, eliminating one free coordinate.
// Returns false on plain infeasibility; throws FinenessFailure when the edge
// direction is dependent yet consistent (the lifting cannot be fine).
bool impose_edge(Node& node, const Enumeration& ctx, int index, const Edge& edge) {
    const auto& exps = ctx.supports[index].exponents;
    const auto& lift = ctx.lifts[index];
    const int m = node.free_dims();

    std::vector<BigRat> direction(ctx.dim);
    for (int i = 0; i < ctx.dim; ++i)
        direction[i] = BigRat(exps[edge.b][i] - exps[edge.a][i]);
    BigRat target = BigRat(lift[edge.a] - lift[edge.b]);
    for (int i = 0; i < ctx.dim; ++i) target -= direction[i] * node.gamma0[i];

    std::vector<BigRat> reduced(m, BigRat(0));
    int pivot = -1;
    for (int z = 0; z < m; ++z) {
        BigRat acc = 0;
        for (int i = 0; i < ctx.dim; ++i) acc += direction[i] * node.basis[i][z];
        reduced[z] = acc;
        if (pivot < 0 && acc != 0) pivot = z;
    }
    if (pivot < 0) {
        if (target == 0) throw FinenessFailure{};  // dependent, consistent
        return false;
    }

    const BigRat scale = target / reduced[pivot];
    for (int i = 0; i < ctx.dim; ++i) node.gamma0[i] += scale * node.basis[i][pivot];

    std::vector<std::vector<BigRat>> new_basis(ctx.dim, std::vector<BigRat>(m - 1));
    for (int i = 0; i < ctx.dim; ++i) {
        int col = 0;
        for (int z = 0; z < m; ++z) {
            if (z == pivot) continue;
            new_basis[i][col++] =
                node.basis[i][z] - (reduced[z] / reduced[pivot]) * node.basis[i][pivot];
        }
    }
    node.basis = std::move(new_basis);

    // Rewrite existing rows in the reduced coordinates.
    std::vector<std::vector<BigRat>> new_rows;
    std::vector<BigRat> new_bounds;
    for (std::size_t rix = 0; rix < node.rows.size(); ++rix) {
        const auto& g = node.rows[rix];
        std::vector<BigRat> row(m - 1);
        bool nonzero = false;
        int col = 0;
        for (int z = 0; z < m; ++z) {
            if (z == pivot) continue;
            row[col] = g[z] - g[pivot] * (reduced[z] / reduced[pivot]);
            nonzero = nonzero || row[col] != 0;
            ++col;
        }
        BigRat bound = node.bounds[rix] - g[pivot] * (target / reduced[pivot]);
        if (!nonzero) {
            if (bound > 0) return false;
            continue;
        }
        new_rows.push_back(std::move(row));
        new_bounds.push_back(std::move(bound));
    }
    node.rows = std::move(new_rows);
    node.bounds = std::move(new_bounds);
    return true;
}

std::optional<Node> extend(const Node& parent, const Enumeration& ctx, int index,
                           const Edge& edge) {
    Node node = parent;
    if (!impose_edge(node, ctx, index, edge)) return std::nullopt;
    if (!append_rows(node, ctx, index, edge)) return std::nullopt;
    if (!weakly_feasible(node.rows, node.bounds)) return std::nullopt;
    return node;
}

// The unique normal of a full tuple must clear every non-edge point strictly;
// a tie means the lifting is not fine.
void verify_strictness(const Node& node, const Enumeration& ctx,
                       const std::vector<Edge>& chosen) {
    for (std::size_t pos = 0; pos < chosen.size(); ++pos) {
        const int s = ctx.order[pos];
        const auto& exps = ctx.supports[s].exponents;
        const auto& lift = ctx.lifts[s];
        const Edge& e = chosen[pos];
        BigRat edge_value = BigRat(lift[e.a]);
        for (int i = 0; i < ctx.dim; ++i)
            edge_value += node.gamma0[i] * BigRat(exps[e.a][i]);
        for (int c = 0; c < static_cast<int>(exps.size()); ++c) {
            if (c == e.a || c == e.b) continue;
            BigRat value = BigRat(lift[c]);
            for (int i = 0; i < ctx.dim; ++i) value += node.gamma0[i] * BigRat(exps[c][i]);
            if (value == edge_value) throw FinenessFailure{};
            MLDEG_CHECK(value > edge_value,
                        "mixed cell certificate violated after feasible search");
        }
    }
}

void emit_cell(const Node& node, Enumeration& ctx, const std::vector<Edge>& chosen) {
    MLDEG_CHECK(node.free_dims() == 0, "full edge tuple left free normal directions");
    verify_strictness(node, ctx, chosen);

    const int d = ctx.dim;
    IntMatrix directions(d, std::vector<BigInt>(d));
    MixedCell cell;
    cell.edges.resize(d);
    for (std::size_t pos = 0; pos < chosen.size(); ++pos) {
        const int s = ctx.order[pos];
        const auto& exps = ctx.supports[s].exponents;
        const Edge& e = chosen[pos];
        cell.edges[s] = {exps[e.a], exps[e.b]};
        for (int i = 0; i < d; ++i)
            directions[pos][i] = BigInt(exps[e.b][i]) - BigInt(exps[e.a][i]);
    }
    BigInt det = boost::multiprecision::abs(integer_determinant(std::move(directions)));
    MLDEG_CHECK(det != 0, "independent edge directions produced a zero determinant");
    cell.det = det;
    cell.normal = node.gamma0;
    ctx.cells.push_back(std::move(cell));
}

void dfs(const Node& node, Enumeration& ctx, std::size_t pos, std::vector<Edge>& chosen) {
    if (pos == ctx.order.size()) {
        emit_cell(node, ctx, chosen);
        return;
    }
    for (const Edge& edge : ctx.candidate_edges[pos]) {
        auto child = extend(node, ctx, ctx.order[pos], edge);
        if (!child) continue;
        chosen.push_back(edge);
        dfs(*child, ctx, pos + 1, chosen);
        chosen.pop_back();
    }
}

std::vector<MixedCell> enumerate_cells(const std::vector<MonomialSupport>& supports,
                                       const std::vector<std::vector<int64_t>>& lifts,
                                       int d) {
    Enumeration ctx(supports, lifts, d);
    ctx.order.resize(supports.size());
    std::iota(ctx.order.begin(), ctx.order.end(), 0);
    std::stable_sort(ctx.order.begin(), ctx.order.end(), [&](int a, int b) {
        return supports[a].exponents.size() < supports[b].exponents.size();
    });

    ctx.candidate_edges.resize(supports.size());
    for (std::size_t pos = 0; pos < ctx.order.size(); ++pos) {
        const int s = ctx.order[pos];
        const int count = static_cast<int>(supports[s].exponents.size());
        for (int a = 0; a < count; ++a)
            for (int b = a + 1; b < count; ++b) ctx.candidate_edges[pos].push_back({a, b});
    }

    Node root;
    root.gamma0.assign(d, BigRat(0));
    root.basis.assign(d, std::vector<BigRat>(d, BigRat(0)));
    for (int i = 0; i < d; ++i) root.basis[i][i] = 1;

    std::vector<Edge> chosen;
    dfs(root, ctx, 0, chosen);
    return std::move(ctx.cells);
}

}  // namespace

BigInt mixed_volume_ie(const std::vector<LatticePolytope>& polytopes) {
    const int d = static_cast<int>(polytopes.size());
    if (d == 0) throw InputError("mixed volume of an empty tuple");
    for (const auto& p : polytopes)
        if (p.ambient_dim() != d)
            throw InputError("mixed volume needs exactly d polytopes in d-space (got ambient " +
                             std::to_string(p.ambient_dim()) + " with d=" + std::to_string(d) +
                             ")");

    // Subset sums share structure: build each from its lowest-index summand.
    std::vector<std::optional<LatticePolytope>> sums(std::size_t(1) << d);
    BigRat alternating = 0;
    for (std::size_t mask = 1; mask < sums.size(); ++mask) {
        const int low = std::countr_zero(mask);
        const std::size_t rest = mask & (mask - 1);
        if (rest == 0)
            sums[mask] = polytopes[low];
        else
            sums[mask] = minkowski_sum(*sums[rest], polytopes[low]);
        const int popcount = std::popcount(mask);
        const BigRat volume = sums[mask]->volume();
        alternating += ((d - popcount) % 2 == 0) ? volume : -volume;
    }

    const BigInt num = boost::multiprecision::numerator(alternating);
    const BigInt den = boost::multiprecision::denominator(alternating);
    MLDEG_CHECK(den == 1, "mixed volume of lattice polytopes must be an integer");
    MLDEG_CHECK(num >= 0, "mixed volume must be nonnegative");
    return num;
}

MixedSubdivision mixed_cells(const std::vector<MonomialSupport>& supports,
                             RandomSeed seed) {
    return mixed_cells(supports, seed, (int64_t(1) << kLiftBits) - 1);
}

MixedSubdivision mixed_cells(const std::vector<MonomialSupport>& supports, RandomSeed seed,
                             int64_t lift_bound) {
    const int d = static_cast<int>(supports.size());
    if (d == 0) throw InputError("mixed cells of an empty support list");
    if (lift_bound < 1) throw InputError("lifting bound must be positive");
    for (const auto& s : supports)
        if (s.dimension() != d)
            throw InputError("mixed cells need d supports in d-space");

    for (int attempt = 0; attempt < kRetryBudget; ++attempt) {
        SeededRng rng = SeededRng(seed).derive("lifting", static_cast<uint64_t>(attempt));
        std::vector<std::vector<int64_t>> lifts(supports.size());
        for (std::size_t s = 0; s < supports.size(); ++s) {
            lifts[s].resize(supports[s].exponents.size());
            for (auto& v : lifts[s]) v = rng.uniform_int(0, lift_bound);
        }
        try {
            MixedSubdivision out;
            out.cells = enumerate_cells(supports, lifts, d);
            out.total = 0;
            for (const auto& c : out.cells) out.total += c.det;
            out.lifting_seed = seed.value;
            out.attempts = attempt + 1;
            for (std::size_t s = 0; s < supports.size(); ++s)
                out.lifting.push_back(LiftedSupport{supports[s], lifts[s]});
            return out;
        } catch (const FinenessFailure&) {
            continue;
        }
    }
    throw ComputationAnomaly("no fine mixed subdivision after " +
                             std::to_string(kRetryBudget) + " liftings (seed " +
                             std::to_string(seed.value) + ")");
}

BigInt mixed_volume_cross_check(const std::vector<LatticePolytope>& polytopes,
                                const std::vector<MonomialSupport>& supports,
                                RandomSeed seed) {
    const BigInt by_ie = mixed_volume_ie(polytopes);
    const BigInt by_cells = mixed_cells(supports, seed).total;
    if (by_ie != by_cells)
        throw EngineDisagreement("mixed volume engines disagree: inclusion-exclusion " +
                                 by_ie.str() + " vs mixed cells " + by_cells.str());
    return by_ie;
}

BigInt mixed_volume_cross_check(const std::vector<MonomialSupport>& supports,
                                RandomSeed seed) {
    std::vector<LatticePolytope> polytopes;
    polytopes.reserve(supports.size());
    for (const auto& s : supports) polytopes.emplace_back(s.exponents);
    return mixed_volume_cross_check(polytopes, supports, seed);
}

}  // namespace mldeg
