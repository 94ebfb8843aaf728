#include "mldeg/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <thread>

#include "mldeg/linalg.hpp"

namespace mldeg {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double inf_norm(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const Complex& c : v) m = std::max(m, std::abs(c));
    return m;
}

bool all_finite(const std::vector<Complex>& v) {
    for (const Complex& c : v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

// H(y, s), its Jacobian in y and its s-derivative in one sweep.
struct Evaluation {
    VectorXcd h;
    MatrixXcd jacobian;
    VectorXcd s_derivative;
};

void evaluate_homotopy(const CellHomotopy& hom, const std::vector<Complex>& y, double s,
                       Evaluation& out, bool with_derivatives) {
    const int d = hom.dim;
    out.h.setZero(d);
    if (with_derivatives) {
        out.jacobian.setZero(d, d);
        out.s_derivative.setZero(d);
    }
    // sigma = s - i*delta(s); each term carries exp(-sigma * weight).
    double delta = 0.0, delta_rate = 0.0;
    if (hom.arc_range > 0.0) {
        delta = hom.detour * s * (hom.arc_range - s) / hom.arc_range;
        delta_rate = hom.detour * (hom.arc_range - 2.0 * s) / hom.arc_range;
    }
    const Complex sigma_rate(1.0, -delta_rate);
    for (int i = 0; i < d; ++i) {
        for (const HomotopyTerm& term : hom.equations[i]) {
            const double magnitude = std::exp(-s * term.weight);
            if (magnitude == 0.0) continue;
            const double phase = delta * term.weight;
            const Complex damp = magnitude * Complex(std::cos(phase), std::sin(phase));
            Complex monomial = term.coefficient * damp;
            for (int v = 0; v < d; ++v)
                if (term.exponent[v] != 0) monomial *= complex_pow(y[v], term.exponent[v]);
            out.h(i) += monomial;
            if (with_derivatives) {
                for (int v = 0; v < d; ++v)
                    if (term.exponent[v] != 0)
                        out.jacobian(i, v) +=
                            monomial * static_cast<double>(term.exponent[v]) / y[v];
                out.s_derivative(i) += -term.weight * sigma_rate * monomial;
            }
        }
    }
}

// Newton iteration on H(., s); returns false when it fails to contract.
// `moved` reports the total correction distance when requested.
bool newton_correct(const CellHomotopy& hom, std::vector<Complex>& y, double s,
                    const TrackerConfig& config, int iteration_cap = 0,
                    double* moved = nullptr) {
    Evaluation eval;
    const int iterations =
        iteration_cap > 0 ? std::min(iteration_cap, config.max_newton_iters)
                          : config.max_newton_iters;
    if (moved) *moved = 0.0;
    for (int iter = 0; iter < iterations; ++iter) {
        evaluate_homotopy(hom, y, s, eval, true);
        if (!eval.h.allFinite() || !eval.jacobian.allFinite()) return false;
        VectorXcd delta = eval.jacobian.partialPivLu().solve(-eval.h);
        if (!delta.allFinite()) return false;
        double step_size = 0.0;
        for (int v = 0; v < hom.dim; ++v) {
            y[v] += delta(v);
            step_size = std::max(step_size, std::abs(delta(v)));
        }
        if (moved) *moved += step_size;
        if (!all_finite(y)) return false;
        if (step_size <= config.newton_tolerance * std::max(1.0, inf_norm(y))) return true;
    }
    return false;
}

constexpr double kStartTime = 30.0;   // e^-30 damps off-cell terms below 1e-13
constexpr double kBlowupNorm = 1e10;
constexpr double kCollapseNorm = 1e-12;
// A short corrector leash while stepping keeps paths from hopping onto their
// neighbors; full-depth Newton runs only at the two endpoints.
constexpr int kSteppingNewtonCap = 3;
// Lifting bound for the solver's own cell enumeration. Small values keep the
// decay-weight spread of the homotopies within a few decades so the paths
// stay trackable; the occasional non-fine lifting is just resampled.
constexpr int64_t kSolverLiftBound = 255;

Complex lookup_coefficient(const NumericSystem& system, int equation, const Exponent& e) {
    const auto& exps = system.exponents[equation];
    const auto it = std::lower_bound(exps.begin(), exps.end(), e);
    MLDEG_CHECK(it != exps.end() && *it == e, "cell edge exponent missing from the system");
    return system.coefficients[equation][it - exps.begin()];
}

}  // namespace

void TrackerConfig::validate() const {
    if (!(0 < min_step && min_step < initial_step && initial_step <= 0.1))
        throw InputError("tracker: need 0 < min_step < initial_step <= 0.1");
    if (!(newton_tolerance > 0) || !(torus_threshold > 0) || !(dedup_distance > 0))
        throw InputError("tracker: tolerances must be positive");
    if (max_newton_iters < 1 || max_steps < 1)
        throw InputError("tracker: iteration limits must be positive");
    if (threads < 0) throw InputError("tracker: thread count cannot be negative");
}

NumericSystem NumericSystem::from_polynomials(std::span<const SparsePolynomial> polynomials) {
    NumericSystem sys;
    MLDEG_CHECK(!polynomials.empty(), "numeric system needs equations");
    sys.dim = polynomials[0].dimension();
    MLDEG_CHECK(static_cast<int>(polynomials.size()) == sys.dim,
                "numeric system must be square");
    for (const auto& p : polynomials) {
        std::vector<Exponent> exps;
        std::vector<Complex> coeffs;
        for (const auto& [e, c] : p.terms()) {  // map order: sorted exponents
            exps.push_back(e);
            coeffs.push_back(c.value);
        }
        sys.exponents.push_back(std::move(exps));
        sys.coefficients.push_back(std::move(coeffs));
    }
    return sys;
}

std::vector<MonomialSupport> NumericSystem::supports() const {
    std::vector<MonomialSupport> out;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        out.push_back(MonomialSupport(exponents[i], "g" + std::to_string(i + 1)));
    return out;
}

double NumericSystem::residual(const std::vector<Complex>& point) const {
    double worst = 0.0;
    for (int i = 0; i < dim; ++i) {
        Complex acc(0.0, 0.0);
        for (std::size_t t = 0; t < exponents[i].size(); ++t) {
            Complex monomial = coefficients[i][t];
            for (int v = 0; v < dim; ++v)
                if (exponents[i][t][v] != 0)
                    monomial *= complex_pow(point[v], exponents[i][t][v]);
            acc += monomial;
        }
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

CellHomotopy make_cell_homotopy(const NumericSystem& system,
                                const MixedSubdivision& subdivision,
                                std::size_t cell_index) {
    const MixedCell& cell = subdivision.cells[cell_index];
    const int d = system.dim;
    CellHomotopy hom;
    hom.dim = d;
    hom.equations.resize(d);

    // Exact decay exponents <gamma, a> + lift(a) - (value on the edge). They
    // stay unscaled so that s is the same global parameter for every cell;
    // the start time adapts so the smallest positive weight is damped to
    // e^-30 there.
    std::vector<std::vector<BigRat>> weights(d);
    BigRat min_positive = 0;
    bool has_positive = false;
    for (int i = 0; i < d; ++i) {
        const auto& support = subdivision.lifting[i].base.exponents;
        const auto& lift = subdivision.lifting[i].lift;
        std::map<Exponent, int64_t> lift_of;
        for (std::size_t t = 0; t < support.size(); ++t) lift_of[support[t]] = lift[t];

        BigRat edge_value;
        {
            const Exponent& anchor = cell.edges[i].first;
            edge_value = BigRat(lift_of.at(anchor));
            for (int v = 0; v < d; ++v) edge_value += cell.normal[v] * BigRat(anchor[v]);
        }
        weights[i].reserve(system.exponents[i].size());
        for (const Exponent& e : system.exponents[i]) {
            BigRat w = BigRat(lift_of.at(e)) - edge_value;
            for (int v = 0; v < d; ++v) w += cell.normal[v] * BigRat(e[v]);
            MLDEG_CHECK(w >= 0, "cell normal fails to minimize on its own cell");
            if (w > 0 && (!has_positive || w < min_positive)) {
                min_positive = w;
                has_positive = true;
            }
            weights[i].push_back(std::move(w));
        }
    }

    for (int i = 0; i < d; ++i) {
        for (std::size_t t = 0; t < system.exponents[i].size(); ++t) {
            HomotopyTerm term;
            term.coefficient = system.coefficients[i][t];
            term.exponent = system.exponents[i][t];
            term.weight = rational_to_double(weights[i][t]);
            hom.max_weight = std::max(hom.max_weight, term.weight);
            hom.equations[i].push_back(std::move(term));
        }
    }
    hom.start_time =
        has_positive ? kStartTime / rational_to_double(min_positive) : 0.0;
    return hom;
}

// One arc for all cells of a solve; applied after the homotopies are built.
void install_shared_arc(std::vector<CellHomotopy>& homotopies, uint64_t lifting_seed) {
    double range = 0.0;
    for (const auto& hom : homotopies) range = std::max(range, hom.start_time);
    if (range <= 0.0) return;
    SeededRng rng = SeededRng(lifting_seed).derive("continuation-arc");
    const double detour =
        rng.uniform_real(0.1, 0.3) * (rng.uniform_int(0, 1) ? 1.0 : -1.0);
    for (auto& hom : homotopies) {
        hom.detour = detour;
        hom.arc_range = range;
    }
}

StartSystem binomial_start_solutions(const MixedCell& cell, const NumericSystem& system) {
    const int d = system.dim;
    MLDEG_CHECK(static_cast<int>(cell.edges.size()) == d, "cell/system shape mismatch");

    // c_a y^a + c_b y^b = 0  per equation; in exponent-difference form the
    // system reads y^(b - a) = -c_a / c_b.
    std::vector<std::vector<int64_t>> diff(d, std::vector<int64_t>(d));
    std::vector<Complex> rhs(d);
    for (int i = 0; i < d; ++i) {
        const Exponent& a = cell.edges[i].first;
        const Exponent& b = cell.edges[i].second;
        for (int v = 0; v < d; ++v) diff[i][v] = b[v] - a[v];
        const Complex ca = lookup_coefficient(system, i, a);
        const Complex cb = lookup_coefficient(system, i, b);
        rhs[i] = -ca / cb;
    }

    RowTriangular tri = row_triangularize(std::move(diff));

    // Row operations act on the right-hand side multiplicatively.
    std::vector<Complex> transformed(d);
    for (int i = 0; i < d; ++i) {
        Complex acc(1.0, 0.0);
        for (int j = 0; j < d; ++j)
            if (tri.u[i][j] != 0) acc *= complex_pow(rhs[j], tri.u[i][j]);
        transformed[i] = acc;
    }

    StartSystem out;
    out.cell = cell;
    std::vector<Complex> point(d);
    std::vector<std::size_t> branch(d, 0);

    // Mixed-radix enumeration of all root branches, last coordinate first.
    std::vector<int64_t> branch_count(d);
    BigInt total = 1;
    for (int i = 0; i < d; ++i) {
        branch_count[i] = std::llabs(tri.h[i][i]);
        MLDEG_CHECK(branch_count[i] > 0, "triangular binomial system with zero diagonal");
        total *= branch_count[i];
    }
    MLDEG_CHECK(total == cell.det, "branch count must equal the cell determinant");

    for (;;) {
        for (int i = d - 1; i >= 0; --i) {
            Complex target = transformed[i];
            for (int j = i + 1; j < d; ++j)
                if (tri.h[i][j] != 0) target /= complex_pow(point[j], tri.h[i][j]);
            int64_t m = tri.h[i][i];
            if (m < 0) {
                target = 1.0 / target;
                m = -m;
            }
            const double radius = std::pow(std::abs(target), 1.0 / static_cast<double>(m));
            const double angle =
                (std::arg(target) + 2.0 * M_PI * static_cast<double>(branch[i])) /
                static_cast<double>(m);
            point[i] = Complex(radius * std::cos(angle), radius * std::sin(angle));
        }
        out.starts.push_back(point);

        int pos = 0;
        while (pos < d && branch[pos] + 1 == static_cast<std::size_t>(branch_count[pos]))
            branch[pos++] = 0;
        if (pos == d) break;
        ++branch[pos];
    }
    MLDEG_CHECK(BigInt(static_cast<long long>(out.starts.size())) == cell.det,
                "start point count must equal the cell determinant");
    return out;
}

PathOutcome track_path(const std::vector<Complex>& start, const CellHomotopy& homotopy,
                       const TrackerConfig& config) {
    PathOutcome outcome;
    std::vector<Complex> y = start;
    double s = homotopy.start_time;

    auto classify_failure = [&](const std::vector<Complex>& point) {
        if (!all_finite(point) || inf_norm(point) > kBlowupNorm) return PathStatus::Diverged;
        for (const Complex& c : point)
            if (std::abs(c) < kCollapseNorm) return PathStatus::Diverged;
        return PathStatus::StepLimit;
    };

    if (!newton_correct(homotopy, y, s, config)) {
        outcome.status = classify_failure(y);
        return outcome;
    }

    Evaluation eval;
    double step = config.initial_step;
    const double max_step_floor = 10.0 * config.initial_step;
    // Beyond this point every decay factor is within 1e-6 of its target
    // value: the remaining system perturbation sits below the deduplication
    // scale, so the final Newton polish cannot cross root basins. Capping
    // steps at half the current parameter approaches the point geometrically,
    // resolving every decay scale of the cell on the way down.
    const double jump_time = 1e-6 / std::max(1.0, homotopy.max_weight);
    int streak = 0;
    while (s > jump_time) {
        if (++outcome.steps > config.max_steps) {
            outcome.status = PathStatus::StepLimit;
            return outcome;
        }
        const double h = std::min(step, 0.5 * s);
        evaluate_homotopy(homotopy, y, s, eval, true);
        std::vector<Complex> predicted = y;
        VectorXcd velocity = eval.jacobian.partialPivLu().solve(-eval.s_derivative);
        bool moved = velocity.allFinite();
        double predictor_size = 0.0;
        if (moved) {
            for (int v = 0; v < homotopy.dim; ++v) {
                predicted[v] -= h * velocity(v);
                predictor_size = std::max(predictor_size, h * std::abs(velocity(v)));
            }
            moved = all_finite(predicted);
        }
        // The corrector may only polish the prediction; a correction on the
        // order of the predictor step itself means the path tube was lost
        // (typically a hop onto a neighboring path), so the step is rejected.
        double correction = 0.0;
        const double leash =
            0.5 * predictor_size +
            10.0 * config.newton_tolerance * std::max(1.0, inf_norm(y));
        if (moved &&
            newton_correct(homotopy, predicted, s - h, config, kSteppingNewtonCap,
                           &correction) &&
            correction <= leash) {
            y = std::move(predicted);
            s -= h;
            // The growth ceiling scales with s so that far-out starts (raw
            // weights make start times cell-dependent) are crossed quickly.
            if (++streak >= 2)
                step = std::min(step * 1.5, std::max(max_step_floor, 0.05 * s));
            if (!all_finite(y) || inf_norm(y) > kBlowupNorm) {
                outcome.status = PathStatus::Diverged;
                return outcome;
            }
        } else {
            streak = 0;
            step *= 0.5;
            if (step < config.min_step) {
                outcome.status = classify_failure(y);
                return outcome;
            }
        }
    }

    // Extra polish at the target.
    TrackerConfig polish = config;
    polish.max_newton_iters = config.max_newton_iters * 3;
    newton_correct(homotopy, y, 0.0, polish);

    evaluate_homotopy(homotopy, y, 0.0, eval, false);
    double residual = 0.0;
    for (int i = 0; i < homotopy.dim; ++i) residual = std::max(residual, std::abs(eval.h(i)));
    outcome.status = PathStatus::Converged;
    outcome.point = std::move(y);
    outcome.residual = residual;
    return outcome;
}

namespace {

std::vector<PathOutcome> track_all_paths(const NumericSystem& system,
                                         const MixedSubdivision& subdivision,
                                         const TrackerConfig& config) {
    struct Job {
        const CellHomotopy* homotopy;
        std::vector<Complex> start;
    };
    std::vector<CellHomotopy> homotopies;
    homotopies.reserve(subdivision.cells.size());
    for (std::size_t c = 0; c < subdivision.cells.size(); ++c)
        homotopies.push_back(make_cell_homotopy(system, subdivision, c));
    install_shared_arc(homotopies, subdivision.lifting_seed);

    std::vector<Job> jobs;
    for (std::size_t c = 0; c < subdivision.cells.size(); ++c) {
        StartSystem starts = binomial_start_solutions(subdivision.cells[c], system);
        for (auto& s : starts.starts) jobs.push_back(Job{&homotopies[c], std::move(s)});
    }

    std::vector<PathOutcome> outcomes(jobs.size());
    int workers = config.threads > 0
                      ? config.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));

    if (workers == 1 || jobs.size() <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            outcomes[i] = track_path(jobs[i].start, *jobs[i].homotopy, config);
        return outcomes;
    }

    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&, w]() {
            for (std::size_t i = w; i < jobs.size(); i += workers)
                outcomes[i] = track_path(jobs[i].start, *jobs[i].homotopy, config);
        }));
    }
    for (auto& f : futures) f.get();
    return outcomes;
}

// Validation + deduplication shared by the plain and critical-system solves.
void fill_report(SolveReport& report, const NumericSystem& system,
                 const std::vector<PathOutcome>& outcomes, int torus_split,
                 const TrackerConfig& config) {
    report.paths_tracked = static_cast<long>(outcomes.size());
    std::vector<std::pair<std::vector<Complex>, double>> validated;
    long invalid_converged = 0;
    for (const PathOutcome& out : outcomes) {
        switch (out.status) {
            case PathStatus::Converged: {
                bool valid = out.residual < 100.0 * config.newton_tolerance;
                for (const Complex& c : out.point)
                    valid = valid && std::abs(c) > config.torus_threshold;
                ++report.paths_converged;
                if (valid)
                    validated.emplace_back(out.point, out.residual);
                else
                    ++invalid_converged;
                break;
            }
            case PathStatus::StepLimit:
                ++report.paths_step_limit;
                ++report.paths_diverged;
                break;
            case PathStatus::Diverged:
                ++report.paths_diverged;
                break;
        }
    }

    for (const auto& [point, residual] : validated) {
        bool duplicate = false;
        for (const TorusPoint& kept : report.solutions) {
            double dist = 0.0;
            for (std::size_t v = 0; v < point.size(); ++v) {
                const Complex dcoord = point[v] - kept.coordinates[v];
                dist += std::norm(dcoord);
            }
            if (std::sqrt(dist) <= config.dedup_distance) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) {
            ++report.paths_merged;
        } else {
            report.solutions.push_back(TorusPoint{point, torus_split});
            report.residuals.push_back(residual);
        }
    }
    report.count = BigInt(static_cast<long long>(report.solutions.size()));
    if (invalid_converged > 0)
        report.warning = std::to_string(invalid_converged) +
                         " converged path(s) failed residual/torus validation";
    (void)system;
}

// Tracks every path of the subdivision and counts validated distinct
// solutions. When the count misses the mixed volume the solve escalates:
// first re-tracking with tightened steps, then fresh liftings (the cell
// decomposition is a solver detail; the root count is not). Only then is the
// disagreement reported. `base` carries seed, mixed volume and warning.
SolveReport track_and_count(const SolveReport& base, const NumericSystem& system,
                            const std::vector<MonomialSupport>& supports,
                            const MixedSubdivision& subdivision, RandomSeed seed,
                            int torus_split, const TrackerConfig& config) {
    auto run = [&](const MixedSubdivision& cells, const TrackerConfig& used,
                   const char* note) {
        SolveReport report = base;
        report.config = used;
        report.lifting_seed = cells.lifting_seed;
        const auto outcomes = track_all_paths(system, cells, used);
        fill_report(report, system, outcomes, torus_split, used);
        report.agreement = report.count == report.mixed_volume;
        if (note && report.agreement)
            report.warning =
                report.warning.empty() ? note : report.warning + "; " + note;
        return report;
    };

    SolveReport first = run(subdivision, config, nullptr);
    if (first.agreement) return first;

    TrackerConfig tight = config;
    tight.initial_step = std::max(config.min_step * 2.0, config.initial_step / 10.0);
    SolveReport attempt = run(subdivision, tight, "paths re-tracked with tightened steps");
    if (attempt.agreement) return attempt;

    for (uint64_t retry = 1; retry <= 2; ++retry) {
        SeededRng derived = SeededRng(seed).derive("lifting-retry", retry);
        MixedSubdivision fresh =
            mixed_cells(supports, RandomSeed{derived.next_u64()}, kSolverLiftBound);
        MLDEG_CHECK(fresh.total == subdivision.total,
                    "mixed cell totals changed across liftings");
        attempt = run(fresh, config, "re-solved with a fresh lifting");
        if (attempt.agreement) return attempt;
    }
    return first;
}

}  // namespace

SolveReport solve_square_system(const NumericSystem& system, RandomSeed seed,
                                const TrackerConfig& config) {
    config.validate();
    SolveReport report;
    report.seed = seed.value;
    report.config = config;

    const auto supports = system.supports();
    MixedSubdivision subdivision = mixed_cells(supports, seed, kSolverLiftBound);
    report.lifting_seed = subdivision.lifting_seed;

    std::vector<LatticePolytope> polytopes;
    for (const auto& s : supports) polytopes.emplace_back(s.exponents);
    const BigInt by_ie = mixed_volume_ie(polytopes);
    if (by_ie != subdivision.total)
        throw EngineDisagreement("mixed volume engines disagree: inclusion-exclusion " +
                                 by_ie.str() + " vs mixed cells " + subdivision.total.str());
    report.mixed_volume = by_ie;

    return track_and_count(report, system, supports, subdivision, seed, system.dim, config);
}

SolveReport solve_ml_system(const PolynomialSystem& model, const DataVector& u,
                            RandomSeed seed, const TrackerConfig& config) {
    config.validate();
    const int n = model.variable_count();
    const int k = model.equation_count();

    MLSystem ml = build_ml_system(model, u);
    NumericSystem numeric = NumericSystem::from_polynomials(ml.equations);

    SolveReport report;
    report.seed = seed.value;
    report.config = config;

    const auto supports = ml.supports();
    MixedSubdivision subdivision = mixed_cells(supports, seed, kSolverLiftBound);
    report.lifting_seed = subdivision.lifting_seed;

    if (k > n) {
        report.mixed_volume = 0;
        report.warning = "more equations than variables: the model is generically empty";
    } else {
        std::vector<LatticePolytope> polytopes;
        for (const auto& s : supports) polytopes.emplace_back(s.exponents);
        const BigInt by_ie = mixed_volume_ie(polytopes);
        if (by_ie != subdivision.total)
            throw EngineDisagreement("mixed volume engines disagree: inclusion-exclusion " +
                                     by_ie.str() + " vs mixed cells " +
                                     subdivision.total.str());
        report.mixed_volume = by_ie;
    }

    return track_and_count(report, numeric, supports, subdivision, seed, n, config);
}

MLSolveAttempts solve_ml_with_retry(const PolynomialSystem& model, const DataVector& u,
                                    RandomSeed seed, const TrackerConfig& config) {
    MLSolveAttempts result;
    result.attempts.push_back(solve_ml_system(model, u, seed, config));
    if (result.attempts.back().agreement) return result;

    // Same supports, fresh generic coefficients: the count only depends on
    // the supports, so a persistent mismatch is a real anomaly.
    SeededRng derived = SeededRng(seed).derive("disagreement-retry");
    RandomSeed retry_seed{derived.next_u64()};
    PolynomialSystem resampled = sample_generic_system(model.supports(), retry_seed);
    result.resampled_coefficients = true;
    result.attempts.push_back(solve_ml_system(resampled, u, retry_seed, config));
    return result;
}

bool verify_torus_membership(const SolveReport& report, double threshold) {
    for (const TorusPoint& p : report.solutions)
        for (const Complex& c : p.coordinates)
            if (!(std::abs(c) > threshold)) return false;
    return true;
}

}  // namespace mldeg
