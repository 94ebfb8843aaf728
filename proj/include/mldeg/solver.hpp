#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mldeg/mixed_volume.hpp"
#include "mldeg/ml_system.hpp"

namespace mldeg {

struct TrackerConfig {
    double initial_step = 0.05;
    double min_step = 1e-7;
    double newton_tolerance = 1e-10;
    int max_newton_iters = 10;
    long max_steps = 20000;
    double torus_threshold = 1e-8;
    double dedup_distance = 1e-6;
    int threads = 0;  // 0 = pick from hardware concurrency

    void validate() const;
};

enum class PathStatus { Converged, Diverged, StepLimit };

struct PathOutcome {
    PathStatus status = PathStatus::Diverged;
    std::vector<Complex> point;
    double residual = std::numeric_limits<double>::infinity();
    long steps = 0;
};

// Numeric (double) view of a square sparse system; per equation the exponent
// and coefficient arrays are index-aligned.
struct NumericSystem {
    int dim = 0;
    std::vector<std::vector<Exponent>> exponents;
    std::vector<std::vector<Complex>> coefficients;

    static NumericSystem from_polynomials(std::span<const SparsePolynomial> polynomials);
    std::vector<MonomialSupport> supports() const;
    double residual(const std::vector<Complex>& point) const;  // max |g_i(point)|
};

// One mixed cell's deformation of the target system in the rescaled
// parameter s = -log t: every term carries the nonnegative weight it decays
// with as s grows; the cell's edge terms have weight exactly zero, so the
// s -> infinity limit is the binomial start system and s = 0 is the target.
struct HomotopyTerm {
    Complex coefficient;
    Exponent exponent;
    double weight = 0.0;
};

// The continuation parameter follows a complex arc shared by every cell of
// one solve: sigma(s) = s - i * detour * s * (arc_range - s) / arc_range,
// which is real at s = 0 (the target) and bends away from the real segment
// in between. Structured targets (the critical systems share coefficients
// across equations) can place singular parameter values on that segment; the
// arc walks around them. All cells must follow the same arc, otherwise the
// branch bookkeeping of the subdivision breaks and two cells can continue
// into the same root.
struct CellHomotopy {
    int dim = 0;
    double start_time = 0.0;  // tracking runs from here down to s = 0
    double max_weight = 0.0;  // largest decay weight across all terms
    double detour = 0.0;      // magnitude of the imaginary arc (solve-global)
    double arc_range = 0.0;   // arc parameter span (solve-global); 0 = none
    std::vector<std::vector<HomotopyTerm>> equations;
};

CellHomotopy make_cell_homotopy(const NumericSystem& system,
                                const MixedSubdivision& subdivision, std::size_t cell_index);

// Gives every cell of one solve the same continuation arc (largest start
// time, one random bend derived from the lifting seed).
void install_shared_arc(std::vector<CellHomotopy>& homotopies, uint64_t lifting_seed);

struct StartSystem {
    MixedCell cell;
    std::vector<std::vector<Complex>> starts;  // exactly cell.det torus points
};

// Solves the binomial system selected by the cell through unimodular row
// reduction of the exponent-difference matrix and radical back-substitution.
StartSystem binomial_start_solutions(const MixedCell& cell, const NumericSystem& system);

// Euler predictor / Newton corrector continuation from the start point at
// s = start_time down to the target at s = 0. Failures are outcomes, not
// exceptions.
PathOutcome track_path(const std::vector<Complex>& start, const CellHomotopy& homotopy,
                       const TrackerConfig& config);

struct SolveReport {
    long paths_tracked = 0;
    long paths_converged = 0;
    long paths_diverged = 0;   // includes step-limit failures
    long paths_step_limit = 0;
    long paths_merged = 0;
    std::vector<TorusPoint> solutions;
    std::vector<double> residuals;  // aligned with solutions
    BigInt count;
    BigInt mixed_volume;
    bool agreement = false;
    uint64_t seed = 0;
    uint64_t lifting_seed = 0;
    TrackerConfig config;
    std::string warning;
};

// Tracks every start of every mixed cell of a plain square system and counts
// the distinct validated torus solutions against the cross-checked mixed
// volume of the Newton polytopes.
SolveReport solve_square_system(const NumericSystem& system, RandomSeed seed,
                                const TrackerConfig& config);

// Builds the critical system of (model, u) and solves it the same way; the
// mixed volume reported follows the k > n convention of
// ml_degree_mixed_volume.
SolveReport solve_ml_system(const PolynomialSystem& model, const DataVector& u,
                            RandomSeed seed, const TrackerConfig& config);

// Retries once with resampled coefficients on the same supports when the
// first attempt disagrees with the mixed volume; both reports are kept.
struct MLSolveAttempts {
    std::vector<SolveReport> attempts;
    bool resampled_coefficients = false;
    const SolveReport& final_report() const { return attempts.back(); }
};
MLSolveAttempts solve_ml_with_retry(const PolynomialSystem& model, const DataVector& u,
                                    RandomSeed seed, const TrackerConfig& config);

// True iff every coordinate of every solution has modulus above threshold.
bool verify_torus_membership(const SolveReport& report, double threshold);

}  // namespace mldeg
