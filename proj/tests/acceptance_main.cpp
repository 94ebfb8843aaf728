// Acceptance suite: one line per criterion, exact values and pinned
// tolerances, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "mldeg/cli.hpp"
#include "mldeg/face_classifier.hpp"
#include "mldeg/solver.hpp"
#include "mldeg/system_io.hpp"

using namespace mldeg;
using nlohmann::json;

namespace {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<CriterionResult> g_results;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
    g_results.push_back({id, name, pass, detail});
    std::printf("%s  criterion %2d  %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

PolynomialSystem curve_system() {
    SparsePolynomial f(2);
    f.add_term({4, 0}, Coefficient::from_int(2));
    f.add_term({0, 3}, Coefficient::from_int(3));
    f.add_term({0, 0}, Coefficient::from_int(-5));
    return PolynomialSystem(2, {f});
}

std::string write_curve_file() {
    const std::string path = "/tmp/mldeg_acceptance_curve.json";
    std::ofstream f(path);
    f << serialize_system(curve_system());
    return path;
}

std::vector<MonomialSupport> random_supports(SeededRng& rng, int n, int k, int max_terms,
                                             int max_degree) {
    std::vector<MonomialSupport> supports;
    for (int j = 0; j < k; ++j) {
        std::set<Exponent> exps;
        const int count = static_cast<int>(rng.uniform_int(2, max_terms));
        for (int t = 0; t < count; ++t) {
            Exponent e(n);
            for (auto& v : e) v = rng.uniform_int(0, max_degree);
            exps.insert(e);
        }
        supports.push_back(MonomialSupport(
            std::vector<Exponent>(exps.begin(), exps.end()), "f" + std::to_string(j + 1)));
    }
    return supports;
}

// Solve artifacts retained for the cross-cutting criteria 7 and 8.
struct SolvedInstance {
    PolynomialSystem model;
    DataVector u;
    SolveReport report;
};
std::vector<SolvedInstance> g_ml_instances;
std::vector<SolveReport> g_plain_reports;
std::vector<std::vector<std::vector<Complex>>> g_cli_solutions;  // criterion 1 points

void criterion1_paper_regression() {
    const std::string path = write_curve_file();
    bool pass = true;
    std::string detail;
    for (uint64_t seed : {101ull, 102ull, 103ull, 104ull, 105ull}) {
        std::ostringstream out, err;
        const auto t0 = std::chrono::steady_clock::now();
        int code = run_cli({"ml-degree", path, "--method", "both", "--seed",
                            std::to_string(seed)},
                           out, err);
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = code == 0 && elapsed < 10.0;
        json report;
        if (ok) {
            report = json::parse(out.str());
            ok = report["mixed_volume"] == 12 && report["ml_degree"] == 12 &&
                 report["agreement"] == true;
        }
        if (ok) {
            std::vector<std::vector<Complex>> points;
            for (const auto& sol : report["solve"]["solutions"]) {
                std::vector<Complex> p;
                for (const auto& c : sol["point"])
                    p.emplace_back(c[0].get<double>(), c[1].get<double>());
                points.push_back(std::move(p));
            }
            g_cli_solutions.push_back(std::move(points));
        } else {
            pass = false;
            detail += "seed " + std::to_string(seed) + " failed (exit " +
                      std::to_string(code) + ", " + std::to_string(elapsed) + "s); ";
        }
    }
    if (pass) detail = "5/5 runs: mixed_volume=12, count=12, agreement, <10s each";
    record(1, "paper regression (12)", pass, detail);
}

void criterion2_hat_equality() {
    SeededRng rng(20250801);
    int matched = 0;
    const int families = 20;
    std::string detail;
    for (int trial = 0; trial < families; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 3));
        const int k = static_cast<int>(rng.uniform_int(1, std::min(2, n)));
        auto supports = random_supports(rng, n, k, 5, 3);
        PolynomialSystem model = sample_generic_system(supports, RandomSeed{rng.next_u64()});
        DataVector u = sample_data_vector(n, RandomSeed{rng.next_u64()});
        const BigInt plain =
            ml_degree_mixed_volume(model, u, RandomSeed{rng.next_u64()}).value;
        const BigInt hat = ml_degree_mixed_volume(multiply_by_full_monomial(model), u,
                                                  RandomSeed{rng.next_u64()})
                               .value;
        if (plain == hat)
            ++matched;
        else
            detail += "family " + std::to_string(trial) + ": " + plain.str() +
                      " != " + hat.str() + "; ";
    }
    if (matched == families)
        detail = "20/20 families: MVol agrees between the plain and divisible systems";
    record(2, "hat equality", matched == families, detail);
}

void criterion3_support_only_dependence() {
    SeededRng rng(20250802);
    int matched = 0;
    const int families = 10;
    std::string detail;
    for (int trial = 0; trial < families; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 3));
        const int k = static_cast<int>(rng.uniform_int(1, std::min(2, n)));
        auto supports = random_supports(rng, n, k, 4, 3);
        DataVector u = sample_data_vector(n, RandomSeed{rng.next_u64()});

        BigInt counts[2];
        bool ok = true;
        for (int variant = 0; variant < 2; ++variant) {
            const uint64_t seed = rng.next_u64();
            PolynomialSystem model = sample_generic_system(supports, RandomSeed{seed});
            SolveReport report =
                solve_ml_system(model, u, RandomSeed{seed}, TrackerConfig{});
            counts[variant] = report.count;
            ok = ok && report.agreement;
            g_ml_instances.push_back({model, u, report});
        }
        if (ok && counts[0] == counts[1])
            ++matched;
        else
            detail += "family " + std::to_string(trial) + ": " + counts[0].str() + " vs " +
                      counts[1].str() + "; ";
    }
    if (matched == families)
        detail = "10/10 families: counts match across coefficient seeds";
    record(3, "support-only dependence", matched == families, detail);
}

void criterion4_bkk_suite() {
    SeededRng rng(20250803);
    const int trials = 20;
    int first_pass = 0, final_pass = 0;
    std::string detail;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 3));
        auto supports = random_supports(rng, n, n, 5, 3);
        auto run_once = [&](uint64_t seed) {
            PolynomialSystem sys = sample_generic_system(supports, RandomSeed{seed});
            NumericSystem numeric = NumericSystem::from_polynomials(sys.polynomials());
            return solve_square_system(numeric, RandomSeed{seed}, TrackerConfig{});
        };
        SolveReport report = run_once(rng.next_u64());
        if (report.agreement) {
            ++first_pass;
        } else {
            report = run_once(rng.next_u64());
            if (!report.agreement)
                detail += "trial " + std::to_string(trial) + ": count " +
                          report.count.str() + " vs mv " + report.mixed_volume.str() + "; ";
        }
        if (report.agreement) ++final_pass;
        g_plain_reports.push_back(std::move(report));
    }
    const bool pass = first_pass >= 19 && final_pass == trials;
    if (pass)
        detail = std::to_string(first_pass) + "/20 on the first seed, 20/20 after retry";
    else
        detail = std::to_string(first_pass) + "/20 first pass, " +
                 std::to_string(final_pass) + "/20 after retry. " + detail;
    record(4, "BKK property suite", pass, detail);
}

void criterion5_engine_agreement() {
    SeededRng rng(20250804);
    int agreed = 0, total = 0;
    std::string detail;
    for (int dim = 2; dim <= 5; ++dim) {
        const int tuples = dim <= 3 ? 13 : 12;
        for (int trial = 0; trial < tuples; ++trial) {
            ++total;
            const int max_terms = dim <= 3 ? 5 : 3;
            const int max_degree = dim <= 3 ? 5 : 3;
            std::vector<MonomialSupport> supports =
                random_supports(rng, dim, dim, max_terms, max_degree);
            try {
                mixed_volume_cross_check(supports, RandomSeed{rng.next_u64()});
                ++agreed;
            } catch (const EngineDisagreement& e) {
                detail += std::string("dim ") + std::to_string(dim) + " trial " +
                          std::to_string(trial) + ": " + e.what() + "; ";
            }
        }
    }
    if (agreed == total) detail = "50/50 tuples in dimensions 2-5 agree exactly";
    record(5, "engine agreement", agreed == total, detail);
}

void criterion6_mixed_volume_axioms() {
    SeededRng rng(20250805);
    bool pass = true;
    std::string detail;

    auto random_tuple = [&](int d, int max_terms, int max_degree) {
        std::vector<LatticePolytope> polys;
        auto supports = random_supports(rng, d, d, max_terms, max_degree);
        for (const auto& s : supports) polys.emplace_back(s.exponents);
        return polys;
    };

    // Translation invariance.
    for (int trial = 0; trial < 10 && pass; ++trial) {
        const int d = static_cast<int>(rng.uniform_int(2, 4));
        auto polys = random_tuple(d, 4, 4);
        const BigInt before = mixed_volume_ie(polys);
        LatticePoint shift(d);
        for (auto& c : shift) c = rng.uniform_int(-6, 6);
        auto shifted = polys;
        shifted[0] = minkowski_sum(polys[0], LatticePolytope({shift}));
        if (mixed_volume_ie(shifted) != before) {
            pass = false;
            detail = "translation invariance failed";
        }
    }

    // Monotonicity under subpolytope deletion.
    for (int trial = 0; trial < 10 && pass; ++trial) {
        const int d = static_cast<int>(rng.uniform_int(2, 3));
        auto polys = random_tuple(d, 6, 5);
        const BigInt full = mixed_volume_ie(polys);
        std::vector<LatticePoint> subset;
        for (const auto& v : polys[0].vertices())
            if (subset.empty() || rng.uniform_int(0, 1)) subset.push_back(v);
        auto shrunk = polys;
        shrunk[0] = LatticePolytope(subset);
        if (mixed_volume_ie(shrunk) > full) {
            pass = false;
            detail = "monotonicity failed";
        }
    }

    // Special linear invariance: 20 random unimodular shears.
    for (int trial = 0; trial < 20 && pass; ++trial) {
        const int d = static_cast<int>(rng.uniform_int(2, 4));
        auto polys = random_tuple(d, 4, 3);
        const BigInt before = mixed_volume_ie(polys);
        std::vector<std::vector<int64_t>> phi(d, std::vector<int64_t>(d, 0));
        for (int i = 0; i < d; ++i) phi[i][i] = 1;
        for (int op = 0; op < 6; ++op) {
            const int i = static_cast<int>(rng.uniform_int(0, d - 1));
            const int j = static_cast<int>(rng.uniform_int(0, d - 1));
            if (i == j) continue;
            const int64_t c = rng.uniform_int(-2, 2);
            for (int col = 0; col < d; ++col)
                phi[i][col] = checked_add(phi[i][col], checked_mul(c, phi[j][col]));
        }
        std::vector<LatticePolytope> mapped;
        for (const auto& p : polys) {
            std::vector<LatticePoint> image;
            for (const auto& v : p.vertices()) {
                LatticePoint w(d, 0);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        w[i] = checked_add(w[i], checked_mul(phi[i][j], v[j]));
                image.push_back(w);
            }
            mapped.emplace_back(image);
        }
        if (mixed_volume_ie(mapped) != before) {
            pass = false;
            detail = "special linear invariance failed";
        }
    }

    // Symmetry under argument permutation.
    for (int trial = 0; trial < 10 && pass; ++trial) {
        const int d = static_cast<int>(rng.uniform_int(2, 4));
        auto polys = random_tuple(d, 4, 3);
        const BigInt before = mixed_volume_ie(polys);
        auto permuted = polys;
        for (std::size_t i = permuted.size(); i > 1; --i)
            std::swap(permuted[i - 1], permuted[rng.uniform_int(0, i - 1)]);
        if (mixed_volume_ie(permuted) != before) {
            pass = false;
            detail = "permutation symmetry failed";
        }
    }

    if (pass) detail = "translation, monotonicity, 20 shears, symmetry: all exact";
    record(6, "mixed volume axioms", pass, detail);
}

void criterion7_torus_membership() {
    const double threshold = 1e-8;
    long points = 0;
    bool pass = true;
    for (const auto& points_of_run : g_cli_solutions)
        for (const auto& p : points_of_run) {
            ++points;
            for (const Complex& c : p) pass = pass && std::abs(c) > threshold;
        }
    for (const auto& inst : g_ml_instances) {
        points += static_cast<long>(inst.report.solutions.size());
        pass = pass && verify_torus_membership(inst.report, threshold);
    }
    for (const auto& report : g_plain_reports) {
        points += static_cast<long>(report.solutions.size());
        pass = pass && verify_torus_membership(report, threshold);
    }
    record(7, "torus membership", pass,
           "all coordinates of " + std::to_string(points) +
               " solutions exceed 1e-8 in modulus");
}

void criterion8_transport() {
    bool pass = true;
    long checked = 0;
    std::string detail;

    auto check_instance = [&](const PolynomialSystem& model, const DataVector& u,
                              const std::vector<TorusPoint>& solutions) {
        MLSystem hat = build_ml_system(multiply_by_full_monomial(model), u);
        NumericSystem hat_numeric = NumericSystem::from_polynomials(hat.equations);
        for (const TorusPoint& p : solutions) {
            TorusPoint mapped = lambda_rescale(p, RescaleDirection::Forward);
            const double residual = hat_numeric.residual(mapped.coordinates);
            ++checked;
            if (!(residual < 1e-8)) {
                pass = false;
                detail += "residual " + std::to_string(residual) + "; ";
            }
        }
    };

    // The worked example plus every random instance solved in criterion 3.
    PolynomialSystem curve = curve_system();
    DataVector u = sample_data_vector(2, RandomSeed{424242});
    SolveReport curve_report =
        solve_ml_system(curve, u, RandomSeed{424242}, TrackerConfig{});
    check_instance(curve, u, curve_report.solutions);
    for (const auto& inst : g_ml_instances)
        check_instance(inst.model, inst.u, inst.report.solutions);

    if (pass)
        detail = std::to_string(checked) + " solutions transport with residual < 1e-8";
    record(8, "bijection transport", pass, detail);
}

void criterion9_face_trichotomy() {
    MLSystem hat = build_ml_system(multiply_by_full_monomial(curve_system()),
                                   DataVector::from_doubles({0.75, 1.25}));
    bool pass = true;
    std::string detail;

    WeightScan scan = scan_weight_vectors(hat, 3);
    const long expected_rows = 7 * 7 * 7 - 1;
    if (static_cast<long>(scan.rows.size()) != expected_rows ||
        scan.counts[0] + scan.counts[1] + scan.counts[2] != expected_rows) {
        pass = false;
        detail += "radius-3 scan not total; ";
    }

    const std::vector<std::pair<std::vector<int64_t>, int>> worked = {
        {{-3, 14, 3}, 1}, {{-3, -4, 3}, 2}, {{-3, 12, 3}, 3}};
    for (const auto& [w, expected] : worked) {
        FaceCase face = classify_face(hat, WeightVector{w});
        if (face.case_number() != expected) {
            pass = false;
            detail += "weight misclassified; ";
        }
    }

    long certificates = 0, zero_x_rejections = 0;
    auto certify = [&](const std::vector<int64_t>& w) {
        bool x_zero = true;
        for (int i = 0; i < hat.n; ++i) x_zero = x_zero && w[i] == 0;
        try {
            case3_kernel_certificate(hat, WeightVector{w});
            ++certificates;
            if (x_zero) {
                pass = false;
                detail += "zero x-part certificate not rejected; ";
            }
        } catch (const InputError&) {
            if (x_zero)
                ++zero_x_rejections;
            else {
                pass = false;
                detail += "certificate rejected unexpectedly; ";
            }
        } catch (const InternalError&) {
            pass = false;
            detail += "certificate verification failed; ";
        }
    };
    for (const auto& row : scan.rows)
        if (row.case_number == 3) certify(row.w);
    certify({-3, 12, 3});

    if (pass)
        detail = "scan total (" + std::to_string(expected_rows) + " weights), cases 1/2/3 as "
                 "worked, " + std::to_string(certificates) + " exact certificates, " +
                 std::to_string(zero_x_rejections) + " zero-x rejections";
    record(9, "face trichotomy", pass, detail);
}

void criterion10_polytope_fixtures() {
    PolynomialSystem curve = curve_system();
    DataVector u = DataVector::from_doubles({0.75, 1.25});
    MLSystem plain = build_ml_system(curve, u);
    MLSystem hat = build_ml_system(multiply_by_full_monomial(curve), u);

    using V = std::vector<LatticePoint>;
    const std::vector<std::pair<std::string, std::pair<V, V>>> fixtures = {
        {"f", {newton_polytope(plain.equations[2]).vertices(),
               V{{0, 0, 0}, {0, 3, 0}, {4, 0, 0}}}},
        {"fhat", {newton_polytope(hat.equations[2]).vertices(),
                  V{{1, 1, 0}, {1, 4, 0}, {5, 1, 0}}}},
        {"l1", {newton_polytope(plain.equations[0]).vertices(),
                V{{0, 0, 0}, {4, 0, 1}}}},
        {"l2", {newton_polytope(plain.equations[1]).vertices(),
                V{{0, 0, 0}, {0, 3, 1}}}},
        {"l1hat", {newton_polytope(hat.equations[0]).vertices(),
                   V{{0, 0, 0}, {1, 1, 1}, {1, 4, 1}, {5, 1, 1}}}},
        {"l2hat", {newton_polytope(hat.equations[1]).vertices(),
                   V{{0, 0, 0}, {1, 1, 1}, {1, 4, 1}, {5, 1, 1}}}},
    };
    bool pass = true;
    std::string detail;
    for (const auto& [name, pair] : fixtures) {
        if (pair.first != pair.second) {
            pass = false;
            detail += name + " mismatched; ";
        }
    }
    if (pass) detail = "6/6 vertex sets match exactly";
    record(10, "polytope fixtures", pass, detail);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1_paper_regression();
    criterion2_hat_equality();
    criterion3_support_only_dependence();
    criterion4_bkk_suite();
    criterion5_engine_agreement();
    criterion6_mixed_volume_axioms();
    criterion7_torus_membership();
    criterion8_transport();
    criterion9_face_trichotomy();
    criterion10_polytope_fixtures();

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int failures = 0;
    for (const auto& r : g_results)
        if (!r.pass) ++failures;
    std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(g_results.size()) - failures,
                g_results.size(), elapsed);
    return failures == 0 ? 0 : 1;
}
