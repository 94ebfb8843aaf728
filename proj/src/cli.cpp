#include "mldeg/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "mldeg/reports.hpp"
#include "mldeg/system_io.hpp"

namespace mldeg {

namespace {

using nlohmann::json;

struct CommonOptions {
    std::string input_path;
    std::string out_path;
    uint64_t seed = 0;
    bool seed_given = false;
};

struct TrackerOptions {
    TrackerConfig config;

    void attach(CLI::App* cmd) {
        cmd->add_option("--newton-tol", config.newton_tolerance, "Newton tolerance");
        cmd->add_option("--initial-step", config.initial_step, "initial step length");
        cmd->add_option("--min-step", config.min_step, "smallest step before giving up");
        cmd->add_option("--max-newton-iters", config.max_newton_iters,
                        "corrector iteration budget");
        cmd->add_option("--max-steps", config.max_steps, "per-path step budget");
        cmd->add_option("--torus-threshold", config.torus_threshold,
                        "smallest accepted coordinate modulus");
        cmd->add_option("--dedup-distance", config.dedup_distance,
                        "distance below which endpoints merge");
        cmd->add_option("--threads", config.threads, "path-tracking workers (0 = auto)");
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw InputError("cannot open output file '" + out_path + "'");
    file << text;
}

struct LoadedInput {
    ParsedSystem parsed;
    std::string digest;
    uint64_t seed = 0;
    DataVector data;   // from the file or sampled from the seed
    bool data_sampled = false;
};

// Seed priority: --seed flag, then the file's seed field, then zero.
LoadedInput load_input(const CommonOptions& common) {
    const std::string text = read_file(common.input_path);
    LoadedInput loaded{parse_system(text), "fnv1a64:" + to_hex(fnv1a64(text)), 0,
                       DataVector{}, false};
    loaded.seed = common.seed_given ? common.seed
                                    : loaded.parsed.seed.value_or(0);
    if (loaded.parsed.data) {
        loaded.data = *loaded.parsed.data;
    } else {
        loaded.data = sample_data_vector(loaded.parsed.system.variable_count(),
                                         RandomSeed{loaded.seed});
        loaded.data_sampled = true;
    }
    return loaded;
}

json data_vector_json(const DataVector& u) {
    json out = json::array();
    for (double v : u.values) out.push_back(v);
    return out;
}

json envelope(const std::string& command, const LoadedInput& input) {
    return json{{"command", command},
                {"input_digest", input.digest},
                {"seed", input.seed}};
}

void warn_desk_scale(int dim, std::ostream& err) {
    if (dim > kDeskScaleDimension)
        err << "warning: dimension " << dim << " exceeds the desk scale bound "
            << kDeskScaleDimension << "; expect long running times\n";
}

void emit(const json& report, const CommonOptions& common, std::ostream& out) {
    write_output(report.dump(2) + "\n", common.out_path, out);
}

int exit_code_for_agreement(bool agreement) { return agreement ? 0 : 2; }

// ---- subcommand handlers ----

int run_validate(const CommonOptions& common, std::ostream& out, std::ostream& err) {
    (void)err;
    LoadedInput input = load_input(common);
    json report = envelope("validate", input);
    report["valid"] = true;
    report["n"] = input.parsed.system.variable_count();
    report["k"] = input.parsed.system.equation_count();
    report["has_data_vector"] = input.parsed.data.has_value();
    emit(report, common, out);
    return 0;
}

int run_ml_system(const CommonOptions& common, std::ostream& out, std::ostream& err) {
    LoadedInput input = load_input(common);
    MLSystem ml = build_ml_system(input.parsed.system, input.data);
    PolynomialSystem as_system(ml.total_dim(), ml.equations);
    if (input.data_sampled)
        err << "note: data vector sampled from seed " << input.seed << "\n";
    write_output(serialize_system(as_system, std::nullopt, input.seed), common.out_path,
                 out);
    return 0;
}

int run_mixed_volume(const CommonOptions& common, const std::string& method,
                     std::ostream& out, std::ostream& err) {
    LoadedInput input = load_input(common);
    const PolynomialSystem& system = input.parsed.system;
    if (system.equation_count() != system.variable_count())
        throw InputError("mixed volume needs a square system (k = n); got k=" +
                         std::to_string(system.equation_count()) +
                         ", n=" + std::to_string(system.variable_count()));
    warn_desk_scale(system.variable_count(), err);

    std::vector<LatticePolytope> polytopes;
    for (const auto& f : system.polynomials()) polytopes.push_back(newton_polytope(f));
    const auto supports = system.supports();

    json report = envelope("mixed-volume", input);
    report["method"] = method;
    if (method == "ie") {
        report["mixed_volume"] = json_bigint(mixed_volume_ie(polytopes));
    } else if (method == "cells") {
        MixedSubdivision sub = mixed_cells(supports, RandomSeed{input.seed});
        report["mixed_volume"] = json_bigint(sub.total);
        report["cells"] = subdivision_json(sub)["cells"];
        report["lifting_seed"] = sub.lifting_seed;
    } else {
        MixedSubdivision sub = mixed_cells(supports, RandomSeed{input.seed});
        const BigInt by_ie = mixed_volume_ie(polytopes);
        if (by_ie != sub.total)
            throw EngineDisagreement(
                "mixed volume engines disagree: inclusion-exclusion " + by_ie.str() +
                " vs mixed cells " + sub.total.str());
        report["mixed_volume"] = json_bigint(by_ie);
        report["cells"] = subdivision_json(sub)["cells"];
        report["lifting_seed"] = sub.lifting_seed;
    }
    emit(report, common, out);
    return 0;
}

int run_ml_degree(const CommonOptions& common, const std::string& method,
                  const TrackerConfig& tracker, std::ostream& out, std::ostream& err) {
    LoadedInput input = load_input(common);
    const PolynomialSystem& model = input.parsed.system;
    warn_desk_scale(model.variable_count() + model.equation_count(), err);

    MLSystem ml = build_ml_system(model, input.data);
    json polys = json::array();
    for (const auto& eq : ml.equations) polys.push_back(polytope_json(newton_polytope(eq)));

    json report = envelope("ml-degree", input);
    report["n"] = ml.n;
    report["k"] = ml.k;
    report["method"] = method;
    report["newton_polytopes"] = std::move(polys);
    report["u"] = data_vector_json(input.data);

    if (method == "mixed-volume") {
        MLDegreeResult degree =
            ml_degree_mixed_volume(model, input.data, RandomSeed{input.seed});
        report["ml_degree"] = json_bigint(degree.value);
        report["mixed_volume"] = json_bigint(degree.value);
        if (!degree.warning.empty()) {
            report["warning"] = degree.warning;
            err << "warning: " << degree.warning << "\n";
        }
        emit(report, common, out);
        return 0;
    }

    report["config"] = tracker_config_json(tracker);
    MLSolveAttempts attempts =
        solve_ml_with_retry(model, input.data, RandomSeed{input.seed}, tracker);
    const SolveReport& final = attempts.final_report();
    report["ml_degree"] = json_bigint(final.count);
    report["mixed_volume"] = json_bigint(final.mixed_volume);
    report["agreement"] = final.agreement;
    report["solve"] = solve_report_json(final);
    if (attempts.attempts.size() > 1) {
        report["retried_with_fresh_coefficients"] = true;
        report["first_attempt"] = solve_report_json(attempts.attempts.front());
        err << "warning: first solve disagreed with the mixed volume; retried with "
               "fresh coefficients on the same supports\n";
    }
    if (!final.agreement)
        err << "error: solution count " << final.count.str()
            << " still disagrees with mixed volume " << final.mixed_volume.str() << "\n";
    emit(report, common, out);
    return exit_code_for_agreement(final.agreement);
}

int run_classify(const CommonOptions& common, const std::string& weight_text, int radius,
                 std::ostream& out, std::ostream& err) {
    LoadedInput input = load_input(common);
    PolynomialSystem model = input.parsed.system;
    bool hat_applied = false;
    if (!divisible_by_full_monomial(model)) {
        model = multiply_by_full_monomial(model);
        hat_applied = true;
        err << "note: applied the full-monomial transform before classification\n";
    }
    MLSystem ml = build_ml_system(model, input.data);

    json report = envelope("classify", input);
    report["hat_applied"] = hat_applied;
    report["n"] = ml.n;
    report["k"] = ml.k;

    if (!weight_text.empty()) {
        std::vector<int64_t> w;
        std::stringstream stream(weight_text);
        std::string item;
        while (std::getline(stream, item, ',')) {
            try {
                w.push_back(std::stoll(item));
            } catch (const std::exception&) {
                throw InputError("malformed weight entry '" + item + "'");
            }
        }
        FaceCase face = classify_face(ml, WeightVector{w});
        report["classification"] = face_case_json(w, face);
    } else {
        report["scan"] = scan_json(scan_weight_vectors(ml, radius));
    }
    emit(report, common, out);
    return 0;
}

int run_bkk_check(const CommonOptions& common, int n, int trials, int max_terms,
                  int max_degree, const TrackerConfig& tracker, std::ostream& out,
                  std::ostream& err) {
    if (n < 1) throw InputError("--n must be at least 1");
    if (trials < 1) throw InputError("--trials must be at least 1");
    if (max_terms < 2) throw InputError("--max-terms must be at least 2");
    if (max_degree < 1) throw InputError("--max-degree must be at least 1");
    warn_desk_scale(n, err);

    SeededRng rng = SeededRng(common.seed).derive("bkk-check");
    json rows = json::array();
    int failures = 0;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<MonomialSupport> supports;
        for (int i = 0; i < n; ++i) {
            std::vector<Exponent> exps;
            const int count = static_cast<int>(rng.uniform_int(2, max_terms));
            for (int t = 0; t < count; ++t) {
                Exponent e(n);
                for (auto& v : e) v = rng.uniform_int(0, max_degree);
                exps.push_back(e);
            }
            std::sort(exps.begin(), exps.end());
            exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
            supports.push_back(MonomialSupport(exps, "g" + std::to_string(i + 1)));
        }

        auto run_once = [&](uint64_t trial_seed) {
            PolynomialSystem sys = sample_generic_system(supports, RandomSeed{trial_seed});
            NumericSystem numeric = NumericSystem::from_polynomials(sys.polynomials());
            return solve_square_system(numeric, RandomSeed{trial_seed}, tracker);
        };

        const uint64_t first_seed = rng.next_u64();
        SolveReport report = run_once(first_seed);
        bool retried = false;
        uint64_t used_seed = first_seed;
        if (!report.agreement) {
            retried = true;
            used_seed = rng.next_u64();
            report = run_once(used_seed);
        }
        if (!report.agreement) ++failures;
        rows.push_back(json{{"trial", trial},
                            {"seed", used_seed},
                            {"retried", retried},
                            {"mixed_volume", json_bigint(report.mixed_volume)},
                            {"count", json_bigint(report.count)},
                            {"agreement", report.agreement}});
    }

    json report = json{{"command", "bkk-check"},
                       {"seed", common.seed},
                       {"n", n},
                       {"trials", trials},
                       {"max_terms", max_terms},
                       {"max_degree", max_degree},
                       {"config", tracker_config_json(tracker)},
                       {"rows", std::move(rows)},
                       {"failures", failures}};
    emit(report, common, out);
    if (failures > 0) {
        err << "error: " << failures << " trial(s) disagree with the mixed volume\n";
        return 2;
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"maximum likelihood degrees of sparse polynomial systems via mixed "
                 "volumes and polyhedral continuation"};
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input)
            cmd->add_option("input", common.input_path, "system file (JSON)")->required();
        cmd->add_option("--out", common.out_path, "write the report to a file");
        cmd->add_option("--seed", common.seed, "random seed")
            ->each([&](const std::string&) { common.seed_given = true; });
    };

    auto* validate = app.add_subcommand("validate", "parse and check a system file");
    add_common(validate, true);

    auto* ml_system = app.add_subcommand("ml-system", "emit the critical system");
    add_common(ml_system, true);

    std::string mv_method = "both";
    auto* mixed_volume = app.add_subcommand("mixed-volume", "mixed volume of a square system");
    add_common(mixed_volume, true);
    mixed_volume->add_option("--method", mv_method, "ie | cells | both")
        ->check(CLI::IsMember({"ie", "cells", "both"}));

    std::string degree_method = "both";
    TrackerOptions degree_tracker;
    auto* ml_degree = app.add_subcommand("ml-degree", "maximum likelihood degree");
    add_common(ml_degree, true);
    ml_degree->add_option("--method", degree_method, "mixed-volume | solve | both")
        ->check(CLI::IsMember({"mixed-volume", "solve", "both"}));
    degree_tracker.attach(ml_degree);

    std::string weight_text;
    int radius = 0;
    auto* classify = app.add_subcommand("classify", "exposed-face classification");
    add_common(classify, true);
    auto* weight_opt =
        classify->add_option("--weight", weight_text, "comma-separated weight vector");
    classify->add_option("--radius", radius, "scan all weights with max-norm <= radius")
        ->excludes(weight_opt);

    int bkk_n = 2, bkk_trials = 20, bkk_terms = 4, bkk_degree = 3;
    TrackerOptions bkk_tracker;
    auto* bkk = app.add_subcommand("bkk-check", "random sparse-system count checks");
    add_common(bkk, false);
    bkk->add_option("--n", bkk_n, "number of variables");
    bkk->add_option("--trials", bkk_trials, "number of random systems");
    bkk->add_option("--max-terms", bkk_terms, "largest support size");
    bkk->add_option("--max-degree", bkk_degree, "largest exponent");
    bkk_tracker.attach(bkk);

    std::vector<const char*> argv;
    argv.push_back("mldeg");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(validate)) return run_validate(common, out, err);
        if (app.got_subcommand(ml_system)) return run_ml_system(common, out, err);
        if (app.got_subcommand(mixed_volume))
            return run_mixed_volume(common, mv_method, out, err);
        if (app.got_subcommand(ml_degree)) {
            degree_tracker.config.validate();
            return run_ml_degree(common, degree_method, degree_tracker.config, out, err);
        }
        if (app.got_subcommand(classify)) {
            if (weight_text.empty() && radius < 1)
                throw InputError("classify needs --weight or --radius");
            return run_classify(common, weight_text, radius, out, err);
        }
        if (app.got_subcommand(bkk)) {
            bkk_tracker.config.validate();
            return run_bkk_check(common, bkk_n, bkk_trials, bkk_terms, bkk_degree,
                                 bkk_tracker.config, out, err);
        }
        throw InputError("no subcommand selected");
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const ComputationAnomaly& e) {
        err << "computation anomaly: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace mldeg
