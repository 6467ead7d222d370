#include "scanfdr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scanfdr/asymptotics.hpp"
#include "scanfdr/harness.hpp"
#include "scanfdr/mixture.hpp"
#include "scanfdr/procedures.hpp"
#include "scanfdr/pvalue_sample.hpp"

namespace scanfdr::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelFlags {
    std::string spec;
    std::string kind;
    std::optional<double> mu;
    std::optional<double> eps;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", kind, "null distribution: normal or cauchy");
        cmd->add_option("--mu", mu, "effect size (> 0)");
        cmd->add_option("--eps", eps, "alternative fraction in (0,1)");
        cmd->add_option("--spec", spec, "model spec 'model=<normal|cauchy> mu=<f> eps=<f>'");
    }

    MixtureModel resolve() const {
        try {
            if (!spec.empty()) {
                if (!kind.empty() || mu || eps) {
                    throw UsageError("--spec cannot be combined with --model/--mu/--eps");
                }
                return parse_model_spec(spec);
            }
            if (kind.empty()) throw UsageError("--model is required");
            if (!mu) throw UsageError("--mu is required");
            if (!eps) throw UsageError("--eps is required");
            NullKind k;
            try {
                k = parse_null_kind(kind);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--model: ") + e.what());
            }
            if (!(*mu > 0.0) || !std::isfinite(*mu)) throw UsageError("--mu must be positive and finite");
            if (!(*eps > 0.0 && *eps < 1.0)) throw UsageError("--eps must lie in (0,1)");
            return MixtureModel::create(NullDistribution(k), *mu, *eps);
        } catch (const UsageError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--spec: ") + e.what());
        }
    }
};

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        std::ostringstream msg;
        msg << "--alpha must lie in (0,1), got " << alpha;
        throw UsageError(msg.str());
    }
}

json outcome_json(const RejectionOutcome& o, const PValueSample& sample, double alpha) {
    json j;
    j["method"] = std::string(to_string(o.method));
    j["alpha"] = alpha;
    j["n"] = sample.size();
    j["sigma"] = o.sigma;
    j["tau"] = o.tau;
    j["k"] = o.covered_count;
    j["fdr_hat"] = o.fdr_hat;
    j["continuous_length"] = o.continuous_length;
    j["rejected"] = o.rejected;
    return j;
}

json oracle_json(const MixtureModel& m, const OracleReport& r) {
    const auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    json j;
    j["model"] = std::string(to_string(m.null_dist.kind()));
    j["mu"] = m.mu;
    j["eps"] = m.eps;
    j["alpha"] = r.alpha;
    j["pi0"] = r.pi0;
    j["beta"] = r.beta;
    j["delta_bh"] = r.delta_bh;
    j["delta_scan"] = r.delta_scan;
    j["s_star"] = r.s_star;
    j["t_star"] = r.t_star;
    j["grid_maximizer_runs"] = r.grid_maximizer_runs;
    j["scan_degenerate"] = r.scan_degenerate;
    j["fdr_bar_at_maximizer"] = r.fdr_bar_at_maximizer;
    j["fnr_bh_limit"] = r.fnr_bh_limit;
    j["fnr_scan_limit"] = r.fnr_scan_limit;
    j["property1"] = r.property1_holds;
    j["g_prime_zero"] = finite_or_null(r.g_prime_zero);
    j["g_prime_delta_bh"] = finite_or_null(r.g_prime_delta_bh);
    j["assumption_A"] = r.assumption_A;
    j["slope_left"] = r.slope_left;
    j["slope_right"] = r.slope_right;
    j["lower_crossing"] = r.lower_crossing ? json(*r.lower_crossing) : json(nullptr);
    if (r.thm6) {
        j["thm6_a"] = r.thm6->a;
        j["thm6_limit"] = r.thm6->limit;
    }
    return j;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interval-scan and Benjamini-Hochberg FDR procedures, simulation and oracles", "scanfdr"};
    app.require_subcommand(1, 1);

    double alpha = 0.10;
    std::string input;
    std::string output;
    std::size_t n = 0;
    std::vector<std::size_t> n_grid;
    std::size_t reps = 0;
    std::optional<std::uint64_t> seed;
    std::size_t workers = 0;
    std::size_t points = 101;
    std::vector<std::string> method_names{"bh", "scan"};
    bool timing = false;
    ModelFlags model_flags;

    const auto add_alpha = [&](CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "FDR level in (0,1)")->capture_default_str();
    };

    auto* bh_cmd = app.add_subcommand("bh", "Benjamini-Hochberg step-up on a P-value file");
    auto* scan_cmd = app.add_subcommand("scan", "interval scan procedure on a P-value file");
    for (auto* cmd : {bh_cmd, scan_cmd}) {
        add_alpha(cmd);
        cmd->add_option("--input", input, "P-value file")->required();
    }

    auto* sim_cmd = app.add_subcommand("simulate", "write a labelled P-value file from a mixture model");
    model_flags.attach(sim_cmd);
    sim_cmd->add_option("--n", n, "number of hypotheses")->required();
    sim_cmd->add_option("--seed", seed, "RNG seed")->required();
    sim_cmd->add_option("--output", output, "output file")->required();

    auto* exp_cmd = app.add_subcommand("experiment", "replicated Monte Carlo comparison of the procedures");
    model_flags.attach(exp_cmd);
    add_alpha(exp_cmd);
    exp_cmd->add_option("--n-grid", n_grid, "sample sizes, comma separated")->required()->delimiter(',');
    exp_cmd->add_option("--reps", reps, "replications per n")->required();
    exp_cmd->add_option("--seed", seed, "master seed")->required();
    exp_cmd->add_option("--workers", workers, "worker threads (0 = all cores)");
    exp_cmd->add_option("--methods", method_names, "methods, comma separated")->delimiter(',');
    exp_cmd->add_option("--output", output, "directory receiving records.csv and summary.csv")->required();
    exp_cmd->add_flag("--timing", timing, "record per-procedure wall time in elapsed_ms");

    auto* oracle_cmd = app.add_subcommand("oracle", "population-level limits for a mixture model");
    model_flags.attach(oracle_cmd);
    add_alpha(oracle_cmd);

    auto* gcurve_cmd = app.add_subcommand("gcurve", "tabulate G(t) and the line beta*t");
    model_flags.attach(gcurve_cmd);
    add_alpha(gcurve_cmd);
    gcurve_cmd->add_option("--points", points, "grid points (>= 2)")->capture_default_str();
    gcurve_cmd->add_option("--output", output, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (bh_cmd->parsed() || scan_cmd->parsed()) {
            check_alpha(alpha);
            const PValueSample sample = read_pvalue_file(input);
            if (sample.empty()) throw std::runtime_error(input + ": no P-values found");
            const Method m = bh_cmd->parsed() ? Method::bh : Method::scan;
            out << outcome_json(run_procedure(m, sample, alpha), sample, alpha).dump(2) << '\n';
        } else if (sim_cmd->parsed()) {
            const MixtureModel model = model_flags.resolve();
            if (n < 1) throw UsageError("--n must be at least 1");
            const LabeledSample data = sample_labeled(model, n, *seed);
            write_pvalue_file(output, data.sample);
        } else if (exp_cmd->parsed()) {
            check_alpha(alpha);
            ExperimentConfig cfg;
            cfg.model = model_flags.resolve();
            cfg.alpha = alpha;
            cfg.n_grid = n_grid;
            cfg.replications = reps;
            cfg.master_seed = *seed;
            cfg.workers = workers;
            cfg.capture_timing = timing;
            cfg.methods.clear();
            for (const auto& name : method_names) {
                try {
                    cfg.methods.push_back(parse_method(name));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(std::string("--methods: ") + e.what());
                }
            }
            if (reps < 1) throw UsageError("--reps must be at least 1");
            for (const std::size_t v : n_grid) {
                if (v < 1) throw UsageError("--n-grid entries must be at least 1");
            }
            const std::filesystem::path dir(output);
            std::filesystem::create_directories(dir);
            const auto records = run_experiment(cfg);
            write_records(dir / "records.csv", records);
            write_summary(dir / "summary.csv", summarize(records));
        } else if (oracle_cmd->parsed()) {
            check_alpha(alpha);
            const MixtureModel model = model_flags.resolve();
            out << oracle_json(model, compute_oracle(model, alpha)).dump(2) << '\n';
        } else if (gcurve_cmd->parsed()) {
            check_alpha(alpha);
            const MixtureModel model = model_flags.resolve();
            if (points < 2) throw UsageError("--points must be at least 2");
            write_gcurve(output, gcurve(model, beta_constant(alpha, model.pi0()), points));
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

}  // namespace scanfdr::cli
