#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "specfact/json_io.hpp"

namespace fs = std::filesystem;
using namespace specfact;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConditionFailure = 2;

fs::path report_path_for(const fs::path& output) {
    fs::path p = output;
    p.replace_extension(".report.json");
    return p;
}

struct CommonOptions {
    std::string input;
    std::string output;
    RunConfig config;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool needs_input = true) {
    if (needs_input) {
        cmd->add_option("--input", opts.input, "input file")->required();
    }
    cmd->add_option("--output", opts.output, "output file")->required();
    cmd->add_option("--grid", opts.config.grid_size, "frequency grid size (power of two)");
    cmd->add_option("--rank-tol", opts.config.rank_tol, "relative eigenvalue rank tolerance");
    cmd->add_option("--causal-tol", opts.config.causal_tol,
                    "negative-index energy tolerance for causality checks");
    cmd->add_option("--trunc", opts.config.trunc, "coefficient truncation order (0 = N/4)");
    cmd->add_option("--seed", opts.config.seed, "random seed (default 0, never entropy)");
    cmd->add_flag("--force-noncausal", opts.config.force_noncausal,
                  "factorize even when the causality check fails (outputs tagged)");
}

int run_factorize(const CommonOptions& opts, bool emit_model) {
    DensityInput input = load_density_input(opts.input, opts.config);
    FactorizationOutcome outcome = run_factorization(input.field, opts.config);
    Json report = outcome_to_json(outcome, opts.config);
    if (emit_model) {
        write_json_file(report_path_for(opts.output), report);
        if (outcome.model) {
            write_json_file(opts.output, wold_model_to_json(*outcome.model));
        }
    } else {
        write_json_file(opts.output, report);
    }
    if (!outcome.conditions_ok || !outcome.all_pass) {
        std::cout << "FAIL: " << (outcome.failure.empty() ? "one or more checks failed"
                                                          : outcome.failure)
                  << '\n';
        return kExitConditionFailure;
    }
    std::cout << "OK: rank " << outcome.rank_report.rank << ", all checks passed\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral factorization and linear prediction toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOptions factorize_opts;
    CLI::App* cmd_factorize =
        app.add_subcommand("factorize", "factor a density into a Wold model + report");
    add_common_flags(cmd_factorize, factorize_opts);

    CommonOptions check_opts;
    CLI::App* cmd_check = app.add_subcommand("check", "run regularity diagnostics only");
    add_common_flags(cmd_check, check_opts);

    CommonOptions sim_opts;
    std::size_t sim_length = 1000;
    std::size_t sim_burn_in = 0;
    std::string sim_noise = "complex";
    CLI::App* cmd_simulate = app.add_subcommand("simulate", "draw a sample path from an MA spec");
    add_common_flags(cmd_simulate, sim_opts);
    cmd_simulate->add_option("--length", sim_length, "path length T");
    cmd_simulate->add_option("--burn-in", sim_burn_in, "samples discarded before the window");
    cmd_simulate->add_option("--noise", sim_noise, "complex | real");

    CommonOptions predict_opts;
    std::string predict_path;
    std::string predict_csv;
    int steps = 1;
    CLI::App* cmd_predict = app.add_subcommand("predict", "h-step prediction from a model + path");
    add_common_flags(cmd_predict, predict_opts);
    cmd_predict->add_option("--path", predict_path, "sample path CSV")->required();
    cmd_predict->add_option("--steps", steps, "prediction horizon h");
    cmd_predict->add_option("--csv", predict_csv, "also write predictions as CSV");

    CommonOptions validate_opts;
    CLI::App* cmd_validate =
        app.add_subcommand("validate", "round-trip a spec through the factorization");
    add_common_flags(cmd_validate, validate_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_factorize->parsed()) return run_factorize(factorize_opts, /*emit_model=*/true);
        if (cmd_check->parsed()) return run_factorize(check_opts, /*emit_model=*/false);

        if (cmd_simulate->parsed()) {
            MASpec spec = ma_spec_from_json(load_json_file(sim_opts.input));
            SimulationConfig config;
            config.length = sim_length;
            config.seed = sim_opts.config.seed;
            config.burn_in = sim_burn_in;
            config.noise_kind = sim_noise == "real" ? NoiseKind::real_gaussian
                                                    : NoiseKind::complex_circular_gaussian;
            SamplePath path = ma_sample_path(spec, config);
            write_path_csv(sim_opts.output, path);
            std::cout << "OK: wrote " << path.values.size() << " samples\n";
            return kExitOk;
        }

        if (cmd_predict->parsed()) {
            WoldModel model = wold_model_from_json(load_json_file(predict_opts.input));
            SamplePath path = read_path_csv(predict_path);
            InnovationSeries noise = recover_noise(model, path);
            PredictionResult result = predict(model, noise, steps);
            Json j = prediction_to_json(result);
            j["version"] = kVersion;
            j["config"] = run_config_to_json(predict_opts.config);
            write_json_file(predict_opts.output, j);
            if (!predict_csv.empty()) write_prediction_csv(predict_csv, result);
            std::cout << "OK: predicted " << steps << " steps\n";
            return kExitOk;
        }

        if (cmd_validate->parsed()) {
            MASpec spec = ma_spec_from_json(load_json_file(validate_opts.input));
            FrequencyGrid grid(validate_opts.config.grid_size);
            RoundTripReport report = round_trip(spec, grid, validate_opts.config);
            write_json_file(validate_opts.output, round_trip_to_json(report, validate_opts.config));
            if (!report.factorization_ok) {
                std::cout << "FAIL: factorization did not produce a model\n";
                return kExitConditionFailure;
            }
            std::cout << "OK: round-trip residual " << report.residual << '\n';
            return kExitOk;
        }
    } catch (const RankInstabilityError& e) {
        std::cout << "FAIL: " << e.what() << '\n';
        return kExitConditionFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
