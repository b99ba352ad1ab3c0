// Command-line front end: CHSBM generation, recovery runs, Monte Carlo
// phase sweeps, closed-form thresholds and optimality certificates.
//
// Exit codes: 0 success, 2 config error, 3 data-format error, 4 solver
// failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chsbm/experiment.hpp"
#include "chsbm/generator.hpp"
#include "chsbm/io.hpp"
#include "chsbm/sdp.hpp"
#include "chsbm/thresholds.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFormat = 3;
constexpr int kExitSolver = 4;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> algo;
    std::optional<std::uint32_t> trials;
    std::optional<std::string> out;
    std::optional<std::uint32_t> jobs;
    std::optional<std::size_t> sdp_max_iter;
    std::optional<double> sdp_tol;
    std::optional<std::string> diag;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool config_required) {
    auto* config = cmd->add_option("--config", flags.config_path,
                                   "experiment config file (key = value)");
    if (config_required) {
        config->required();
    }
    cmd->add_option("--seed", flags.seed, "base seed (overrides config)");
    cmd->add_option("--algo", flags.algo,
                    "algorithm: mle, two-stage, sdp or local-search");
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials per cell");
    cmd->add_option("--out", flags.out, "output path");
    cmd->add_option("--jobs", flags.jobs, "worker threads for trials");
    cmd->add_option("--sdp-max-iter", flags.sdp_max_iter, "SDP iteration cap");
    cmd->add_option("--sdp-tol", flags.sdp_tol, "SDP residual tolerance");
    cmd->add_option("--diag", flags.diag,
                    "SDP diagonal constraint: 'one' (default) or 'paper'");
}

chsbm::ExperimentConfig load_config(const CommonFlags& flags) {
    chsbm::ExperimentConfig config;
    if (!flags.config_path.empty()) {
        config = chsbm::parse_config_file(flags.config_path);
    }
    if (flags.seed) {
        config.base_seed = *flags.seed;
    }
    if (flags.algo) {
        config.algorithm = chsbm::algorithm_from_name(*flags.algo);
    }
    if (flags.trials) {
        config.trials = *flags.trials;
    }
    if (flags.out) {
        config.output_path = *flags.out;
    }
    if (flags.jobs) {
        config.jobs = *flags.jobs;
    }
    if (flags.sdp_max_iter) {
        config.sdp.max_iterations = *flags.sdp_max_iter;
    }
    if (flags.sdp_tol) {
        config.sdp.tolerance = *flags.sdp_tol;
    }
    if (flags.diag) {
        if (*flags.diag == "one") {
            config.sdp.diag = chsbm::DiagConstraint::UnitDiagonal;
        } else if (*flags.diag == "paper") {
            config.sdp.diag = chsbm::DiagConstraint::ZeroDiagonal;
        } else {
            throw chsbm::ParamError("--diag must be 'one' or 'paper'");
        }
    }
    return config;
}

void emit_recover_report(const std::vector<chsbm::CellResult>& cells,
                         const std::optional<std::string>& out) {
    if (out && !out->empty()) {
        std::ofstream file(*out);
        if (!file) {
            throw chsbm::IoError("cannot open '" + *out + "' for writing");
        }
        chsbm::write_recover_csv(cells, file);
    } else {
        chsbm::write_recover_csv(cells, std::cout);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"censored hypergraph block model toolkit"};
    app.require_subcommand(1);

    CommonFlags generate_flags;
    auto* cmd_generate = app.add_subcommand(
        "generate", "write hypergraph + label files per (cell, trial)");
    add_common_flags(cmd_generate, generate_flags, /*config_required=*/true);

    CommonFlags recover_flags;
    std::vector<std::string> recover_inputs;
    auto* cmd_recover =
        app.add_subcommand("recover", "recover planted labels from files");
    cmd_recover->add_option("inputs", recover_inputs, ".chsbm files or directories")
        ->required();
    add_common_flags(cmd_recover, recover_flags, /*config_required=*/false);

    CommonFlags phase_flags;
    auto* cmd_phase = app.add_subcommand(
        "phase", "Monte Carlo phase-diagram CSV (analytic when trials = 0)");
    add_common_flags(cmd_phase, phase_flags, /*config_required=*/true);

    std::uint32_t threshold_m = 0;
    double threshold_p = 0.0;
    double threshold_q = 0.0;
    std::optional<double> threshold_t;
    auto* cmd_threshold =
        app.add_subcommand("threshold", "print I_m and J_m for given m, p, q");
    cmd_threshold->add_option("--m", threshold_m, "hyperedge order")->required();
    cmd_threshold->add_option("--p", threshold_p, "within-community probability")
        ->required();
    cmd_threshold->add_option("--q", threshold_q, "cross-community probability")
        ->required();
    cmd_threshold->add_option("--t", threshold_t,
                              "optional reveal coefficient to classify");

    std::string certify_graph_path;
    std::string certify_labels_path;
    auto* cmd_certify = app.add_subcommand(
        "certify", "dual certificate for a hypergraph + label file");
    cmd_certify->add_option("hypergraph", certify_graph_path, ".chsbm file")
        ->required();
    cmd_certify->add_option("labels", certify_labels_path, ".labels file")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (cmd_generate->parsed()) {
            const auto config = load_config(generate_flags);
            const auto stems = chsbm::run_generate(config);
            std::cout << "wrote " << stems.size() << " instances under "
                      << config.output_path << "\n";
        } else if (cmd_recover->parsed()) {
            const auto config = load_config(recover_flags);
            const auto cells = chsbm::run_recover(recover_inputs, config);
            std::optional<std::string> out;
            if (!config.output_path.empty()) {
                out = config.output_path;
            }
            emit_recover_report(cells, out);
        } else if (cmd_phase->parsed()) {
            const auto config = load_config(phase_flags);
            chsbm::run_phase_to_file(config);
            std::cout << "wrote " << config.output_path << "\n";
        } else if (cmd_threshold->parsed()) {
            const double i_value =
                chsbm::info_threshold(threshold_m, threshold_p, threshold_q);
            const double j_value =
                chsbm::sdp_threshold(threshold_m, threshold_p, threshold_q);
            std::cout << "I_m = " << chsbm::io::format_double_10sig(i_value) << "\n";
            std::cout << "J_m = " << chsbm::io::format_double_10sig(j_value) << "\n";
            if (threshold_t) {
                std::cout << "verdict = "
                          << chsbm::verdict_name(chsbm::classify_region(
                                 threshold_m, threshold_p, threshold_q, *threshold_t))
                          << "\n";
            }
        } else if (cmd_certify->parsed()) {
            const auto graph =
                chsbm::binarize(chsbm::io::read_hypergraph_file(certify_graph_path));
            const auto labels = chsbm::io::read_labels_file(certify_labels_path);
            const auto report = chsbm::dual_certificate(graph, labels);
            std::cout << "lambda3 = " << chsbm::io::format_double_10sig(report.lambda3)
                      << "\n";
            std::cout << "certified = " << (report.certified ? "true" : "false")
                      << "\n";
            std::cout << "spectrum_head =";
            for (double value : report.spectrum_head) {
                std::cout << ' ' << chsbm::io::format_double_10sig(value);
            }
            std::cout << "\n";
        }
    } catch (const chsbm::SolverDiverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const chsbm::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const chsbm::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const chsbm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
