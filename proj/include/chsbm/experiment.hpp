#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chsbm/core.hpp"
#include "chsbm/sdp.hpp"

namespace chsbm {

enum class Algorithm { Mle, TwoStage, Sdp, LocalSearch };

std::string algorithm_name(Algorithm algorithm);
Algorithm algorithm_from_name(const std::string& name);

/// Experiment description: one (n, m, q) model, a list of p values and a
/// list of t values spanning the cells, and the Monte Carlo controls.
struct ExperimentConfig {
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    double q = 0.0;
    std::vector<double> p_values;
    std::vector<double> t_values;
    Algorithm algorithm = Algorithm::TwoStage;
    std::uint32_t trials = 1;  // 0 selects the analytic (thresholds-only) phase CSV
    std::uint64_t base_seed = 0;
    std::string output_path;
    std::uint32_t jobs = 1;
    SolverOptions sdp;
    std::size_t local_search_max_sweeps = 100;
};

/// Flat `key = value` text, lists as `p = [0.3, 0.4, 0.5]`, `#` comments.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// RNG sub-stream tags; per-trial seeds are
///   mix_seed(base_seed, cell_index * trials + trial_index)
/// and each consumer derives its own stream from that, so results do not
/// depend on scheduling or execution order.
inline constexpr std::uint64_t kLabelStream = 1;
inline constexpr std::uint64_t kEdgeStream = 2;
inline constexpr std::uint64_t kRecoverStream = 3;

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell_index,
                         std::uint32_t trials, std::uint32_t trial_index);

/// Aggregated Monte Carlo outcome for one (p, t) cell.
struct CellResult {
    std::uint32_t m = 0;
    double q = 0.0;
    double p = 0.0;
    double t = 0.0;
    Algorithm algorithm = Algorithm::TwoStage;
    std::uint32_t trials = 0;
    std::uint32_t exact_count = 0;
    double mean_agreement = 0.0;
    double i_threshold = 0.0;
    double j_threshold = 0.0;
    double wall_seconds = 0.0;
};

/// Recovers one planted instance with the configured algorithm. The seed
/// is the trial seed; algorithms that consume randomness derive their own
/// sub-stream from it.
LabelVector recover_instance(const CensoredHypergraph& graph, Algorithm algorithm,
                             std::uint64_t seed, const ExperimentConfig& config);

/// Monte Carlo over every (p, t) cell: sample, recover, compare. Trials
/// fan out over `jobs` workers; per-trial seeds and the fixed-order
/// reduction make the result identical to a serial run.
std::vector<CellResult> run_phase_cells(const ExperimentConfig& config);

/// Writes hypergraph + label files per (cell, trial) under the output
/// path: <out>/chsbm_p<p>_t<t>_trial<k>.chsbm and the matching .labels.
/// Validates every cell before the first write. Returns the file stems.
std::vector<std::string> run_generate(const ExperimentConfig& config);

/// Reads .chsbm files (directories are scanned for *.chsbm, sorted),
/// requires the sibling .labels file, recovers with the configured
/// algorithm and aggregates per (m, q, p, t) cell in first-seen order.
std::vector<CellResult> run_recover(const std::vector<std::string>& inputs,
                                    const ExperimentConfig& config);

/// Phase CSV: the thresholds schema plus algorithm/trials/exact_rate/
/// mean_agreement columns. Zero trials emits the analytic thresholds CSV.
void write_phase_results_csv(const std::vector<CellResult>& cells, std::ostream& out);
std::vector<CellResult> read_phase_results_csv(std::istream& in);

/// Recover-report CSV including exact_count and wall_time.
void write_recover_csv(const std::vector<CellResult>& cells, std::ostream& out);

/// Full `phase` command: Monte Carlo (or analytic when trials = 0) written
/// to config.output_path.
void run_phase_to_file(const ExperimentConfig& config);

}  // namespace chsbm
