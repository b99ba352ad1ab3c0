#include "chsbm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "chsbm/generator.hpp"
#include "chsbm/io.hpp"
#include "chsbm/likelihood.hpp"
#include "chsbm/thresholds.hpp"
#include "chsbm/two_stage.hpp"

namespace chsbm {

namespace fs = std::filesystem;

std::string algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Mle: return "mle";
        case Algorithm::TwoStage: return "two-stage";
        case Algorithm::Sdp: return "sdp";
        case Algorithm::LocalSearch: return "local-search";
    }
    throw Error("algorithm_name: unknown algorithm");
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "mle") return Algorithm::Mle;
    if (name == "two-stage") return Algorithm::TwoStage;
    if (name == "sdp") return Algorithm::Sdp;
    if (name == "local-search") return Algorithm::LocalSearch;
    throw ParamError("unknown algorithm '" + name +
                     "'; expected mle, two-stage, sdp or local-search");
}

namespace {

std::string trim(const std::string& text) {
    std::size_t begin = text.find_first_not_of(" \t\r");
    std::size_t end = text.find_last_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    return text.substr(begin, end - begin + 1);
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::string body = value;
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') {
            throw ParamError("config: unterminated list for '" + key + "'");
        }
        body = body.substr(1, body.size() - 2);
    }
    std::vector<double> values;
    std::string token;
    std::istringstream stream(body);
    while (std::getline(stream, token, ',')) {
        token = trim(token);
        if (token.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            values.push_back(std::stod(token, &used));
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            throw ParamError("config: bad number '" + token + "' for '" + key + "'");
        }
    }
    if (values.empty()) {
        throw ParamError("config: empty list for '" + key + "'");
    }
    return values;
}

double parse_single_double(const std::string& value, const std::string& key) {
    const std::vector<double> values = parse_double_list(value, key);
    if (values.size() != 1) {
        throw ParamError("config: '" + key + "' expects a single value");
    }
    return values.front();
}

std::uint64_t parse_uint(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const unsigned long long parsed = std::stoull(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return parsed;
    } catch (const std::exception&) {
        throw ParamError("config: bad integer '" + value + "' for '" + key + "'");
    }
}

/// Runs fn(0..count) over `jobs` workers. Results land in caller-indexed
/// slots, so scheduling cannot affect the aggregate.
template <typename Fn>
void parallel_tasks(std::size_t count, std::uint32_t jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    const std::uint32_t worker_count =
        static_cast<std::uint32_t>(std::min<std::size_t>(jobs, count));
    pool.reserve(worker_count);
    for (std::uint32_t j = 0; j < worker_count; ++j) {
        pool.emplace_back(worker);
    }
    for (std::thread& thread : pool) {
        thread.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

struct TrialOutcome {
    bool exact = false;
    double agreement = 0.0;
    double seconds = 0.0;
};

void validate_cells(const ExperimentConfig& config) {
    if (config.p_values.empty() || config.t_values.empty()) {
        throw ParamError("config: p and t lists must be nonempty");
    }
    for (double p : config.p_values) {
        for (double t : config.t_values) {
            ModelParams params(config.n, config.m, p, config.q, t);  // validates
            (void)params;
        }
    }
}

CellResult make_cell(const ExperimentConfig& config, double p, double t) {
    CellResult cell;
    cell.m = config.m;
    cell.q = config.q;
    cell.p = p;
    cell.t = t;
    cell.algorithm = config.algorithm;
    cell.trials = config.trials;
    cell.i_threshold = info_threshold(config.m, p, config.q);
    cell.j_threshold = sdp_threshold(config.m, p, config.q);
    return cell;
}

std::string cell_stem(double p, double t, std::uint32_t trial) {
    return "chsbm_p" + io::format_double_10sig(p) + "_t" + io::format_double_10sig(t) +
           "_trial" + std::to_string(trial);
}

void write_extended_row(std::ostream& out, const CellResult& cell) {
    const double exact_rate =
        cell.trials == 0 ? 0.0
                         : static_cast<double>(cell.exact_count) /
                               static_cast<double>(cell.trials);
    out << cell.m << ',' << io::format_double_10sig(cell.q) << ','
        << io::format_double_10sig(cell.p) << ',' << io::format_double_10sig(cell.t)
        << ',' << io::format_double_10sig(cell.i_threshold) << ','
        << io::format_double_10sig(cell.j_threshold) << ','
        << verdict_name(classify_region(cell.m, cell.p, cell.q, cell.t)) << ','
        << algorithm_name(cell.algorithm) << ',' << cell.trials << ','
        << io::format_double_10sig(exact_rate) << ','
        << io::format_double_10sig(cell.mean_agreement) << "\n";
}

constexpr const char* kExtendedHeader =
    "m,q,p,t,i_threshold,j_threshold,verdict,algorithm,trials,exact_rate,"
    "mean_agreement";

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    bool trials_set = false;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::size_t comment = line.find('#');
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParamError("config: expected 'key = value' at line " +
                             std::to_string(line_number));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "n") {
            config.n = static_cast<std::uint32_t>(parse_uint(value, key));
        } else if (key == "m") {
            config.m = static_cast<std::uint32_t>(parse_uint(value, key));
        } else if (key == "q") {
            config.q = parse_single_double(value, key);
        } else if (key == "p") {
            config.p_values = parse_double_list(value, key);
        } else if (key == "t") {
            config.t_values = parse_double_list(value, key);
        } else if (key == "algorithm") {
            config.algorithm = algorithm_from_name(value);
        } else if (key == "trials") {
            config.trials = static_cast<std::uint32_t>(parse_uint(value, key));
            trials_set = true;
        } else if (key == "seed") {
            config.base_seed = parse_uint(value, key);
        } else if (key == "out") {
            config.output_path = value;
        } else if (key == "jobs") {
            config.jobs = static_cast<std::uint32_t>(parse_uint(value, key));
        } else if (key == "sdp_max_iter") {
            config.sdp.max_iterations = parse_uint(value, key);
        } else if (key == "sdp_tol") {
            config.sdp.tolerance = parse_single_double(value, key);
        } else if (key == "diag") {
            if (value == "one") {
                config.sdp.diag = DiagConstraint::UnitDiagonal;
            } else if (value == "paper") {
                config.sdp.diag = DiagConstraint::ZeroDiagonal;
            } else {
                throw ParamError("config: diag must be 'one' or 'paper'");
            }
        } else if (key == "local_search_max_sweeps") {
            config.local_search_max_sweeps = parse_uint(value, key);
        } else {
            throw ParamError("config: unknown key '" + key + "' at line " +
                             std::to_string(line_number));
        }
    }
    if (config.n == 0 || config.m == 0) {
        throw ParamError("config: n and m are required");
    }
    if (!trials_set) {
        config.trials = 1;
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParamError("cannot open config '" + path + "'");
    }
    return parse_config(in);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t cell_index,
                         std::uint32_t trials, std::uint32_t trial_index) {
    return mix_seed(base_seed,
                    static_cast<std::uint64_t>(cell_index) * trials + trial_index);
}

LabelVector recover_instance(const CensoredHypergraph& graph, Algorithm algorithm,
                             std::uint64_t seed, const ExperimentConfig& config) {
    switch (algorithm) {
        case Algorithm::Mle:
            return mle_exhaustive(graph);
        case Algorithm::TwoStage:
            return two_stage_recover(graph, RngSeed{mix_seed(seed, kRecoverStream)});
        case Algorithm::Sdp: {
            const SolutionMatrix solution =
                solve_sdp(project_graph(binarize(graph)), config.sdp);
            return round_solution(solution);
        }
        case Algorithm::LocalSearch: {
            const LabelVector init = sample_labels(
                graph.node_count(), RngSeed{mix_seed(seed, kRecoverStream)});
            return mle_local_search(graph, init, config.local_search_max_sweeps);
        }
    }
    throw Error("recover_instance: unknown algorithm");
}

std::vector<CellResult> run_phase_cells(const ExperimentConfig& config) {
    validate_cells(config);

    struct GridCell {
        double p;
        double t;
    };
    std::vector<GridCell> cells;
    for (double p : config.p_values) {
        for (double t : config.t_values) {
            cells.push_back({p, t});
        }
    }

    const std::size_t task_count =
        cells.size() * static_cast<std::size_t>(config.trials);
    std::vector<TrialOutcome> outcomes(task_count);

    parallel_tasks(task_count, config.jobs, [&](std::size_t task) {
        const std::size_t cell_index = task / config.trials;
        const std::uint32_t trial =
            static_cast<std::uint32_t>(task % config.trials);
        const GridCell& cell = cells[cell_index];
        const std::uint64_t seed =
            trial_seed(config.base_seed, cell_index, config.trials, trial);

        const auto start = std::chrono::steady_clock::now();
        ModelParams params(config.n, config.m, cell.p, config.q, cell.t);
        const LabelVector planted =
            sample_labels(config.n, RngSeed{mix_seed(seed, kLabelStream)});
        const CensoredHypergraph graph =
            sample_chsbm(params, planted, RngSeed{mix_seed(seed, kEdgeStream)});
        const LabelVector estimate =
            recover_instance(graph, config.algorithm, seed, config);
        const RecoveryResult result = agreement(estimate, planted);
        const auto stop = std::chrono::steady_clock::now();

        outcomes[task] = TrialOutcome{
            result.exact, result.agreement,
            std::chrono::duration<double>(stop - start).count()};
    });

    std::vector<CellResult> results;
    results.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellResult cell = make_cell(config, cells[c].p, cells[c].t);
        double agreement_sum = 0.0;
        for (std::uint32_t k = 0; k < config.trials; ++k) {
            const TrialOutcome& outcome = outcomes[c * config.trials + k];
            cell.exact_count += outcome.exact ? 1 : 0;
            agreement_sum += outcome.agreement;
            cell.wall_seconds += outcome.seconds;
        }
        cell.mean_agreement =
            config.trials == 0 ? 0.0 : agreement_sum / config.trials;
        results.push_back(cell);
    }
    return results;
}

std::vector<std::string> run_generate(const ExperimentConfig& config) {
    if (config.trials < 1) {
        throw ParamError("generate: trials must be at least 1");
    }
    if (config.output_path.empty()) {
        throw ParamError("generate: output path is required");
    }
    validate_cells(config);  // every cell checked before any file is written

    std::error_code ec;
    fs::create_directories(config.output_path, ec);
    if (ec) {
        throw IoError("generate: cannot create directory '" + config.output_path +
                      "': " + ec.message());
    }

    std::vector<std::string> stems;
    std::size_t cell_index = 0;
    for (double p : config.p_values) {
        for (double t : config.t_values) {
            ModelParams params(config.n, config.m, p, config.q, t);
            for (std::uint32_t trial = 0; trial < config.trials; ++trial) {
                const std::uint64_t seed =
                    trial_seed(config.base_seed, cell_index, config.trials, trial);
                const LabelVector planted = sample_labels(
                    config.n, RngSeed{mix_seed(seed, kLabelStream)});
                const CensoredHypergraph graph = sample_chsbm(
                    params, planted, RngSeed{mix_seed(seed, kEdgeStream)});

                const std::string stem =
                    (fs::path(config.output_path) / cell_stem(p, t, trial)).string();
                io::write_hypergraph_file(graph, stem + ".chsbm");
                io::write_labels_file(planted, stem + ".labels");
                stems.push_back(stem);
            }
            ++cell_index;
        }
    }
    return stems;
}

std::vector<CellResult> run_recover(const std::vector<std::string>& inputs,
                                    const ExperimentConfig& config) {
    std::vector<std::string> files;
    for (const std::string& input : inputs) {
        if (fs::is_directory(input)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(input)) {
                if (entry.path().extension() == ".chsbm") {
                    found.push_back(entry.path().string());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(input);
        }
    }
    if (files.empty()) {
        throw ParamError("recover: no input files");
    }

    struct Key {
        std::uint32_t m;
        double q, p, t;
        bool operator==(const Key&) const = default;
    };
    std::vector<Key> order;
    std::vector<CellResult> cells;
    std::vector<double> agreement_sums;

    for (const std::string& file : files) {
        const CensoredHypergraph graph = io::read_hypergraph_file(file);

        fs::path labels_path(file);
        labels_path.replace_extension(".labels");
        if (!fs::exists(labels_path)) {
            throw FormatError("planted labels file '" + labels_path.string() +
                                  "' is missing",
                              0);
        }
        const LabelVector planted = io::read_labels_file(labels_path.string());
        if (planted.size() != graph.node_count()) {
            throw FormatError("labels in '" + labels_path.string() +
                                  "' do not match n",
                              1);
        }

        // FNV-1a over the path: stable across platforms, unlike std::hash.
        std::uint64_t path_hash = 0xCBF29CE484222325ULL;
        for (unsigned char c : file) {
            path_hash = (path_hash ^ c) * 0x100000001B3ULL;
        }
        const std::uint64_t seed = mix_seed(config.base_seed, path_hash);
        const auto start = std::chrono::steady_clock::now();
        const LabelVector estimate =
            recover_instance(graph, config.algorithm, seed, config);
        const RecoveryResult result = agreement(estimate, planted);
        const auto stop = std::chrono::steady_clock::now();

        const ModelParams& params = graph.params();
        const Key key{params.m, params.q, params.p, params.t};
        std::size_t index = 0;
        for (; index < order.size(); ++index) {
            if (order[index] == key) {
                break;
            }
        }
        if (index == order.size()) {
            order.push_back(key);
            CellResult cell;
            cell.m = params.m;
            cell.q = params.q;
            cell.p = params.p;
            cell.t = params.t;
            cell.algorithm = config.algorithm;
            cell.i_threshold = info_threshold(params.m, params.p, params.q);
            cell.j_threshold = sdp_threshold(params.m, params.p, params.q);
            cells.push_back(cell);
            agreement_sums.push_back(0.0);
        }
        CellResult& cell = cells[index];
        cell.trials += 1;
        cell.exact_count += result.exact ? 1 : 0;
        agreement_sums[index] += result.agreement;
        cell.wall_seconds += std::chrono::duration<double>(stop - start).count();
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        cells[i].mean_agreement = agreement_sums[i] / cells[i].trials;
    }
    return cells;
}

void write_phase_results_csv(const std::vector<CellResult>& cells, std::ostream& out) {
    out << kExtendedHeader << "\n";
    for (const CellResult& cell : cells) {
        write_extended_row(out, cell);
    }
}

std::vector<CellResult> read_phase_results_csv(std::istream& in) {
    std::string line;
    std::size_t line_number = 0;
    if (!std::getline(in, line)) {
        throw FormatError("missing CSV header", 1);
    }
    ++line_number;
    if (line != kExtendedHeader) {
        throw FormatError("unexpected CSV header '" + line + "'", line_number);
    }
    std::vector<CellResult> cells;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string token;
        auto next = [&](const char* what) {
            if (!std::getline(fields, token, ',')) {
                throw FormatError(std::string("missing field ") + what, line_number);
            }
            return token;
        };
        CellResult cell;
        cell.m = static_cast<std::uint32_t>(std::stoul(next("m")));
        cell.q = std::stod(next("q"));
        cell.p = std::stod(next("p"));
        cell.t = std::stod(next("t"));
        cell.i_threshold = std::stod(next("i_threshold"));
        cell.j_threshold = std::stod(next("j_threshold"));
        (void)verdict_from_name(next("verdict"));
        cell.algorithm = algorithm_from_name(next("algorithm"));
        cell.trials = static_cast<std::uint32_t>(std::stoul(next("trials")));
        const double exact_rate = std::stod(next("exact_rate"));
        cell.exact_count = static_cast<std::uint32_t>(
            std::lround(exact_rate * static_cast<double>(cell.trials)));
        cell.mean_agreement = std::stod(next("mean_agreement"));
        cells.push_back(cell);
    }
    return cells;
}

void write_recover_csv(const std::vector<CellResult>& cells, std::ostream& out) {
    out << "m,q,p,t,algorithm,trials,exact_count,mean_agreement,i_threshold,"
           "j_threshold,wall_time\n";
    for (const CellResult& cell : cells) {
        out << cell.m << ',' << io::format_double_10sig(cell.q) << ','
            << io::format_double_10sig(cell.p) << ','
            << io::format_double_10sig(cell.t) << ',' << algorithm_name(cell.algorithm)
            << ',' << cell.trials << ',' << cell.exact_count << ','
            << io::format_double_10sig(cell.mean_agreement) << ','
            << io::format_double_10sig(cell.i_threshold) << ','
            << io::format_double_10sig(cell.j_threshold) << ','
            << io::format_double_10sig(cell.wall_seconds) << "\n";
    }
}

void run_phase_to_file(const ExperimentConfig& config) {
    if (config.output_path.empty()) {
        throw ParamError("phase: output path is required");
    }
    std::ostringstream buffer;
    if (config.trials == 0) {
        // Analytic mode: thresholds-only rows over the configured cells.
        std::vector<PhaseRow> rows;
        for (double p : config.p_values) {
            for (double t : config.t_values) {
                PhaseRow row;
                row.m = config.m;
                row.q = config.q;
                row.p = p;
                row.t = t;
                row.i_threshold = info_threshold(config.m, p, config.q);
                row.j_threshold = sdp_threshold(config.m, p, config.q);
                row.verdict = classify_region(config.m, p, config.q, t);
                rows.push_back(row);
            }
        }
        write_phase_csv(rows, buffer);
    } else {
        write_phase_results_csv(run_phase_cells(config), buffer);
    }
    std::ofstream out(config.output_path);
    if (!out) {
        throw IoError("phase: cannot open '" + config.output_path + "' for writing");
    }
    out << buffer.str();
    if (!out) {
        throw IoError("phase: write failed for '" + config.output_path + "'");
    }
}

}  // namespace chsbm
