#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tbp/baselines.hpp"
#include "tbp/envsim.hpp"

namespace tbp {

/// Grid of experiment cells: a family with its parameter list, the
/// algorithms to compare, and shared run parameters.
struct BenchConfig {
    std::string family = "benchmark";  // "benchmark" | "sphere"
    std::vector<int> dims{2};          // benchmark: one cell per d
    std::vector<int> arm_counts{20};   // sphere: one cell per K
    std::vector<std::string> algos{"tts", "random"};
    double delta = 0.05;
    double epsilon = 0.0;
    double sigma = 1.0;
    int trials = 100;
    uint64_t base_seed = 1;
    uint64_t instance_seed = 7;  // sphere instance construction
    double lazy_factor = 1.1;
    double c_stop = 1.0;
    long max_steps = 10000000;
    SolverOptions solver{1e-4, 2000};

    static BenchConfig from_json_text(const std::string& text);
    static BenchConfig load(const std::string& path);
    TtsConfig tts_config() const;
};

struct CellAlgoSummary {
    std::string cell;
    std::string algo;
    int trials = 0;
    double mean_tau = 0.0;
    double std_tau = 0.0;
    double median_tau = 0.0;
    double strict_error_rate = 0.0;
    double relaxed_error_rate = 0.0;
    int truncated = 0;
    int failed = 0;  // trials that threw; recorded as truncated rows
};

struct Summary {
    std::vector<CellAlgoSummary> rows;
    // per cell: sigma^2 log(1/(2 delta)) T* at the config delta
    std::vector<std::pair<std::string, double>> lower_bounds;
};

/// Instantiated grid cells in config order.
std::vector<std::pair<std::string, Instance>> make_cells(const BenchConfig& cfg);

/// Per-trial seed: mix_seed(base_seed, cell_index * trials + trial_index).
/// Seeds are shared across algorithms so comparisons are matched.
uint64_t trial_seed(const BenchConfig& cfg, size_t cell_index,
                    int trial_index);

/// Runs the whole grid (worker pool over (cell, algo, seed); TBP_WORKERS
/// caps the thread count). Writes records.csv and summary.json under
/// outdir when non-empty; optionally returns the raw records in emission
/// order. Per-trial errors become truncated rows and never abort the
/// grid.
Summary run_bench(const BenchConfig& cfg, const std::string& outdir,
                  std::vector<TrialRecord>* raw_records = nullptr);

/// One row per (cell, algo): ratio of the Monte Carlo mean tau to the
/// theoretical floor; ratios below 0.9 are flagged as anomalies.
struct LowerBoundRow {
    std::string cell;
    std::string algo;
    double mean_tau = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool flagged = false;
};

std::vector<LowerBoundRow> compare_lower_bound(
    const Summary& summary,
    const std::vector<std::pair<std::string, Instance>>& cells, double delta);

/// RFC-4180 CSV with header algo,cell,seed,tau,strict,relaxed,truncated,
/// wall_ms; rows in (cell, algo, seed) order. wall_ms is excluded from
/// all determinism guarantees.
std::string records_to_csv(const std::vector<TrialRecord>& records);

std::string summary_to_json_text(const BenchConfig& cfg, const Summary& s);

}  // namespace tbp
