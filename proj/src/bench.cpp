#include "tbp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tbp/complexity.hpp"
#include "tbp/errors.hpp"

namespace tbp {

namespace {

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

BenchConfig BenchConfig::from_json_text(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    BenchConfig cfg;
    read_if(j, "family", cfg.family);
    read_if(j, "dims", cfg.dims);
    read_if(j, "arm_counts", cfg.arm_counts);
    read_if(j, "algos", cfg.algos);
    read_if(j, "delta", cfg.delta);
    read_if(j, "epsilon", cfg.epsilon);
    read_if(j, "sigma", cfg.sigma);
    read_if(j, "trials", cfg.trials);
    read_if(j, "base_seed", cfg.base_seed);
    read_if(j, "instance_seed", cfg.instance_seed);
    read_if(j, "lazy_factor", cfg.lazy_factor);
    read_if(j, "c_stop", cfg.c_stop);
    read_if(j, "max_steps", cfg.max_steps);
    if (j.contains("solver_tol")) cfg.solver.tol = j.at("solver_tol").get<double>();
    if (j.contains("solver_max_iter"))
        cfg.solver.max_iter = j.at("solver_max_iter").get<int>();

    if (cfg.family != "benchmark" && cfg.family != "sphere")
        throw std::invalid_argument("bench config: unknown family " + cfg.family);
    if (cfg.trials < 1)
        throw std::invalid_argument("bench config: trials must be >= 1");
    const auto& grid = (cfg.family == "benchmark") ? cfg.dims : cfg.arm_counts;
    if (grid.empty()) throw std::invalid_argument("bench config: empty grid");
    if (cfg.algos.empty())
        throw std::invalid_argument("bench config: empty algo list");
    for (const auto& a : cfg.algos) sampler_kind_from_string(a);  // validates
    return cfg;
}

BenchConfig BenchConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open bench config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

TtsConfig BenchConfig::tts_config() const {
    TtsConfig t;
    t.delta = delta;
    t.lazy_factor = lazy_factor;
    t.c_stop = c_stop;
    t.max_steps = max_steps;
    t.solver = solver;
    return t;
}

std::vector<std::pair<std::string, Instance>> make_cells(const BenchConfig& cfg) {
    std::vector<std::pair<std::string, Instance>> cells;
    if (cfg.family == "benchmark") {
        for (int d : cfg.dims) {
            Instance inst = benchmark_instance(d, 0.1, cfg.sigma);
            inst.epsilon = cfg.epsilon;
            cells.emplace_back("benchmark-d" + std::to_string(d), std::move(inst));
        }
    } else {
        for (int k : cfg.arm_counts) {
            Instance inst = sphere_instance(
                k, mix_seed(cfg.instance_seed, static_cast<uint64_t>(k)),
                cfg.sigma);
            inst.epsilon = cfg.epsilon;
            cells.emplace_back("sphere-K" + std::to_string(k), std::move(inst));
        }
    }
    return cells;
}

uint64_t trial_seed(const BenchConfig& cfg, size_t cell_index, int trial_index) {
    return mix_seed(cfg.base_seed,
                    cell_index * static_cast<uint64_t>(cfg.trials) +
                        static_cast<uint64_t>(trial_index));
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
    std::string out = "algo,cell,seed,tau,strict,relaxed,truncated,wall_ms\n";
    char buf[64];
    for (const auto& r : records) {
        out += r.algo;
        out += ',';
        out += r.instance_id;
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.tau);
        out += ',';
        out += r.strict_correct ? '1' : '0';
        out += ',';
        out += r.relaxed_correct ? '1' : '0';
        out += ',';
        out += r.truncated ? '1' : '0';
        out += ',';
        std::snprintf(buf, sizeof(buf), "%.3f", r.wall_ms);
        out += buf;
        out += '\n';
    }
    return out;
}

Summary run_bench(const BenchConfig& cfg, const std::string& outdir,
                  std::vector<TrialRecord>* raw_records) {
    const auto cells = make_cells(cfg);
    const TtsConfig tts_cfg = cfg.tts_config();

    struct Job {
        size_t cell;
        size_t algo;
        int trial;
    };
    std::vector<Job> jobs;
    for (size_t c = 0; c < cells.size(); ++c)
        for (size_t a = 0; a < cfg.algos.size(); ++a)
            for (int s = 0; s < cfg.trials; ++s) jobs.push_back({c, a, s});

    std::vector<TrialRecord> records(jobs.size());

    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (const char* cap = std::getenv("TBP_WORKERS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1) workers = static_cast<unsigned>(v);
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));

    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            const SamplerKind kind = sampler_kind_from_string(cfg.algos[job.algo]);
            const uint64_t seed = trial_seed(cfg, job.cell, job.trial);
            try {
                records[i] = run_algo(cells[job.cell].second, tts_cfg, kind,
                                      seed, cells[job.cell].first);
            } catch (const std::exception&) {
                // failed trial: emit a truncated, incorrect row
                TrialRecord r;
                r.algo = cfg.algos[job.algo];
                r.instance_id = cells[job.cell].first;
                r.seed = seed;
                r.tau = 0;
                r.truncated = true;
                records[i] = std::move(r);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    Summary summary;
    for (size_t c = 0; c < cells.size(); ++c) {
        for (size_t a = 0; a < cfg.algos.size(); ++a) {
            CellAlgoSummary row;
            row.cell = cells[c].first;
            row.algo = cfg.algos[a];
            std::vector<double> taus;
            for (size_t i = 0; i < jobs.size(); ++i) {
                if (jobs[i].cell != c || jobs[i].algo != a) continue;
                const TrialRecord& r = records[i];
                taus.push_back(static_cast<double>(r.tau));
                row.truncated += r.truncated ? 1 : 0;
                row.failed += (r.truncated && r.tau == 0) ? 1 : 0;
                row.strict_error_rate += r.strict_correct ? 0.0 : 1.0;
                row.relaxed_error_rate += r.relaxed_correct ? 0.0 : 1.0;
            }
            row.trials = static_cast<int>(taus.size());
            row.mean_tau = mean_of(taus);
            double var = 0.0;
            for (double t : taus) var += (t - row.mean_tau) * (t - row.mean_tau);
            row.std_tau = taus.size() > 1
                              ? std::sqrt(var / static_cast<double>(taus.size() - 1))
                              : 0.0;
            std::sort(taus.begin(), taus.end());
            row.median_tau =
                taus.size() % 2 == 1
                    ? taus[taus.size() / 2]
                    : 0.5 * (taus[taus.size() / 2 - 1] + taus[taus.size() / 2]);
            row.strict_error_rate /= static_cast<double>(row.trials);
            row.relaxed_error_rate /= static_cast<double>(row.trials);
            summary.rows.push_back(std::move(row));
        }
        double lb = std::numeric_limits<double>::quiet_NaN();
        try {
            lb = lower_bound(cells[c].second, cfg.delta);
        } catch (const std::exception&) {
            // degenerate cell: bound unreported
        }
        summary.lower_bounds.emplace_back(cells[c].first, lb);
    }

    if (!outdir.empty()) {
        std::filesystem::create_directories(outdir);
        {
            std::ofstream csv(outdir + "/records.csv", std::ios::binary);
            csv << records_to_csv(records);
        }
        {
            std::ofstream js(outdir + "/summary.json", std::ios::binary);
            js << summary_to_json_text(cfg, summary) << "\n";
        }
    }
    if (raw_records) *raw_records = std::move(records);
    return summary;
}

std::vector<LowerBoundRow> compare_lower_bound(
    const Summary& summary,
    const std::vector<std::pair<std::string, Instance>>& cells, double delta) {
    std::vector<LowerBoundRow> out;
    for (const auto& row : summary.rows) {
        const auto it =
            std::find_if(cells.begin(), cells.end(),
                         [&](const auto& c) { return c.first == row.cell; });
        if (it == cells.end()) continue;
        LowerBoundRow r;
        r.cell = row.cell;
        r.algo = row.algo;
        r.mean_tau = row.mean_tau;
        r.bound = lower_bound(it->second, delta);  // DegenerateInstance propagates
        r.ratio = r.mean_tau / r.bound;
        r.flagged = r.ratio < 0.9;
        out.push_back(std::move(r));
    }
    return out;
}

std::string summary_to_json_text(const BenchConfig& cfg, const Summary& s) {
    nlohmann::json j;
    j["config"] = {{"family", cfg.family},
                   {"delta", cfg.delta},
                   {"epsilon", cfg.epsilon},
                   {"sigma", cfg.sigma},
                   {"trials", cfg.trials},
                   {"base_seed", cfg.base_seed},
                   {"algos", cfg.algos}};
    if (cfg.family == "benchmark")
        j["config"]["dims"] = cfg.dims;
    else
        j["config"]["arm_counts"] = cfg.arm_counts;
    auto& lbs = j["lower_bounds"] = nlohmann::json::object();
    for (const auto& [cell, lb] : s.lower_bounds)
        lbs[cell] = std::isnan(lb) ? nlohmann::json() : nlohmann::json(lb);
    auto& rows = j["results"] = nlohmann::json::array();
    for (const auto& r : s.rows) {
        rows.push_back({{"cell", r.cell},
                        {"algo", r.algo},
                        {"trials", r.trials},
                        {"mean_tau", r.mean_tau},
                        {"std_tau", r.std_tau},
                        {"median_tau", r.median_tau},
                        {"strict_error_rate", r.strict_error_rate},
                        {"relaxed_error_rate", r.relaxed_error_rate},
                        {"truncated", r.truncated},
                        {"failed", r.failed}});
    }
    return j.dump(2);
}

}  // namespace tbp
