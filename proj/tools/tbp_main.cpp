// Command-line front end: instance generation, complexity/lower-bound
// computation, single algorithm runs, and the benchmark grid.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbp/baselines.hpp"
#include "tbp/bench.hpp"
#include "tbp/complexity.hpp"
#include "tbp/envsim.hpp"
#include "tbp/tts.hpp"

namespace {

using nlohmann::json;

int cmd_gen_instance(const std::string& family, int d, int K, uint64_t seed,
                     double sigma, const std::string& out) {
    tbp::Instance inst = (family == "benchmark")
                             ? tbp::benchmark_instance(d, 0.1, sigma)
                             : tbp::sphere_instance(K, seed, sigma);
    if (out.empty() || out == "-")
        std::cout << inst.to_json_text() << "\n";
    else
        inst.save(out);
    return 0;
}

int cmd_complexity(const std::string& path, std::optional<double> epsilon,
                   double tol, int max_iter) {
    tbp::Instance inst = tbp::Instance::load(path);
    if (epsilon) inst.epsilon = *epsilon;
    tbp::SolverOptions opt{tol, max_iter};
    const tbp::DesignResult res = tbp::optimal_design(
        inst.arms, inst.theta, inst.rho, inst.epsilon, opt);
    json j;
    j["psi_star"] = res.psi_star;
    j["t_star"] = 1.0 / res.psi_star;
    j["lambda_star"] = res.lambda_star.weights;
    j["duality_gap"] = res.duality_gap;
    j["iterations"] = res.iterations;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_lower_bound(const std::string& path, double delta) {
    const tbp::Instance inst = tbp::Instance::load(path);
    const double ts =
        tbp::t_star(inst.arms, inst.theta, inst.rho, inst.epsilon);
    json j;
    j["t_star"] = ts;
    j["delta"] = delta;
    j["lower_bound"] = inst.sigma * inst.sigma * std::log(1.0 / (2.0 * delta)) * ts;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_run(const std::string& path, const std::string& algo, double delta,
            std::optional<double> epsilon, uint64_t seed, double lazy,
            long max_steps) {
    tbp::Instance inst = tbp::Instance::load(path);
    if (epsilon) inst.epsilon = *epsilon;
    tbp::TtsConfig cfg;
    cfg.delta = delta;
    cfg.lazy_factor = lazy;
    cfg.max_steps = max_steps;
    const tbp::TrialRecord rec = tbp::run_algo(
        inst, cfg, tbp::sampler_kind_from_string(algo), seed, path);
    json j;
    j["tau"] = rec.tau;
    j["answer_above"] = rec.answer.above;
    j["strict_correct"] = rec.strict_correct;
    j["relaxed_correct"] = rec.relaxed_correct;
    j["truncated"] = rec.truncated;
    j["design_updates"] = rec.design_updates;
    j["wall_ms"] = rec.wall_ms;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& outdir) {
    tbp::BenchConfig cfg;
    try {
        cfg = tbp::BenchConfig::load(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    const tbp::Summary summary = tbp::run_bench(cfg, outdir);
    bool any_failed = false;
    for (const auto& row : summary.rows) {
        std::printf("%-16s %-8s mean_tau=%9.1f std=%8.1f median=%8.1f "
                    "strict_err=%.3f relaxed_err=%.3f truncated=%d\n",
                    row.cell.c_str(), row.algo.c_str(), row.mean_tau,
                    row.std_tau, row.median_tau, row.strict_error_rate,
                    row.relaxed_error_rate, row.truncated);
        if (row.truncated > 0 || row.failed > 0) any_failed = true;
    }
    std::cout << "wrote " << outdir << "/records.csv and " << outdir
              << "/summary.json\n";
    return any_failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"epsilon-thresholding bandits: complexity, algorithms, benchmarks"};
    app.require_subcommand(1);

    // gen-instance
    std::string family = "benchmark";
    int gen_d = 2, gen_k = 20;
    uint64_t gen_seed = 7;
    double gen_sigma = 1.0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen-instance", "write an instance JSON");
    gen->add_option("--family", family, "benchmark|sphere")
        ->check(CLI::IsMember({"benchmark", "sphere"}));
    gen->add_option("--d", gen_d, "dimension (benchmark family)");
    gen->add_option("--K", gen_k, "number of arms (sphere family)");
    gen->add_option("--seed", gen_seed, "instance seed (sphere family)");
    gen->add_option("--sigma", gen_sigma, "noise standard deviation");
    gen->add_option("-o,--output", gen_out, "output path ('-' for stdout)");

    // complexity
    std::string cx_instance;
    double cx_tol = 1e-6;
    int cx_iter = 20000;
    std::optional<double> cx_eps;
    auto* cx = app.add_subcommand("complexity",
                                  "optimal design, psi*, T* for an instance");
    cx->add_option("--instance", cx_instance)->required();
    cx->add_option("--epsilon", cx_eps, "override instance epsilon");
    cx->add_option("--tol", cx_tol, "solver relative duality-gap target");
    cx->add_option("--max-iter", cx_iter, "solver iteration cap");

    // lower-bound
    std::string lb_instance;
    double lb_delta = 0.05;
    auto* lb = app.add_subcommand("lower-bound",
                                  "sample-complexity floor for an instance");
    lb->add_option("--instance", lb_instance)->required();
    lb->add_option("--delta", lb_delta)->required();

    // run
    std::string run_instance, run_algo_name = "tts";
    double run_delta = 0.05, run_lazy = 1.1;
    std::optional<double> run_eps;
    uint64_t run_seed = 1;
    long run_max_steps = 10000000;
    auto* run = app.add_subcommand("run", "run one trial of one algorithm");
    run->add_option("--instance", run_instance)->required();
    run->add_option("--delta", run_delta)->required();
    run->add_option("--algo", run_algo_name, "tts|random|xstatic|lingape|oracle")
        ->check(CLI::IsMember({"tts", "random", "xstatic", "lingape", "oracle"}));
    run->add_option("--epsilon", run_eps, "override instance epsilon");
    run->add_option("--seed", run_seed);
    run->add_option("--lazy", run_lazy, "lazy update factor (> 1)");
    run->add_option("--max-steps", run_max_steps);

    // bench
    std::string bench_config, bench_out = "bench_out";
    auto* bench = app.add_subcommand("bench", "run a trial grid");
    bench->add_option("--config", bench_config)->required();
    bench->add_option("-o,--output", bench_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen_instance(family, gen_d, gen_k, gen_seed, gen_sigma,
                                    gen_out);
        if (cx->parsed()) return cmd_complexity(cx_instance, cx_eps, cx_tol, cx_iter);
        if (lb->parsed()) return cmd_lower_bound(lb_instance, lb_delta);
        if (run->parsed())
            return cmd_run(run_instance, run_algo_name, run_delta, run_eps,
                           run_seed, run_lazy, run_max_steps);
        if (bench->parsed()) return cmd_bench(bench_config, bench_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
