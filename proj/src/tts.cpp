#include "tbp/tts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "tbp/errors.hpp"

namespace tbp {

TtsState::TtsState(const Instance& inst)
    : ols(inst.arms.d, inst.arms.K()),
      cum_weights(static_cast<size_t>(inst.arms.K()), 0.0),
      core(select_core_set(inst.arms)) {
    // w(0): uniform over the spanning core set.
    current_design.weights.assign(static_cast<size_t>(inst.arms.K()), 0.0);
    for (int idx : core.indices)
        current_design.weights[static_cast<size_t>(idx)] = 1.0 / inst.arms.d;
}

double forced_threshold(long t, double c_a0) {
    return c_a0 * std::sqrt(static_cast<double>(t));
}

bool exploration_needed(const TtsState& state) {
    const long t = std::max(state.ols.t, 1L);
    return min_eig(state.ols.V) < forced_threshold(t, state.core.c_a0);
}

int forced_next(TtsState& state) {
    const int d = static_cast<int>(state.core.indices.size());
    const int arm = state.core.indices[static_cast<size_t>(state.core_cursor % d)];
    state.core_cursor = (state.core_cursor + 1) % d;
    return arm;
}

int tracking_next(const TtsState& state) {
    int best = -1;
    double best_deficit = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < state.cum_weights.size(); ++a) {
        if (state.cum_weights[a] <= 0.0) continue;
        const double deficit =
            static_cast<double>(state.ols.counts[a]) - state.cum_weights[a];
        if (deficit < best_deficit) {
            best_deficit = deficit;
            best = static_cast<int>(a);
        }
    }
    return best;
}

int next_arm(TtsState& state) {
    if (exploration_needed(state)) return forced_next(state);
    return tracking_next(state);
}

double z_statistic(const OlsState& ols, const ArmSet& arms, double rho,
                   double epsilon) {
    if (!ols.theta_hat)
        throw SingularMatrixError("z_statistic: V_t not invertible");
    const auto ch = Cholesky::factor(ols.V);
    if (!ch) throw SingularMatrixError("z_statistic: V_t not invertible");
    const Vec& th = *ols.theta_hat;
    double z = std::numeric_limits<double>::infinity();
    for (int a = 0; a < arms.K(); ++a) {
        const Vec& x = arms.features[a];
        const double g = std::abs(dot(x, th) - rho) + epsilon;
        z = std::min(z, g * g / (2.0 * ch->quad_form_inv(x)));
    }
    return z;
}

bool should_stop(TtsState& state, const TtsConfig& cfg, const Instance& inst) {
    const OlsState& ols = state.ols;
    if (ols.t < ols.dim() || ols.lambda_min_v0 <= 0.0 || !ols.theta_hat)
        return false;
    if (min_eig(ols.V) < cfg.c_stop) return false;
    state.z = z_statistic(ols, inst.arms, inst.rho, inst.epsilon);
    return state.z >
           beta_threshold(ols, cfg.delta, inst.sigma, inst.arms.L);
}

bool lazy_update_due(long t, double lazy_factor) {
    // t in {ceil(lazy_factor^k)}: walk the powers up to the first >= t.
    double v = 1.0;
    while (true) {
        const long c = static_cast<long>(std::ceil(v));
        if (c == t) return true;
        if (c > t) return false;
        v *= lazy_factor;
    }
}

void maybe_update_design(TtsState& state, const Instance& inst,
                         const TtsConfig& cfg, long t) {
    if (!lazy_update_due(t, cfg.lazy_factor)) return;
    if (!state.ols.theta_hat) return;
    const Vec& th = *state.ols.theta_hat;
    if (ambiguous_arms(inst.arms, th, inst.rho, inst.epsilon).outside.empty())
        return;
    try {
        DesignResult res =
            optimal_design(inst.arms, th, inst.rho, inst.epsilon, cfg.solver);
        state.current_design = std::move(res.lambda_star);
        state.design_updates += 1;
    } catch (const std::exception&) {
        // transiently degenerate estimate: carry the previous design
        state.design_failures += 1;
    }
}

namespace {

class TrackingSampler final : public ArmSampler {
  public:
    int pick(TtsState& state, const Instance&, RngStream&) override {
        return tracking_next(state);
    }
    void after_update(TtsState& state, const Instance& inst,
                      const TtsConfig& cfg) override {
        maybe_update_design(state, inst, cfg, state.ols.t);
    }
};

}  // namespace

TrialRecord run_with_sampler(const Instance& inst, const TtsConfig& cfg,
                             ArmSampler& sampler, uint64_t seed,
                             const std::string& instance_id,
                             const StepObserver* observer) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw std::invalid_argument("TtsConfig: delta must be in (0,1)");
    if (!(cfg.lazy_factor > 1.0))
        throw std::invalid_argument("TtsConfig: lazy_factor must be > 1");
    if (cfg.max_steps < 1)
        throw std::invalid_argument("TtsConfig: max_steps must be >= 1");

    const auto t0 = std::chrono::steady_clock::now();
    TtsState state(inst);
    sampler.init(state, inst, cfg);
    RngStream rng(seed);

    bool stopped = false;
    while (state.ols.t < cfg.max_steps) {
        const int arm =
            exploration_needed(state)
                ? forced_next(state)
                : sampler.pick(state, inst, rng);
        const double reward = sample_reward(inst, arm, rng);
        state.ols.update(arm, inst.arms.features[arm], reward);
        sampler.after_update(state, inst, cfg);
        for (size_t a = 0; a < state.cum_weights.size(); ++a)
            state.cum_weights[a] += state.current_design.weights[a];
        if (observer) (*observer)(state);
        if (should_stop(state, cfg, inst)) {
            stopped = true;
            break;
        }
    }

    TrialRecord rec;
    rec.instance_id = instance_id;
    rec.seed = seed;
    rec.tau = state.ols.t;
    rec.truncated = !stopped;
    if (state.ols.theta_hat) {
        rec.answer = good_set(inst.arms, *state.ols.theta_hat, inst.rho);
    } else {
        for (int a = 0; a < inst.arms.K(); ++a) rec.answer.below.push_back(a);
    }
    const Correctness c = correctness(rec.answer, inst);
    rec.strict_correct = c.strict;
    rec.relaxed_correct = c.relaxed;
    rec.design_updates = state.design_updates;
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rec;
}

TrialRecord run_tts(const Instance& inst, const TtsConfig& cfg, uint64_t seed,
                    const std::string& instance_id,
                    const StepObserver* observer) {
    TrackingSampler sampler;
    TrialRecord rec = run_with_sampler(inst, cfg, sampler, seed, instance_id, observer);
    rec.algo = "tts";
    return rec;
}

}  // namespace tbp
