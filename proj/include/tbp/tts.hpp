#pragma once
#include <cstdint>
#include <functional>
#include <string>

#include "tbp/complexity.hpp"
#include "tbp/core_set.hpp"
#include "tbp/envsim.hpp"
#include "tbp/estimator.hpp"
#include "tbp/model.hpp"

namespace tbp {

struct TtsConfig {
    double delta = 0.05;        // confidence level
    double lazy_factor = 1.1;   // design recomputed at t in {ceil(lazy^k)}
    double c_stop = 1.0;        // stopping requires V_t >= c_stop * I
    long max_steps = 10000000;  // safety cap
    SolverOptions solver{1e-4, 2000};  // forwarded to optimal_design
};

/// State of one run: the OLS state, the cumulative design weights
/// sum_{s<=t} w(s), the current design w(t), the forced-exploration core
/// set with its round-robin cursor, and the last stopping statistic.
struct TtsState {
    OlsState ols;
    Vec cum_weights;
    Design current_design;
    CoreSet core;
    int core_cursor = 0;
    double z = 0.0;
    int design_updates = 0;
    int design_failures = 0;  // solver errors downgraded to carry-over

    TtsState(const Instance& inst);
};

/// Forced-exploration floor f(t) = c_{A0} sqrt(t).
double forced_threshold(long t, double c_a0);

/// True when the forced branch fires: min_eig(V_t) < f(max(t,1)). The
/// max(t,1) makes the first d pulls forced from the cold start.
bool exploration_needed(const TtsState& state);

/// Round-robin over the core set (advances the cursor).
int forced_next(TtsState& state);

/// Largest-deficit tracking: argmin over supp(cum_weights) of
/// N_a(t) - cum_weights_a, ties by lowest index.
int tracking_next(const TtsState& state);

/// Full sampling rule: forced branch, else tracking.
int next_arm(TtsState& state);

/// Z(t) = min over all arms of (|x_a^T theta_hat - rho| + eps)^2
///        / (2 ||x_a||^2_{V_t^-1}). Throws SingularMatrixError when V_t
/// is not invertible.
double z_statistic(const OlsState& ols, const ArmSet& arms, double rho,
                   double epsilon);

/// True iff min_eig(V_t) >= c_stop and Z(t) > beta(delta, t). Stores the
/// computed Z in state.z.
bool should_stop(TtsState& state, const TtsConfig& cfg, const Instance& inst);

/// True when t is a lazy update time, i.e. t = ceil(lazy_factor^k) for
/// some k >= 0.
bool lazy_update_due(long t, double lazy_factor);

/// At lazy times with a defined estimate and a nonempty set of arms
/// outside the band, recompute the design at theta_hat; otherwise (and on
/// solver errors) the previous design is carried over.
void maybe_update_design(TtsState& state, const Instance& inst,
                         const TtsConfig& cfg, long t);

/// Per-step hook, called after each update (used by diagnostics and the
/// test harnesses). Receives the state with V_{t} already including the
/// step's pull.
using StepObserver = std::function<void(const TtsState&)>;

/// Pluggable sampling rule for the shared run loop. pick() supplies the
/// non-forced branch; all rules share forced exploration, the stopping
/// rule and the decision rule.
class ArmSampler {
  public:
    virtual ~ArmSampler() = default;
    virtual void init(TtsState&, const Instance&, const TtsConfig&) {}
    virtual int pick(TtsState& state, const Instance& inst, RngStream& rng) = 0;
    virtual void after_update(TtsState&, const Instance&, const TtsConfig&) {}
};

/// Shared run loop: forced-or-pick, sample, update, accumulate design,
/// stop check. Returns a truncation-flagged record at max_steps.
TrialRecord run_with_sampler(const Instance& inst, const TtsConfig& cfg,
                             ArmSampler& sampler, uint64_t seed,
                             const std::string& instance_id = "",
                             const StepObserver* observer = nullptr);

/// Lazy Track-Threshold-and-Stop.
TrialRecord run_tts(const Instance& inst, const TtsConfig& cfg, uint64_t seed,
                    const std::string& instance_id = "",
                    const StepObserver* observer = nullptr);

}  // namespace tbp
