#include "tbp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tbp/errors.hpp"

namespace tbp {

SamplerKind sampler_kind_from_string(const std::string& name) {
    if (name == "tts") return SamplerKind::Tts;
    if (name == "random") return SamplerKind::Random;
    if (name == "xstatic") return SamplerKind::XStatic;
    if (name == "lingape") return SamplerKind::LinGapE;
    if (name == "oracle") return SamplerKind::Oracle;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::Tts: return "tts";
        case SamplerKind::Random: return "random";
        case SamplerKind::XStatic: return "xstatic";
        case SamplerKind::LinGapE: return "lingape";
        case SamplerKind::Oracle: return "oracle";
    }
    return "?";
}

int random_next(int K, RngStream& rng) { return rng.uniform_int(K); }

Design xstatic_design(const ArmSet& arms, double tol, int max_iter) {
    const int K = arms.K();
    const int d = arms.d;
    const CoreSet core = select_core_set(arms);  // throws RankDeficientError

    Vec lam(static_cast<size_t>(K), 0.0);
    for (int idx : core.indices) lam[static_cast<size_t>(idx)] = 1.0 / d;

    for (int k = 0; k < max_iter; ++k) {
        const SymMatrix A = gram(arms.features, lam);
        const auto ch = Cholesky::factor(A);
        if (!ch) throw RankDeficientError("xstatic_design: Gram collapsed");
        double worst = -1.0;
        int b = -1;
        for (int a = 0; a < K; ++a) {
            const double v = ch->quad_form_inv(arms.features[a]);
            if (v > worst) {
                worst = v;
                b = a;
            }
        }
        if (worst <= d * (1.0 + tol)) break;
        // Fedorov-Wynn closed-form step for the D-/G-optimal objective.
        const double step = (worst / d - 1.0) / (worst - 1.0);
        for (double& w : lam) w *= (1.0 - step);
        lam[static_cast<size_t>(b)] += step;
    }
    Design out;
    out.weights = std::move(lam);
    return out;
}

int lingape_next(const OlsState& ols, const ArmSet& arms, double rho,
                 double epsilon) {
    if (!ols.theta_hat)
        throw SingularMatrixError("lingape_next: V_t not invertible");
    const auto ch = Cholesky::factor(ols.V);
    if (!ch) throw SingularMatrixError("lingape_next: V_t not invertible");
    const Vec& th = *ols.theta_hat;
    const int K = arms.K();

    int ambiguous = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (int a = 0; a < K; ++a) {
        const Vec& x = arms.features[a];
        const double g = std::abs(dot(x, th) - rho) + epsilon;
        const double score = g / std::sqrt(ch->quad_form_inv(x));
        if (score < best_score) {
            best_score = score;
            ambiguous = a;
        }
    }

    // One-step variance reduction via Sherman-Morrison:
    //   ||x||^2_{(V+bb^T)^-1} = ||x||^2_{V^-1} - (x^T V^-1 b)^2 / (1 + ||b||^2_{V^-1})
    // so the best pull maximizes the subtracted term.
    const Vec vinv_xa = ch->solve(arms.features[ambiguous]);
    int pull = -1;
    double best_gain = -1.0;
    for (int b = 0; b < K; ++b) {
        const Vec& xb = arms.features[b];
        const double cross = dot(xb, vinv_xa);
        const double gain = cross * cross / (1.0 + ch->quad_form_inv(xb));
        if (gain > best_gain) {
            best_gain = gain;
            pull = b;
        }
    }
    return pull;
}

namespace {

class RandomSampler final : public ArmSampler {
  public:
    int pick(TtsState& state, const Instance&, RngStream& rng) override {
        return random_next(static_cast<int>(state.cum_weights.size()), rng);
    }
};

class LinGapESampler final : public ArmSampler {
  public:
    int pick(TtsState& state, const Instance& inst, RngStream&) override {
        return lingape_next(state.ols, inst.arms, inst.rho, inst.epsilon);
    }
};

// Tracks a design fixed at initialization (G-optimal or oracle).
class FixedDesignSampler final : public ArmSampler {
  public:
    explicit FixedDesignSampler(bool oracle) : oracle_(oracle) {}

    void init(TtsState& state, const Instance& inst,
              const TtsConfig& cfg) override {
        state.current_design =
            oracle_ ? optimal_design(inst.arms, inst.theta, inst.rho,
                                     inst.epsilon, cfg.solver)
                          .lambda_star
                    : xstatic_design(inst.arms);
    }

    int pick(TtsState& state, const Instance&, RngStream&) override {
        return tracking_next(state);
    }

  private:
    bool oracle_;
};

}  // namespace

TrialRecord run_algo(const Instance& inst, const TtsConfig& cfg,
                     SamplerKind kind, uint64_t seed,
                     const std::string& instance_id,
                     const StepObserver* observer) {
    TrialRecord rec;
    switch (kind) {
        case SamplerKind::Tts:
            rec = run_tts(inst, cfg, seed, instance_id, observer);
            break;
        case SamplerKind::Random: {
            RandomSampler s;
            rec = run_with_sampler(inst, cfg, s, seed, instance_id, observer);
            break;
        }
        case SamplerKind::XStatic: {
            FixedDesignSampler s(false);
            rec = run_with_sampler(inst, cfg, s, seed, instance_id, observer);
            break;
        }
        case SamplerKind::LinGapE: {
            LinGapESampler s;
            rec = run_with_sampler(inst, cfg, s, seed, instance_id, observer);
            break;
        }
        case SamplerKind::Oracle: {
            FixedDesignSampler s(true);
            rec = run_with_sampler(inst, cfg, s, seed, instance_id, observer);
            break;
        }
    }
    rec.algo = to_string(kind);
    return rec;
}

}  // namespace tbp
