#pragma once
#include <string>

#include "tbp/tts.hpp"

namespace tbp {

/// Alternative sampling rules sharing the TTS stopping rule.
enum class SamplerKind { Tts, Random, XStatic, LinGapE, Oracle };

SamplerKind sampler_kind_from_string(const std::string& name);
std::string to_string(SamplerKind kind);

/// Uniform arm choice (the non-forced branch of the random baseline).
int random_next(int K, RngStream& rng);

/// G-optimal design: Frank-Wolfe (Kiefer-Wolfowitz) minimizing
/// max_a ||x_a||^2_{A^-1}, stopped once the objective is <= d*(1+tol).
Design xstatic_design(const ArmSet& arms, double tol = 1e-4,
                      int max_iter = 100000);

/// Gap-uncertainty greedy rule: find the most ambiguous arm
/// a+ = argmin (|x_a^T theta_hat - rho| + eps) / ||x_a||_{V^-1}, then pull
/// the arm whose rank-one update shrinks ||x_{a+}||_{(V+xx^T)^-1} the
/// most. Ties by lowest index.
int lingape_next(const OlsState& ols, const ArmSet& arms, double rho,
                 double epsilon);

/// Run one trial of the given sampler with the shared stopping rule. The
/// oracle kind tracks the optimal design computed once from the true
/// theta; xstatic tracks the G-optimal design.
TrialRecord run_algo(const Instance& inst, const TtsConfig& cfg,
                     SamplerKind kind, uint64_t seed,
                     const std::string& instance_id = "",
                     const StepObserver* observer = nullptr);

}  // namespace tbp
