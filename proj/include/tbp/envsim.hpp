#pragma once
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tbp/model.hpp"

namespace tbp {

/// Deterministic cross-platform random stream.
///
/// Algorithm (fixed; golden vectors in the test suite):
///   - uniform source: std::mt19937_64 (bit-exact per the C++ standard)
///   - uniform double in (0,1]: ((x >> 11) + 1) * 2^-53
///   - standard normal: Box-Muller from two uniforms,
///       z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = sqrt(-2 ln u1) sin(2 pi u2),
///     z1 is cached and returned on the next call
///   - uniform_int(n): multiply-free rejection on the top bits
class RngStream {
  public:
    static constexpr const char* kAlgorithmId =
        "mt19937_64/canonical53/box-muller/v1";

    explicit RngStream(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() {
        ++draws_;
        return gen_();
    }

    /// Uniform in (0, 1].
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (two uniforms per pair).
    double normal();

    /// Uniform integer in [0, n) by rejection.
    int uniform_int(int n);

    uint64_t draws() const { return draws_; }

  private:
    std::mt19937_64 gen_;
    uint64_t draws_ = 0;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

/// Per-trial seed derivation: splitmix64 finalizer applied to
/// base + (index+1) * golden-gamma. Documented so runs are reproducible
/// from (base_seed, trial_index) alone.
uint64_t mix_seed(uint64_t base_seed, uint64_t trial_index);

/// One observed reward x_a^T theta + sigma * z.
double sample_reward(const Instance& inst, int arm, RngStream& rng);

/// Canonical hard thresholding instance: arms {e_1..e_d, x', x''} with
/// x' = 0.55(cos a, sin a, 0..), x'' = 0.45(cos a, -sin a, 0..),
/// theta = 10 e_1, rho = 5, epsilon = 0, L = 1.01.
Instance benchmark_instance(int d, double alpha = 0.1, double sigma = 1.0);

/// K unit vectors on the circle (d = 2), rejecting arms with mean reward
/// in (-0.15, 0.15); theta is a seeded random direction scaled to norm 10,
/// rho = 0, epsilon = 0.
Instance sphere_instance(int K, uint64_t seed, double sigma = 1.0);

/// Outcome of one algorithm run.
struct TrialRecord {
    std::string algo;
    std::string instance_id;
    uint64_t seed = 0;
    long tau = 0;
    bool truncated = false;
    AnswerSet answer;
    bool strict_correct = false;
    bool relaxed_correct = false;
    int design_updates = 0;
    double wall_ms = 0.0;
};

}  // namespace tbp
