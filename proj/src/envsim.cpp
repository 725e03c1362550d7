#include "tbp/envsim.hpp"

#include <cmath>

#include "tbp/errors.hpp"

namespace tbp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double RngStream::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(kTwoPi * u2);
    have_cached_ = true;
    return r * std::cos(kTwoPi * u2);
}

int RngStream::uniform_int(int n) {
    const uint64_t un = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<int>(x % un);
}

uint64_t mix_seed(uint64_t base_seed, uint64_t trial_index) {
    uint64_t z = base_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double sample_reward(const Instance& inst, int arm, RngStream& rng) {
    return inst.mean(arm) + inst.sigma * rng.normal();
}

Instance benchmark_instance(int d, double alpha, double sigma) {
    if (d < 2) throw DimensionMismatchError("benchmark_instance: d must be >= 2");
    Instance inst;
    inst.arms.d = d;
    inst.arms.L = 1.01;
    for (int i = 0; i < d; ++i) {
        Vec e(d, 0.0);
        e[i] = 1.0;
        inst.arms.features.push_back(std::move(e));
    }
    Vec xp(d, 0.0), xpp(d, 0.0);
    xp[0] = 0.55 * std::cos(alpha);
    xp[1] = 0.55 * std::sin(alpha);
    xpp[0] = 0.45 * std::cos(alpha);
    xpp[1] = -0.45 * std::sin(alpha);
    inst.arms.features.push_back(std::move(xp));
    inst.arms.features.push_back(std::move(xpp));
    inst.theta.assign(d, 0.0);
    inst.theta[0] = 10.0;
    inst.sigma = sigma;
    inst.rho = 5.0;
    inst.epsilon = 0.0;
    return inst;
}

Instance sphere_instance(int K, uint64_t seed, double sigma) {
    if (K < 2) throw DimensionMismatchError("sphere_instance: K must be >= 2");
    RngStream rng(seed);
    auto unit2 = [&rng]() {
        Vec v(2);
        double n;
        do {
            v[0] = rng.normal();
            v[1] = rng.normal();
            n = std::sqrt(v[0] * v[0] + v[1] * v[1]);
        } while (n < 1e-12);
        v[0] /= n;
        v[1] /= n;
        return v;
    };

    Instance inst;
    inst.arms.d = 2;
    inst.arms.L = 1.01;
    inst.theta = unit2();
    inst.theta[0] *= 10.0;
    inst.theta[1] *= 10.0;
    while (inst.arms.K() < K) {
        Vec x = unit2();
        const double m = x[0] * inst.theta[0] + x[1] * inst.theta[1];
        if (std::abs(m) >= 0.15) inst.arms.features.push_back(std::move(x));
    }
    inst.sigma = sigma;
    inst.rho = 0.0;
    inst.epsilon = 0.0;
    return inst;
}

}  // namespace tbp
