#pragma once
#include <optional>
#include <vector>

#include "tbp/linalg.hpp"

namespace tbp {

/// Running ordinary-least-squares state: V_t = sum x_s x_s^T, the data
/// accumulator S_t = sum r_s x_s, per-arm pull counts and the estimate
/// theta_hat (defined only once V_t is invertible). lambda_min_v0 is the
/// smallest eigenvalue of the Gram of the first d pulls.
struct OlsState {
    SymMatrix V;
    Vec S;
    std::optional<Vec> theta_hat;
    std::vector<long> counts;
    long t = 0;
    double lambda_min_v0 = 0.0;
    // Configured bound C on ||S_0||^2; when unset, beta_threshold uses
    // sigma^2 * d * L^2 (one noise standard deviation per init direction).
    std::optional<double> c_bound;

    OlsState(int d, int K)
        : V(d), S(static_cast<size_t>(d), 0.0), counts(static_cast<size_t>(K), 0) {}

    int dim() const { return V.dim; }

    void update(int arm, const Vec& x, double reward);
};

/// beta(delta, t) = sigma^2 * c(t, delta) with
///   c = 2 log(1/delta) + d log(t L^2 / (d lambda_min(V0))) + C/lambda_min(V0),
/// clamped below at sigma^2 * 2 log(1/delta) when the log term goes
/// negative at small t. Throws NotInitializedError before t >= d or when
/// the first d pulls did not span.
double beta_threshold(const OlsState& state, double delta, double sigma,
                      double L);

/// Per-direction half-width ||x||_{V^-1} * sigma * sqrt(c(t, delta)).
double confidence_width(const OlsState& state, const Vec& x, double delta,
                        double sigma, double L);

}  // namespace tbp
