#include "tbp/estimator.hpp"

#include <cmath>

#include "tbp/errors.hpp"

namespace tbp {

void OlsState::update(int arm, const Vec& x, double reward) {
    if (static_cast<int>(x.size()) != dim())
        throw DimensionMismatchError("OlsState::update: bad arm dimension");
    V.add_outer(x);
    for (int i = 0; i < dim(); ++i) S[i] += reward * x[i];
    counts[static_cast<size_t>(arm)] += 1;
    t += 1;
    if (t == dim()) lambda_min_v0 = min_eig(V);
    const auto ch = Cholesky::factor(V);
    if (ch)
        theta_hat = ch->solve(S);
    else
        theta_hat.reset();
}

double beta_threshold(const OlsState& state, double delta, double sigma,
                      double L) {
    const int d = state.dim();
    if (state.t < d || state.lambda_min_v0 <= 0.0)
        throw NotInitializedError("beta_threshold: initialization Gram not PD");
    const double lam0 = state.lambda_min_v0;
    const double C = state.c_bound.value_or(sigma * sigma * d * L * L);
    const double base = 2.0 * std::log(1.0 / delta);
    const double c = base +
                     d * std::log(static_cast<double>(state.t) * L * L / (d * lam0)) +
                     C / lam0;
    return sigma * sigma * std::max(c, base);
}

double confidence_width(const OlsState& state, const Vec& x, double delta,
                        double sigma, double L) {
    const double beta = beta_threshold(state, delta, sigma, L);
    const double q = quad_form_inv(state.V, x);  // throws SingularMatrixError
    return std::sqrt(q * beta);
}

}  // namespace tbp
