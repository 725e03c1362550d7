#include "tbp/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tbp/core_set.hpp"
#include "tbp/errors.hpp"

namespace tbp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRidge = 1e-9;

struct ArmValue {
    int arm = -1;
    double value = kInf;
};

// Minimizing arm over `outside` of gap^2 / (2 x^T A^-1 x); ties by lowest
// index (the scan is in index order and uses strict <).
ArmValue min_arm(const std::vector<Vec>& xs, const std::vector<int>& outside,
                 const std::vector<double>& gaps, const Cholesky& ch) {
    ArmValue mv;
    for (int a : outside) {
        const double q = ch.quad_form_inv(xs[a]);
        const double v = gaps[a] * gaps[a] / (2.0 * q);
        if (v < mv.value) {
            mv.value = v;
            mv.arm = a;
        }
    }
    return mv;
}

}  // namespace

double gap(const Vec& x, const Vec& theta, double rho, double epsilon) {
    return std::abs(dot(x, theta) - rho) + epsilon;
}

double psi(const ArmSet& arms, const Vec& theta, double rho, double epsilon,
           const Design& lambda) {
    const auto part = ambiguous_arms(arms, theta, rho, epsilon);
    if (part.outside.empty()) return kInf;
    const SymMatrix A = gram(arms.features, lambda.weights);
    if (min_eig(A) <= kPdTol) return 0.0;
    const auto ch = Cholesky::factor(A);
    if (!ch) return 0.0;
    double best = kInf;
    for (int a : part.outside) {
        const double g = gap(arms.features[a], theta, rho, epsilon);
        best = std::min(best, g * g / (2.0 * ch->quad_form_inv(arms.features[a])));
    }
    return best;
}

double psi_alt(const ArmSet& arms, const Vec& theta, double rho,
               double epsilon, const Design& lambda) {
    const auto part = ambiguous_arms(arms, theta, rho, epsilon);
    if (part.outside.empty()) return kInf;
    const int d = arms.d;
    const SymMatrix A = gram(arms.features, lambda.weights);
    if (min_eig(A) <= kPdTol)
        throw SingularMatrixError("psi_alt: design Gram not positive definite");
    const auto ch = Cholesky::factor(A);
    if (!ch) throw SingularMatrixError("psi_alt: factorization failed");

    double best = kInf;
    for (int a : part.outside) {
        const Vec& x = arms.features[a];
        const double m = dot(x, theta);
        const double g = std::abs(m - rho) + epsilon;
        const Vec dir = ch->solve(x);  // A^-1 x
        const double q = dot(x, dir);  // ||x||^2_{A^-1}
        // theta' puts the arm on the far edge of the band.
        const double sign = (m > rho) ? 1.0 : -1.0;
        Vec theta_alt(d);
        for (int i = 0; i < d; ++i)
            theta_alt[i] = theta[i] - sign * g * dir[i] / q;
        // 0.5 * ||theta - theta'||^2_A by direct matrix-vector product.
        Vec diff(d);
        for (int i = 0; i < d; ++i) diff[i] = theta[i] - theta_alt[i];
        double quad = 0.0;
        for (int i = 0; i < d; ++i) {
            double row = 0.0;
            for (int j = 0; j < d; ++j) row += A.at(i, j) * diff[j];
            quad += diff[i] * row;
        }
        best = std::min(best, 0.5 * quad);
    }
    return best;
}

DesignResult optimal_design(const ArmSet& arms, const Vec& theta, double rho,
                            double epsilon, const SolverOptions& opt) {
    const int K = arms.K();
    const int d = arms.d;
    const std::vector<Vec>& xs = arms.features;

    std::vector<double> gaps(K);
    for (int a = 0; a < K; ++a) {
        gaps[a] = gap(xs[a], theta, rho, epsilon);
        if (gaps[a] == 0.0)
            throw DegenerateInstanceError(
                "optimal_design: arm exactly at the threshold, T* is infinite");
    }
    const auto part = ambiguous_arms(arms, theta, rho, epsilon);
    if (part.outside.empty())
        throw DegenerateInstanceError(
            "optimal_design: no arm outside the epsilon band");

    const CoreSet core = select_core_set(arms);  // throws RankDeficientError

    Vec lam(K, 0.0);
    for (int idx : core.indices) lam[idx] = 1.0 / d;

    Vec best_lam = lam;
    double best_psi = -1.0;
    double upper = kInf;
    int iters = 0;

    for (int k = 0; k < opt.max_iter; ++k) {
        iters = k + 1;
        SymMatrix A = gram(xs, lam);
        auto ch = Cholesky::factor(A);
        bool ridged = false;
        if (!ch) {
            for (int i = 0; i < d; ++i) A.at(i, i) += kRidge;
            ch = Cholesky::factor(A);
            ridged = true;
            if (!ch) break;  // cannot happen for PSD + ridge
        }
        const ArmValue mv = min_arm(xs, part.outside, gaps, *ch);
        if (!ridged && mv.value > best_psi) {
            best_psi = mv.value;
            best_lam = lam;
        }

        // Supergradient of the active piece: the closest alternative for
        // the minimizing arm gives the linear function
        //   l(w) = sum_b w_b * 0.5 (x_b^T (theta - theta'))^2
        // with l(lam) = psi(lam) and l >= psi everywhere, so
        // max_b g_b upper-bounds psi*.
        const Vec dir = ch->solve(xs[mv.arm]);
        const double q = dot(xs[mv.arm], dir);
        const double scale = gaps[mv.arm] / q;  // |theta - theta'| along dir
        double gmax = -1.0;
        int bstar = -1;
        for (int b = 0; b < K; ++b) {
            const double proj = scale * dot(xs[b], dir);
            const double gb = 0.5 * proj * proj;
            if (gb > gmax) {
                gmax = gb;
                bstar = b;
            }
        }
        upper = std::min(upper, gmax);
        if (best_psi > 0.0 && upper - best_psi <= opt.tol * best_psi) break;

        const double step = 2.0 / (k + 2.0);
        for (int b = 0; b < K; ++b) lam[b] *= (1.0 - step);
        lam[bstar] += step;
    }

    DesignResult res;
    res.lambda_star.weights = best_lam;
    res.psi_star = psi(arms, theta, rho, epsilon, res.lambda_star);
    res.iterations = iters;
    res.duality_gap = std::max(0.0, upper - res.psi_star);
    return res;
}

double t_star(const ArmSet& arms, const Vec& theta, double rho,
              double epsilon, const SolverOptions& opt) {
    return 1.0 / optimal_design(arms, theta, rho, epsilon, opt).psi_star;
}

double lower_bound(const Instance& inst, double delta,
                   const SolverOptions& opt) {
    const double ts = t_star(inst.arms, inst.theta, inst.rho, inst.epsilon, opt);
    return inst.sigma * inst.sigma * std::log(1.0 / (2.0 * delta)) * ts;
}

}  // namespace tbp
