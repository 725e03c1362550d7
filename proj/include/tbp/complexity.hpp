#pragma once
#include <vector>

#include "tbp/model.hpp"

namespace tbp {

/// Frank-Wolfe settings for the optimal-design solver.
struct SolverOptions {
    double tol = 1e-6;    // stop when duality_gap <= tol * psi_star
    int max_iter = 20000;
};

/// Output of optimal_design. psi_star = 1/T*; duality_gap is an absolute
/// certified bound on psi* - psi_star (can be loose when several arms tie
/// at the optimum, in which case the solver runs to max_iter).
struct DesignResult {
    Design lambda_star;
    double psi_star = 0.0;
    int iterations = 0;
    double duality_gap = 0.0;
};

/// |x^T theta - rho| + epsilon.
double gap(const Vec& x, const Vec& theta, double rho, double epsilon);

/// min over arms outside the epsilon band of gap^2 / (2 ||x||^2_{A^-1}).
/// Returns 0 when the design Gram is not positive definite, +inf when no
/// arm lies outside the band.
double psi(const ArmSet& arms, const Vec& theta, double rho, double epsilon,
           const Design& lambda);

/// Same value computed through the closest-alternative parameter:
/// per arm, theta' = theta -+ gap * A^-1 x / ||x||^2_{A^-1} pushes the arm
/// to the far edge of the band, and the value is 0.5 ||theta-theta'||^2_A.
/// Independent cross-check of psi; throws SingularMatrixError when the
/// Gram is not positive definite.
double psi_alt(const ArmSet& arms, const Vec& theta, double rho,
               double epsilon, const Design& lambda);

/// Maximize psi over the simplex by Frank-Wolfe. Deterministic.
/// Throws DegenerateInstanceError when some arm has gap exactly 0 (the
/// complexity is infinite) or no arm lies outside the band, and
/// RankDeficientError when the arms do not span.
DesignResult optimal_design(const ArmSet& arms, const Vec& theta, double rho,
                            double epsilon, const SolverOptions& opt = {});

/// Instance complexity T* = 1 / psi*.
double t_star(const ArmSet& arms, const Vec& theta, double rho,
              double epsilon, const SolverOptions& opt = {});

/// Theorem-style sample-complexity floor sigma^2 log(1/(2 delta)) T*.
double lower_bound(const Instance& inst, double delta,
                   const SolverOptions& opt = {});

}  // namespace tbp
