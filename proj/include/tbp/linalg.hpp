#pragma once
#include <cstddef>
#include <optional>
#include <vector>

namespace tbp {

using Vec = std::vector<double>;

// Everything here is sized for small dense problems (d <= ~50); all
// operations are value-semantic and safe to call concurrently.

// Minimum-eigenvalue floor below which a matrix counts as singular.
inline constexpr double kPdTol = 1e-10;

/// Dense symmetric d x d matrix, row-major storage.
struct SymMatrix {
    int dim = 0;
    std::vector<double> a;  // dim*dim entries

    SymMatrix() = default;
    explicit SymMatrix(int d) : dim(d), a(static_cast<size_t>(d) * d, 0.0) {}

    static SymMatrix identity(int d);

    double& at(int i, int j) { return a[static_cast<size_t>(i) * dim + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * dim + j]; }

    // M += w * x x^T (keeps exact symmetry)
    void add_outer(const Vec& x, double w = 1.0);

    double trace() const;
};

double dot(const Vec& x, const Vec& y);
double norm(const Vec& x);

/// Sum of w_a * x_a x_a^T. Weights must match the number of vectors.
SymMatrix gram(const std::vector<Vec>& xs, const Vec& weights);

/// x^T M^{-1} x via Cholesky solve. Throws SingularMatrixError when
/// min_eig(M) <= kPdTol.
double quad_form_inv(const SymMatrix& M, const Vec& x);

/// Smallest eigenvalue (cyclic Jacobi; exact to ~1e-12 relative).
double min_eig(const SymMatrix& M);

/// M + x x^T.
SymMatrix rank_one_update(const SymMatrix& M, const Vec& x);

/// Lower-triangular Cholesky factor of an SPD matrix. factor() returns
/// nullopt when a pivot collapses, which callers treat as singular.
class Cholesky {
  public:
    static std::optional<Cholesky> factor(const SymMatrix& M);

    Vec solve(const Vec& b) const;         // M y = b
    double quad_form_inv(const Vec& x) const;  // x^T M^{-1} x

    int dim() const { return dim_; }

  private:
    Cholesky(int d, std::vector<double> l) : dim_(d), l_(std::move(l)) {}
    int dim_ = 0;
    std::vector<double> l_;  // row-major lower triangle (full storage)
};

}  // namespace tbp
