#include "tbp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tbp/errors.hpp"

namespace tbp {

namespace {

void require_dim(size_t got, size_t want, const char* where) {
    if (got != want) {
        throw DimensionMismatchError(std::string(where) + ": size " +
                                     std::to_string(got) + " != " +
                                     std::to_string(want));
    }
}

void require_symmetric(const SymMatrix& M) {
    double scale = 0.0;
    for (double v : M.a) scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * std::max(scale, 1.0);
    for (int i = 0; i < M.dim; ++i)
        for (int j = i + 1; j < M.dim; ++j)
            if (std::abs(M.at(i, j) - M.at(j, i)) > tol)
                throw DimensionMismatchError("matrix is not symmetric");
}

}  // namespace

SymMatrix SymMatrix::identity(int d) {
    SymMatrix m(d);
    for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

void SymMatrix::add_outer(const Vec& x, double w) {
    require_dim(x.size(), static_cast<size_t>(dim), "add_outer");
    for (int i = 0; i < dim; ++i) {
        const double wxi = w * x[i];
        for (int j = i; j < dim; ++j) {
            const double v = wxi * x[j];
            at(i, j) += v;
            if (j != i) at(j, i) += v;
        }
    }
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

double dot(const Vec& x, const Vec& y) {
    require_dim(y.size(), x.size(), "dot");
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

SymMatrix gram(const std::vector<Vec>& xs, const Vec& weights) {
    require_dim(weights.size(), xs.size(), "gram weights");
    if (xs.empty()) throw DimensionMismatchError("gram: empty arm set");
    const int d = static_cast<int>(xs[0].size());
    SymMatrix A(d);
    for (size_t k = 0; k < xs.size(); ++k) {
        require_dim(xs[k].size(), static_cast<size_t>(d), "gram arm");
        if (weights[k] != 0.0) A.add_outer(xs[k], weights[k]);
    }
    return A;
}

std::optional<Cholesky> Cholesky::factor(const SymMatrix& M) {
    const int d = M.dim;
    std::vector<double> l(M.a);
    for (int j = 0; j < d; ++j) {
        double diag = l[static_cast<size_t>(j) * d + j];
        for (int k = 0; k < j; ++k) {
            const double v = l[static_cast<size_t>(j) * d + k];
            diag -= v * v;
        }
        if (!(diag > kPdTol)) return std::nullopt;
        const double root = std::sqrt(diag);
        l[static_cast<size_t>(j) * d + j] = root;
        for (int i = j + 1; i < d; ++i) {
            double v = l[static_cast<size_t>(i) * d + j];
            for (int k = 0; k < j; ++k)
                v -= l[static_cast<size_t>(i) * d + k] *
                     l[static_cast<size_t>(j) * d + k];
            l[static_cast<size_t>(i) * d + j] = v / root;
        }
    }
    return Cholesky(d, std::move(l));
}

Vec Cholesky::solve(const Vec& b) const {
    require_dim(b.size(), static_cast<size_t>(dim_), "Cholesky::solve");
    Vec y(b);
    for (int i = 0; i < dim_; ++i) {  // L z = b
        double v = y[i];
        for (int k = 0; k < i; ++k) v -= l_[static_cast<size_t>(i) * dim_ + k] * y[k];
        y[i] = v / l_[static_cast<size_t>(i) * dim_ + i];
    }
    for (int i = dim_ - 1; i >= 0; --i) {  // L^T x = z
        double v = y[i];
        for (int k = i + 1; k < dim_; ++k)
            v -= l_[static_cast<size_t>(k) * dim_ + i] * y[k];
        y[i] = v / l_[static_cast<size_t>(i) * dim_ + i];
    }
    return y;
}

double Cholesky::quad_form_inv(const Vec& x) const {
    require_dim(x.size(), static_cast<size_t>(dim_), "Cholesky::quad_form_inv");
    // x^T M^-1 x = || L^-1 x ||^2
    Vec y(x);
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) {
        double v = y[i];
        for (int k = 0; k < i; ++k) v -= l_[static_cast<size_t>(i) * dim_ + k] * y[k];
        v /= l_[static_cast<size_t>(i) * dim_ + i];
        y[i] = v;
        s += v * v;
    }
    return s;
}

double quad_form_inv(const SymMatrix& M, const Vec& x) {
    require_symmetric(M);
    require_dim(x.size(), static_cast<size_t>(M.dim), "quad_form_inv");
    if (min_eig(M) <= kPdTol)
        throw SingularMatrixError("quad_form_inv: min_eig <= 1e-10");
    auto ch = Cholesky::factor(M);
    if (!ch) throw SingularMatrixError("quad_form_inv: factorization failed");
    return ch->quad_form_inv(x);
}

double min_eig(const SymMatrix& M) {
    require_symmetric(M);
    const int d = M.dim;
    if (d == 1) return M.at(0, 0);

    // Cyclic Jacobi on a working copy; rotations kill off-diagonal mass.
    std::vector<double> w(M.a);
    auto el = [&](int i, int j) -> double& { return w[static_cast<size_t>(i) * d + j]; };

    double scale = 0.0;
    for (double v : w) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    const double stop = 1e-14 * scale;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) off = std::max(off, std::abs(el(i, j)));
        if (off <= stop) break;
        for (int p = 0; p < d; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double apq = el(p, q);
                if (std::abs(apq) <= stop * 1e-2) continue;
                const double app = el(p, p), aqq = el(q, q);
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < d; ++k) {
                    const double akp = el(k, p), akq = el(k, q);
                    el(k, p) = c * akp - s * akq;
                    el(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = el(p, k), aqk = el(q, k);
                    el(p, k) = c * apk - s * aqk;
                    el(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    double m = el(0, 0);
    for (int i = 1; i < d; ++i) m = std::min(m, el(i, i));
    return m;
}

SymMatrix rank_one_update(const SymMatrix& M, const Vec& x) {
    require_dim(x.size(), static_cast<size_t>(M.dim), "rank_one_update");
    SymMatrix out = M;
    out.add_outer(x);
    return out;
}

}  // namespace tbp
