#include <doctest.h>

#include <cmath>

#include "tbp/envsim.hpp"
#include "tbp/errors.hpp"
#include "tbp/linalg.hpp"

using namespace tbp;

namespace {

std::vector<Vec> basis2() { return {{1.0, 0.0}, {0.0, 1.0}}; }

SymMatrix mat2(double a, double b, double c, double d) {
    SymMatrix m(2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

}  // namespace

TEST_CASE("gram of orthonormal basis") {
    const SymMatrix A = gram(basis2(), {1.0, 1.0});
    CHECK(A.at(0, 0) == doctest::Approx(1.0));
    CHECK(A.at(1, 1) == doctest::Approx(1.0));
    CHECK(A.at(0, 1) == doctest::Approx(0.0));

    const SymMatrix H = gram(basis2(), {0.5, 0.5});
    CHECK(H.at(0, 0) == doctest::Approx(0.5));
    CHECK(H.at(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("gram hand expansion") {
    const SymMatrix A = gram({{1.0, 0.0}, {1.0, 1.0}}, {1.0, 1.0});
    CHECK(A.at(0, 0) == doctest::Approx(2.0));
    CHECK(A.at(0, 1) == doctest::Approx(1.0));
    CHECK(A.at(1, 0) == doctest::Approx(1.0));
    CHECK(A.at(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("gram dimension mismatch") {
    CHECK_THROWS_AS(gram(basis2(), {1.0}), DimensionMismatchError);
    CHECK_THROWS_AS(gram({{1.0, 0.0}, {1.0}}, {1.0, 1.0}),
                    DimensionMismatchError);
}

TEST_CASE("quad_form_inv basic values") {
    CHECK(quad_form_inv(SymMatrix::identity(2), {1.0, 0.0}) ==
          doctest::Approx(1.0));
    CHECK(quad_form_inv(mat2(0.5, 0.0, 0.0, 0.5), {1.0, 0.0}) ==
          doctest::Approx(2.0));
    // M = [[2,1],[1,1]], M^-1 = [[1,-1],[-1,2]], e1' M^-1 e1 = 1
    CHECK(quad_form_inv(mat2(2.0, 1.0, 1.0, 1.0), {1.0, 0.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quad_form_inv rejects singular") {
    CHECK_THROWS_AS(quad_form_inv(mat2(1.0, 1.0, 1.0, 1.0), {1.0, 0.0}),
                    SingularMatrixError);
    CHECK_THROWS_AS(quad_form_inv(SymMatrix(2), {1.0, 0.0}),
                    SingularMatrixError);
}

TEST_CASE("min_eig closed-form cases") {
    CHECK(min_eig(SymMatrix::identity(3)) == doctest::Approx(1.0));
    CHECK(min_eig(mat2(0.25, 0.0, 0.0, 4.0)) == doctest::Approx(0.25));
    const double expect = (3.0 - std::sqrt(5.0)) / 2.0;
    CHECK(min_eig(mat2(2.0, 1.0, 1.0, 1.0)) ==
          doctest::Approx(expect).epsilon(1e-9));
    CHECK(min_eig(SymMatrix(2)) == doctest::Approx(0.0));
}

TEST_CASE("rank_one_update") {
    const SymMatrix A = rank_one_update(SymMatrix(2), {1.0, 0.0});
    CHECK(A.at(0, 0) == doctest::Approx(1.0));
    CHECK(A.at(1, 1) == doctest::Approx(0.0));

    const SymMatrix B = rank_one_update(SymMatrix::identity(2), {1.0, 0.0});
    CHECK(B.at(0, 0) == doctest::Approx(2.0));
    CHECK(B.at(1, 1) == doctest::Approx(1.0));

    const SymMatrix C = rank_one_update(SymMatrix::identity(2), {1.0, 1.0});
    CHECK(C.at(0, 0) == doctest::Approx(2.0));
    CHECK(C.at(0, 1) == doctest::Approx(1.0));
    CHECK(C.at(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("gram is PSD for random nonnegative weights") {
    RngStream rng(12345);
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = 1 + rng.uniform_int(4);
        const int k = d + rng.uniform_int(5);
        std::vector<Vec> xs;
        Vec w;
        for (int a = 0; a < k; ++a) {
            Vec x(d);
            for (int i = 0; i < d; ++i) x[i] = rng.normal();
            xs.push_back(std::move(x));
            w.push_back(rng.uniform());
        }
        CHECK(min_eig(gram(xs, w)) >= -1e-10);
    }
}

TEST_CASE("quad_form_inv consistent with explicit solve") {
    RngStream rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + rng.uniform_int(5);
        std::vector<Vec> xs;
        Vec w;
        for (int a = 0; a < d + 3; ++a) {
            Vec x(d);
            for (int i = 0; i < d; ++i) x[i] = rng.normal();
            xs.push_back(std::move(x));
            w.push_back(0.1 + rng.uniform());
        }
        const SymMatrix M = gram(xs, w);
        Vec x(d);
        for (int i = 0; i < d; ++i) x[i] = rng.normal();

        const double v = quad_form_inv(M, x);
        const auto ch = Cholesky::factor(M);
        REQUIRE(ch.has_value());
        const Vec y = ch->solve(x);
        const double ref = dot(x, y);
        CHECK(v == doctest::Approx(ref).epsilon(1e-10));
        CHECK(v >= 0.0);
    }
}

TEST_CASE("trace bound after rank-one updates") {
    RngStream rng(31);
    const double L = 1.5;
    SymMatrix V(3);
    for (long t = 1; t <= 200; ++t) {
        Vec x(3);
        double n2;
        do {
            for (int i = 0; i < 3; ++i) x[i] = rng.normal();
            n2 = dot(x, x);
        } while (n2 >= L * L || n2 < 1e-12);
        V = rank_one_update(V, x);
        CHECK(V.trace() <= static_cast<double>(t) * L * L + 1e-12);
    }
}

TEST_CASE("min_eig matches jacobi on random symmetric matrices") {
    // cross-check: eigenvalue residual ||Mv - lambda v|| should vanish at
    // the reported minimum eigenvalue (power iteration on shifted matrix)
    RngStream rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + rng.uniform_int(5);
        std::vector<Vec> xs;
        Vec w;
        for (int a = 0; a < d + 2; ++a) {
            Vec x(d);
            for (int i = 0; i < d; ++i) x[i] = rng.normal();
            xs.push_back(std::move(x));
            w.push_back(0.05 + rng.uniform());
        }
        const SymMatrix M = gram(xs, w);
        const double lam = min_eig(M);
        // shifted inverse check: M - lam I must be singular to tolerance,
        // i.e. its smallest eigenvalue is ~0
        SymMatrix shifted = M;
        for (int i = 0; i < d; ++i) shifted.at(i, i) -= lam;
        const double resid = min_eig(shifted);
        CHECK(std::abs(resid) <= 1e-9 * std::max(1.0, std::abs(lam)));
    }
}
