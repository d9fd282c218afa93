#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fusion/error.hpp"
#include "fusion/numerics.hpp"
#include "support.hpp"

using namespace fusion;
using namespace fusion::testing;

namespace {

// Coefficients c_0..c_n of det(xI − A) = Σ c_k x^k via Faddeev-LeVerrier.
Vector characteristic_polynomial(const Matrix& a) {
    const std::size_t n = a.rows();
    Vector c(n + 1, 0.0);
    c[n] = 1.0;
    Matrix m(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix next = a * m;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        m = next;
        c[n - k] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

double horner(const Vector& c, double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
}

// Real roots by sign changes on a fine grid over the Gershgorin interval, then bisection.
Vector polynomial_roots(const Matrix& a) {
    const Vector c = characteristic_polynomial(a);
    double radius = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) r += std::abs(a(i, j));
        radius = std::max(radius, r);
    }
    const double lo = -radius - 1.0;
    const double hi = radius + 1.0;
    const int steps = 200000;
    Vector roots;
    double x0 = lo;
    double f0 = horner(c, x0);
    for (int s = 1; s <= steps; ++s) {
        const double x1 = lo + (hi - lo) * s / steps;
        const double f1 = horner(c, x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if ((f0 < 0) != (f1 < 0) && f1 != 0.0) {
            double a0 = x0, b0 = x1, fa = f0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a0 + b0);
                const double fm = horner(c, mid);
                if ((fm < 0) == (fa < 0)) {
                    a0 = mid;
                    fa = fm;
                } else {
                    b0 = mid;
                }
            }
            roots.push_back(0.5 * (a0 + b0));
        }
        x0 = x1;
        f0 = f1;
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

} // namespace

TEST_CASE("sym_eig on small fixed matrices") {
    SUBCASE("diagonal") {
        const auto e = sym_eig(Matrix::from_rows({{2, 0}, {0, 1}}));
        CHECK(e.values[0] == doctest::Approx(2.0));
        CHECK(e.values[1] == doctest::Approx(1.0));
        CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0));
        CHECK(std::abs(e.vectors(1, 1)) == doctest::Approx(1.0));
    }
    SUBCASE("2x2 with closed form eigenvectors") {
        const auto e = sym_eig(Matrix::from_rows({{1.5, 0.5}, {0.5, 1.5}}));
        CHECK(e.values[0] == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(s));
        CHECK(e.vectors(0, 0) * e.vectors(1, 0) > 0);
        CHECK(e.vectors(0, 1) * e.vectors(1, 1) < 0);
    }
    SUBCASE("scalar matrix") {
        const auto e = sym_eig(3.0 * Matrix::identity(3));
        for (double l : e.values) CHECK(l == doctest::Approx(3.0));
        CHECK(orthonormality_residual(e.vectors) < 1e-14);
    }
    SUBCASE("asymmetric input is rejected") {
        CHECK_THROWS_AS(sym_eig(Matrix::from_rows({{1, 2}, {0, 1}})), Error);
    }
}

TEST_CASE("sym_eig round trip on random symmetric matrices up to 12x12") {
    Rng rng(11);
    for (std::size_t n = 1; n <= 12; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const Matrix a = random_symmetric(rng, n);
            const auto e = sym_eig(a);
            const Matrix back = e.vectors * Matrix::diagonal(e.values) * e.vectors.transpose();
            CHECK(max_abs_diff(back, a) <= 10 * kOrthoTol * std::max(1.0, a.max_abs()));
            CHECK(orthonormality_residual(e.vectors) <= 1e-12);
            CHECK(std::is_sorted(e.values.begin(), e.values.end(), std::greater<>()));
        }
    }
}

TEST_CASE("sym_eig agrees with characteristic polynomial roots for n <= 4") {
    Rng rng(12);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const Matrix a = random_symmetric(rng, n);
            const Vector roots = polynomial_roots(a);
            REQUIRE(roots.size() == n);
            const Vector values = sym_eigenvalues(a);
            CHECK(max_diff(values, roots) <= 1e-8);
        }
    }
}

TEST_CASE("orthonormal_completion") {
    SUBCASE("unit vector in R^2") {
        const Matrix g = orthonormal_completion(Matrix::from_rows({{1}, {0}}));
        REQUIRE(g.cols() == 1);
        CHECK(g(0, 0) == doctest::Approx(0.0));
        CHECK(std::abs(g(1, 0)) == doctest::Approx(1.0));
    }
    SUBCASE("diagonal direction in R^3") {
        const double s = 1.0 / std::sqrt(3.0);
        const Matrix q = Matrix::from_rows({{s}, {s}, {s}});
        const Matrix g = orthonormal_completion(q);
        REQUIRE(g.cols() == 2);
        CHECK(orthonormality_residual(hconcat(q, g)) <= 1e-10);
    }
    SUBCASE("square orthogonal input gives no columns") {
        const Matrix g = orthonormal_completion(Matrix::identity(3));
        CHECK(g.rows() == 3);
        CHECK(g.cols() == 0);
    }
    SUBCASE("random inputs") {
        Rng rng(13);
        for (std::size_t l = 1; l <= 9; ++l)
            for (std::size_t m = 0; m <= l; ++m) {
                const Matrix q = m == 0 ? Matrix(l, 0) : random_orthonormal(rng, l, m);
                const Matrix g = orthonormal_completion(q);
                CHECK(g.cols() == l - m);
                CHECK(orthonormality_residual(hconcat(q, g)) <= 1e-10);
            }
    }
    SUBCASE("non-orthonormal input") {
        CHECK_THROWS_AS(orthonormal_completion(Matrix::from_rows({{2}, {0}})), Error);
    }
    SUBCASE("deterministic") {
        Rng rng(14);
        const Matrix q = random_orthonormal(rng, 6, 2);
        CHECK(orthonormal_completion(q) == orthonormal_completion(q));
    }
}

TEST_CASE("gram_schmidt") {
    const Matrix a = gram_schmidt({{2, 0}, {0, 3}}, 2);
    CHECK(max_abs_diff(a, Matrix::identity(2)) < 1e-15);
    const Matrix b = gram_schmidt({{1, 0}, {1, 1}}, 2);
    CHECK(max_abs_diff(b, Matrix::identity(2)) < 1e-15);
    const Matrix c = gram_schmidt({{1, 0}, {2, 0}}, 2);
    REQUIRE(c.cols() == 1);
    CHECK(c(0, 0) == doctest::Approx(1.0));
    CHECK(c(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("solve_spd") {
    const Vector x1 = solve_spd(Matrix::identity(2), Vector{3, 4});
    CHECK(x1[0] == doctest::Approx(3.0));
    CHECK(x1[1] == doctest::Approx(4.0));
    const Vector x2 = solve_spd(Matrix::from_rows({{2, 0}, {0, 4}}), Vector{2, 4});
    CHECK(x2[0] == doctest::Approx(1.0));
    CHECK(x2[1] == doctest::Approx(1.0));
    const Vector x3 = solve_spd(Matrix::from_rows({{1.5, 0.5}, {0.5, 1.5}}), Vector{1, 0});
    CHECK(x3[0] == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(x3[1] == doctest::Approx(-0.25).epsilon(1e-14));

    CHECK_THROWS_AS(solve_spd(Matrix::from_rows({{1, 0}, {0, 0}}), Vector{1, 1}), Error);

    Rng rng(15);
    for (std::size_t n = 1; n <= 10; ++n) {
        const Matrix g = random_matrix(rng, n, n);
        const Matrix s = g * g.transpose() + 0.5 * Matrix::identity(n);
        const Vector b = random_vector(rng, n);
        const Vector x = solve_spd(s, b);
        CHECK(vector_error(s * x, b) <= 1e-9 * std::max(1.0, norm2(b)));
    }
}

TEST_CASE("trace_product") {
    CHECK(trace_product(Matrix::identity(2), Matrix::identity(2)) == doctest::Approx(2.0));
    CHECK(trace_product(Matrix::from_rows({{1, 0}, {0, 0}}), Matrix::from_rows({{0, 0}, {0, 1}})) == 0.0);
    const Matrix p = Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}});
    CHECK(trace_product(p, p) == doctest::Approx(1.0));
    CHECK_THROWS_AS(trace_product(Matrix(2, 3), Matrix(2, 3)), Error);
}
