#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "quartic/form.hpp"

#include <cmath>

using namespace quartic;

namespace {

double fd_partial(const QuarticForm& h, const Point2& p, int axis, double step) {
    Point2 lo = p;
    Point2 hi = p;
    lo(axis) -= step;
    hi(axis) += step;
    return (eval(h, hi) - eval(h, lo)) / (2.0 * step);
}

}  // namespace

TEST_CASE("standard family coefficients and evaluation") {
    const QuarticForm h = QuarticForm::standard(0.3, -0.2);
    const auto c = h.coefficients();
    CHECK(c[0] == 1.0);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == -1.0);
    CHECK(c[3] == 0.3);
    CHECK(c[4] == -0.2);

    // h(2,1) = 16 - 4 + L*2 + K*1 for the standard family.
    const QuarticForm g = QuarticForm::standard(1.0, -0.25);
    CHECK_THAT(eval(g, Point2(2.0, 1.0)), Catch::Matchers::WithinAbs(13.75, 1e-12));
    CHECK_THAT(eval(g, Point2(1.0, 0.0)), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK(g.max_abs_coefficient() == 1.0);
}

TEST_CASE("gradient and hessian match finite differences") {
    const QuarticForm h = QuarticForm::from_coefficients({0.7, -1.3, 0.4, 2.1, -0.9});
    const Point2 p(1.2, -0.7);
    const Point2 grad = gradient(h, p);
    CHECK_THAT(grad(0), Catch::Matchers::WithinAbs(fd_partial(h, p, 0, 1e-5), 1e-6));
    CHECK_THAT(grad(1), Catch::Matchers::WithinAbs(fd_partial(h, p, 1, 1e-5), 1e-6));

    const LinearMap2 H = hessian(h, p);
    CHECK(H(0, 1) == H(1, 0));
    // d/dx of gradient components, centered differences.
    const double step = 1e-5;
    Point2 xp = p, xm = p;
    xp(0) += step;
    xm(0) -= step;
    const Point2 dgdx = (gradient(h, xp) - gradient(h, xm)) / (2.0 * step);
    CHECK_THAT(H(0, 0), Catch::Matchers::WithinAbs(dgdx(0), 1e-5));
    CHECK_THAT(H(1, 0), Catch::Matchers::WithinAbs(dgdx(1), 1e-5));

    CHECK_THAT(hessian_det(h, p), Catch::Matchers::WithinAbs(H.determinant(), 1e-9));
}

TEST_CASE("Euler identity for homogeneous quartics") {
    const QuarticForm h = QuarticForm::from_coefficients({1.5, 0.2, -2.0, 0.9, 0.3});
    const Point2 p(0.8, -1.1);
    const Point2 grad = gradient(h, p);
    CHECK_THAT(p(0) * grad(0) + p(1) * grad(1),
               Catch::Matchers::WithinAbs(4.0 * eval(h, p), 1e-10));
}

TEST_CASE("hessian determinant as a quartic form") {
    // For h = a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4 the Hessian
    // determinant is itself a quartic with coefficients
    //   [24ac - 9b^2, 72ad - 12bc, 144ae + 18bd - 12c^2, 72be - 12cd, 24ce - 9d^2].
    const double a = 0.7, b = -1.3, c = 0.4, d = 2.1, e = -0.9;
    const QuarticForm h = QuarticForm::from_coefficients({a, b, c, d, e});
    const QuarticForm det = hessian_det_form(h);
    const auto dc = det.coefficients();
    CHECK_THAT(dc[0], Catch::Matchers::WithinAbs(24 * a * c - 9 * b * b, 1e-12));
    CHECK_THAT(dc[1], Catch::Matchers::WithinAbs(72 * a * d - 12 * b * c, 1e-12));
    CHECK_THAT(dc[2], Catch::Matchers::WithinAbs(144 * a * e + 18 * b * d - 12 * c * c, 1e-12));
    CHECK_THAT(dc[3], Catch::Matchers::WithinAbs(72 * b * e - 12 * c * d, 1e-12));
    CHECK_THAT(dc[4], Catch::Matchers::WithinAbs(24 * c * e - 9 * d * d, 1e-12));

    // Pointwise agreement with the direct 2x2 determinant.
    for (double x : {0.3, -1.1, 2.0}) {
        for (double y : {0.5, -0.2}) {
            const Point2 p(x, y);
            CHECK_THAT(eval(det, p), Catch::Matchers::WithinAbs(hessian_det(h, p), 1e-9));
        }
    }

    // Standard family specialization: [-24, 72L, 144K - 12, 12L, -24K - 9L^2].
    const double L = 0.6, K = -0.15;
    const auto sc = hessian_det_form(QuarticForm::standard(L, K)).coefficients();
    CHECK_THAT(sc[0], Catch::Matchers::WithinAbs(-24.0, 1e-13));
    CHECK_THAT(sc[1], Catch::Matchers::WithinAbs(72 * L, 1e-13));
    CHECK_THAT(sc[2], Catch::Matchers::WithinAbs(144 * K - 12, 1e-13));
    CHECK_THAT(sc[3], Catch::Matchers::WithinAbs(12 * L, 1e-13));
    CHECK_THAT(sc[4], Catch::Matchers::WithinAbs(-24 * K - 9 * L * L, 1e-13));
}

TEST_CASE("hyperbolicity test") {
    // Every standard-family member is hyperbolic at the base point (1,0):
    // det Hess = -24 there.
    for (double L : {0.0, 1.0}) {
        for (double K : {-0.5, 0.25, 1.1}) {
            const QuarticForm h = QuarticForm::standard(L, K);
            CHECK(is_hyperbolic_point(h, Point2(1.0, 0.0)));
            CHECK_THAT(hessian_det(h, Point2(1.0, 0.0)),
                       Catch::Matchers::WithinAbs(-24.0, 1e-12));
        }
    }

    // x^4 + x^2 y^2 + y^4 has positive-definite Hessian determinant
    // 24x^4 + 132x^2y^2 + 24y^4: no hyperbolic points at all.
    const QuarticForm pd = QuarticForm::from_coefficients({1, 0, 1, 0, 1});
    CHECK_FALSE(is_hyperbolic_point(pd, Point2(1.0, 0.0)));
    CHECK_FALSE(is_hyperbolic_point(pd, Point2(0.3, -2.0)));

    // x^4 - x^2 y^2 at (0,1): determinant is exactly 0 -> ambiguous.
    const QuarticForm edge = QuarticForm::standard(0.0, 0.0);
    const HyperbolicityTest t = test_hyperbolicity(edge, Point2(0.0, 1.0));
    CHECK_FALSE(t.hyperbolic);
    CHECK(t.ambiguous);
}

TEST_CASE("pullback composition and scaling") {
    const QuarticForm h = QuarticForm::from_coefficients({1, -0.5, 0.25, 2, -1});
    LinearMap2 A, B;
    A << 1.5, 0.3, -0.2, 0.9;
    B << 0.4, -1.1, 0.7, 1.2;

    // (A*B)^* h == B^* (A^* h): pullback is contravariant.
    const QuarticForm lhs = pullback(h, A * B);
    const QuarticForm rhs = pullback(pullback(h, A), B);
    const auto lc = lhs.coefficients();
    const auto rc = rhs.coefficients();
    for (int i = 0; i < 5; ++i) {
        CHECK_THAT(lc[i], Catch::Matchers::WithinAbs(rc[i], 1e-12));
    }

    // Pointwise definition: (A^* h)(p) = h(A p).
    const Point2 p(0.6, -1.4);
    CHECK_THAT(eval(pullback(h, A), p), Catch::Matchers::WithinAbs(eval(h, A * p), 1e-10));

    // Identity and homothety.
    const auto id = pullback(h, LinearMap2::Identity()).coefficients();
    const auto orig = h.coefficients();
    for (int i = 0; i < 5; ++i) CHECK(id[i] == orig[i]);
    const auto scaled = pullback(h, 2.0 * LinearMap2::Identity()).coefficients();
    for (int i = 0; i < 5; ++i) {
        CHECK_THAT(scaled[i], Catch::Matchers::WithinAbs(16.0 * orig[i], 1e-12));
    }
}
