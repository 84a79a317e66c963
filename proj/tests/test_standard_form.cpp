#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>

#include "quartic/errors.hpp"
#include "quartic/form.hpp"
#include "quartic/moduli.hpp"
#include "quartic/standard_form.hpp"

#include <cmath>

using namespace quartic;

namespace {

double coeff_distance(const QuarticForm& a, const QuarticForm& b) {
    const auto ca = a.coefficients();
    const auto cb = b.coefficients();
    double m = 0.0;
    for (int i = 0; i < 5; ++i) m = std::max(m, std::abs(ca[i] - cb[i]));
    return m;
}

}  // namespace

TEST_CASE("standardize is the identity on standard-family members") {
    const StandardForm sf = standardize(QuarticForm::standard(0.4, -0.1), Point2(1.0, 0.0));
    CHECK_THAT(sf.L, Catch::Matchers::WithinAbs(0.4, 1e-13));
    CHECK_THAT(sf.K, Catch::Matchers::WithinAbs(-0.1, 1e-13));
    // Defining property of the frame: the pullback lands on exactly (L, K).
    CHECK(coeff_distance(pullback(QuarticForm::standard(0.4, -0.1), sf.frame),
                         QuarticForm::standard(sf.L, sf.K)) < 1e-12);
}

TEST_CASE("standardize recovers the parameters of a disguised member") {
    const double L = 0.3, K = -0.15;
    const QuarticForm h0 = QuarticForm::standard(L, K);
    LinearMap2 A;
    A << 1.4, 0.6, -0.3, 0.9;
    const QuarticForm h = pullback(h0, A);
    // A^{-1} maps the base point of h0 into the hyperbolic set of h... the
    // hyperbolic point of h corresponding to (1,0) is A^{-1} (1,0).
    const Point2 p = A.inverse() * Point2(1.0, 0.0);
    const StandardForm sf = canonicalize_sign(standardize(h, p));

    CHECK_THAT(sf.K, Catch::Matchers::WithinAbs(K, 1e-9));
    CHECK_THAT(std::abs(sf.L), Catch::Matchers::WithinAbs(std::abs(L), 1e-9));
    CHECK(sf.L >= 0.0);
    CHECK(coeff_distance(pullback(h, sf.frame), QuarticForm::standard(sf.L, sf.K)) < 1e-9);

    // The frame sends the base point of the model onto (a multiple of) p is
    // not required; what is required is that the standardized base point is
    // hyperbolic for the standard form.
    CHECK(is_hyperbolic_point(QuarticForm::standard(sf.L, sf.K), Point2(1.0, 0.0)));
}

TEST_CASE("standardize rejects non-hyperbolic anchor points") {
    const QuarticForm pd = QuarticForm::from_coefficients({1, 0, 1, 0, 1});
    CHECK_THROWS_AS(standardize(pd, Point2(1.0, 0.0)), NotHyperbolic);
}

TEST_CASE("sign canonicalization flips L while preserving the frame property") {
    const QuarticForm h = QuarticForm::standard(-0.35, 0.05);
    const StandardForm sf = canonicalize_sign(standardize(h, Point2(1.0, 0.0)));
    CHECK_THAT(sf.L, Catch::Matchers::WithinAbs(0.35, 1e-12));
    CHECK_THAT(sf.K, Catch::Matchers::WithinAbs(0.05, 1e-12));
    CHECK(coeff_distance(pullback(h, sf.frame), QuarticForm::standard(sf.L, sf.K)) < 1e-12);
}

TEST_CASE("base-point curve starts at the input parameters") {
    const StandardForm sf = StandardForm::from_lk(0.2, -0.05);
    const auto [l0, k0] = lk_curve(sf, 0.0);
    CHECK_THAT(l0, Catch::Matchers::WithinAbs(0.2, 1e-13));
    CHECK_THAT(k0, Catch::Matchers::WithinAbs(-0.05, 1e-13));

    const LinearMap2 F0 = frame_at(sf, 0.0);
    CHECK(coeff_distance(pullback(sf.polynomial(), F0),
                         QuarticForm::standard(l0, k0)) < 1e-12);
}

TEST_CASE("frame and parameter curve stay consistent along the slice") {
    const StandardForm sf = StandardForm::from_lk(0.3, -0.1);
    for (double T : {-0.45, 0.2, 0.6}) {
        const auto [lt, kt] = lk_curve(sf, T);
        const LinearMap2 F = frame_at(sf, T);
        // Moving the base point along the slice re-expresses the same curve:
        // the frame at T must carry the polynomial onto the member (L(T), K(T)).
        CHECK(coeff_distance(pullback(sf.polynomial(), F),
                             QuarticForm::standard(lt, kt)) < 1e-10);
    }
}

TEST_CASE("parameter curve preserves the first integral") {
    const StandardForm sf = StandardForm::from_lk(0.25, -0.04);
    const double c0 = first_integral(0.25, -0.04).c;
    for (double T : {-0.5, 0.35, 0.8}) {
        const auto [lt, kt] = lk_curve(sf, T);
        CHECK_THAT(first_integral(lt, kt).c, Catch::Matchers::WithinAbs(c0, 1e-9));
    }
}

TEST_CASE("frame curve rejects parameters outside the slice domain") {
    // Domain of (0, 1/4) is (-sqrt 2, sqrt 2); beyond it the metric factor
    // is meaningless.
    const StandardForm sf = StandardForm::from_lk(0.0, 0.25);
    CHECK_THROWS_AS(frame_at(sf, 1.5), OutOfDomain);
    CHECK_THROWS_AS(lk_curve(sf, -1.5), OutOfDomain);
}
