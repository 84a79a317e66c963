#include <catch2/catch_amalgamated.hpp>

#include "quartic/errors.hpp"
#include "quartic/form.hpp"
#include "quartic/slice.hpp"

#include <cmath>

using namespace quartic;

namespace {

constexpr double kB = 0.54433105395181736;  // sqrt(8/27)

}  // namespace

TEST_CASE("slice polynomial values and coefficients") {
    const SlicePolynomial s = slice_poly(0.3, -0.2);
    // f(t) = 1 - t^2 + L t^3 + K t^4
    CHECK_THAT(s.f(0.5), Catch::Matchers::WithinAbs(0.775, 1e-15));
    CHECK_THAT(s.f(0.0), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(s.df(0.0), Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(s.ddf(0.0), Catch::Matchers::WithinAbs(-2.0, 1e-15));

    const auto c = s.coefficients();
    REQUIRE(c.size() == 5);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == -1.0);
    CHECK(c[3] == 0.3);
    CHECK(c[4] == -0.2);

    // Metric numerator -f f''/4 + 3 f'^2/16 expands to the quartic
    // [1/2, -3L/2, (1-12K)/4, -L/4, (3L^2 + 8K)/16].
    const auto g = s.metric_numerator_coefficients();
    REQUIRE(g.size() == 5);
    CHECK_THAT(g[0], Catch::Matchers::WithinAbs(0.5, 1e-15));
    CHECK_THAT(g[1], Catch::Matchers::WithinAbs(-0.45, 1e-15));
    CHECK_THAT(g[2], Catch::Matchers::WithinAbs(0.85, 1e-15));
    CHECK_THAT(g[3], Catch::Matchers::WithinAbs(-0.075, 1e-15));
    CHECK_THAT(g[4], Catch::Matchers::WithinAbs(-0.083125, 1e-14));
    CHECK_THAT(s.metric_numerator(0.0), Catch::Matchers::WithinAbs(0.5, 1e-15));
}

TEST_CASE("critical points of the slice polynomial") {
    // K = 0, L != 0: single nonzero critical point at 2/(3L).
    const CriticalPoints c0 = critical_points(0.4, 0.0);
    REQUIRE(c0.t_m.has_value());
    CHECK_FALSE(c0.t_M.has_value());
    CHECK_THAT(*c0.t_m, Catch::Matchers::WithinAbs(2.0 / 1.2, 1e-13));

    // 9L^2 + 32K < 0: no nonzero critical points.
    const CriticalPoints none = critical_points(0.1, -0.5);
    CHECK_FALSE(none.t_m.has_value());
    CHECK_FALSE(none.t_M.has_value());

    // Generic case: both present and both are zeros of f'.
    const CriticalPoints both = critical_points(0.5, 0.2);
    REQUIRE(both.t_m.has_value());
    REQUIRE(both.t_M.has_value());
    const SlicePolynomial s = slice_poly(0.5, 0.2);
    CHECK_THAT(s.df(*both.t_m), Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(s.df(*both.t_M), Catch::Matchers::WithinAbs(0.0, 1e-12));
}

TEST_CASE("slice domains of the landmark points") {
    const SliceProfile a = domain(0.0, 0.25);
    CHECK_THAT(a.dom_lo, Catch::Matchers::WithinAbs(-std::sqrt(2.0), 1e-10));
    CHECK_THAT(a.dom_hi, Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-10));
    // f = (1 - t^2/2)^2: both endpoints are coinciding zeros of f and of the
    // metric numerator.
    CHECK(a.boundary_lo == BoundaryKind::Both);
    CHECK(a.boundary_hi == BoundaryKind::Both);

    const SliceProfile b = domain(kB, -1.0 / 12.0);
    CHECK_THAT(b.dom_lo, Catch::Matchers::WithinAbs(-std::sqrt(2.0 / 3.0), 1e-10));
    CHECK_THAT(b.dom_hi, Catch::Matchers::WithinAbs(std::sqrt(6.0), 1e-10));
    CHECK(b.boundary_lo == BoundaryKind::ZeroOfF);
    CHECK(b.boundary_hi == BoundaryKind::Both);  // double root of f at sqrt(6)

    const SliceProfile c = domain(2.0 / (3.0 * std::sqrt(3.0)), 0.0);
    CHECK_THAT(c.dom_lo, Catch::Matchers::WithinAbs(-std::sqrt(3.0) / 2.0, 1e-10));
    CHECK_THAT(c.dom_hi, Catch::Matchers::WithinAbs(std::sqrt(3.0), 1e-10));
    CHECK(c.boundary_lo == BoundaryKind::ZeroOfF);
    CHECK(c.boundary_hi == BoundaryKind::Both);  // double root of f at sqrt(3)
}

TEST_CASE("flat-point slice has a metric-degenerate endpoint") {
    const double L = std::sqrt(42.0) / 9.0;
    const double K = -1.0 / 6.0;
    const SliceProfile p = domain(L, K);
    const double t0 = (std::sqrt(21.0) - 3.0) / std::sqrt(2.0);
    CHECK_THAT(p.dom_hi, Catch::Matchers::WithinAbs(t0, 1e-10));
    CHECK(p.boundary_hi == BoundaryKind::MetricDegenerate);
    // f stays positive at the degenerate endpoint: 6 sqrt(21) - 27.
    const SlicePolynomial s = slice_poly(L, K);
    CHECK_THAT(s.f(p.dom_hi),
               Catch::Matchers::WithinAbs(6.0 * std::sqrt(21.0) - 27.0, 1e-10));
    CHECK_THAT(s.metric_numerator(p.dom_hi), Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK_FALSE(is_closed(L, K));
}

TEST_CASE("metric evaluation") {
    const MetricSample m = metric(0.0, 0.0, 0.5);
    // f = 1 - t^2 = 0.75, g_num = 1/2 - t^2/4 + ... : [1/2, 0, 1/4, 0, 0]
    // evaluated at 0.5 -> 0.5 + 0.25*0.25 = 0.5625.
    CHECK_THAT(m.g_numerator, Catch::Matchers::WithinAbs(0.5625, 1e-14));
    CHECK_THAT(m.g_value, Catch::Matchers::WithinAbs(0.5625 / (0.75 * 0.75), 1e-13));
    CHECK_THROWS_AS(metric(0.0, 0.0, 1.0), DivisionByZeroAtLevelSetBoundary);
}

TEST_CASE("closedness predicate on landmark points") {
    CHECK(is_closed(0.0, 0.25));          // apex
    CHECK(is_closed(kB, -1.0 / 12.0));    // seam endpoint
    CHECK(is_closed(2.0 / (3.0 * std::sqrt(3.0)), 0.0));  // boundary arc
    CHECK(is_closed(0.0, -1.0 / 6.0));    // interior of the closed set
    CHECK(is_closed(0.3, 0.0));
    CHECK_FALSE(is_closed(1.0, 0.0));
    CHECK_FALSE(is_closed(1.0, -25.0 / 72.0));
    CHECK_FALSE(is_closed(0.0, 0.5));
    CHECK_FALSE(is_closed(1.0, 1.0547840621853966));
}

TEST_CASE("completeness probe agrees with the closedness predicate") {
    const CompletenessProbe closed = completeness_probe(0.0, -1.0 / 6.0);
    CHECK(closed.toward_lo.divergent);
    CHECK(closed.toward_hi.divergent);

    const CompletenessProbe open = completeness_probe(std::sqrt(42.0) / 9.0, -1.0 / 6.0);
    CHECK_FALSE(open.toward_hi.divergent);
    CHECK(open.toward_hi.arc_length > 0.0);
}

TEST_CASE("singularity at infinity") {
    CHECK(is_singular_at_infinity(0.0, 0.25));
    CHECK(is_singular_at_infinity(kB, -1.0 / 12.0));
    CHECK(is_singular_at_infinity(2.0 / (3.0 * std::sqrt(3.0)), 0.0));
    CHECK(is_singular_at_infinity(1.0, 1.0547840621853966));
    CHECK_FALSE(is_singular_at_infinity(0.0, -1.0 / 6.0));
    CHECK_FALSE(is_singular_at_infinity(1.0, 0.0));
    CHECK_FALSE(is_singular_at_infinity(0.0, 0.5));
}

TEST_CASE("component counts of representative members") {
    CHECK(count_components(QuarticForm::standard(0.0, 0.25)) == 4);
    CHECK(count_components(QuarticForm::standard(kB, -1.0 / 12.0)) == 2);
    CHECK(count_components(QuarticForm::standard(0.0, 0.125)) == 4);
    CHECK(count_components(QuarticForm::standard(0.0, 0.0)) == 2);
    CHECK(count_components(QuarticForm::standard(0.0, -1.0 / 6.0)) == 2);
    CHECK(count_components(QuarticForm::standard(1.0, 0.0)) == 4);
    CHECK(count_components(QuarticForm::standard(0.0, 0.5)) == 4);

    // Each reported arc must contain hyperbolic directions with h > 0.
    const QuarticForm h = QuarticForm::standard(1.0, 0.0);
    const auto arcs = hyperbolic_arcs(h);
    CHECK(arcs.size() == 4);
    for (const auto& [lo, hi] : arcs) {
        const double mid = 0.5 * (lo + hi);
        const Point2 p(std::cos(mid), std::sin(mid));
        CHECK(is_hyperbolic_point(h, p));
        CHECK(eval(h, p) > 0.0);
    }
}
