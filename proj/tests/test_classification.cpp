#include <catch2/catch_amalgamated.hpp>

#include "quartic/classification.hpp"
#include "quartic/errors.hpp"
#include "quartic/form.hpp"
#include "quartic/moduli.hpp"

#include <cmath>
#include <string>

using namespace quartic;

namespace {

constexpr double kB = 0.54433105395181736;  // sqrt(8/27)
constexpr double kU = 1.0547840621853966;

double pullback_deviation(const QuarticForm& h, const LinearMap2& g) {
    const auto ca = pullback(h, g).coefficients();
    const auto cb = h.coefficients();
    double m = 0.0;
    for (int i = 0; i < 5; ++i) m = std::max(m, std::abs(ca[i] - cb[i]));
    return m;
}

}  // namespace

TEST_CASE("classification of the canonical representatives") {
    struct Row {
        double L, K;
        ClassTag tag;
        bool closed, homogeneous, singular;
        int components;
    };
    const Row rows[] = {
        {0.0, 0.25, ClassTag::Closed_A, true, true, true, 4},
        {kB, -1.0 / 12.0, ClassTag::Closed_B, true, true, true, 2},
        {2.0 / (3.0 * std::sqrt(3.0)), 0.0, ClassTag::Closed_C, true, false, true, 4},
        {0.0, 0.125, ClassTag::Closed_D, true, false, false, 4},
        {0.0, -1.0 / 6.0, ClassTag::Closed_D, true, false, false, 2},
        {0.0, 0.5, ClassTag::Incomplete_A, false, false, false, 4},
        {1.0, 0.0, ClassTag::Incomplete_B, false, false, false, 4},
        {1.0, -25.0 / 72.0, ClassTag::Incomplete_C, false, false, false, 4},
        {1.0, kU, ClassTag::Incomplete_D, false, false, true, 4},
    };
    for (const Row& r : rows) {
        INFO("L=" << r.L << " K=" << r.K);
        const ClassificationReport rep = classify(QuarticForm::standard(r.L, r.K));
        CHECK(rep.class_tag == r.tag);
        CHECK(rep.closed == r.closed);
        CHECK(rep.homogeneous == r.homogeneous);
        CHECK(rep.singular_at_infinity == r.singular);
        CHECK(rep.components == r.components);
        REQUIRE(rep.standard_form.has_value());
        // The classifier re-bases at an arc midpoint, so the recovered chart
        // coordinates land elsewhere on the same trajectory; what must be
        // reproduced exactly is the canonical class point, because every row
        // above IS the canonical representative of its class.
        CHECK_THAT(rep.class_point.L, Catch::Matchers::WithinAbs(r.L, 1e-7));
        CHECK_THAT(rep.class_point.K, Catch::Matchers::WithinAbs(r.K, 1e-7));
    }

    // Parameters of the parametric classes.
    const ClassificationReport d = classify(QuarticForm::standard(0.0, 0.125));
    REQUIRE(d.parameter.has_value());
    CHECK_THAT(*d.parameter, Catch::Matchers::WithinAbs(0.125, 1e-9));
    const ClassificationReport a = classify(QuarticForm::standard(0.0, 0.5));
    REQUIRE(a.parameter.has_value());
    CHECK_THAT(*a.parameter, Catch::Matchers::WithinAbs(0.5, 1e-9));
    const ClassificationReport b = classify(QuarticForm::standard(1.0, 0.0));
    REQUIRE(b.parameter.has_value());
    CHECK_THAT(*b.parameter, Catch::Matchers::WithinAbs(0.0, 1e-9));
    CHECK_FALSE(classify(QuarticForm::standard(0.0, 0.25)).parameter.has_value());
}

TEST_CASE("classification is blind to the coordinate frame") {
    const QuarticForm h0 = QuarticForm::standard(2.0 / (3.0 * std::sqrt(3.0)), 0.0);
    LinearMap2 shear;
    shear << 1.0, 1.0, 0.0, 1.0;
    const QuarticForm h = pullback(h0, shear);
    const ClassificationReport rep = classify(h);
    CHECK(rep.class_tag == ClassTag::Closed_C);
    CHECK(rep.closed);
    CHECK(rep.components == 4);

    // A parametric class keeps its parameter.
    const QuarticForm d0 = QuarticForm::standard(0.0, -1.0 / 6.0);
    LinearMap2 a;
    a << 0.9, -0.4, 0.25, 1.1;
    const ClassificationReport drep = classify(pullback(d0, a));
    CHECK(drep.class_tag == ClassTag::Closed_D);
    REQUIRE(drep.parameter.has_value());
    CHECK_THAT(*drep.parameter, Catch::Matchers::WithinAbs(-1.0 / 6.0, 1e-7));
}

TEST_CASE("forms without hyperbolic points") {
    const ClassificationReport rep = classify(QuarticForm::from_coefficients({1, 0, 1, 0, 1}));
    CHECK(rep.class_tag == ClassTag::NonHyperbolic);
    CHECK_FALSE(rep.closed);
    CHECK_FALSE(rep.standard_form.has_value());
    CHECK(rep.components == 0);
    CHECK_FALSE(rep.diagnostics.empty());
}

TEST_CASE("homogeneity holds exactly at the two special points") {
    CHECK(is_homogeneous(0.0, 0.25));
    CHECK(is_homogeneous(kB, -1.0 / 12.0));
    CHECK_FALSE(is_homogeneous(0.3, 0.0));
    CHECK_FALSE(is_homogeneous(0.0, 0.0));
}

TEST_CASE("equivalence tests") {
    const QuarticForm h = QuarticForm::standard(0.3, 0.0);
    LinearMap2 a;
    a << 1.2, 0.5, -0.3, 0.8;
    CHECK(equivalent(h, pullback(h, a)));

    // Same class, different slice points of the same trajectory.
    const double l7 = std::sqrt((5.5 - 7.0 * std::pow(0.5, 1.5)) / 13.5);
    CHECK(equivalent(QuarticForm::standard(0.0, -1.0 / 6.0),
                     QuarticForm::standard(l7, -0.125)));

    // Different parameters of the same class are inequivalent.
    CHECK_FALSE(equivalent(QuarticForm::standard(0.0, -1.0 / 6.0),
                           QuarticForm::standard(0.0, -0.3)));
    // Different classes.
    CHECK_FALSE(equivalent(QuarticForm::standard(0.0, 0.25),
                           QuarticForm::standard(kB, -1.0 / 12.0)));

    // Boundary-adjacent inputs are refused rather than guessed.
    CHECK_THROWS_AS(equivalent(QuarticForm::standard(boundary_u(0.0) + 1e-8, 0.0),
                               QuarticForm::standard(0.3, 0.0)),
                    Inconclusive);
}

TEST_CASE("automorphism groups of the closed classes") {
    const QuarticForm ha = QuarticForm::standard(0.0, 0.25);
    const AutomorphismGroup ga = automorphisms(ClassTag::Closed_A);
    CHECK(ga.descriptor == "ℝ⋉(ℤ₂⋉ℤ₂)");
    REQUIRE(ga.continuous_generator.has_value());
    CHECK_FALSE(ga.descriptor_only);
    for (double t : {0.3, 0.7, 1.0}) {
        CHECK(pullback_deviation(ha, (*ga.continuous_generator)(t)) < 1e-11);
    }
    REQUIRE(ga.discrete_generators.size() >= 2);
    for (const LinearMap2& g : ga.discrete_generators) {
        CHECK(pullback_deviation(ha, g) < 1e-12);
    }

    const QuarticForm hb = QuarticForm::standard(kB, -1.0 / 12.0);
    const AutomorphismGroup gb = automorphisms(ClassTag::Closed_B);
    REQUIRE(gb.continuous_generator.has_value());
    for (double t : {0.3, 0.7, 1.0}) {
        CHECK(pullback_deviation(hb, (*gb.continuous_generator)(t)) < 1e-11);
    }

    const QuarticForm hc = QuarticForm::standard(2.0 / (3.0 * std::sqrt(3.0)), 0.0);
    const AutomorphismGroup gc = automorphisms(ClassTag::Closed_C);
    CHECK_FALSE(gc.continuous_generator.has_value());
    REQUIRE(gc.discrete_generators.size() >= 2);
    bool found_involution = false;
    for (const LinearMap2& g : gc.discrete_generators) {
        CHECK(pullback_deviation(hc, g) < 1e-12);
        if (std::abs(g(0, 0) - 1.0 / 3.0) < 1e-12 &&
            std::abs(g(0, 1) - 2.0 / (3.0 * std::sqrt(3.0))) < 1e-12 &&
            std::abs(g(1, 0) - 4.0 / std::sqrt(3.0)) < 1e-12 &&
            std::abs(g(1, 1) + 1.0 / 3.0) < 1e-12) {
            found_involution = true;
            // It really is an involution.
            CHECK((g * g - LinearMap2::Identity()).norm() < 1e-12);
        }
    }
    CHECK(found_involution);

    // Closed_D changes discrete symmetry type at K = 0.
    const AutomorphismGroup gd_pos = automorphisms(ClassTag::Closed_D, 0.125);
    const QuarticForm hd_pos = QuarticForm::standard(0.0, 0.125);
    for (const LinearMap2& g : gd_pos.discrete_generators) {
        CHECK(pullback_deviation(hd_pos, g) < 1e-12);
    }
    const AutomorphismGroup gd_neg = automorphisms(ClassTag::Closed_D, -1.0 / 6.0);
    const QuarticForm hd_neg = QuarticForm::standard(0.0, -1.0 / 6.0);
    for (const LinearMap2& g : gd_neg.discrete_generators) {
        CHECK(pullback_deviation(hd_neg, g) < 1e-12);
    }
    CHECK(gd_pos.descriptor != gd_neg.descriptor);
}

TEST_CASE("automorphism groups of the incomplete classes") {
    const AutomorphismGroup ga = automorphisms(ClassTag::Incomplete_A, 0.5);
    CHECK_FALSE(ga.descriptor_only);
    const QuarticForm h = QuarticForm::standard(0.0, 0.5);
    for (const LinearMap2& g : ga.discrete_generators) {
        CHECK(pullback_deviation(h, g) < 1e-12);
    }

    for (ClassTag tag : {ClassTag::Incomplete_B, ClassTag::Incomplete_C, ClassTag::Incomplete_D}) {
        const AutomorphismGroup g = automorphisms(tag, 0.0);
        CHECK(g.descriptor_only);
        CHECK_FALSE(g.descriptor.empty());
        REQUIRE_FALSE(g.discrete_generators.empty());
    }
}

TEST_CASE("automorphism parameter validation") {
    CHECK_THROWS_AS(automorphisms(ClassTag::Closed_D), DomainError);        // missing
    CHECK_THROWS_AS(automorphisms(ClassTag::Closed_D, 0.3), DomainError);   // >= 1/4
    CHECK_THROWS_AS(automorphisms(ClassTag::Incomplete_A, 0.1), DomainError);
    CHECK_THROWS_AS(automorphisms(ClassTag::NonHyperbolic), DomainError);
}

TEST_CASE("limit geometry table") {
    using LG = std::vector<LimitGeometryResult>;
    const LG a = limit_geometries(ClassTag::Closed_A);
    REQUIRE(a.size() == 2);
    CHECK(a[0].result == ClassTag::Closed_A);
    CHECK(a[1].result == ClassTag::Closed_A);

    const LG c = limit_geometries(ClassTag::Closed_C);
    REQUIRE(c.size() == 2);
    CHECK(c[0].direction == LimitDirection::TowardLo);
    CHECK(c[0].result == ClassTag::Closed_B);
    CHECK(c[1].direction == LimitDirection::TowardHi);
    CHECK(c[1].result == ClassTag::Closed_A);

    CHECK(limit_geometries(ClassTag::Incomplete_A, 0.5).empty());
    const LG ib = limit_geometries(ClassTag::Incomplete_B, 0.0);
    REQUIRE(ib.size() == 1);
    CHECK(ib[0].direction == LimitDirection::TowardLo);
    CHECK(ib[0].result == ClassTag::Closed_B);
    const LG id = limit_geometries(ClassTag::Incomplete_D);
    REQUIRE(id.size() == 1);
    CHECK(id[0].result == ClassTag::Closed_A);
}

TEST_CASE("numeric limit chase certifies the table") {
    const StandardForm c = StandardForm::from_lk(2.0 / (3.0 * std::sqrt(3.0)), 0.0);
    const LimitGeometryResult lo = verify_limit(c, LimitDirection::TowardLo);
    REQUIRE(lo.result.has_value());
    CHECK(*lo.result == ClassTag::Closed_B);
    REQUIRE(lo.numeric_limit.has_value());
    CHECK_THAT(std::abs(lo.numeric_limit->L), Catch::Matchers::WithinAbs(kB, 1e-5));
    CHECK_THAT(lo.numeric_limit->K, Catch::Matchers::WithinAbs(-1.0 / 12.0, 1e-5));

    const LimitGeometryResult hi = verify_limit(c, LimitDirection::TowardHi);
    REQUIRE(hi.result.has_value());
    CHECK(*hi.result == ClassTag::Closed_A);
    REQUIRE(hi.numeric_limit.has_value());
    CHECK_THAT(std::abs(hi.numeric_limit->L), Catch::Matchers::WithinAbs(0.0, 1e-5));
    CHECK_THAT(hi.numeric_limit->K, Catch::Matchers::WithinAbs(0.25, 1e-5));
}

TEST_CASE("factor-form reduction") {
    const ReductionData at_c = reduce_factor_form(-25.0 / 72.0);
    CHECK_THAT(at_c.c, Catch::Matchers::WithinAbs(0.0, 1e-10));
    CHECK_THAT(at_c.z, Catch::Matchers::WithinAbs(-0.7242585812, 1e-9));
    CHECK(at_c.residual <= 1e-8);

    const ReductionData mid = reduce_factor_form(0.5);
    CHECK_THAT(mid.c, Catch::Matchers::WithinAbs(-1.9611913536, 1e-8));
    CHECK_THAT(mid.K_of_z, Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK(mid.residual <= 1e-8);
    CHECK(mid.c > -2.0);
    CHECK(mid.c <= 1e-10);

    const ReductionData high = reduce_factor_form(1.05);
    CHECK_THAT(high.c, Catch::Matchers::WithinAbs(-1.9997850758, 1e-8));

    // The reduction map really lands on x y (x^2 + c x y + y^2).
    const QuarticForm target =
        QuarticForm::from_coefficients({0.0, 1.0, mid.c, 1.0, 0.0});
    const auto got = pullback(QuarticForm::standard(1.0, 0.5), mid.map).coefficients();
    const auto want = target.coefficients();
    for (int i = 0; i < 5; ++i) {
        CHECK_THAT(got[i], Catch::Matchers::WithinAbs(want[i], 1e-8));
    }

    CHECK_THAT(mid.z_max, Catch::Matchers::WithinAbs(-0.7242585812, 1e-9));
    CHECK_THAT(mid.z_min, Catch::Matchers::WithinAbs(-1.1303954348, 1e-9));

    CHECK_THROWS_AS(reduce_factor_form(-0.35), DomainError);  // below -25/72
    CHECK_THROWS_AS(reduce_factor_form(1.06), DomainError);   // above U
}

TEST_CASE("critical value check certifies homogeneity") {
    CHECK(critical_value_check(0.0, 0.25));
    CHECK(critical_value_check(kB, -1.0 / 12.0));
    CHECK_THROWS_AS(critical_value_check(0.3, 0.0), DomainError);
}
