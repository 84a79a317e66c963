#include "quartic/classification.hpp"

#include "quartic/errors.hpp"
#include "quartic/poly.hpp"
#include "quartic/slice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace quartic {

const char* to_string(ClassTag tag) {
    switch (tag) {
        case ClassTag::Closed_A: return "Closed_A";
        case ClassTag::Closed_B: return "Closed_B";
        case ClassTag::Closed_C: return "Closed_C";
        case ClassTag::Closed_D: return "Closed_D";
        case ClassTag::Incomplete_A: return "Incomplete_A";
        case ClassTag::Incomplete_B: return "Incomplete_B";
        case ClassTag::Incomplete_C: return "Incomplete_C";
        case ClassTag::Incomplete_D: return "Incomplete_D";
        case ClassTag::NonHyperbolic: return "NonHyperbolic";
    }
    return "unknown";
}

const char* to_string(LimitDirection direction) {
    switch (direction) {
        case LimitDirection::TowardLo: return "toward_dom_lo";
        case LimitDirection::TowardHi: return "toward_dom_hi";
    }
    return "unknown";
}

namespace {

bool is_parametric(ClassTag tag) {
    return tag == ClassTag::Closed_D || tag == ClassTag::Incomplete_A ||
           tag == ClassTag::Incomplete_B;
}

ClassTag tag_from_region(RegionTag tag) {
    switch (tag) {
        case RegionTag::FixedPoint_A: return ClassTag::Closed_A;
        case RegionTag::FixedPoint_B: return ClassTag::Closed_B;
        case RegionTag::UGraph_Lower: return ClassTag::Closed_C;
        case RegionTag::ClosedAxis:
        case RegionTag::ClosedInterior_Upper:
        case RegionTag::ClosedInterior_Lower: return ClassTag::Closed_D;
        case RegionTag::Incomplete_AboveBell: return ClassTag::Incomplete_A;
        case RegionTag::Incomplete_Wedge:
        case RegionTag::MGraph:
        case RegionTag::Incomplete_WExterior: return ClassTag::Incomplete_B;
        case RegionTag::WGraph: return ClassTag::Incomplete_C;
        case RegionTag::UGraph_Upper: return ClassTag::Incomplete_D;
        case RegionTag::NoHyperbolicStructure: return ClassTag::NonHyperbolic;
    }
    return ClassTag::NonHyperbolic;
}

/** The representative polynomial whose symmetry group automorphisms()
 *  describes; requires the parameter for the parametric classes. */
QuarticForm representative_polynomial(ClassTag tag, const std::optional<double>& parameter) {
    switch (tag) {
        case ClassTag::Closed_A: {
            const ModuliPoint a = fixed_point_a();
            return QuarticForm::standard(a.L, a.K);
        }
        case ClassTag::Closed_B: {
            const ModuliPoint b = fixed_point_b();
            return QuarticForm::standard(b.L, b.K);
        }
        case ClassTag::Closed_C: return QuarticForm::standard(2.0 / (3.0 * std::sqrt(3.0)), 0.0);
        case ClassTag::Closed_D:
        case ClassTag::Incomplete_A: return QuarticForm::standard(0.0, *parameter);
        case ClassTag::Incomplete_B: return QuarticForm::standard(1.0, *parameter);
        case ClassTag::Incomplete_C: return QuarticForm::standard(1.0, -25.0 / 72.0);
        case ClassTag::Incomplete_D: return QuarticForm::standard(1.0, constant_U());
        case ClassTag::NonHyperbolic: break;
    }
    throw DomainError("no representative polynomial for NonHyperbolic");
}

void verify_generator(const QuarticForm& h, const LinearMap2& g, const char* label) {
    const QuarticForm pb = pullback(h, g);
    double resid = 0.0;
    const auto a = pb.coefficients();
    const auto b = h.coefficients();
    for (std::size_t i = 0; i < a.size(); ++i) resid = std::max(resid, std::abs(a[i] - b[i]));
    const double tol = 1e-12 * std::max(1.0, h.max_abs_coefficient());
    if (resid > tol) {
        std::ostringstream msg;
        msg << "automorphism generator (" << label
            << ") fails the pullback identity: max coefficient deviation " << resid
            << " exceeds " << tol;
        throw VerificationFailure(msg.str());
    }
}

LinearMap2 axis_swap_generator(double K) {
    // (x,y) -> (-K^{1/4} y, K^{-1/4} x) preserves x^4 - x^2 y^2 + K y^4, K > 0.
    const double q = std::pow(K, 0.25);
    LinearMap2 w;
    w << 0.0, -q, 1.0 / q, 0.0;
    return w;
}

void require_parameter(ClassTag tag, const std::optional<double>& parameter) {
    if (parameter) return;
    std::ostringstream msg;
    msg << "class " << to_string(tag) << " is parametric: the representative's K is required";
    throw DomainError(msg.str());
}

} // namespace

AutomorphismGroup automorphisms(ClassTag tag, std::optional<double> parameter) {
    if (tag == ClassTag::NonHyperbolic) {
        throw DomainError("automorphisms: NonHyperbolic inputs have no symmetry group to report");
    }
    AutomorphismGroup group;
    const LinearMap2 identity = LinearMap2::Identity();
    LinearMap2 flip_y;
    flip_y << 1.0, 0.0, 0.0, -1.0;

    switch (tag) {
        case ClassTag::Closed_A: {
            group.descriptor = "ℝ⋉(ℤ₂⋉ℤ₂)"; // R x| (Z2 x| Z2)
            group.continuous_generator = [](double t) {
                // Hyperbolic rotations of x^4 - x^2 y^2 + y^4/4 = (x^2 - y^2/2)^2.
                const double ch = std::cosh(t), sh = std::sinh(t), r2 = std::sqrt(2.0);
                LinearMap2 m;
                m << ch, sh / r2, r2 * sh, ch;
                return m;
            };
            LinearMap2 swap;
            swap << 0.0, 1.0 / std::sqrt(2.0), std::sqrt(2.0), 0.0;
            group.discrete_generators = {flip_y, swap};
            break;
        }
        case ClassTag::Closed_B: {
            group.descriptor = "ℝ×ℤ₂"; // R x Z2
            group.continuous_generator = [](double t) {
                // exp(t Atil) for Atil = [[0, 1/sqrt2], [sqrt2, 2/sqrt3]], via its
                // exact eigendecomposition: eigenvalues sqrt3 and -1/sqrt3 with
                // eigenvector matrix P = [[1, 1], [sqrt6, -sqrt6/3]].
                const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
                LinearMap2 p, pinv;
                p << 1.0, 1.0, s6, -s6 / 3.0;
                pinv << 0.25, 3.0 / (4.0 * s6), 0.75, -3.0 / (4.0 * s6);
                const Eigen::Vector2d d(std::exp(s3 * t), std::exp(-t / s3));
                return LinearMap2(p * d.asDiagonal() * pinv);
            };
            group.discrete_generators = {LinearMap2(-identity)};
            break;
        }
        case ClassTag::Closed_C: {
            group.descriptor = "ℤ₂×ℤ₂"; // Z2 x Z2
            // Involution fixing the double root line {y = sqrt3 x} and swapping
            // the two simple root lines {x = 0} and {y = -sqrt3 x / 2}.
            LinearMap2 invol;
            invol << 1.0 / 3.0, 2.0 / (3.0 * std::sqrt(3.0)), 4.0 / std::sqrt(3.0), -1.0 / 3.0;
            group.discrete_generators = {LinearMap2(-identity), invol};
            break;
        }
        case ClassTag::Closed_D: {
            require_parameter(tag, parameter);
            const double K = *parameter;
            if (!(K < 0.25)) {
                throw DomainError("Closed_D carries K < 1/4; got a parameter outside that range");
            }
            if (K > 0.0) {
                group.descriptor = "ℤ₂⋉ℤ₂"; // Z2 x| Z2
                group.discrete_generators = {flip_y, axis_swap_generator(K)};
            } else {
                group.descriptor = "ℤ₂×ℤ₂"; // Z2 x Z2
                LinearMap2 flip_x;
                flip_x << -1.0, 0.0, 0.0, 1.0;
                group.discrete_generators = {flip_y, flip_x};
            }
            break;
        }
        case ClassTag::Incomplete_A: {
            require_parameter(tag, parameter);
            const double K = *parameter;
            if (!(K > 0.25)) {
                throw DomainError("Incomplete_A carries K > 1/4; got a parameter outside that range");
            }
            group.descriptor = "ℤ₂⋉ℤ₂"; // Z2 x| Z2
            group.discrete_generators = {flip_y, axis_swap_generator(K)};
            break;
        }
        case ClassTag::Incomplete_B: {
            require_parameter(tag, parameter);
            const double K = *parameter;
            if (!(K > -25.0 / 72.0 && K < constant_U())) {
                throw DomainError("Incomplete_B carries K in (-25/72, U); got a parameter outside that range");
            }
            group.descriptor = "ℤ₂×ℤ₂"; // Z2 x Z2
            group.discrete_generators = {LinearMap2(-identity)};
            group.descriptor_only = true;
            break;
        }
        case ClassTag::Incomplete_C:
        case ClassTag::Incomplete_D: {
            group.descriptor = "ℤ₂×ℤ₂"; // Z2 x Z2
            group.discrete_generators = {LinearMap2(-identity)};
            group.descriptor_only = true;
            break;
        }
        case ClassTag::NonHyperbolic: break; // unreachable, guarded above
    }

    const QuarticForm h = representative_polynomial(tag, parameter);
    for (const LinearMap2& g : group.discrete_generators) verify_generator(h, g, "discrete");
    if (group.continuous_generator) {
        for (double t : {0.3, 0.7, 1.0}) {
            verify_generator(h, (*group.continuous_generator)(t), "continuous");
        }
    }
    return group;
}

std::vector<LimitGeometryResult> limit_geometries(ClassTag tag,
                                                  std::optional<double> /*parameter*/) {
    if (tag == ClassTag::NonHyperbolic) {
        throw DomainError("limit_geometries: NonHyperbolic inputs have no limit geometries");
    }
    const auto entry = [](LimitDirection d, ClassTag result) {
        LimitGeometryResult e;
        e.direction = d;
        e.result = result;
        return e;
    };
    const LimitDirection lo = LimitDirection::TowardLo, hi = LimitDirection::TowardHi;
    switch (tag) {
        case ClassTag::Closed_A:
            return {entry(lo, ClassTag::Closed_A), entry(hi, ClassTag::Closed_A)};
        case ClassTag::Closed_B:
            return {entry(lo, ClassTag::Closed_B), entry(hi, ClassTag::Closed_B)};
        case ClassTag::Closed_C:
            return {entry(lo, ClassTag::Closed_B), entry(hi, ClassTag::Closed_A)};
        case ClassTag::Closed_D:
            return {entry(lo, ClassTag::Closed_B), entry(hi, ClassTag::Closed_B)};
        case ClassTag::Incomplete_A: return {};
        case ClassTag::Incomplete_B: return {entry(lo, ClassTag::Closed_B)};
        case ClassTag::Incomplete_C: return {entry(lo, ClassTag::Closed_B)};
        case ClassTag::Incomplete_D: return {entry(lo, ClassTag::Closed_A)};
        case ClassTag::NonHyperbolic: break; // unreachable, guarded above
    }
    return {};
}

LimitGeometryResult verify_limit(const StandardForm& sf, LimitDirection direction) {
    LimitGeometryResult out;
    out.direction = direction;
    const SliceProfile profile = domain(sf.L, sf.K);
    const double endpoint =
        (direction == LimitDirection::TowardHi) ? profile.dom_hi : profile.dom_lo;

    // T_k = endpoint * (1 - 2^{-k}): geometric refinement toward the endpoint.
    // Stop at the first three consecutive values within tolerance; samples much
    // closer to the endpoint only accumulate input-rounding noise.
    constexpr double tol = 1e-5;
    std::pair<double, double> prev{0.0, 0.0}, last{0.0, 0.0};
    bool have_prev = false, converged = false;
    int close_pairs = 0;
    for (int k = 4; k <= 24; ++k) {
        const double T = endpoint * (1.0 - std::ldexp(1.0, -k));
        std::pair<double, double> lk;
        try {
            lk = lk_curve(sf, T);
        } catch (const Error& e) {
            out.diagnostic =
                std::string("frame parameters unavailable near the endpoint: ") + e.what();
            return out;
        }
        if (!std::isfinite(lk.first) || !std::isfinite(lk.second) ||
            std::abs(lk.first) > 1e6 || std::abs(lk.second) > 1e6) {
            out.diagnostic = "frame parameters diverge toward the endpoint";
            return out;
        }
        if (have_prev && std::abs(lk.first - prev.first) <= tol &&
            std::abs(lk.second - prev.second) <= tol) {
            ++close_pairs;
        } else {
            close_pairs = 0;
        }
        prev = lk;
        have_prev = true;
        if (close_pairs >= 2) {
            last = lk;
            converged = true;
            break;
        }
    }
    if (!converged) {
        out.diagnostic = "frame parameters did not stabilize within the refinement schedule";
        return out;
    }

    const double aL = std::abs(last.first);
    const ModuliPoint fa = fixed_point_a(), fb = fixed_point_b();
    if (std::hypot(aL - fa.L, last.second - fa.K) <= tol) {
        out.result = ClassTag::Closed_A;
        out.numeric_limit = ModuliPoint{last.first, last.second};
    } else if (std::hypot(aL - fb.L, last.second - fb.K) <= tol) {
        out.result = ClassTag::Closed_B;
        out.numeric_limit = ModuliPoint{last.first, last.second};
    } else {
        out.diagnostic = "frame parameters stabilized away from the fixed points";
    }
    return out;
}

bool is_homogeneous(double L, double K) {
    const auto [dL, dK] = field(L, K);
    return std::hypot(dL, dK) <= region_epsilon();
}

ClassificationReport classify(const QuarticForm& h, std::optional<Point2> hint_point) {
    ClassificationReport report;

    const std::vector<std::pair<double, double>> arcs = hyperbolic_arcs(h);
    report.components = static_cast<int>(arcs.size());

    // Candidate hyperbolic points: the hint when it passes the tests, else the
    // midpoints of the hyperbolic arcs, widest first (wide arcs are the best
    // conditioned for the standardizing frame).
    std::vector<Point2> candidates;
    if (hint_point) {
        const HyperbolicityTest test = test_hyperbolicity(h, *hint_point);
        if (test.hyperbolic && !test.ambiguous && eval(h, *hint_point) > 0.0) {
            candidates.push_back(*hint_point);
        } else {
            report.diagnostics.push_back(
                "hint point rejected: not a hyperbolic point with h > 0 clear of the "
                "ambiguity band");
        }
    }
    std::vector<std::size_t> order(arcs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return arcs[a].second - arcs[a].first > arcs[b].second - arcs[b].first;
    });
    for (std::size_t i : order) {
        const double mid = 0.5 * (arcs[i].first + arcs[i].second);
        candidates.emplace_back(std::cos(mid), std::sin(mid));
    }

    if (candidates.empty()) {
        report.class_tag = ClassTag::NonHyperbolic;
        report.automorphism.descriptor_only = true;
        report.diagnostics.push_back(
            "no direction satisfies h > 0 and hessian_det < 0: the quartic carries no "
            "hyperbolic structure");
        return report;
    }

    std::optional<StandardForm> standardized;
    for (const Point2& p : candidates) {
        try {
            standardized = canonicalize_sign(standardize(h, p));
            break;
        } catch (const NotHyperbolic&) {
        } catch (const NonPositiveValue&) {
        } catch (const VerificationFailure&) {
            // frame lost too much precision at this direction; try the next
        }
    }
    if (!standardized) {
        report.class_tag = ClassTag::NonHyperbolic;
        report.components = 0;
        report.automorphism.descriptor_only = true;
        report.diagnostics.push_back(
            "all hyperbolic arcs fall below numerical resolution: treating the quartic "
            "as carrying no usable hyperbolic structure");
        return report;
    }
    const StandardForm sf = *standardized;
    report.standard_form = sf;

    bool have_canonical = false;
    try {
        const CanonicalRepresentative cr = canonical_representative(sf.L, sf.K);
        report.region = cr.region;
        report.class_point = cr.class_point;
        have_canonical = true;
    } catch (const ConvergenceFailure& e) {
        report.region = region(sf.L, sf.K);
        report.class_point = ModuliPoint{std::abs(sf.L), sf.K};
        report.diagnostics.push_back(
            std::string("canonical point unavailable (flow fallback did not converge): ") +
            e.what());
    }

    const ClassTag tag = tag_from_region(report.region.tag);
    report.class_tag = tag;
    if (have_canonical && is_parametric(tag)) report.parameter = report.class_point.K;

    if (report.region.near_boundary) {
        report.diagnostics.push_back(
            "parameters lie near a classification boundary; the class tag carries "
            "reduced confidence");
    }

    report.homogeneous = (tag == ClassTag::Closed_A || tag == ClassTag::Closed_B);

    const bool tag_closed = (tag == ClassTag::Closed_A || tag == ClassTag::Closed_B ||
                             tag == ClassTag::Closed_C || tag == ClassTag::Closed_D);
    try {
        report.closed = is_closed(sf.L, sf.K);
    } catch (const BoundaryAmbiguous& e) {
        report.closed = tag_closed;
        report.diagnostics.push_back(std::string("closedness decided from the class tag: ") +
                                     e.what());
    } catch (const ConvergenceFailure& e) {
        report.closed = tag_closed;
        report.diagnostics.push_back(std::string("closedness decided from the class tag: ") +
                                     e.what());
    }

    try {
        report.singular_at_infinity = is_singular_at_infinity(sf.L, sf.K);
    } catch (const ConvergenceFailure& e) {
        report.singular_at_infinity =
            (tag == ClassTag::Closed_A || tag == ClassTag::Closed_B ||
             tag == ClassTag::Closed_C || tag == ClassTag::Incomplete_D);
        report.diagnostics.push_back(
            std::string("singularity at infinity decided from the class tag: ") + e.what());
    }

    if (is_parametric(tag) && !report.parameter) {
        report.automorphism.descriptor_only = true;
        report.diagnostics.push_back(
            "automorphism generators unavailable without the canonical parameter");
    } else {
        report.automorphism = automorphisms(tag, report.parameter);
    }
    report.limit_geometries = limit_geometries(tag, report.parameter);
    return report;
}

namespace {

/** A classification is ambiguous when the parameters sit close to a boundary
 *  locus without being resolvably ON it.  Points within rounding distance of
 *  a locus (the landmark classes themselves) are decisively classified; a
 *  point a mere 1e-8 away genuinely straddles two classes and must not be
 *  compared as if its tag were certain. */
bool boundary_ambiguous(const ClassificationReport& r) {
    return r.region.near_boundary && std::abs(r.region.boundary_distance) > 1e-9;
}

} // namespace

bool equivalent(const QuarticForm& h1, const QuarticForm& h2) {
    const ClassificationReport r1 = classify(h1);
    const ClassificationReport r2 = classify(h2);
    if (boundary_ambiguous(r1) || boundary_ambiguous(r2)) {
        throw Inconclusive(
            "equivalence undecidable: a classification carries a boundary-proximity "
            "warning");
    }
    if (r1.class_tag != r2.class_tag) return false;
    if (r1.parameter.has_value() != r2.parameter.has_value()) return false;
    if (r1.parameter) return std::abs(*r1.parameter - *r2.parameter) <= 1e-6;
    return true;
}

ReductionData reduce_factor_form(double K) {
    ReductionData data;
    data.z_max = (18.0 - 2.0 * std::sqrt(6.0) - std::sqrt(48.0 + 378.0 * std::sqrt(6.0))) / 25.0;
    const double cube = std::cbrt(46.0 + 6.0 * std::sqrt(57.0));
    data.z_min = (2.0 - cube - 4.0 / cube) / 3.0;

    const double k_lo = -25.0 / 72.0, k_hi = constant_U();
    if (!(K >= k_lo && K < k_hi)) {
        std::ostringstream msg;
        msg << "reduce_factor_form requires K in [-25/72, U) = [" << k_lo << ", " << k_hi
            << "); got K=" << K;
        throw DomainError(msg.str());
    }

    // z: the biggest negative zero of f_{1,K}, polished by Newton steps.
    const SlicePolynomial sp = slice_poly(1.0, K);
    double z = -std::numeric_limits<double>::infinity();
    for (double r : real_roots(sp.coefficients())) {
        if (r < 0.0) z = std::max(z, r);
    }
    if (!std::isfinite(z)) {
        throw ReductionFailure("the slice polynomial has no negative zero to anchor the shear");
    }
    for (int i = 0; i < 8; ++i) {
        const double dv = sp.df(z);
        if (dv == 0.0) break;
        const double step = sp.f(z) / dv;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    data.z = z;
    data.K_of_z = (-1.0 + z * z - z * z * z) / (z * z * z * z);

    const QuarticForm h = QuarticForm::standard(1.0, K);
    LinearMap2 shear1;
    shear1 << 1.0, 0.0, z, 1.0; // kills the x^4 coefficient: h(1, z) = f(z) = 0
    const QuarticForm h1 = pullback(h, shear1);

    // The second shear's offset F must zero the y^4 coefficient
    // h1(F, 1) = c31' F^3 + c22' F^2 + c13' F + c04' (a cubic: c40' = 0).
    const std::vector<double> offsets = real_roots({h1.c04, h1.c13, h1.c22, h1.c31});
    for (double F : offsets) {
        LinearMap2 shear2;
        shear2 << 1.0, F, 0.0, 1.0;
        const QuarticForm h2 = pullback(h1, shear2);
        const double f1 = h2.c31, f2 = h2.c13;
        if (!(f1 > 0.0) || !(f2 > 0.0)) continue;
        LinearMap2 rescale = LinearMap2::Zero();
        rescale(0, 0) = std::pow(f1, -0.375) * std::pow(f2, 0.125);
        rescale(1, 1) = std::pow(f1, 0.125) * std::pow(f2, -0.375);
        const LinearMap2 map = shear1 * shear2 * rescale;
        const QuarticForm target = pullback(h, map);
        const double residual =
            std::max({std::abs(target.c40), std::abs(target.c04),
                      std::abs(target.c31 - 1.0), std::abs(target.c13 - 1.0)});
        const double c = target.c22;
        if (residual <= 1e-8 && c > -2.0 && c <= 1e-10) {
            data.c = c;
            data.map = map;
            data.residual = residual;
            return data;
        }
    }
    std::ostringstream msg;
    msg << "no shear offset produced the factor form x y (x^2 + c x y + y^2) at K=" << K;
    throw ReductionFailure(msg.str());
}

bool critical_value_check(double L, double K) {
    if (!is_homogeneous(L, K)) {
        std::ostringstream msg;
        msg << "critical_value_check requires a homogeneous point, but the field does not "
               "vanish at (L,K)=("
            << L << "," << K << ")";
        throw DomainError(msg.str());
    }
    const double eps = region_epsilon();
    const double aL = std::abs(L);
    const ModuliPoint fa = fixed_point_a(), fb = fixed_point_b();
    return std::hypot(aL - fa.L, K - fa.K) <= eps || std::hypot(aL - fb.L, K - fb.K) <= eps;
}

} // namespace quartic
