#ifndef QUARTIC_SLICE_HPP
#define QUARTIC_SLICE_HPP

#include "quartic/form.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace quartic {

/**
 * \brief The slice polynomial f(t) = h_{L,K}(1,t) = 1 - t^2 + L t^3 + K t^4
 *        together with its derivatives.
 */
struct SlicePolynomial {
    double L = 0.0;
    double K = 0.0;

    /** f(t). */
    double f(double t) const;
    /** f'(t) = -2t + 3L t^2 + 4K t^3. */
    double df(double t) const;
    /** f''(t) = -2 + 6L t + 12K t^2. */
    double ddf(double t) const;

    /** Ascending coefficients of f: [1, 0, -1, L, K]. */
    std::vector<double> coefficients() const;
    /** Ascending coefficients of f'. */
    std::vector<double> derivative_coefficients() const;
    /** Ascending coefficients of the metric numerator
     *  g_num = -f f''/4 + 3 f'^2/16 (a quartic). */
    std::vector<double> metric_numerator_coefficients() const;
    /** g_num(t), evaluated in compensated arithmetic. */
    double metric_numerator(double t) const;
};

/** Construct the slice polynomial of the standard form (L,K). */
SlicePolynomial slice_poly(double L, double K);

/** Nonzero critical points of f: all real solutions of f'(t)=0 besides t=0.
 *  Returns {t_m, t_M} per the closed-form branches
 *  t = (-3L ± sqrt(9L^2+32K))/(8K) (for K=0, L!=0 the single point 2/(3L));
 *  both absent when 9L^2+32K < 0.  t=0 is always a critical point and is not
 *  listed. */
struct CriticalPoints {
    std::optional<double> t_m; ///< branch with + sqrt
    std::optional<double> t_M; ///< branch with - sqrt (absent when K == 0)
};
CriticalPoints critical_points(double L, double K);

/** How a domain endpoint is cut off. */
enum class BoundaryKind {
    ZeroOfF,          ///< f vanishes (level set reaches infinity)
    MetricDegenerate, ///< metric numerator vanishes while f > 0
    Both              ///< coinciding zero of f and of the numerator
};

/** Name of a BoundaryKind as used in JSON reports. */
const char* to_string(BoundaryKind kind);

/**
 * \brief Full analysis of the slice around the base point t=0.
 *
 * dom = (dom_lo, dom_hi) is the maximal open interval around 0 on which
 * f > 0 and the metric numerator > 0; its endpoints are the innermost
 * positive/negative roots of f * g_num.
 */
struct SliceProfile {
    double L = 0.0;
    double K = 0.0;
    double dom_lo = 0.0;
    double dom_hi = 0.0;
    std::vector<double> f_roots; ///< all real roots of f, ascending
    std::vector<double> g_roots; ///< all real roots of the metric numerator
    std::optional<double> t_m;   ///< nonzero critical point (+ branch)
    std::optional<double> t_M;   ///< nonzero critical point (- branch)
    BoundaryKind boundary_lo = BoundaryKind::ZeroOfF;
    BoundaryKind boundary_hi = BoundaryKind::ZeroOfF;
};

/** Separation below which a zero of f and a zero of the numerator near an
 *  endpoint count as suspiciously close (see is_closed). */
inline constexpr double eps_sep = 1e-8;

/** Slice analysis of (L,K): roots, domain endpoints, boundary kinds.
 *  The endpoints always exist (the domain is precompact); if the root search
 *  comes back empty the function fails loudly with ConvergenceFailure. */
SliceProfile domain(double L, double K);

/** One sample of the pulled-back centro-affine metric g = g_num / f^2. */
struct MetricSample {
    double t = 0.0;
    double g_value = 0.0;     ///< g(t); only defined where f(t) != 0
    double g_numerator = 0.0; ///< -f f''/4 + 3 f'^2/16 at t (defined everywhere)
};

/** Evaluate the metric at t.
 *  \throws DivisionByZeroAtLevelSetBoundary when f(t) = 0 (g_value undefined) */
MetricSample metric(double L, double K, double t);

/**
 * \brief Closedness of the maximal curve through the base point.
 *
 * True iff both domain endpoints are zeros of f (kind ZeroOfF or Both), i.e.
 * no metric degeneracy cuts the curve short.  Closedness is equivalent to
 * geodesic completeness for these curves (cited result); see
 * completeness_probe for a numerical witness.
 *
 * \throws BoundaryAmbiguous when a zero of f and a zero of the numerator lie
 *         within eps_sep of an endpoint without coinciding to full precision
 */
bool is_closed(double L, double K);

/** True iff some domain endpoint t* is a (at least) double zero of f:
 *  |f(t*)| and |f'(t*)| both below the double-root threshold
 *  1e-7 * (1+|t*|^3).  Geometrically: dh vanishes on a boundary ray. */
bool is_singular_at_infinity(double L, double K);

/** Maximal open angular intervals on which the direction
 *  p = (cos theta, sin theta) satisfies h(p) > 0 and hessian_det(p) < 0.
 *  Intervals are isolated via the tan(theta/2) parametrization (polynomial
 *  root isolation; the direction (-1,0) is checked separately).  Endpoints
 *  lie in (-pi, pi] except that an interval wrapping past pi is reported
 *  with second > pi (subtract 2*pi to normalize).  Each interval meets
 *  {h=1} in one hyperbolic component. */
std::vector<std::pair<double, double>> hyperbolic_arcs(const QuarticForm& h);

/** Number of connected components of {h=1} restricted to hyperbolic points:
 *  the number of arcs returned by hyperbolic_arcs. */
int count_components(const QuarticForm& h);

/** Outcome of the arc-length probe toward one endpoint. */
struct DirectionalProbe {
    bool divergent = false;   ///< integral of sqrt(g) diverges (complete side)
    double arc_length = 0.0;  ///< finite length, or accumulated lower bound
};

/** Numerical witness for closed <=> complete: integrates sqrt(g) dt from 0
 *  toward each endpoint on dyadically refined shells and reports divergence
 *  or the finite arc length.  Heuristic, not a proof. */
struct CompletenessProbe {
    DirectionalProbe toward_lo;
    DirectionalProbe toward_hi;
};
CompletenessProbe completeness_probe(double L, double K);

} // namespace quartic

#endif // QUARTIC_SLICE_HPP
