#ifndef QUARTIC_FORM_HPP
#define QUARTIC_FORM_HPP

#include <Eigen/Core>

#include <array>

namespace quartic {

/** A point (or direction) in the plane. */
using Point2 = Eigen::Vector2d;

/** A linear map of the plane; invertible maps act as equivalences. */
using LinearMap2 = Eigen::Matrix2d;

/**
 * \brief A real homogeneous quartic polynomial in two variables, stored in the
 *        monomial basis without binomial weights:
 *
 *            h(x,y) = c40 x^4 + c31 x^3 y + c22 x^2 y^2 + c13 x y^3 + c04 y^4.
 */
struct QuarticForm {
    double c40 = 0.0;
    double c31 = 0.0;
    double c22 = 0.0;
    double c13 = 0.0;
    double c04 = 0.0;

    /** Coefficients as an array ordered [c40, c31, c22, c13, c04]. */
    std::array<double, 5> coefficients() const { return {c40, c31, c22, c13, c04}; }

    /** Construct from a [c40, c31, c22, c13, c04] array. */
    static QuarticForm from_coefficients(const std::array<double, 5>& c) {
        return QuarticForm{c[0], c[1], c[2], c[3], c[4]};
    }

    /** The standard form x^4 - x^2 y^2 + L x y^3 + K y^4. */
    static QuarticForm standard(double L, double K) {
        return QuarticForm{1.0, 0.0, -1.0, L, K};
    }

    /** Largest absolute coefficient (a crude but scale-aware norm). */
    double max_abs_coefficient() const;
};

/** Evaluate h at p.  Exactly degree-4 homogeneous: h(s p) = s^4 h(p). */
double eval(const QuarticForm& h, const Point2& p);

/** Gradient (dh/dx, dh/dy) at p; satisfies the Euler identity
 *  x h_x + y h_y = 4 h. */
Point2 gradient(const QuarticForm& h, const Point2& p);

/** The symmetric 2x2 Hessian of h at p (closed-form second partials, no
 *  numerical differentiation). */
LinearMap2 hessian(const QuarticForm& h, const Point2& p);

/** det of the Hessian of h at p; a degree-4 homogeneous function of p. */
double hessian_det(const QuarticForm& h, const Point2& p);

/** Sign-test tolerance applied to degree-normalized quantities.  Evaluating
 *  the normalized Hessian determinant costs a few dozen ulps of rounding, so
 *  its sign is trustworthy down to ~1e-14; the band keeps two extra digits of
 *  margin.  It must stay far below ~1e-10, the honest magnitude of the
 *  normalized determinant for hyperbolic forms presented in frames of
 *  condition ~1e3, which the classifier is required to accept. */
inline constexpr double eps_sign = 1e-13;

/** \brief Detailed pointwise hyperbolicity test.
 *
 * The decision quantity is hessian_det(h,p) normalized by |p|^4 (making the
 * test scale-invariant in p) and by the squared coefficient norm of h (making
 * it scale-covariant in h).  `ambiguous` is set when the normalized value lies
 * within eps_sign of zero, i.e. the sign cannot be trusted.
 */
struct HyperbolicityTest {
    bool hyperbolic = false;   ///< normalized det < -eps_sign
    bool ambiguous = false;    ///< |normalized det| <= eps_sign
    double normalized_det = 0; ///< det / (|p|^4 * max(1, |h|^2))
};

/** Run the detailed hyperbolicity test at p (p must be nonzero). */
HyperbolicityTest test_hyperbolicity(const QuarticForm& h, const Point2& p);

/** True iff p is a hyperbolic point of h: hessian_det(h,p) < 0, guarded by
 *  eps_sign on the normalized value.  Near-degenerate points yield false; use
 *  test_hyperbolicity to detect the ambiguity band. */
bool is_hyperbolic_point(const QuarticForm& h, const Point2& p);

/** \brief Pullback of h under a linear map: (pullback(h,A))(p) = h(A p).
 *
 * Functorial in the composition order pullback(h, A*B) ==
 * pullback(pullback(h,A), B).  A may be singular, in which case the result is
 * a degenerate quartic.
 */
QuarticForm pullback(const QuarticForm& h, const LinearMap2& A);

/** det of the Hessian of h, expressed again as a quartic form in (x,y):
 *  eval(hessian_det_form(h), p) == hessian_det(h, p). */
QuarticForm hessian_det_form(const QuarticForm& h);

} // namespace quartic

#endif // QUARTIC_FORM_HPP
