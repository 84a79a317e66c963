#ifndef QUARTIC_STANDARD_FORM_HPP
#define QUARTIC_STANDARD_FORM_HPP

#include "quartic/form.hpp"

#include <utility>

namespace quartic {

/**
 * \brief A quartic reduced to standard form x^4 - x^2 y^2 + L x y^3 + K y^4.
 *
 * `frame` is the linear map A with pullback(h, A) in standard form and
 * `frame * (1,0)^T == base_point` (the hyperbolic point the reduction was
 * anchored at, radially normalized onto the level set {h=1}).
 *
 * (L,K) depends on the chosen base point; the classification derived from it
 * does not (equivalent base points give points on the same integral curve of
 * the moduli vector field).
 */
struct StandardForm {
    double L = 0.0;
    double K = 0.0;
    LinearMap2 frame = LinearMap2::Identity();
    Point2 base_point = Point2(1.0, 0.0);

    /** Standard form with identity frame: the curve family member (L,K)
     *  itself, based at (1,0). */
    static StandardForm from_lk(double L, double K) {
        StandardForm sf;
        sf.L = L;
        sf.K = K;
        return sf;
    }

    /** The quartic x^4 - x^2 y^2 + L x y^3 + K y^4. */
    QuarticForm polynomial() const { return QuarticForm::standard(L, K); }
};

/**
 * \brief Reduce h to standard form at the hyperbolic point p.
 *
 * The base point is normalized to p/h(p)^{1/4}; the frame's first column is
 * that point, the second is r * (-dh/dy, dh/dx)^T there with r > 0 fixed so
 * the x^2 y^2 coefficient of the pullback equals -1.  The x^3 y coefficient
 * vanishes by construction (the second column is tangent to the level set).
 * The sign of L is left as produced; see canonicalize_sign.
 *
 * \throws NotHyperbolic     when p fails the hyperbolicity test
 * \throws NonPositiveValue  when h(p) <= 0
 */
StandardForm standardize(const QuarticForm& h, const Point2& p);

/** Flip y -> -y if needed so that L >= 0; the frame is composed with
 *  diag(1,-1) accordingly.  (h_{L,K} and h_{-L,K} are equivalent.) */
StandardForm canonicalize_sign(const StandardForm& sf);

/**
 * \brief Moving frame A(T) along the curve of sf = (L,K).
 *
 * A(T) maps standard coordinates at slice parameter T back to the standard
 * coordinates of sf: pullback(h_{L,K}, A(T)) = h_{L(T),K(T)} and
 * A(T)*(1,0)^T = (1,T)^T / f(T)^{1/4}.  A(0) is the identity.
 *
 * \throws OutOfDomain when T is not strictly inside dom of the slice
 */
LinearMap2 frame_at(const StandardForm& sf, double T);

/**
 * \brief The moved standard-form parameters (L(T), K(T)).
 *
 * Consistent with frame_at: pullback(h_{L,K}, frame_at(sf,T)) has exactly
 * these parameters.  d/dT at T=0 equals the moduli vector field at (L,K).
 * Evaluated in compensated (double-double) arithmetic because the closed-form
 * numerators vanish to third/fourth order at double-root domain endpoints.
 *
 * \throws OutOfDomain when T is not strictly inside dom of the slice
 */
std::pair<double, double> lk_curve(const StandardForm& sf, double T);

/** The moving-frame family along one curve: bundles the origin standard form
 *  with its parametrized frames and parameters. */
struct FrameCurve {
    StandardForm origin;

    explicit FrameCurve(StandardForm sf) : origin(std::move(sf)) {}

    LinearMap2 frame(double T) const { return frame_at(origin, T); }
    std::pair<double, double> lk(double T) const { return lk_curve(origin, T); }
};

} // namespace quartic

#endif // QUARTIC_STANDARD_FORM_HPP
