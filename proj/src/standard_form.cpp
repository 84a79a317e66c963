#include "quartic/standard_form.hpp"

#include "quartic/detail/dd.hpp"
#include "quartic/errors.hpp"
#include "quartic/poly.hpp"
#include "quartic/slice.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace quartic {

namespace {

using detail::dd;

/** Sixth-degree numerator of L(T), coefficients built in double-double:
 *  [-8L, 8-32K, -20L, 20L^2, 40LK, -2L^2-8K+32K^2, L^3+4LK]. */
std::vector<dd> l_numerator_dd(double L, double K) {
    const dd L2 = detail::two_prod(L, L);
    const dd K2 = detail::two_prod(K, K);
    const dd LK = detail::two_prod(L, K);
    std::vector<dd> c(7);
    c[0] = dd(-8.0 * L);
    c[1] = detail::two_sum(8.0, -32.0 * K);
    c[2] = detail::two_prod(-20.0, L);
    c[3] = detail::mul(L2, 20.0);
    c[4] = detail::mul(LK, 40.0);
    c[5] = detail::add(detail::add(detail::mul(L2, -2.0), dd(-8.0 * K)),
                       detail::mul(K2, 32.0));
    c[6] = detail::add(detail::mul(L2, L), detail::mul(LK, 4.0));
    return c;
}

/** Eighth-degree numerator of K(T), coefficients built in double-double:
 *  [256K, 128L, -64-192L^2-256K, 128L-256LK, 16-80L^2+384K-256K^2,
 *   48L^3-32L-512LK, 8L^2+352L^2K-64K-256K^2, 8L^3+64LK+512LK^2,
 *   -3L^4-16L^2K+256K^3]. */
std::vector<dd> k_numerator_dd(double L, double K) {
    const dd L2 = detail::two_prod(L, L);
    const dd K2 = detail::two_prod(K, K);
    const dd LK = detail::two_prod(L, K);
    const dd L3 = detail::mul(L2, L);
    std::vector<dd> c(9);
    c[0] = dd(256.0 * K);
    c[1] = dd(128.0 * L);
    c[2] = detail::add(detail::add(dd(-64.0), detail::mul(L2, -192.0)), dd(-256.0 * K));
    c[3] = detail::add(dd(128.0 * L), detail::mul(LK, -256.0));
    c[4] = detail::add(detail::add(detail::two_sum(16.0, 384.0 * K), detail::mul(L2, -80.0)),
                       detail::mul(K2, -256.0));
    c[5] = detail::add(detail::add(detail::mul(L3, 48.0), dd(-32.0 * L)),
                       detail::mul(LK, -512.0));
    c[6] = detail::add(detail::add(detail::mul(L2, 8.0), detail::mul(detail::mul(L2, K), 352.0)),
                       detail::add(dd(-64.0 * K), detail::mul(K2, -256.0)));
    c[7] = detail::add(detail::add(detail::mul(L3, 8.0), detail::mul(LK, 64.0)),
                       detail::mul(detail::mul(K2, L), 512.0));
    c[8] = detail::add(detail::add(detail::mul(detail::mul(L2, L2), -3.0),
                                   detail::mul(detail::mul(L2, K), -16.0)),
                       detail::mul(detail::mul(K2, K), 256.0));
    return c;
}

struct SlicePointData {
    double f;     ///< f(T)
    double df;    ///< f'(T)
    double gnum;  ///< metric numerator g_num(T), double-double accurate
};

SlicePointData require_interior(const StandardForm& sf, double T) {
    const SliceProfile profile = domain(sf.L, sf.K);
    if (!(T > profile.dom_lo && T < profile.dom_hi)) {
        std::ostringstream msg;
        msg << "slice parameter T=" << T << " is not strictly inside dom = ("
            << profile.dom_lo << ", " << profile.dom_hi << ") of (L,K)=(" << sf.L << ","
            << sf.K << ")";
        throw OutOfDomain(msg.str());
    }
    const SlicePolynomial sp = slice_poly(sf.L, sf.K);
    SlicePointData data;
    data.f = poly_eval_compensated(sp.coefficients(), T);
    data.df = poly_eval_compensated(sp.derivative_coefficients(), T);
    data.gnum = sp.metric_numerator(T);
    return data;
}

} // namespace

StandardForm standardize(const QuarticForm& h, const Point2& p) {
    // Only the sign of the determinant gates the attempt.  Its magnitude can
    // legitimately be microscopic in badly conditioned frames, so smallness
    // proves nothing; a frame built from a point that is not actually usable
    // fails the c22 negativity or the shape verification below instead.
    const HyperbolicityTest test = test_hyperbolicity(h, p);
    if (!(test.normalized_det < 0.0)) {
        std::ostringstream msg;
        msg << "point (" << p.x() << ", " << p.y() << ") is not hyperbolic for this quartic"
            << " (normalized hessian determinant " << test.normalized_det << " >= 0)";
        throw NotHyperbolic(msg.str());
    }
    const double value = eval(h, p);
    if (!(value > 0.0)) {
        std::ostringstream msg;
        msg << "h(p) = " << value << " <= 0 at (" << p.x() << ", " << p.y()
            << "); standardization needs a point with positive value";
        throw NonPositiveValue(msg.str());
    }

    const Point2 p_hat = p / std::pow(value, 0.25);
    const Point2 grad = gradient(h, p_hat);
    const Point2 tangent(-grad.y(), grad.x());

    LinearMap2 frame;
    frame.col(0) = p_hat;
    frame.col(1) = tangent;
    const double c22_raw = pullback(h, frame).c22;
    if (!(c22_raw < 0.0)) {
        std::ostringstream msg;
        msg << "tangent direction at (" << p.x() << ", " << p.y()
            << ") fails negativity of the x^2 y^2 pullback coefficient (" << c22_raw
            << "); point is numerically on the hyperbolicity boundary";
        throw NotHyperbolic(msg.str());
    }
    frame.col(1) = tangent / std::sqrt(-c22_raw);

    const QuarticForm pb = pullback(h, frame);
    if (std::abs(pb.c40 - 1.0) > 1e-6 || std::abs(pb.c31) > 1e-6 ||
        std::abs(pb.c22 + 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "standardization lost precision: pullback = (" << pb.c40 << ", " << pb.c31
            << ", " << pb.c22 << ", " << pb.c13 << ", " << pb.c04
            << ") deviates from (1, 0, -1, L, K)";
        throw VerificationFailure(msg.str());
    }

    StandardForm sf;
    sf.L = pb.c13;
    sf.K = pb.c04;
    sf.frame = frame;
    sf.base_point = p;
    return sf;
}

StandardForm canonicalize_sign(const StandardForm& sf) {
    if (sf.L >= 0.0) return sf;
    StandardForm flipped = sf;
    flipped.L = -sf.L;
    flipped.frame.col(1) = -sf.frame.col(1); // compose with diag(1,-1)
    return flipped;
}

LinearMap2 frame_at(const StandardForm& sf, double T) {
    const SlicePointData s = require_interior(sf, T);
    const double fq = std::pow(s.f, -0.25);
    const double scale = fq / std::sqrt(32.0 * s.gnum);
    const double q3 = 4.0 * s.f - T * s.df;
    LinearMap2 A;
    A(0, 0) = fq;
    A(1, 0) = fq * T;
    A(0, 1) = -scale * s.df;
    A(1, 1) = scale * q3;
    return A;
}

std::pair<double, double> lk_curve(const StandardForm& sf, double T) {
    const SlicePointData s = require_interior(sf, T);
    const double n6 = detail::horner(l_numerator_dd(sf.L, sf.K), T).value();
    const double n8 = detail::horner(k_numerator_dd(sf.L, sf.K), T).value();
    const double p4 = 16.0 * s.gnum;
    const double Lt = -2.0 * std::sqrt(2.0) * n6 / (p4 * std::sqrt(p4));
    const double Kt = n8 / (4.0 * p4 * p4);
    return {Lt, Kt};
}

} // namespace quartic
