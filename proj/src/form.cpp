#include "quartic/form.hpp"

#include <algorithm>
#include <cmath>

namespace quartic {

double QuarticForm::max_abs_coefficient() const {
    return std::max({std::abs(c40), std::abs(c31), std::abs(c22), std::abs(c13),
                     std::abs(c04)});
}

double eval(const QuarticForm& h, const Point2& p) {
    const double x = p.x(), y = p.y();
    // Horner in y over powers of x keeps the evaluation well conditioned for
    // the moderate coefficient sizes arising here.
    return ((((h.c04 * y + h.c13 * x) * y + h.c22 * x * x) * y + h.c31 * x * x * x) * y) +
           h.c40 * x * x * x * x;
}

Point2 gradient(const QuarticForm& h, const Point2& p) {
    const double x = p.x(), y = p.y();
    const double x2 = x * x, y2 = y * y;
    const double hx = 4.0 * h.c40 * x * x2 + 3.0 * h.c31 * x2 * y + 2.0 * h.c22 * x * y2 +
                      h.c13 * y * y2;
    const double hy = h.c31 * x * x2 + 2.0 * h.c22 * x2 * y + 3.0 * h.c13 * x * y2 +
                      4.0 * h.c04 * y * y2;
    return Point2(hx, hy);
}

LinearMap2 hessian(const QuarticForm& h, const Point2& p) {
    const double x = p.x(), y = p.y();
    const double x2 = x * x, y2 = y * y, xy = x * y;
    const double hxx = 12.0 * h.c40 * x2 + 6.0 * h.c31 * xy + 2.0 * h.c22 * y2;
    const double hxy = 3.0 * h.c31 * x2 + 4.0 * h.c22 * xy + 3.0 * h.c13 * y2;
    const double hyy = 2.0 * h.c22 * x2 + 6.0 * h.c13 * xy + 12.0 * h.c04 * y2;
    LinearMap2 H;
    H << hxx, hxy, hxy, hyy;
    return H;
}

double hessian_det(const QuarticForm& h, const Point2& p) {
    const LinearMap2 H = hessian(h, p);
    return H(0, 0) * H(1, 1) - H(0, 1) * H(1, 0);
}

HyperbolicityTest test_hyperbolicity(const QuarticForm& h, const Point2& p) {
    HyperbolicityTest result;
    const double r2 = p.squaredNorm();
    if (r2 == 0.0) {
        result.ambiguous = true;
        return result;
    }
    const double coeff_norm = std::max(1.0, h.max_abs_coefficient());
    // hessian_det is degree-4 homogeneous in p and quadratic in the
    // coefficients of h, so this normalization makes the threshold meaningful
    // for any input scale.
    result.normalized_det = hessian_det(h, p) / (r2 * r2 * coeff_norm * coeff_norm);
    result.ambiguous = std::abs(result.normalized_det) <= eps_sign;
    result.hyperbolic = result.normalized_det < -eps_sign;
    return result;
}

bool is_hyperbolic_point(const QuarticForm& h, const Point2& p) {
    return test_hyperbolicity(h, p).hyperbolic;
}

QuarticForm hessian_det_form(const QuarticForm& h) {
    const double a = h.c40, b = h.c31, c = h.c22, d = h.c13, e = h.c04;
    // Expand h_xx h_yy - h_xy^2 with the closed-form second partials.
    return QuarticForm{24.0 * a * c - 9.0 * b * b,
                       72.0 * a * d - 12.0 * b * c,
                       144.0 * a * e + 18.0 * b * d - 12.0 * c * c,
                       72.0 * b * e - 12.0 * c * d,
                       24.0 * c * e - 9.0 * d * d};
}

QuarticForm pullback(const QuarticForm& h, const LinearMap2& A) {
    // Expand h(a x + b y, c x + d y) exactly.  Powers of the two linear forms
    // are computed by binomial expansion and multiplied as coefficient arrays.
    const double a = A(0, 0), b = A(0, 1), c = A(1, 0), d = A(1, 1);

    // pw[k][j] = coefficient of x^{k-j} y^j in (alpha x + beta y)^k.
    auto powers = [](double alpha, double beta) {
        std::array<std::array<double, 5>, 5> pw{};
        pw[0][0] = 1.0;
        for (int k = 1; k <= 4; ++k) {
            for (int j = 0; j <= k; ++j) {
                double v = 0.0;
                if (j <= k - 1) v += alpha * pw[k - 1][j];
                if (j >= 1) v += beta * pw[k - 1][j - 1];
                pw[k][j] = v;
            }
        }
        return pw;
    };

    const auto u = powers(a, b); // (a x + b y)^k
    const auto v = powers(c, d); // (c x + d y)^k

    std::array<double, 5> out{}; // coefficient of x^{4-j} y^j
    const std::array<double, 5> coeff = h.coefficients();
    for (int i = 0; i <= 4; ++i) { // term c_{4-i,i} * u^{4-i} * v^i
        const double ci = coeff[static_cast<std::size_t>(i)];
        if (ci == 0.0) continue;
        const auto& up = u[static_cast<std::size_t>(4 - i)];
        const auto& vp = v[static_cast<std::size_t>(i)];
        for (int j = 0; j <= 4 - i; ++j)
            for (int k = 0; k <= i; ++k)
                out[static_cast<std::size_t>(j + k)] += ci * up[static_cast<std::size_t>(j)] *
                                                        vp[static_cast<std::size_t>(k)];
    }
    return QuarticForm::from_coefficients(out);
}

} // namespace quartic
