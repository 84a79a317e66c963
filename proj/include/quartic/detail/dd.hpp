#ifndef QUARTIC_DETAIL_DD_HPP
#define QUARTIC_DETAIL_DD_HPP

#include <cmath>
#include <vector>

namespace quartic::detail {

/**
 * \brief Minimal double-double value: an unevaluated sum hi + lo with
 *        |lo| <= ulp(hi)/2, giving ~32 significant decimal digits.
 *
 * Used to build and evaluate the moving-frame polynomials whose values vanish
 * to third/fourth order at double-root domain endpoints: plain doubles lose
 * every significant digit there, double-double keeps ~16.
 */
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    explicit dd(double x) : hi(x), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline dd quick_two_sum(double a, double b) {
    const double s = a + b;
    return dd(s, b - (s - a));
}

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double z = s - a;
    return dd(s, (a - (s - z)) + (b - z));
}

/** Exact product of two doubles as a dd. */
inline dd two_prod(double a, double b) {
    const double p = a * b;
    return dd(p, std::fma(a, b, -p));
}

inline dd add(const dd& a, const dd& b) {
    dd s = two_sum(a.hi, b.hi);
    const dd t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd sub(const dd& a, const dd& b) { return add(a, dd(-b.hi, -b.lo)); }

inline dd mul(const dd& a, const dd& b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd mul(const dd& a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

/** Horner evaluation of a polynomial with dd coefficients at a double t. */
inline dd horner(const std::vector<dd>& c, double t) {
    if (c.empty()) return dd(0.0);
    dd s = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) s = add(mul(s, t), c[i]);
    return s;
}

} // namespace quartic::detail

#endif // QUARTIC_DETAIL_DD_HPP
