#include "quartic/slice.hpp"

#include "quartic/detail/dd.hpp"
#include "quartic/errors.hpp"
#include "quartic/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace quartic {

namespace {

using detail::dd;

/** Metric numerator coefficients as exact double-doubles from (L,K):
 *  g_num = 1/2 - (3L/2) t + ((1-12K)/4) t^2 - (L/4) t^3 + ((3L^2+8K)/16) t^4. */
std::vector<dd> metric_numerator_dd(double L, double K) {
    std::vector<dd> c(5);
    c[0] = dd(0.5);
    c[1] = detail::two_prod(-1.5, L);
    c[2] = detail::add(dd(0.25), detail::two_prod(-3.0, K)); // 1/4 - 3K
    c[3] = dd(-L / 4.0);                                     // exact: power-of-two scale
    c[4] = detail::add(detail::mul(detail::two_prod(L, L), 3.0 / 16.0), dd(K / 2.0));
    return c;
}

double nearest_distance(const std::vector<double>& xs, double t) {
    double best = std::numeric_limits<double>::infinity();
    for (double x : xs) best = std::min(best, std::abs(x - t));
    return best;
}

BoundaryKind classify_endpoint(double t, const std::vector<double>& f_roots,
                               const std::vector<double>& g_roots) {
    const double coincide = 1e-9 * (1.0 + std::abs(t));
    const bool on_f = nearest_distance(f_roots, t) <= coincide;
    const bool on_g = nearest_distance(g_roots, t) <= coincide;
    if (on_f && on_g) return BoundaryKind::Both;
    if (on_f) return BoundaryKind::ZeroOfF;
    return BoundaryKind::MetricDegenerate;
}

/** 16-point Gauss-Legendre nodes/weights on [-1,1]. */
constexpr double gl_x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double gl_w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

} // namespace

double SlicePolynomial::f(double t) const { return 1.0 + t * t * (-1.0 + t * (L + t * K)); }

double SlicePolynomial::df(double t) const { return t * (-2.0 + t * (3.0 * L + t * 4.0 * K)); }

double SlicePolynomial::ddf(double t) const { return -2.0 + t * (6.0 * L + t * 12.0 * K); }

std::vector<double> SlicePolynomial::coefficients() const { return {1.0, 0.0, -1.0, L, K}; }

std::vector<double> SlicePolynomial::derivative_coefficients() const {
    return {0.0, -2.0, 3.0 * L, 4.0 * K};
}

std::vector<double> SlicePolynomial::metric_numerator_coefficients() const {
    const auto c = metric_numerator_dd(L, K);
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].value();
    return out;
}

double SlicePolynomial::metric_numerator(double t) const {
    return detail::horner(metric_numerator_dd(L, K), t).value();
}

SlicePolynomial slice_poly(double L, double K) { return SlicePolynomial{L, K}; }

CriticalPoints critical_points(double L, double K) {
    CriticalPoints cp;
    const double disc = 9.0 * L * L + 32.0 * K;
    if (disc < 0.0) return cp;
    const double s = std::sqrt(disc);
    if (K == 0.0) {
        // f' = t(3L t - 2): a single nonzero critical point when L != 0, on
        // the branch that continues it through K -> 0.
        if (L > 0.0) cp.t_m = 2.0 / (3.0 * L);
        if (L < 0.0) cp.t_M = 2.0 / (3.0 * L);
        return cp;
    }
    // Cancellation-free evaluations of (-3L +- s)/(8K): each branch uses the
    // conjugate form 4/(3L +- s) whenever the direct numerator cancels.
    cp.t_m = (L >= 0.0) ? 4.0 / (3.0 * L + s) : (-3.0 * L + s) / (8.0 * K);
    cp.t_M = (L >= 0.0) ? (-3.0 * L - s) / (8.0 * K) : 4.0 / (3.0 * L - s);
    return cp;
}

const char* to_string(BoundaryKind kind) {
    switch (kind) {
        case BoundaryKind::ZeroOfF: return "f_zero";
        case BoundaryKind::MetricDegenerate: return "metric";
        case BoundaryKind::Both: return "both";
    }
    return "unknown";
}

SliceProfile domain(double L, double K) {
    SliceProfile profile;
    profile.L = L;
    profile.K = K;
    const SlicePolynomial sp = slice_poly(L, K);
    profile.f_roots = real_roots(sp.coefficients());
    profile.g_roots = real_roots(sp.metric_numerator_coefficients());
    const CriticalPoints cp = critical_points(L, K);
    profile.t_m = cp.t_m;
    profile.t_M = cp.t_M;

    double hi = std::numeric_limits<double>::infinity();
    double lo = -std::numeric_limits<double>::infinity();
    for (const auto* roots : {&profile.f_roots, &profile.g_roots}) {
        for (double r : *roots) {
            if (r > 0.0) hi = std::min(hi, r);
            if (r < 0.0) lo = std::max(lo, r);
        }
    }
    if (!std::isfinite(hi) || !std::isfinite(lo)) {
        std::ostringstream msg;
        msg << "domain endpoint search failed for (L,K)=(" << L << "," << K
            << "): the domain of a maximal curve is precompact, so roots must exist";
        throw ConvergenceFailure(msg.str());
    }
    profile.dom_lo = lo;
    profile.dom_hi = hi;
    profile.boundary_lo = classify_endpoint(lo, profile.f_roots, profile.g_roots);
    profile.boundary_hi = classify_endpoint(hi, profile.f_roots, profile.g_roots);
    return profile;
}

MetricSample metric(double L, double K, double t) {
    const SlicePolynomial sp = slice_poly(L, K);
    MetricSample sample;
    sample.t = t;
    sample.g_numerator = sp.metric_numerator(t);
    const double ft = poly_eval_compensated(sp.coefficients(), t);
    const double scale = std::max(1.0, std::abs(t));
    if (std::abs(ft) <= 1e-13 * scale * scale * scale * scale) {
        std::ostringstream msg;
        msg << "metric coefficient undefined at t=" << t << ": f(t)=0 (level-set boundary)";
        throw DivisionByZeroAtLevelSetBoundary(msg.str());
    }
    sample.g_value = sample.g_numerator / (ft * ft);
    return sample;
}

bool is_closed(double L, double K) {
    const SliceProfile profile = domain(L, K);
    for (double endpoint : {profile.dom_lo, profile.dom_hi}) {
        // The endpoint is itself a root of one family, so the gap between the
        // two families there is the larger of the two nearest-root distances.
        const double gap = std::max(nearest_distance(profile.f_roots, endpoint),
                                    nearest_distance(profile.g_roots, endpoint));
        const double coincide = 1e-9 * (1.0 + std::abs(endpoint));
        if (gap > coincide && gap <= eps_sep) {
            std::ostringstream msg;
            msg << "boundary kind ambiguous at t=" << endpoint << " for (L,K)=(" << L << ","
                << K << "): a zero of f and a zero of the metric numerator are " << gap
                << " apart (below the separation tolerance, above coincidence)";
            throw BoundaryAmbiguous(msg.str());
        }
    }
    return (profile.boundary_lo == BoundaryKind::ZeroOfF ||
            profile.boundary_lo == BoundaryKind::Both) &&
           (profile.boundary_hi == BoundaryKind::ZeroOfF ||
            profile.boundary_hi == BoundaryKind::Both);
}

bool is_singular_at_infinity(double L, double K) {
    const SliceProfile profile = domain(L, K);
    const SlicePolynomial sp = slice_poly(L, K);
    const auto df_coeffs = sp.derivative_coefficients();
    for (const auto& [endpoint, kind] :
         {std::pair{profile.dom_lo, profile.boundary_lo},
          std::pair{profile.dom_hi, profile.boundary_hi}}) {
        if (kind == BoundaryKind::MetricDegenerate) continue;
        const double a = std::abs(endpoint);
        const double threshold = 1e-7 * (1.0 + a * a * a);
        if (std::abs(poly_eval_compensated(df_coeffs, endpoint)) <= threshold) return true;
    }
    return false;
}

namespace {

/** Coefficients (as exact double-doubles) of F(1-t^2, 2t): the quartic form F
 *  along the tan(theta/2) parametrization of the circle; degree 8 in t. */
std::vector<dd> conic_compose(const std::array<dd, 5>& F) {
    // (1-t^2)^k expansions, exact small-integer coefficients.
    static const int binom[5][5] = {{1, 0, 0, 0, 0},
                                    {1, -1, 0, 0, 0},
                                    {1, -2, 1, 0, 0},
                                    {1, -3, 3, -1, 0},
                                    {1, -4, 6, -4, 1}};
    std::vector<dd> out(9, dd(0.0));
    for (int i = 0; i <= 4; ++i) { // term F_i * (1-t^2)^{4-i} * (2t)^i
        const int k = 4 - i;
        double two_pow = 1.0;
        for (int j = 0; j < i; ++j) two_pow *= 2.0;
        for (int j = 0; j <= k; ++j) { // (1-t^2)^k = sum binom[k][j] (-1)^j t^{2j}
            const dd term = detail::mul(F[static_cast<std::size_t>(i)],
                                        static_cast<double>(binom[k][j]) * two_pow);
            const std::size_t deg = static_cast<std::size_t>(2 * j + i);
            out[deg] = detail::add(out[deg], term);
        }
    }
    return out;
}

std::array<dd, 5> form_as_dd(const QuarticForm& h) {
    return {dd(h.c40), dd(h.c31), dd(h.c22), dd(h.c13), dd(h.c04)};
}

/** hessian_det_form coefficients in exact double-double arithmetic. */
std::array<dd, 5> hessian_det_form_dd(const QuarticForm& h) {
    const double a = h.c40, b = h.c31, c = h.c22, d = h.c13, e = h.c04;
    auto combine = [](double s1, double x1, double y1, double s2, double x2, double y2) {
        return detail::add(detail::mul(detail::two_prod(x1, y1), s1),
                           detail::mul(detail::two_prod(x2, y2), s2));
    };
    return {combine(24.0, a, c, -9.0, b, b), combine(72.0, a, d, -12.0, b, c),
            detail::add(combine(144.0, a, e, 18.0, b, d),
                        detail::mul(detail::two_prod(c, c), -12.0)),
            combine(72.0, b, e, -12.0, c, d), combine(24.0, c, e, -9.0, d, d)};
}

std::vector<double> round_dd(const std::vector<dd>& c) {
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].value();
    return out;
}

} // namespace

std::vector<std::pair<double, double>> hyperbolic_arcs(const QuarticForm& h) {
    const std::vector<dd> ph = conic_compose(form_as_dd(h));
    const std::vector<dd> pd = conic_compose(hessian_det_form_dd(h));

    // Directions where h = 0 or hessian_det = 0 are excluded from the set; all
    // arcs are delimited by them (or by the chart boundary direction (-1,0)).
    std::vector<double> angles;
    for (double t : real_roots(round_dd(ph))) angles.push_back(2.0 * std::atan(t));
    for (double t : real_roots(round_dd(pd))) angles.push_back(2.0 * std::atan(t));

    // The direction (-1,0) (theta = pi) is not covered by the chart; its
    // values are the x^4 coefficients directly.
    const double h_back = h.c40;
    const double det_back = hessian_det_form(h).c40;
    const bool back_included = h_back > 0.0 && det_back < 0.0;
    if (!back_included) angles.push_back(M_PI);

    std::sort(angles.begin(), angles.end());
    std::vector<double> cut;
    for (double a : angles) {
        if (!cut.empty() && a - cut.back() <= 1e-9) continue;
        cut.push_back(a);
    }
    // Merge across the wrap (theta = -pi and theta = pi are the same point).
    if (cut.size() >= 2 && (cut.front() + M_PI) + (M_PI - cut.back()) <= 1e-9) cut.pop_back();

    const auto included = [&](double theta) {
        if (std::abs(std::abs(theta) - M_PI) < 1e-12) return back_included;
        const double t = std::tan(0.5 * theta);
        return detail::horner(ph, t).value() > 0.0 && detail::horner(pd, t).value() < 0.0;
    };

    std::vector<std::pair<double, double>> arcs;
    if (cut.empty()) {
        if (included(0.0)) arcs.emplace_back(-M_PI, M_PI);
        return arcs;
    }

    for (std::size_t i = 0; i < cut.size(); ++i) {
        const double a = cut[i];
        const double b = (i + 1 < cut.size()) ? cut[i + 1] : cut.front() + 2.0 * M_PI;
        double mid = a + 0.5 * (b - a);
        if (mid > M_PI) mid -= 2.0 * M_PI;
        if (b - a > 1e-12 && included(mid)) arcs.emplace_back(a, b);
    }
    return arcs;
}

int count_components(const QuarticForm& h) {
    return static_cast<int>(hyperbolic_arcs(h).size());
}

namespace {

DirectionalProbe probe_endpoint(double L, double K, double endpoint) {
    DirectionalProbe probe;
    double sum = 0.0;
    std::vector<double> shells;
    const int max_shell = 36;
    for (int j = 0; j < max_shell; ++j) {
        const double a = endpoint * (1.0 - std::pow(0.5, j));
        const double b = endpoint * (1.0 - std::pow(0.5, j + 1));
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double integral = 0.0;
        for (int k = 0; k < 8; ++k) {
            for (double sign : {-1.0, 1.0}) {
                const double t = mid + sign * half * gl_x[k];
                const double g = metric(L, K, t).g_value;
                integral += gl_w[k] * std::sqrt(std::max(g, 0.0));
            }
        }
        integral *= std::abs(half);
        shells.push_back(integral);
        sum += integral;
        if (sum > 1e5) { // unmistakably divergent
            probe.divergent = true;
            probe.arc_length = sum;
            return probe;
        }
    }
    // Geometric decision on the tail: log-divergent integrands give constant
    // shell contributions (ratio -> 1); integrable endpoints give ratios
    // bounded away from 1 (simple numerator root: 2^{-3/2} ~ 0.35).
    const double tail = shells.back();
    const double earlier = shells[shells.size() - 5];
    const double ratio = (earlier > 0.0) ? std::pow(tail / earlier, 0.25) : 0.0;
    if (tail <= 1e-14 * (1.0 + sum) || ratio < 0.9) {
        probe.divergent = false;
        probe.arc_length = sum + ((ratio > 0.0 && ratio < 1.0) ? tail * ratio / (1.0 - ratio) : 0.0);
    } else {
        probe.divergent = true;
        probe.arc_length = sum;
    }
    return probe;
}

} // namespace

CompletenessProbe completeness_probe(double L, double K) {
    const SliceProfile profile = domain(L, K);
    CompletenessProbe result;
    result.toward_lo = probe_endpoint(L, K, profile.dom_lo);
    result.toward_hi = probe_endpoint(L, K, profile.dom_hi);
    return result;
}

} // namespace quartic
