#include "quartic/poly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace quartic {

namespace {

/** Scale of a polynomial's coefficients. */
double coeff_scale(const std::vector<double>& c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

/** max(1,|t|)^deg * coefficient scale: the natural magnitude of values of the
 *  polynomial near t, used to make thresholds scale-invariant. */
double local_scale(const std::vector<double>& c, double t) {
    const double a = std::max(1.0, std::abs(t));
    double pw = 1.0;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) pw *= a;
    return std::max(coeff_scale(c) * pw, 1e-300);
}

/** sum_i |c_i| |t|^i: the Horner condition magnitude.  One ulp of relative
 *  rounding on each coefficient moves the value at t by up to eps times this,
 *  so it bounds how precisely a value of the polynomial is even defined when
 *  the coefficients come out of rounded arithmetic. */
double poly_eval_abs(const std::vector<double>& c, double t) {
    const double a = std::abs(t);
    double s = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) s = s * a + std::abs(c[i]);
    return s;
}

/** Effective degree after trimming negligible leading coefficients. */
int effective_degree(const std::vector<double>& c, double rel_tol = 1e-14) {
    const double scale = coeff_scale(c);
    if (scale == 0.0) return -1;
    for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d) {
        if (std::abs(c[static_cast<std::size_t>(d)]) > rel_tol * scale) return d;
    }
    return -1;
}

/** Newton iteration on `target` (slope from `slope`), compensated numerator.
 *  Converges for simple roots quadratically and for multiple roots linearly;
 *  the generous cap keeps the linear case affordable for degrees <= 8. */
double newton(const std::vector<double>& target, const std::vector<double>& slope, double t) {
    for (int iter = 0; iter < 80; ++iter) {
        const double num = poly_eval_compensated(target, t);
        const double den = poly_eval(slope, t);
        if (den == 0.0) break;
        const double step = num / den;
        t -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(t))) break;
    }
    return t;
}

/** All derivatives of c: chain[0] = c, chain[m] = c^{(m)}. */
std::vector<std::vector<double>> derivative_chain(const std::vector<double>& c) {
    std::vector<std::vector<double>> chain{c};
    while (chain.back().size() > 1) chain.push_back(poly_derivative(chain.back()));
    return chain;
}

/**
 * Polish one eigenvalue candidate into zero, one, or two certified real roots.
 *
 * Multiplicity is estimated from the derivative chain at the candidate.  For
 * an (approximately) double root the polish drives Newton on p' to the
 * extremum t_e and then decides by the compensated value p(t_e):
 *   - |p(t_e)| below the noise floor: a genuine double root at t_e;
 *   - p(t_e) opposite in sign to the curvature: two nearby simple roots,
 *     seeded at t_e +- sqrt(-2 p(t_e)/p''(t_e)) and polished individually;
 *   - same sign: the polynomial does not cross zero here (no real root).
 * Higher multiplicities polish on the first derivative order that is nonzero
 * at the root, which lands on the exact location of the multiple root.
 */
void polish_candidate(const std::vector<std::vector<double>>& chain, double t0,
                      std::vector<double>& out) {
    const std::vector<double>& c = chain[0];
    const std::size_t levels = chain.size();

    // Smallest m >= 1 with p^{(m)}(t) not negligibly small.
    const auto estimate_multiplicity = [&](double t) {
        std::size_t m = 1;
        while (m + 1 < levels &&
               std::abs(poly_eval(chain[m], t)) <= 1e-5 * local_scale(chain[m], t))
            ++m;
        return m;
    };

    std::size_t m = estimate_multiplicity(t0);

    // An eigenvalue seed sits O(noise^(1/m)) away from an m-fold root, which
    // can be far enough that the higher derivatives do not yet read as zero
    // there.  Polishing on the current level pulls the point onto the root;
    // if the multiplicity estimate grows at the refined location, adopt it
    // and repeat.  Without this, a seed that under-reads the multiplicity is
    // polished on a derivative that itself has a multiple root, where Newton
    // stalls on a noise-dominated slope and leaves a spurious offset root.
    for (std::size_t pass = 0; pass + 2 < levels && m >= 2; ++pass) {
        const double refined = newton(chain[m - 1], chain[m], t0);
        if (!std::isfinite(refined)) break;
        const std::size_t m_refined = estimate_multiplicity(refined);
        if (m_refined <= m) break;
        t0 = refined;
        m = m_refined;
    }

    if (m == 1) { // simple root
        const double t = newton(chain[0], chain[1], t0);
        out.push_back(t);
        return;
    }
    if (m == 2) { // near-double: resolve crossing vs touching vs exact double
        const double te = newton(chain[1], chain[2], t0);
        const double value = poly_eval_compensated(c, te);
        const double curv = poly_eval(chain[2], te);
        // Coefficients carry the rounding of whatever arithmetic produced
        // them, which offsets a true double root's extremal value from zero
        // by a few ulps of the Horner condition magnitude.  Below that
        // resolution the extremum cannot be distinguished from a double root,
        // so report it as one rather than as a micro-crossing pair or a near
        // miss.  Genuinely separated root pairs leave an extremal value
        // quadratic in their separation, far above this floor.
        const double floor =
            50.0 * std::numeric_limits<double>::epsilon() * poly_eval_abs(c, te);
        if (std::abs(value) <= floor || curv == 0.0) {
            out.push_back(te); // double root to working precision
            return;
        }
        if (value * curv < 0.0) { // genuine crossing: two simple roots
            const double delta = std::sqrt(-2.0 * value / curv);
            out.push_back(newton(chain[0], chain[1], te - delta));
            out.push_back(newton(chain[0], chain[1], te + delta));
        }
        // same sign: local extremum that does not reach zero -> no real root
        return;
    }
    // Multiplicity m: p^{(m-1)} has a simple root at the location; polish it.
    out.push_back(newton(chain[m - 1], chain[m], t0));
}

} // namespace

double poly_eval(const std::vector<double>& c, double t) {
    if (c.empty()) return 0.0;
    double s = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) s = s * t + c[i];
    return s;
}

double poly_eval_compensated(const std::vector<double>& c, double t) {
    if (c.empty()) return 0.0;
    double s = c.back();
    double err = 0.0;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        // two_prod
        const double p = s * t;
        const double pi = std::fma(s, t, -p);
        // two_sum
        const double snew = p + c[i];
        const double z = snew - p;
        const double sigma = (p - (snew - z)) + (c[i] - z);
        s = snew;
        err = err * t + (pi + sigma);
    }
    return s + err;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    if (c.size() <= 1) return {};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
    return d;
}

double polish_root(const std::vector<double>& c, double t0) {
    std::vector<double> out;
    polish_candidate(derivative_chain(c), t0, out);
    if (out.empty()) return t0;
    // Return the candidate closest to the seed.
    double best = out.front();
    for (double t : out)
        if (std::abs(t - t0) < std::abs(best - t0)) best = t;
    return best;
}

std::vector<double> real_roots(const std::vector<double>& c) {
    std::vector<double> roots;
    const int deg = effective_degree(c);
    if (deg <= 0) return roots; // constant or identically zero

    std::vector<double> p(c.begin(), c.begin() + deg + 1);

    // Peel roots at the origin (negligible trailing coefficients).
    const double scale = coeff_scale(p);
    std::size_t zero_mult = 0;
    while (zero_mult < p.size() - 1 && std::abs(p[zero_mult]) <= 1e-14 * scale) ++zero_mult;
    if (zero_mult > 0) {
        roots.push_back(0.0);
        p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zero_mult));
    }

    const auto chain = derivative_chain(c);
    const int n = static_cast<int>(p.size()) - 1;
    if (n == 1) {
        std::vector<double> out;
        polish_candidate(chain, -p[0] / p[1], out);
        roots.insert(roots.end(), out.begin(), out.end());
    } else if (n >= 2) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        const double lead = p[static_cast<std::size_t>(n)];
        for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[static_cast<std::size_t>(i)] / lead;
        for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;

        const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        const auto& ev = solver.eigenvalues();
        for (int i = 0; i < ev.size(); ++i) {
            const double re = ev[i].real(), im = ev[i].imag();
            // Multiple real roots surface as clusters with imaginary parts up
            // to ~eps^{1/4}; accept generously, polishing decides their fate.
            if (std::abs(im) > 1e-3 * (1.0 + std::abs(re))) continue;
            polish_candidate(chain, re, roots);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> unique_roots;
    for (double r : roots) {
        if (!std::isfinite(r)) continue;
        if (!unique_roots.empty() &&
            std::abs(r - unique_roots.back()) <= 1e-9 * (1.0 + std::abs(r)))
            continue;
        unique_roots.push_back(r);
    }

    // Certify: discard anything whose compensated residual is not consistent
    // with a true zero crossing (protects against extremum artifacts).
    std::vector<double> verified;
    for (double r : unique_roots) {
        if (std::abs(poly_eval_compensated(c, r)) <= 1e-7 * local_scale(c, r))
            verified.push_back(r);
    }
    return verified;
}

} // namespace quartic
