#include "quartic/moduli.hpp"

#include "quartic/errors.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>

namespace quartic {

namespace {

constexpr double seam_K = -1.0 / 12.0;
constexpr double apex_K = 0.25;
/** Below this |1+12K| the chart expressions lose their conditioning and the
 *  flow-integration fallback takes over. */
constexpr double seam_chart_cutoff = 1e-6;

double fp_b_abscissa() { return std::sqrt(8.0 / 27.0); }

[[noreturn]] void domain_error(const char* fn, double x, const char* what) {
    std::ostringstream msg;
    msg << fn << "(" << x << "): " << what;
    throw DomainError(msg.str());
}

} // namespace

std::pair<double, double> field(double L, double K) {
    return {4.5 * L * L + 4.0 * K - 1.0, L * (6.0 * K + 0.5)};
}

ModuliPoint fixed_point_a() { return {0.0, apex_K}; }

ModuliPoint fixed_point_b() { return {fp_b_abscissa(), seam_K}; }

double boundary_u(double K) {
    double s = 1.0 + 12.0 * K;
    if (s < 0.0) {
        if (s < -1e-12) domain_error("boundary_u", K, "defined for K >= -1/12");
        s = 0.0;
    }
    const double rs = std::sqrt(s);
    return std::sqrt(2.0 / 27.0 * (rs + 1.0)) * std::abs(rs - 2.0);
}

double boundary_v(double K) {
    // The critical-point-merge curve 9L^2 + 32K = 0 exists for all K <= 0,
    // not just below the seam.
    if (K > 1e-12) domain_error("boundary_v", K, "defined for K <= 0");
    return 4.0 * std::sqrt(std::max(0.0, -2.0 * K)) / 3.0;
}

double boundary_w(double K) {
    if (K > seam_K + 1e-12) domain_error("boundary_w", K, "defined for K <= -1/12");
    return std::sqrt(6.0 - 216.0 * K) / 9.0;
}

double boundary_u_derivative(double K) {
    const double s = 1.0 + 12.0 * K;
    if (s < 0.0) domain_error("boundary_u_derivative", K, "defined for K >= -1/12");
    if (std::abs(K - apex_K) <= 1e-13)
        domain_error("boundary_u_derivative", K, "corner at the apex K = 1/4");
    const double magnitude = std::sqrt(6.0 / (1.0 + std::sqrt(s)));
    return (K < apex_K) ? -magnitude : magnitude;
}

double boundary_w_derivative(double K) {
    if (K > seam_K + 1e-12) domain_error("boundary_w_derivative", K, "defined for K <= -1/12");
    return -12.0 / std::sqrt(6.0 - 216.0 * K);
}

double constant_U() {
    const double r57 = std::sqrt(57.0);
    const double base = std::cbrt(46.0 + 6.0 * r57);
    return (4.0 + (31.0 + 3.0 * r57) / base + (100.0 + 12.0 * r57) / (base * base)) / 24.0;
}

const char* to_string(RegionTag tag) {
    switch (tag) {
        case RegionTag::FixedPoint_A: return "FixedPoint_A";
        case RegionTag::FixedPoint_B: return "FixedPoint_B";
        case RegionTag::ClosedAxis: return "ClosedAxis";
        case RegionTag::ClosedInterior_Upper: return "ClosedInterior_Upper";
        case RegionTag::ClosedInterior_Lower: return "ClosedInterior_Lower";
        case RegionTag::UGraph_Lower: return "UGraph_Lower";
        case RegionTag::UGraph_Upper: return "UGraph_Upper";
        case RegionTag::WGraph: return "WGraph";
        case RegionTag::MGraph: return "MGraph";
        case RegionTag::Incomplete_WExterior: return "Incomplete_WExterior";
        case RegionTag::Incomplete_Wedge: return "Incomplete_Wedge";
        case RegionTag::Incomplete_AboveBell: return "Incomplete_AboveBell";
        case RegionTag::NoHyperbolicStructure: return "NoHyperbolicStructure";
    }
    return "unknown";
}

double region_epsilon() {
    if (const char* env = std::getenv("QUARTIC_MODULI_TOL")) {
        char* end = nullptr;
        const double value = std::strtod(env, &end);
        if (end != env && std::isfinite(value) && value > 0.0) return value;
    }
    return 1e-9;
}

namespace {

bool closed_set_contains(double aL, double K) {
    if (K > apex_K) return false;
    if (K == apex_K) return aL == 0.0;
    if (K >= seam_K) return aL <= boundary_u(K); // u(-1/12) = sqrt(8/27) covers the seam
    return aL < boundary_w(K);                   // the w-graph itself is not closed
}

double signed_boundary_distance(double aL, double K) {
    double d = std::numeric_limits<double>::infinity();
    if (K >= seam_K) {
        const double slope = std::sqrt(6.0 / (1.0 + std::sqrt(1.0 + 12.0 * K)));
        d = std::min(d, std::abs(aL - boundary_u(K)) / std::hypot(1.0, slope));
    }
    if (K <= seam_K) {
        const double slope = 12.0 / std::sqrt(6.0 - 216.0 * K);
        d = std::min(d, std::abs(aL - boundary_w(K)) / std::hypot(1.0, slope));
    }
    if (aL >= fp_b_abscissa()) d = std::min(d, std::abs(K - seam_K));
    d = std::min(d, std::hypot(aL - fp_b_abscissa(), K - seam_K)); // graphs meet here
    return closed_set_contains(aL, K) ? -d : d;
}

} // namespace

RegionInfo region(double L, double K) {
    const double eps = region_epsilon();
    // Snap radius for the boundary loci.  Chart coordinates recovered by
    // standardizing a form presented in an arbitrary frame carry an absolute
    // error that grows with the frame's condition number and with the size of
    // the chart point itself, approaching 1e-5 * scale for condition ~1e3.
    // The radius must cover that budget, or boundary-class forms handed over
    // in a skewed frame fall off their locus into a neighboring open region.
    const double aL = std::abs(L);
    const double snap = 1e4 * eps * std::max({1.0, aL, std::abs(K)});

    RegionInfo info;
    info.boundary_distance = signed_boundary_distance(aL, K);
    info.near_boundary = std::abs(info.boundary_distance) < 10.0 * snap;

    // Fixed points get the same snap radius as the graphs: they are the
    // graphs' junction points, so a smaller ball would let the graph snap
    // capture near-fixed-point inputs first.
    if (std::hypot(aL, K - apex_K) <= snap) {
        info.tag = RegionTag::FixedPoint_A;
        return info;
    }
    if (std::hypot(aL - fp_b_abscissa(), K - seam_K) <= snap) {
        info.tag = RegionTag::FixedPoint_B;
        return info;
    }
    if (aL <= eps && K < apex_K) {
        info.tag = RegionTag::ClosedAxis;
        return info;
    }

    if (K >= seam_K && aL > eps && std::abs(aL - boundary_u(K)) <= snap) {
        info.tag = (K < apex_K) ? RegionTag::UGraph_Lower : RegionTag::UGraph_Upper;
        return info;
    }
    if (std::abs(K - seam_K) <= snap && aL > fp_b_abscissa()) {
        info.tag = RegionTag::MGraph;
        return info;
    }
    if (K <= seam_K && aL > eps && std::abs(aL - boundary_w(K)) <= snap) {
        info.tag = RegionTag::WGraph;
        return info;
    }

    if (std::abs(K - seam_K) <= eps) {
        // Seam points below the fixed point: closed either side; binned with
        // the upper interior by convention.
        info.tag = RegionTag::ClosedInterior_Upper;
        return info;
    }
    if (K < seam_K) {
        info.tag = (aL < boundary_w(K)) ? RegionTag::ClosedInterior_Lower
                                        : RegionTag::Incomplete_WExterior;
        return info;
    }
    if (aL < boundary_u(K)) {
        info.tag = (K < apex_K) ? RegionTag::ClosedInterior_Upper
                                : RegionTag::Incomplete_AboveBell;
    } else {
        info.tag = RegionTag::Incomplete_Wedge;
    }
    return info;
}

namespace {

/** Conserved quantity through (|L|, K), expanded numerator form (no division
 *  by the boundary value, hence valid on both sides of the graphs and across
 *  the apex line). */
double conserved_c(double aL, double K) {
    const double s = 1.0 + 12.0 * K;
    if (K < seam_K) {
        const double sigma = -s;
        return (3.0 * sigma + 4.0 - 13.5 * aL * aL) / (sigma * std::sqrt(sigma));
    }
    const double rs = std::sqrt(s);
    const double axis_num = (rs + 1.0) * (rs - 2.0) * (rs - 2.0); // s^{3/2} - 3s + 4
    return (axis_num - 13.5 * aL * aL) / (s * rs);
}

} // namespace

FlowState first_integral(double L, double K) {
    const double eps = region_epsilon();
    const double aL = std::abs(L);
    auto fail = [&](const char* what) {
        std::ostringstream msg;
        msg << "first integral undefined at (L,K)=(" << L << "," << K << "): " << what;
        throw DomainError(msg.str());
    };
    if (std::hypot(aL, K - apex_K) <= eps) fail("fixed point");
    if (std::hypot(aL - fp_b_abscissa(), K - seam_K) <= eps) fail("fixed point");
    if (std::abs(K - seam_K) <= eps) fail("seam K = -1/12 (chart coordinates singular)");
    if (std::abs(K - apex_K) <= eps) fail("apex line K = 1/4 (phi undefined)");

    FlowState state;
    state.psi = K;
    state.c = conserved_c(aL, K); // even in L
    if (K < seam_K) {
        const double w = boundary_w(K);
        if (std::abs(aL - w) <= eps) fail("on the boundary graph w");
        state.phi = L / w;
        state.J = std::numeric_limits<double>::quiet_NaN();
    } else {
        const double u = boundary_u(K);
        if (std::abs(aL - u) <= eps) fail("on the boundary graph u");
        const double s = 1.0 + 12.0 * K;
        const double rs = std::sqrt(s);
        const double axis_num = (rs + 1.0) * (rs - 2.0) * (rs - 2.0);
        state.phi = L / u;
        state.J = -27.0 * (1.0 - 4.0 * K) / (s * axis_num);
    }
    return state;
}

namespace {

using flow_state_t = std::array<double, 2>;

void flow_rhs(const flow_state_t& x, flow_state_t& dxdt, double) {
    dxdt[0] = 4.5 * x[0] * x[0] + 4.0 * x[1] - 1.0;
    dxdt[1] = x[0] * (6.0 * x[1] + 0.5);
}

} // namespace

FlowTrajectory integrate_flow(const ModuliPoint& start, double t_end,
                              std::optional<double> stop_at_L) {
    namespace ode = boost::numeric::odeint;
    FlowTrajectory traj;
    traj.times.push_back(0.0);
    traj.points.push_back(start);
    if (t_end == 0.0) return traj;
    const double dir = (t_end > 0.0) ? 1.0 : -1.0;

    auto stepper =
        ode::make_dense_output(1e-12, 1e-10, ode::runge_kutta_dopri5<flow_state_t>());
    stepper.initialize(flow_state_t{start.L, start.K}, 0.0, dir * 1e-4);

    const int max_steps = 200000;
    for (int step = 0; step < max_steps; ++step) {
        const double t_prev = stepper.current_time();
        const flow_state_t x_prev = stepper.current_state();
        stepper.do_step(flow_rhs);
        double t_cur = stepper.current_time();
        flow_state_t x_cur = stepper.current_state();

        bool final_step = false;
        if ((dir > 0.0 && t_cur >= t_end) || (dir < 0.0 && t_cur <= t_end)) {
            stepper.calc_state(t_end, x_cur);
            t_cur = t_end;
            final_step = true;
        }

        if (stop_at_L) {
            const double g0 = x_prev[0] - *stop_at_L;
            const double g1 = x_cur[0] - *stop_at_L;
            if ((g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0)) {
                double ta = t_prev, tb = t_cur, tm = t_cur;
                flow_state_t xm = x_cur;
                for (int it = 0; it < 200; ++it) {
                    tm = 0.5 * (ta + tb);
                    stepper.calc_state(tm, xm);
                    const double gm = xm[0] - *stop_at_L;
                    if (std::abs(gm) <= 1e-12) break;
                    if ((gm < 0.0) == (g0 < 0.0)) {
                        ta = tm;
                    } else {
                        tb = tm;
                    }
                }
                traj.times.push_back(tm);
                traj.points.push_back({xm[0], xm[1]});
                traj.event_hit = true;
                traj.event_time = tm;
                traj.event_point = {xm[0], xm[1]};
                return traj;
            }
        }

        traj.times.push_back(t_cur);
        traj.points.push_back({x_cur[0], x_cur[1]});
        if (final_step) return traj;
    }
    std::ostringstream msg;
    msg << "flow integration from (" << start.L << "," << start.K << ") exceeded "
        << max_steps << " steps before reaching t=" << t_end;
    throw ConvergenceFailure(msg.str());
}

namespace {

struct ChartInversionFailed {};

/** Root of F(x) = target on a sign-changing bracket [lo, hi]. */
double solve_on_bracket(const std::function<double(double)>& F, double target, double lo,
                        double hi) {
    auto G = [&](double x) { return F(x) - target; };
    double glo = G(lo), ghi = G(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (!std::isfinite(glo) || !std::isfinite(ghi) || (glo < 0.0) == (ghi < 0.0))
        throw ChartInversionFailed{};
    boost::uintmax_t max_iter = 200;
    const auto r = boost::math::tools::toms748_solve(
        G, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(53), max_iter);
    return 0.5 * (r.first + r.second);
}

/** Shrink x from `start` by halving until pred(F(x)) holds. */
double shrink_until(const std::function<double(double)>& F, double start,
                    const std::function<bool(double)>& pred) {
    double x = start;
    for (int i = 0; i < 600; ++i) {
        x *= 0.5;
        const double v = F(x);
        if (!std::isfinite(v)) throw ChartInversionFailed{};
        if (pred(v)) return x;
    }
    throw ChartInversionFailed{};
}

double grow_until(const std::function<double(double)>& F, double start,
                  const std::function<bool(double)>& pred) {
    double x = start;
    for (int i = 0; i < 600; ++i) {
        x *= 2.0;
        const double v = F(x);
        if (!std::isfinite(v)) throw ChartInversionFailed{};
        if (pred(v)) return x;
    }
    throw ChartInversionFailed{};
}

// Axis and edge charts: the conserved quantity as a function of the canonical
// coordinate along {L=0} (axis) and {L=1} (edge), in s = 1+12K (above the
// seam) or sigma = -(1+12K) (below).
double axis_chart_upper(double s) {
    const double rs = std::sqrt(s);
    return ((rs + 1.0) * (rs - 2.0) * (rs - 2.0)) / (s * rs);
}
double axis_chart_lower(double sigma) {
    return (3.0 * sigma + 4.0) / (sigma * std::sqrt(sigma));
}
double edge_chart_wedge(double s) { return 1.0 - (6.0 * s + 19.0) / (2.0 * s * std::sqrt(s)); }
double edge_chart_wexterior(double sigma) {
    return (6.0 * sigma - 19.0) / (2.0 * sigma * std::sqrt(sigma));
}

} // namespace

CanonicalRepresentative canonical_representative(double L, double K) {
    const RegionInfo info = region(L, K);
    const double aL = std::abs(L);

    CanonicalRepresentative rep;
    rep.region = info;

    auto finish = [&](double cl, double ck) -> CanonicalRepresentative& {
        rep.class_point = {cl, ck};
        return rep;
    };

    switch (info.tag) {
        case RegionTag::FixedPoint_A: return finish(0.0, apex_K);
        case RegionTag::FixedPoint_B: return finish(fp_b_abscissa(), seam_K);
        case RegionTag::UGraph_Lower: return finish(2.0 / (3.0 * std::sqrt(3.0)), 0.0);
        case RegionTag::UGraph_Upper: return finish(1.0, constant_U());
        case RegionTag::WGraph: return finish(1.0, -25.0 / 72.0);
        case RegionTag::MGraph: return finish(1.0, seam_K);
        case RegionTag::ClosedAxis:
            try {
                rep.certificate = first_integral(0.0, K);
            } catch (const DomainError&) {
            }
            return finish(0.0, K);
        case RegionTag::NoHyperbolicStructure:
            throw DomainError("canonical_representative: point carries no structure tag");
        default: break;
    }

    try {
        if (std::abs(1.0 + 12.0 * K) < seam_chart_cutoff) throw ChartInversionFailed{};
        const double c = conserved_c(aL, K);
        double cl = 0.0, ck = 0.0;
        switch (info.tag) {
            case RegionTag::ClosedInterior_Upper: {
                if (!(c > 0.0)) throw ChartInversionFailed{};
                const double lo =
                    (axis_chart_upper(2.0) >= c)
                        ? 2.0
                        : shrink_until(axis_chart_upper, 2.0, [&](double v) { return v >= c; });
                const double st = solve_on_bracket(axis_chart_upper, c, lo, 4.0);
                cl = 0.0;
                ck = (st - 1.0) / 12.0;
                break;
            }
            case RegionTag::ClosedInterior_Lower: {
                if (!(c > 0.0)) throw ChartInversionFailed{};
                const double lo =
                    (axis_chart_lower(1.0) >= c)
                        ? 1.0
                        : shrink_until(axis_chart_lower, 1.0, [&](double v) { return v >= c; });
                const double hi =
                    (axis_chart_lower(lo * 2.0) <= c && lo != 1.0)
                        ? lo * 2.0
                        : grow_until(axis_chart_lower, std::max(lo, 1.0),
                                     [&](double v) { return v <= c; });
                const double sg = solve_on_bracket(axis_chart_lower, c, lo, hi);
                cl = 0.0;
                ck = -(1.0 + sg) / 12.0;
                break;
            }
            case RegionTag::Incomplete_AboveBell: {
                if (!(c > 0.0 && c < 1.0)) throw ChartInversionFailed{};
                const double hi =
                    grow_until(axis_chart_upper, 4.0, [&](double v) { return v >= c; });
                const double st = solve_on_bracket(axis_chart_upper, c, 4.0, hi);
                cl = 0.0;
                ck = (st - 1.0) / 12.0;
                break;
            }
            case RegionTag::Incomplete_Wedge: {
                if (!(c < 0.0)) throw ChartInversionFailed{};
                const double s_top = 1.0 + 12.0 * constant_U();
                const double start = std::min(1.0, s_top);
                const double lo = (edge_chart_wedge(start) <= c)
                                      ? start
                                      : shrink_until(edge_chart_wedge, start,
                                                     [&](double v) { return v <= c; });
                const double st = solve_on_bracket(edge_chart_wedge, c, lo, s_top);
                cl = 1.0;
                ck = (st - 1.0) / 12.0;
                break;
            }
            case RegionTag::Incomplete_WExterior: {
                if (!(c < 0.0)) throw ChartInversionFailed{};
                const double top = 19.0 / 6.0;
                const double lo = (edge_chart_wexterior(1.0) <= c)
                                      ? 1.0
                                      : shrink_until(edge_chart_wexterior, 1.0,
                                                     [&](double v) { return v <= c; });
                const double sg = solve_on_bracket(edge_chart_wexterior, c, lo, top);
                cl = 1.0;
                ck = -(1.0 + sg) / 12.0;
                break;
            }
            default: throw ChartInversionFailed{};
        }
        try {
            rep.certificate = first_integral(aL, K);
        } catch (const DomainError&) {
        }
        return finish(cl, ck);
    } catch (const ChartInversionFailed&) {
        double target = 0.0;
        double direction = 1.0;
        switch (info.tag) {
            case RegionTag::ClosedInterior_Upper:
            case RegionTag::ClosedInterior_Lower:
                target = 0.0;
                direction = 1.0;
                break;
            case RegionTag::Incomplete_AboveBell:
                target = 0.0;
                direction = -1.0;
                break;
            case RegionTag::Incomplete_Wedge:
            case RegionTag::Incomplete_WExterior:
                target = 1.0;
                direction = (aL < 1.0) ? 1.0 : -1.0;
                break;
            default:
                throw ConvergenceFailure(
                    "canonical_representative: no chart or flow route for this region");
        }
        rep.trajectory = integrate_flow({aL, K}, direction * 60.0, target);
        if (!rep.trajectory.event_hit) {
            std::ostringstream msg;
            msg << "canonical_representative fallback integration from (" << aL << "," << K
                << ") did not reach {L=" << target << "}";
            throw ConvergenceFailure(msg.str());
        }
        rep.used_flow_fallback = true;
        return finish(target, rep.trajectory.event_point.K);
    }
}

} // namespace quartic
