#ifndef QUARTIC_MODULI_HPP
#define QUARTIC_MODULI_HPP

#include <optional>
#include <utility>
#include <vector>

namespace quartic {

/** A point (L,K) in the parameter plane of standard forms
 *  x^4 - x^2 y^2 + L x y^3 + K y^4. */
struct ModuliPoint {
    double L = 0.0;
    double K = 0.0;
};

/**
 * The parameter-plane vector field
 *   dL/dT = (9/2) L^2 + 4K - 1,   dK/dT = L (6K + 1/2),
 * whose integral curves connect the standard-form parameters produced by
 * moving the base point along one curve (d/dT of lk_curve at T=0).
 */
std::pair<double, double> field(double L, double K);
inline std::pair<double, double> field(const ModuliPoint& p) { return field(p.L, p.K); }

/** Fixed point (0, 1/4) of the field: the homogeneous curve family member
 *  whose classification tag is Closed_A. */
ModuliPoint fixed_point_a();

/** Fixed point (sqrt(8/27), -1/12): the homogeneous member Closed_B.
 *  Its mirror (-sqrt(8/27), -1/12) is the same curve up to sign. */
ModuliPoint fixed_point_b();

/**
 * Boundary graphs of the closed set, as functions of K (values for |L|):
 *
 *  - boundary_u: K >= -1/12, the bell over the closed interiors; evaluates
 *    sqrt((2/27)(1 - 36K + (1+12K)^{3/2})) through the cancellation-free
 *    factorization (sqrt(s)+1)(sqrt(s)-2)^2 of the radicand (s = 1+12K).
 *    u(1/4) = 0 at the apex; u(-1/12) = sqrt(8/27).
 *  - boundary_v: K <= -1/12, v(K) = 4 sqrt(-2K)/3 (strictly above w).
 *  - boundary_w: K <= -1/12, w(K) = sqrt(6-216K)/9, the closed/non-closed
 *    boundary below the seam; w(-25/72) = 1.
 *
 * \throws DomainError outside the stated K ranges
 */
double boundary_u(double K);
double boundary_v(double K);
double boundary_w(double K);

/** d/dK of boundary_u; equals sign(K-1/4) * sqrt(6/(1+sqrt(1+12K))).
 *  \throws DomainError for K <= -1/12 and at the apex K = 1/4 (corner). */
double boundary_u_derivative(double K);

/** d/dK of boundary_w = -12/sqrt(6-216K).  \throws DomainError for K > -1/12. */
double boundary_w_derivative(double K);

/** The K value where the upper branch of boundary_u reaches 1: the upper end
 *  of the canonical parameter interval of the incomplete strip family.
 *  Closed form; approximately 1.054784062. */
double constant_U();

/** Taxonomy of the parameter plane under the field and the closed-set
 *  boundaries.  Graphs get their own tags because the classification is
 *  discontinuous across them. */
enum class RegionTag {
    FixedPoint_A,          ///< (0, 1/4)
    FixedPoint_B,          ///< (+-sqrt(8/27), -1/12)
    ClosedAxis,            ///< {L = 0, K < 1/4}
    ClosedInterior_Upper,  ///< {-1/12 < K < 1/4, 0 < |L| < u(K)} (+ seam below sqrt(8/27))
    ClosedInterior_Lower,  ///< {K < -1/12, 0 < |L| < w(K)}
    UGraph_Lower,          ///< {|L| = u(K), -1/12 < K < 1/4}: closed, one class
    UGraph_Upper,          ///< {|L| = u(K), K > 1/4}: incomplete, one class
    WGraph,                ///< {|L| = w(K), K < -1/12}: incomplete, one class
    MGraph,                ///< {K = -1/12, |L| > sqrt(8/27)}: incomplete
    Incomplete_WExterior,  ///< {K < -1/12, |L| > w(K)}
    Incomplete_Wedge,      ///< {K > -1/12, |L| > u(K)} (and {K = 1/4, L != 0})
    Incomplete_AboveBell,  ///< {K > 1/4, |L| < u(K)}
    NoHyperbolicStructure  ///< never produced for (L,K) inputs; report plumbing
};

const char* to_string(RegionTag tag);

struct RegionInfo {
    RegionTag tag = RegionTag::NoHyperbolicStructure;
    /** Signed distance to the nearest closed-set boundary graph: negative
     *  inside the closed set, positive outside, ~0 on the graphs. */
    double boundary_distance = 0.0;
    /** Set when the point is within 10x the snap tolerance of a boundary
     *  graph; classification outcomes carry reduced confidence. */
    bool near_boundary = false;
};

/** Base tolerance for region binning (1e-9), overridable via the
 *  QUARTIC_MODULI_TOL environment variable.  Points within
 *  1e4 * region_epsilon() * max(1, |L|, |K|) of a boundary graph are snapped
 *  onto the graph tag; the factor covers the chart-coordinate error incurred
 *  by standardizing a form presented in a frame of condition up to ~1e3. */
double region_epsilon();

/** Classify (|L|, K) against the fixed points, boundary graphs, and open
 *  regions.  Depends on L only through |L|. */
RegionInfo region(double L, double K);

/**
 * Transformed coordinates and the conserved quantity of the field.
 *
 * phi = L/w(K) below the seam (K < -1/12) or L/u(K) above it; psi = K;
 * c is constant along trajectories:
 *   K < -1/12: c = (3*sigma + 4 - 13.5 L^2)/sigma^{3/2}, sigma = -(1+12K)
 *   K > -1/12: c = (s^{3/2} - 3s + 4 - 13.5 L^2)/s^{3/2}, s = 1+12K
 * (both equal (1 - phi^2) times the axis value; the expanded numerator form
 * is stable through phi -> 1).  J is the flow integrand
 *   J(psi) = -27(1-4 psi)/((1+12 psi)(1 - 36 psi + (1+12 psi)^{3/2})),
 * NaN below the seam where the radicand is negative.
 */
struct FlowState {
    double phi = 0.0;
    double psi = 0.0;
    double c = 0.0;
    double J = 0.0;
};

/**
 * Evaluate the first integral at (L,K).
 *
 * \throws DomainError at fixed points, on the boundary graphs, on the seam
 *         K = -1/12 and the apex line K = 1/4 (phi undefined), all within
 *         region_epsilon().  Values outside the closed set are permitted and
 *         give c < 0 (the graphs are the level set c = 0).
 */
FlowState first_integral(double L, double K);
inline FlowState first_integral(const ModuliPoint& p) { return first_integral(p.L, p.K); }

/** A numerically integrated arc of the field. */
struct FlowTrajectory {
    std::vector<double> times;
    std::vector<ModuliPoint> points;
    bool event_hit = false;
    double event_time = 0.0;
    ModuliPoint event_point;
};

/**
 * Integrate the field from `start` over [0, t_end] (t_end may be negative)
 * with an adaptive embedded 4th/5th-order pair at relative tolerance 1e-10.
 * When `stop_at_L` is given, integration stops at the first crossing of
 * {L = stop_at_L}, refined by bisection on dense output until |L - stop| <=
 * 1e-12, and the crossing is reported in event_time/event_point.
 *
 * \throws ConvergenceFailure when the step budget is exceeded
 */
FlowTrajectory integrate_flow(const ModuliPoint& start, double t_end,
                              std::optional<double> stop_at_L = std::nullopt);

/** Canonical class point for (L,K) plus the certificate that produced it. */
struct CanonicalRepresentative {
    ModuliPoint class_point;
    RegionInfo region;
    /** Present when the primary route (root-solving the first integral for
     *  the canonical coordinate) was used. */
    std::optional<FlowState> certificate;
    /** Populated when the fallback route (event-bounded flow integration)
     *  was used; empty otherwise. */
    FlowTrajectory trajectory;
    bool used_flow_fallback = false;
};

/**
 * The unique canonical point of the integral curve through (L,K):
 *   - fixed points map to themselves;
 *   - closed interiors and axis map to (0, K~) with K~ < 1/4;
 *   - the above-bell strip maps to (0, K~) with K~ > 1/4;
 *   - the u-graph (lower/upper), w-graph, and seam ray map to their markers
 *     (2/(3 sqrt 3), 0), (1, constant_U()), (1, -25/72), (1, -1/12);
 *   - the incomplete strips map to (1, K~), K~ in (-25/72,-1/12) u (-1/12,U).
 * Primary method: root-solve the first integral's canonical-axis chart;
 * fallback (near the seam, or on chart failure): event-bounded integration.
 * Depends on L only through |L|; idempotent.
 *
 * \throws ConvergenceFailure when the fallback integration exceeds its budget
 */
CanonicalRepresentative canonical_representative(double L, double K);
inline CanonicalRepresentative canonical_representative(const ModuliPoint& p) {
    return canonical_representative(p.L, p.K);
}

} // namespace quartic

#endif // QUARTIC_MODULI_HPP
