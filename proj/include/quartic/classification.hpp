#ifndef QUARTIC_CLASSIFICATION_HPP
#define QUARTIC_CLASSIFICATION_HPP

#include "quartic/form.hpp"
#include "quartic/moduli.hpp"
#include "quartic/standard_form.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace quartic {

/** The equivalence classes of hyperbolic quartic curves.
 *
 *  Closed_A..D are the geodesically complete classes, Incomplete_A..D the
 *  maximal incomplete ones.  Closed_D, Incomplete_A and Incomplete_B are
 *  one-parameter families (see ClassificationReport::parameter); the other
 *  six are single curves.  NonHyperbolic marks inputs with no hyperbolic
 *  point at all. */
enum class ClassTag {
    Closed_A,      ///< representative x^4 - x^2 y^2 + y^4/4 (homogeneous)
    Closed_B,      ///< representative h_{sqrt(8/27), -1/12} (homogeneous)
    Closed_C,      ///< representative h_{2/(3 sqrt 3), 0}
    Closed_D,      ///< representatives h_{0,K}, K < 1/4
    Incomplete_A,  ///< representatives h_{0,K}, K > 1/4
    Incomplete_B,  ///< representatives h_{1,K}, K in (-25/72, U)
    Incomplete_C,  ///< representative h_{1,-25/72}
    Incomplete_D,  ///< representative h_{1,U}
    NonHyperbolic  ///< no direction with h > 0 and hessian_det < 0
};

/** Name of a ClassTag as used in JSON reports. */
const char* to_string(ClassTag tag);

/**
 * \brief The linear symmetry group of a canonical representative.
 *
 * Generators are stated for the representative polynomial of the class (the
 * group of any other member is conjugate by the classifying frame).  Every
 * emitted generator g satisfies pullback(h, g) == h coefficientwise to
 * 1e-12 * max(1, |h|); emission re-checks this and throws on failure.
 *
 * `descriptor_only` marks groups for which the listed generators do not
 * generate the full group named by `descriptor` (only the always-valid -1
 * is listed); no generator is invented in that case.
 */
struct AutomorphismGroup {
    std::string descriptor; ///< symbolic group name, e.g. "Z2 x Z2" in UTF-8
    /** One-parameter family t -> matrix for the two homogeneous classes. */
    std::optional<std::function<LinearMap2(double)>> continuous_generator;
    std::vector<LinearMap2> discrete_generators;
    bool descriptor_only = false;
};

/** Direction of approach to a domain endpoint of the slice. */
enum class LimitDirection {
    TowardLo, ///< T decreasing to dom_lo
    TowardHi  ///< T increasing to dom_hi
};

/** Name of a LimitDirection as used in JSON reports. */
const char* to_string(LimitDirection direction);

/**
 * \brief Limit geometry of a curve toward one domain endpoint.
 *
 * `result` is Closed_A or Closed_B when the moving-frame parameters (L(T),
 * K(T)) converge to a fixed point of the moduli vector field toward that
 * endpoint, and absent when no limit exists.  `numeric_limit` carries the
 * converged value when verify_limit computed one (within 1e-5 of the fixed
 * point); the static class table leaves it absent.
 */
struct LimitGeometryResult {
    LimitDirection direction = LimitDirection::TowardHi;
    std::optional<ClassTag> result;
    std::optional<ModuliPoint> numeric_limit;
    std::string diagnostic; ///< non-empty when a numeric run failed or diverged
};

/**
 * \brief Full classification of one quartic.
 *
 * `parameter` is present exactly for the parametric classes (Closed_D,
 * Incomplete_A, Incomplete_B) when the canonical point was computed; it is
 * the K coordinate of class_point.  `automorphism` describes the canonical
 * representative's group.  `region`, `class_point` and `standard_form` are
 * meaningful only when class_tag != NonHyperbolic.
 */
struct ClassificationReport {
    ClassTag class_tag = ClassTag::NonHyperbolic;
    std::optional<double> parameter;
    bool closed = false;
    bool homogeneous = false;
    bool singular_at_infinity = false;
    int components = 0;
    AutomorphismGroup automorphism;
    std::vector<LimitGeometryResult> limit_geometries;
    std::vector<std::string> diagnostics; ///< warnings; never silently dropped
    std::optional<StandardForm> standard_form;
    RegionInfo region;
    ModuliPoint class_point; ///< canonical representative location (|L|, K)
};

/**
 * \brief Classify a quartic up to linear equivalence.
 *
 * Pipeline: find a hyperbolic point with h > 0 (the hint if it passes the
 * tests, else the midpoint of the widest hyperbolic arc of the unit circle),
 * reduce to standard form, canonicalize the sign of L, bin the parameters
 * into a region, and move to the canonical class point along the moduli
 * flow.  When no direction satisfies h > 0 and hessian_det < 0 the report
 * has class_tag NonHyperbolic, components 0 and an explanatory diagnostic.
 *
 * Numerical failures of the secondary analyses (closedness, singularity at
 * infinity, canonical point) are converted into diagnostics plus
 * class-derived fallback values rather than aborting the classification.
 */
ClassificationReport classify(const QuarticForm& h,
                              std::optional<Point2> hint_point = std::nullopt);

/** True iff (L,K) is a zero of the moduli vector field within
 *  region_epsilon(): the curve's automorphism group acts transitively.
 *  (The report field `homogeneous` is instead derived from the class tag,
 *  so snapped near-fixed points classify as homogeneous even when the field
 *  norm slightly exceeds the tolerance.) */
bool is_homogeneous(double L, double K);

/**
 * \brief The symmetry group of the canonical representative of a class.
 *
 * `parameter` is required for Closed_D, Incomplete_A and Incomplete_B (it
 * selects the representative) and ignored for the other classes.
 *
 * \throws DomainError          for NonHyperbolic, or a missing/out-of-range
 *                              parameter of a parametric class
 * \throws VerificationFailure  if an emitted generator fails the pullback
 *                              identity at 1e-12 (including the continuous
 *                              family, sampled at t in {0.3, 0.7, 1.0})
 */
AutomorphismGroup automorphisms(ClassTag tag,
                                std::optional<double> parameter = std::nullopt);

/**
 * \brief The limit geometries of a class, one entry per direction with a
 *        limit.
 *
 * Static table: Closed_A -> {A, A}; Closed_B -> {B, B}; Closed_C ->
 * {B toward lo, A toward hi}; Closed_D -> {B, B}; Incomplete_A -> {};
 * Incomplete_B -> {B toward lo}; Incomplete_C -> {B toward lo};
 * Incomplete_D -> {A toward lo}.  Entries carry no numeric_limit; use
 * verify_limit for a numerical witness.
 *
 * \throws DomainError for NonHyperbolic
 */
std::vector<LimitGeometryResult> limit_geometries(
    ClassTag tag, std::optional<double> parameter = std::nullopt);

/**
 * \brief Numerically chase the moving-frame parameters toward one domain
 *        endpoint.
 *
 * Evaluates (L(T), K(T)) at T_k = endpoint * (1 - 2^{-k}), k = 4..24,
 * stopping at the first three consecutive values that agree within 1e-5
 * (the frame formulas degenerate at the endpoint itself, so later samples
 * only add rounding noise).  Reports Closed_A/Closed_B when the converged
 * value lies within 1e-5 of the corresponding fixed point, else no result;
 * divergence and evaluation failures are reported as no result with a
 * diagnostic instead of an exception.
 */
LimitGeometryResult verify_limit(const StandardForm& sf, LimitDirection direction);

/**
 * \brief Equivalence test: same class tag and, for parametric classes,
 *        parameters within 1e-6.
 *
 * Two NonHyperbolic inputs compare equal (same tag, no parameter); the test
 * classifies hyperbolic structures only and does not distinguish degenerate
 * quartics from one another.
 *
 * \throws Inconclusive when either classification carries a
 *         boundary-proximity warning (region.near_boundary)
 */
bool equivalent(const QuarticForm& h1, const QuarticForm& h2);

/**
 * \brief Constructive reduction of the incomplete-family member h_{1,K} to
 *        the factor form x y (x^2 + c x y + y^2).
 *
 * z is the biggest negative zero of the slice polynomial f_{1,K}; the map
 * is built from the shear killing the x^4 coefficient at (1,z), a second
 * shear killing the y^4 coefficient (its offset F is a root of a cubic),
 * and a diagonal rescale.  c runs through (-2, 0] as K runs through
 * [-25/72, U): c = 0 at K = -25/72 and c -> -2 as K -> U.
 */
struct ReductionData {
    double z = 0.0;        ///< biggest negative zero of f_{1,K}, in (z_min, z_max]
    double K_of_z = 0.0;   ///< (-1 + z^2 - z^3)/z^4, reproduces K
    double c = 0.0;        ///< factor-form parameter, in (-2, 0] up to rounding
    double z_min = 0.0;    ///< infimum of z over the family (attained at K -> U)
    double z_max = 0.0;    ///< value of z at K = -25/72
    LinearMap2 map;        ///< pullback(h_{1,K}, map) == x y (x^2 + c x y + y^2)
    double residual = 0.0; ///< achieved max deviation from the target shape
};

/**
 * \throws DomainError       when K is outside [-25/72, U)
 * \throws ReductionFailure  when no cubic root yields the target shape with
 *                           residual <= 1e-8 and c in range
 */
ReductionData reduce_factor_form(double K);

/** For a homogeneous point, check that (|L|, K) is one of the two critical
 *  values (0, 1/4) or (sqrt(8/27), -1/12), within region_epsilon().
 *  \throws DomainError when (L,K) is not homogeneous (precondition) */
bool critical_value_check(double L, double K);

} // namespace quartic

#endif // QUARTIC_CLASSIFICATION_HPP
