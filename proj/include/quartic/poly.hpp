#ifndef QUARTIC_POLY_HPP
#define QUARTIC_POLY_HPP

#include <vector>

namespace quartic {

/**
 * \brief Dense univariate polynomial helpers used throughout the library.
 *
 * Polynomials are coefficient vectors in ascending order:
 * c[0] + c[1] t + c[2] t^2 + ...  Degrees up to 8 occur (quartic forms
 * evaluated along conic parametrizations of the circle).
 */

/** Plain Horner evaluation. */
double poly_eval(const std::vector<double>& c, double t);

/**
 * \brief Compensated (error-free transformation) Horner evaluation.
 *
 * Evaluates as if in twice the working precision and rounds once; needed when
 * a polynomial is evaluated extremely close to a multiple root, where plain
 * doubles lose all significant digits to cancellation.
 */
double poly_eval_compensated(const std::vector<double>& c, double t);

/** Coefficients of the derivative polynomial. */
std::vector<double> poly_derivative(const std::vector<double>& c);

/**
 * \brief All distinct real roots, sorted ascending.
 *
 * Strategy: trim negligible leading coefficients, peel roots at zero, form the
 * monic companion matrix and take its eigenvalues, keep near-real ones, then
 * apply Newton polishing with a multiplicity cascade (polish on the first
 * derivative when it vanishes at the root, on the second when both do) so that
 * double and triple roots are located to full precision rather than split into
 * conjugate near-real pairs.  Near-duplicates are merged.
 *
 * The zero polynomial yields an empty list (callers treat "vanishes
 * identically" separately).
 */
std::vector<double> real_roots(const std::vector<double>& c);

/** Newton-polish a root candidate of c, with the multiplicity cascade
 *  described at real_roots.  Returns the improved abscissa. */
double polish_root(const std::vector<double>& c, double t0);

} // namespace quartic

#endif // QUARTIC_POLY_HPP
