#ifndef QUARTIC_ERRORS_HPP
#define QUARTIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace quartic {

/** \brief Base class of all errors thrown by this library. */
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Thrown when an operation requires a hyperbolic point (det of the Hessian
 * negative there) but the supplied point is not one. */
class NotHyperbolic : public Error {
  public:
    explicit NotHyperbolic(const std::string& msg) : Error(msg) {}
};

/** Thrown when an operation requires h(p) > 0 but the value is not positive. */
class NonPositiveValue : public Error {
  public:
    explicit NonPositiveValue(const std::string& msg) : Error(msg) {}
};

/** Thrown when a slice parameter T lies outside the curve's domain interval. */
class OutOfDomain : public Error {
  public:
    explicit OutOfDomain(const std::string& msg) : Error(msg) {}
};

/** Thrown when the metric coefficient g = g_num/f^2 is requested at a zero of
 * f, i.e. on the boundary of the level set. */
class DivisionByZeroAtLevelSetBoundary : public Error {
  public:
    explicit DivisionByZeroAtLevelSetBoundary(const std::string& msg) : Error(msg) {}
};

/** Thrown when a zero of f and a zero of the metric numerator fall within
 * eps_sep of one another without matching exactly, so the boundary kind of a
 * domain endpoint cannot be decided. */
class BoundaryAmbiguous : public Error {
  public:
    explicit BoundaryAmbiguous(const std::string& msg) : Error(msg) {}
};

/** Thrown when an argument lies outside the mathematical domain of the
 * requested function (boundary-function evaluation, first integrals on the
 * seam, reduction parameter range, ...). */
class DomainError : public Error {
  public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/** Thrown when an iterative method (ODE fallback, root polishing) exhausts its
 * step budget without reaching the requested accuracy. */
class ConvergenceFailure : public Error {
  public:
    explicit ConvergenceFailure(const std::string& msg) : Error(msg) {}
};

/** Thrown when a runtime self-check fails, e.g. an emitted automorphism
 * generator does not actually preserve the quartic to tolerance. */
class VerificationFailure : public Error {
  public:
    explicit VerificationFailure(const std::string& msg) : Error(msg) {}
};

/** Thrown when floating-point evaluation degenerates (overflow/NaN) close to a
 * domain endpoint; callers typically convert it into a diagnostic. */
class NumericalBlowup : public Error {
  public:
    explicit NumericalBlowup(const std::string& msg) : Error(msg) {}
};

/** Thrown when the factor-form reduction produces a form that fails the target
 * shape test. */
class ReductionFailure : public Error {
  public:
    explicit ReductionFailure(const std::string& msg) : Error(msg) {}
};

/** Thrown when an equivalence query cannot be decided because one of the
 * classifications carries a boundary-proximity warning. */
class Inconclusive : public Error {
  public:
    explicit Inconclusive(const std::string& msg) : Error(msg) {}
};

} // namespace quartic

#endif // QUARTIC_ERRORS_HPP
