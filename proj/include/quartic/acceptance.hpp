#ifndef QUARTIC_ACCEPTANCE_HPP
#define QUARTIC_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace quartic {

/** Outcome of one acceptance criterion. */
struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail; ///< the worst-case numbers behind the verdict
};

/** Run the full acceptance battery.  Deterministic: fixed RNG seeds, fixed
 *  grids, pinned tolerances.  Never throws; a criterion that raises records
 *  the exception text and fails. */
std::vector<CriterionResult> run_acceptance_criteria();

/** Print one "PASS|FAIL  criterion N: name (detail)" line per criterion plus
 *  a summary line; returns the number of failed criteria. */
int run_acceptance(std::ostream& out);

} // namespace quartic

#endif // QUARTIC_ACCEPTANCE_HPP
