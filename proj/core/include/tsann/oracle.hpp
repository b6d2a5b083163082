#pragma once

#include <limits>
#include <optional>
#include <string>

#include "tsann/corpus.hpp"
#include "tsann/time_series.hpp"

namespace tsann {

/** Ground truth for one query, from an exhaustive corpus scan. */
struct OracleAnswer {
  bool any_within_r = false;
  std::optional<std::string> best_id;
  double best_distance = std::numeric_limits<double>::infinity();
};

/** An index's answer plus whether its no-match guarantee applied. */
struct IndexAnswer {
  std::optional<std::string> match;
  bool completeness_guaranteed = true;
};

enum class ValidationOutcome {
  kPass,
  kFailSoundness,          // matched curve farther than c*r (+ slack)
  kFailCompleteness,       // missed although a curve lies within r
  kSkippedPrecondition,    // missed, but the guarantee did not apply
};

/** "PASS", "FAIL(soundness)", "FAIL(completeness)", "SKIPPED-PRECONDITION". */
const char* to_string(ValidationOutcome outcome);

/** Verdict for one validated query. */
struct ValidationResult {
  ValidationOutcome outcome = ValidationOutcome::kPass;
  /** Measured distance of the matched curve; NaN when the index missed. */
  double matched_distance = std::numeric_limits<double>::quiet_NaN();
};

/**
 * Exhaustive ground truth: decides d_F(curve, tau) <= r exactly for every
 * corpus curve and tracks the closest curve via bisection to tolerance tol.
 * The boolean branch uses the exact decision procedure, not the bisection
 * estimate.  Requires r > 0 and tol > 0.
 */
OracleAnswer scan(const Corpus& corpus, const TimeSeries& tau, double r,
                  double tol);

/**
 * Checks one index answer against the ground truth for approximation
 * factor c at radius r:
 *  - a match must satisfy d_F <= c*r + slack (measured by bisection to
 *    tolerance tol), else FAIL(soundness);
 *  - a miss with a corpus curve within r is FAIL(completeness) when the
 *    index's guarantee applied and SKIPPED-PRECONDITION when it did not;
 *  - everything else is PASS.
 * A match naming an identifier absent from the corpus throws
 * std::invalid_argument.
 */
ValidationResult validate(const Corpus& corpus, const TimeSeries& tau,
                          const IndexAnswer& answer,
                          const OracleAnswer& oracle, double c, double r,
                          double slack = 1e-6, double tol = 1e-9);

}  // namespace tsann
