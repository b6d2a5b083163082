#include "tsann/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "tsann/frechet.hpp"

namespace tsann {

const char* to_string(ValidationOutcome outcome) {
  switch (outcome) {
    case ValidationOutcome::kPass:
      return "PASS";
    case ValidationOutcome::kFailSoundness:
      return "FAIL(soundness)";
    case ValidationOutcome::kFailCompleteness:
      return "FAIL(completeness)";
    case ValidationOutcome::kSkippedPrecondition:
      return "SKIPPED-PRECONDITION";
  }
  return "UNKNOWN";
}

OracleAnswer scan(const Corpus& corpus, const TimeSeries& tau, double r,
                  double tol) {
  if (!(r > 0) || !std::isfinite(r)) {
    throw std::invalid_argument("scan: radius must be positive and finite");
  }
  if (!(tol > 0) || !std::isfinite(tol)) {
    throw std::invalid_argument("scan: tolerance must be positive and finite");
  }
  if (tau.empty()) {
    throw std::invalid_argument("scan: query curve is empty");
  }
  OracleAnswer answer;
  for (const CorpusEntry& entry : corpus) {
    if (decide_continuous(entry.curve, tau, r)) answer.any_within_r = true;
    const double d = distance_continuous(entry.curve, tau, tol);
    if (d < answer.best_distance) {
      answer.best_distance = d;
      answer.best_id = entry.id;
    }
  }
  return answer;
}

ValidationResult validate(const Corpus& corpus, const TimeSeries& tau,
                          const IndexAnswer& answer,
                          const OracleAnswer& oracle, double c, double r,
                          double slack, double tol) {
  ValidationResult result;
  if (answer.match) {
    const CorpusEntry* matched = nullptr;
    for (const CorpusEntry& entry : corpus) {
      if (entry.id == *answer.match) {
        matched = &entry;
        break;
      }
    }
    if (matched == nullptr) {
      throw std::invalid_argument("validate: matched id '" + *answer.match +
                                  "' is not in the corpus");
    }
    result.matched_distance = distance_continuous(matched->curve, tau, tol);
    result.outcome = result.matched_distance <= c * r + slack
                         ? ValidationOutcome::kPass
                         : ValidationOutcome::kFailSoundness;
    return result;
  }
  if (oracle.any_within_r) {
    result.outcome = answer.completeness_guaranteed
                         ? ValidationOutcome::kFailCompleteness
                         : ValidationOutcome::kSkippedPrecondition;
    return result;
  }
  result.outcome = ValidationOutcome::kPass;
  return result;
}

}  // namespace tsann
