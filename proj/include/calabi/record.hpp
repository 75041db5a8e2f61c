#pragma once

#include <string>
#include <utility>

namespace calabi {

// One checked identity or estimate. pass is true iff residual <= threshold.
struct VerificationRecord {
  std::string name;
  std::string anchor;  // short statement of what is being checked
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  bool hard = true;        // a failing hard record fails the run
  bool applicable = true;  // false when the inputs do not meet the check's precondition
};

inline VerificationRecord make_record(std::string name, std::string anchor, double residual, double threshold,
                                      bool hard = true) {
  VerificationRecord r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.residual = residual;
  r.threshold = threshold;
  r.pass = residual <= threshold;  // NaN residuals fail
  r.hard = hard;
  return r;
}

}  // namespace calabi
