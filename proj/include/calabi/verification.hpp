#pragma once

#include <cstdint>
#include <vector>

#include "calabi/record.hpp"

namespace calabi {

struct VerifyConfig {
  int genus = 2;
  int degree = 2;
  double k = 400.0;
  std::vector<double> k_list{100.0, 200.0, 400.0};
  int threads = 1;
  double rel_tol = 1e-10;
  std::uint64_t seed = 7;
};

// The full identity suite on the curve geometry of cfg, plus the closed-form
// checks that do not depend on it. Records come back in a fixed order.
std::vector<VerificationRecord> run_verification(const VerifyConfig& cfg);

bool all_hard_pass(const std::vector<VerificationRecord>& records);

}  // namespace calabi
