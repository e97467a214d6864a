#pragma once

#include <string>
#include <vector>

#include "dchern/model.hpp"

namespace dchern {

enum class Fault { None, FlipDampingSign, OmitCompensation };
Fault parse_fault(const std::string& s);

struct CheckResult {
  std::string module;
  std::string operation;
  std::string case_name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool pass() const;
  const CheckResult* first_failure() const;
};

// Cross-check suite at small sizes using the couplings in `base` (lattice
// size and boundary are chosen per check).
VerifyReport run_verification(const ModelParams& base, Fault fault = Fault::None);

}  // namespace dchern
