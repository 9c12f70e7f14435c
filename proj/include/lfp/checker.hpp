#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lfp/reduction.hpp"
#include "lfp/term.hpp"

namespace lfp {

// Independent re-validation of steps and conversions. Redex matching and
// contraction are recomputed here from term primitives only; nothing from
// the step-generating code in reduction.cpp is reused.

struct CheckReport {
  bool ok = true;
  std::optional<std::size_t> failing_index;  // first bad step; nullopt for endpoint failures
  std::string message;

  explicit operator bool() const { return ok; }
};

CheckReport diagnose_step(const Step& s, const RuleSet& rules);
bool check_step(const Step& s, const RuleSet& rules);

CheckReport diagnose_conversion(const Conversion& c, const RuleSet& rules);
bool check_conversion(const Conversion& c, const RuleSet& rules);

// A forward-only chain from `start` to `finish`.
CheckReport diagnose_reduction(const Term& start, const std::vector<Step>& steps, const Term& finish,
                               const RuleSet& rules);

}  // namespace lfp
