#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "contnum/numerals.hpp"

namespace contnum {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  std::set<int> only;  // empty: all criteria
};

/// Twenty recipes over computable test reals: levels 1 and 2, both sides.
std::vector<NumeralRecipe> corpus_recipes();

/// Runs the acceptance criteria, each with its own oracle. A criterion also
/// fails when it overruns its time budget.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace contnum
