#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "contnum/formula.hpp"
#include "contnum/numerals.hpp"
#include "contnum/structures.hpp"
#include "contnum/truthval.hpp"

namespace contnum {

/// Variable index -> point index.
using Environment = std::map<unsigned, std::size_t>;

/// Exact value of a finitary formula. Throws Error(Domain) on an infinitary
/// node and Error(UnboundVariable) on a free variable missing from env.
UnitValue eval_exact(const Formula& f, const FiniteMetricSpace& space, const Environment& env = {});

/// Number of members read from an infinitary node, by nesting depth of the
/// node (0 = outermost). Nodes deeper than the list use its last entry.
struct TruncationSchedule {
  std::vector<std::size_t> depths{16, 64};

  static TruncationSchedule uniform(std::size_t n) { return {{n}}; }
  /// {n, 4n}: inner families read more members than outer ones.
  static TruncationSchedule nested(std::size_t n) { return {{n, 4 * n}}; }

  std::size_t depth_at(std::size_t nesting) const;
  std::string str() const;
};

/// Enclosure evaluation over one space. A truncated CInf only bounds its
/// value from above ([0, min of member upper bounds]) and a truncated CSup
/// only from below; explicit families no longer than the depth are read in
/// full. Only the endpoints a parent can use are computed.
///
/// Closed subformulas and generated families are memoized per evaluator.
class Evaluator {
 public:
  Evaluator(const FiniteMetricSpace& space, TruncationSchedule schedule);
  ~Evaluator();
  Evaluator(const Evaluator&) = delete;
  Evaluator& operator=(const Evaluator&) = delete;

  Enclosure enclosure(const Formula& f, const Environment& env = {});
  /// Value obtained by reading every truncated family as if it ended at its
  /// depth. Not certified: an estimate that lies between the enclosure's
  /// endpoints.
  UnitValue truncated_value(const Formula& f);
  /// Quantifier steps taken so far (one per point per bound variable).
  std::uint64_t points_visited() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Enclosure eval_enclosure(const Formula& f, const FiniteMetricSpace& space, const TruncationSchedule& schedule);

/// [lower bound of the left numeral, upper bound of the right numeral].
/// Throws Error(Inconsistent) when the bounds cross.
Enclosure sandwich(const Formula& left_numeral, const Formula& right_numeral, const FiniteMetricSpace& space,
                   const TruncationSchedule& schedule);

struct VerificationReport {
  std::vector<std::string> spaces;
  std::vector<Enclosure> enclosures;
  /// agreement[i][j]: enclosures on spaces i and j are identical.
  std::vector<std::vector<bool>> agreement;
  bool all_agree = true;
};

VerificationReport independence_check(const Formula& f, const std::vector<FiniteMetricSpace>& spaces,
                                      const TruncationSchedule& schedule);

struct ClassificationOutcome {
  bool pass = false;
  Rank expected;
  std::optional<Rank> actual;
  std::string message;
};

/// Right recipes must classify as Sigma_level, left ones as Pi_level.
ClassificationOutcome classification_check(const NumeralRecipe& recipe, const Formula& f);

enum class Bound { Upper, Lower };

const char* to_string(Bound b);

struct ConvergenceRow {
  std::size_t depth = 0;
  Enclosure enclosure;
  Dyadic active;                        // the informative endpoint
  std::optional<double> distance;       // active - truth, when truth is known
  std::optional<bool> sound;            // active bound on the correct side of truth
  std::optional<UnitValue> estimate;    // truncated value, when requested
};

struct ConvergenceReport {
  Bound active = Bound::Upper;
  std::vector<ConvergenceRow> rows;
  /// Upper bounds nonincreasing / lower bounds nondecreasing in depth.
  bool monotone = true;
  /// Every active bound lies on the correct side of the truth (true when no
  /// truth is known).
  bool sound = true;
};

struct ConvergenceOptions {
  bool estimates = false;
  /// Schedule for a given outer depth.
  TruncationSchedule (*schedule)(std::size_t) = &TruncationSchedule::nested;
};

/// Active bound: the upper endpoint for CInf-rooted sentences, the lower one
/// for CSup-rooted sentences (upper for anything else).
ConvergenceReport convergence_report(const Formula& f, const BuiltinReal* truth, const std::vector<std::size_t>& depths,
                                     const FiniteMetricSpace& space, const ConvergenceOptions& options = {});

// ---------------------------------------------------------------------------
// Verification workflow
// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::size_t depth = 256;
  unsigned tolerance_bits = 6;
  std::vector<FiniteMetricSpace> spaces;  // empty: builtin_suite(seed)
  std::uint64_t seed = 1;
};

struct VerifyResult {
  std::string recipe;
  std::string code;
  VerificationReport independence;
  ClassificationOutcome classification;
  ConvergenceReport convergence;
  /// Whether the active bound at full depth is within 2^-tol of the truth;
  /// nullopt when that cannot be certified (unknown truth, or a level above
  /// 1 where truncation leaves the active bound uninformative).
  std::optional<bool> within_tolerance;
  std::vector<std::string> notes;
  bool passed = false;
};

VerifyResult verify_recipe(const NumeralRecipe& recipe, const VerifyOptions& options);

}  // namespace contnum
