#include "contnum/engine.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "contnum/error.hpp"

namespace contnum {

std::size_t TruncationSchedule::depth_at(std::size_t nesting) const {
  if (depths.empty()) throw Error(ErrorCode::Domain, "empty truncation schedule");
  return depths[std::min(nesting, depths.size() - 1)];
}

std::string TruncationSchedule::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < depths.size(); ++i) out += (i ? ", " : "") + std::to_string(depths[i]);
  return out + "}";
}

namespace {

// Innermost binding last; variables are looked up from the back.
using Bindings = std::vector<std::pair<unsigned, std::size_t>>;

struct Need {
  bool lo = true;
  bool hi = true;
  Need swapped() const { return {hi, lo}; }
  int bits() const { return (lo ? 1 : 0) | (hi ? 2 : 0); }
};

Enclosure restrict(const Enclosure& e, Need need) {
  return Enclosure(need.lo ? e.lo() : UnitValue::zero(), need.hi ? e.hi() : UnitValue::one());
}

std::string var_name(unsigned v) { return "x" + std::to_string(v); }

class ExactEvaluator {
 public:
  ExactEvaluator(const FiniteMetricSpace& space, std::uint64_t& points) : space_(space), points_(points) {}

  UnitValue eval(const Formula& f, Bindings& env) {
    switch (f.kind()) {
      case Formula::Kind::Atomic:
        return UnitValue(space_.d(lookup(env, f.var(0)), lookup(env, f.var(1))));
      case Formula::Kind::Neg:
        return neg(eval(f.operand(0), env));
      case Formula::Kind::DotMinus:
        return dotminus(eval(f.operand(0), env), eval(f.operand(1), env));
      case Formula::Kind::Half:
        return half(eval(f.operand(0), env));
      case Formula::Kind::InfQ:
      case Formula::Kind::SupQ: {
        const bool is_inf = f.kind() == Formula::Kind::InfQ;
        UnitValue best = is_inf ? UnitValue::one() : UnitValue::zero();
        env.emplace_back(f.var(0), 0);
        for (std::size_t p = 0; p < space_.size; ++p) {
          ++points_;
          env.back().second = p;
          UnitValue v = eval(f.operand(0), env);
          if (is_inf ? v < best : best < v) best = std::move(v);
        }
        env.pop_back();
        return best;
      }
      case Formula::Kind::CInf:
      case Formula::Kind::CSup:
        throw Error(ErrorCode::Domain, "exact evaluation of an infinitary formula");
    }
    throw Error(ErrorCode::Domain, "unknown formula kind");
  }

  std::size_t lookup(const Bindings& env, unsigned v) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    throw Error(ErrorCode::UnboundVariable, "variable " + var_name(v) + " is not bound");
  }

 private:
  const FiniteMetricSpace& space_;
  std::uint64_t& points_;
};

Bindings to_bindings(const Environment& env, const FiniteMetricSpace& space) {
  Bindings out;
  for (const auto& [v, p] : env) {
    if (p >= space.size) {
      throw Error(ErrorCode::Domain, var_name(v) + " = " + std::to_string(p) + " is not a point of " + space.name);
    }
    out.emplace_back(v, p);
  }
  return out;
}

}  // namespace

UnitValue eval_exact(const Formula& f, const FiniteMetricSpace& space, const Environment& env) {
  if (!f.is_finitary()) throw Error(ErrorCode::Domain, "exact evaluation needs a finitary formula");
  std::uint64_t points = 0;
  Bindings b = to_bindings(env, space);
  return ExactEvaluator(space, points).eval(f, b);
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

struct Evaluator::Impl {
  const FiniteMetricSpace& space;
  TruncationSchedule schedule;
  std::uint64_t points = 0;
  ExactEvaluator exact{space, points};

  // Values of closed finitary subformulas, by node. The formula is kept so
  // that the node address stays valid.
  std::unordered_map<const void*, std::pair<Formula, UnitValue>> finitary_memo;
  std::unordered_map<std::string, Enclosure> family_memo;
  std::unordered_map<std::string, UnitValue> estimate_memo;
  std::unordered_map<std::string, bool> closed_memo;
  std::vector<Formula> pinned;

  Impl(const FiniteMetricSpace& s, TruncationSchedule t) : space(s), schedule(std::move(t)) {}

  std::string family_key(const Formula& f) {
    const FamilySpec& fam = f.family();
    std::string key = f.kind() == Formula::Kind::CInf ? "I" : "S";
    if (fam.is_explicit()) {
      std::ostringstream os;
      os << f.id();
      key += "#" + os.str();
      if (!closed_memo.contains(key)) pinned.push_back(f);
      return key;
    }
    return key + fam.as_generated().generator + "\x1f" + fam.as_generated().params;
  }

  // Whether an infinitary node has no free variables. Generated families
  // are judged by their first member, like free_vars.
  bool closed(const Formula& f, const std::string& key) {
    auto it = closed_memo.find(key);
    if (it != closed_memo.end()) return it->second;
    bool c = true;
    const FamilySpec& fam = f.family();
    const auto check = [&](const Formula& m) {
      return m.is_infinitary_node() ? closed(m, family_key(m)) : is_sentence(m);
    };
    if (fam.is_explicit()) {
      for (const auto& m : fam.as_explicit().members) {
        if (!check(m)) {
          c = false;
          break;
        }
      }
    } else if (!GeneratorRegistry::instance().get(fam.as_generated().generator).sentences_only()) {
      c = check(family_member(fam, 0));
    }
    closed_memo.emplace(key, c);
    return c;
  }

  UnitValue finitary(const Formula& f, Bindings& env) {
    if (!env.empty()) return exact.eval(f, env);
    auto it = finitary_memo.find(f.id());
    if (it != finitary_memo.end()) return it->second.second;
    UnitValue v = exact.eval(f, env);
    finitary_memo.emplace(f.id(), std::make_pair(f, v));
    return v;
  }

  Enclosure eval(const Formula& f, Bindings& env, std::size_t nesting, Need need) {
    if (!need.lo && !need.hi) return Enclosure::unknown();
    if (f.is_finitary()) return Enclosure::point(finitary(f, env));
    switch (f.kind()) {
      case Formula::Kind::Neg: {
        const Enclosure e = eval(f.operand(0), env, nesting, need.swapped());
        return restrict(enclosure_apply(Connective::Neg, std::span(&e, 1)), need);
      }
      case Formula::Kind::Half: {
        const Enclosure e = eval(f.operand(0), env, nesting, need);
        return restrict(enclosure_apply(Connective::Half, std::span(&e, 1)), need);
      }
      case Formula::Kind::DotMinus: {
        const Enclosure args[2] = {eval(f.operand(0), env, nesting, need),
                                   eval(f.operand(1), env, nesting, need.swapped())};
        return restrict(enclosure_apply(Connective::DotMinus, args), need);
      }
      case Formula::Kind::InfQ:
      case Formula::Kind::SupQ: {
        const bool is_inf = f.kind() == Formula::Kind::InfQ;
        UnitValue lo = is_inf ? UnitValue::one() : UnitValue::zero();
        UnitValue hi = lo;
        env.emplace_back(f.var(0), 0);
        for (std::size_t p = 0; p < space.size; ++p) {
          ++points;
          env.back().second = p;
          const Enclosure e = eval(f.operand(0), env, nesting, need);
          lo = is_inf ? std::min(lo, e.lo()) : std::max(lo, e.lo());
          hi = is_inf ? std::min(hi, e.hi()) : std::max(hi, e.hi());
        }
        env.pop_back();
        return restrict(Enclosure(lo, hi), need);
      }
      case Formula::Kind::CInf:
      case Formula::Kind::CSup:
        return family(f, env, nesting, need);
      case Formula::Kind::Atomic:
        break;
    }
    throw Error(ErrorCode::Domain, "unexpected formula kind");
  }

  Enclosure family(const Formula& f, Bindings& env, std::size_t nesting, Need need) {
    const bool is_inf = f.kind() == Formula::Kind::CInf;
    const FamilySpec& fam = f.family();
    const std::size_t depth = schedule.depth_at(nesting);
    const bool complete = fam.is_explicit() && fam.as_explicit().members.size() <= depth;
    // A truncated inf is only bounded above, a truncated sup only below.
    if (!complete) need = is_inf ? Need{false, need.hi} : Need{need.lo, false};
    if (!fam.is_explicit()) {
      const auto& gen = fam.as_generated();
      // Truncated members bound only the side their own kind bounds.
      if (auto root = GeneratorRegistry::instance().get(gen.generator).generated_member_root(gen.params)) {
        if (*root == Formula::Kind::CInf) need.lo = false;
        if (*root == Formula::Kind::CSup) need.hi = false;
      }
    }
    if (!need.lo && !need.hi) return Enclosure::unknown();

    const std::string base = family_key(f);
    const bool memo = closed(f, base);
    std::string key;
    if (memo) {
      key = base + "|" + std::to_string(nesting) + "|" + std::to_string(need.bits());
      auto it = family_memo.find(key);
      if (it != family_memo.end()) return it->second;
    }

    const std::size_t count = complete ? fam.as_explicit().members.size() : depth;
    UnitValue lo = is_inf ? UnitValue::one() : UnitValue::zero();
    UnitValue hi = lo;
    for (std::size_t n = 0; n < count; ++n) {
      const Formula member = fam.is_explicit() ? fam.as_explicit().members[n] : family_member(fam, n);
      const Enclosure e = eval(member, env, nesting + 1, need);
      lo = is_inf ? std::min(lo, e.lo()) : std::max(lo, e.lo());
      hi = is_inf ? std::min(hi, e.hi()) : std::max(hi, e.hi());
    }
    Enclosure result = restrict(Enclosure(lo, hi), need);
    if (memo) family_memo.emplace(std::move(key), result);
    return result;
  }

  UnitValue estimate(const Formula& f, Bindings& env, std::size_t nesting) {
    if (f.is_finitary()) return finitary(f, env);
    switch (f.kind()) {
      case Formula::Kind::Neg:
        return neg(estimate(f.operand(0), env, nesting));
      case Formula::Kind::Half:
        return half(estimate(f.operand(0), env, nesting));
      case Formula::Kind::DotMinus:
        return dotminus(estimate(f.operand(0), env, nesting), estimate(f.operand(1), env, nesting));
      case Formula::Kind::InfQ:
      case Formula::Kind::SupQ: {
        const bool is_inf = f.kind() == Formula::Kind::InfQ;
        UnitValue best = is_inf ? UnitValue::one() : UnitValue::zero();
        env.emplace_back(f.var(0), 0);
        for (std::size_t p = 0; p < space.size; ++p) {
          ++points;
          env.back().second = p;
          UnitValue v = estimate(f.operand(0), env, nesting);
          best = is_inf ? std::min(best, v) : std::max(best, v);
        }
        env.pop_back();
        return best;
      }
      case Formula::Kind::CInf:
      case Formula::Kind::CSup: {
        const bool is_inf = f.kind() == Formula::Kind::CInf;
        const std::string base = family_key(f);
        const bool memo = closed(f, base);
        const std::string key = base + "|" + std::to_string(nesting);
        if (memo) {
          auto it = estimate_memo.find(key);
          if (it != estimate_memo.end()) return it->second;
        }
        const FamilySpec& fam = f.family();
        std::size_t count = schedule.depth_at(nesting);
        if (fam.is_explicit()) count = std::min(count, fam.as_explicit().members.size());
        UnitValue best = is_inf ? UnitValue::one() : UnitValue::zero();
        for (std::size_t n = 0; n < count; ++n) {
          UnitValue v = estimate(family_member(fam, n), env, nesting + 1);
          best = is_inf ? std::min(best, v) : std::max(best, v);
        }
        if (memo) estimate_memo.emplace(key, best);
        return best;
      }
      case Formula::Kind::Atomic:
        break;
    }
    throw Error(ErrorCode::Domain, "unexpected formula kind");
  }
};

Evaluator::Evaluator(const FiniteMetricSpace& space, TruncationSchedule schedule)
    : impl_(std::make_unique<Impl>(space, std::move(schedule))) {
  if (space.size == 0) throw Error(ErrorCode::Domain, "empty metric space");
  if (impl_->schedule.depths.empty()) throw Error(ErrorCode::Domain, "empty truncation schedule");
}

Evaluator::~Evaluator() = default;

Enclosure Evaluator::enclosure(const Formula& f, const Environment& env) {
  Bindings b = to_bindings(env, impl_->space);
  return impl_->eval(f, b, 0, Need{});
}

UnitValue Evaluator::truncated_value(const Formula& f) {
  Bindings b;
  return impl_->estimate(f, b, 0);
}

std::uint64_t Evaluator::points_visited() const { return impl_->points; }

Enclosure eval_enclosure(const Formula& f, const FiniteMetricSpace& space, const TruncationSchedule& schedule) {
  return Evaluator(space, schedule).enclosure(f);
}

Enclosure sandwich(const Formula& left_numeral, const Formula& right_numeral, const FiniteMetricSpace& space,
                   const TruncationSchedule& schedule) {
  Evaluator ev(space, schedule);
  const UnitValue lo = ev.enclosure(left_numeral).lo();
  const UnitValue hi = ev.enclosure(right_numeral).hi();
  if (hi < lo) {
    throw Error(ErrorCode::Inconsistent,
                "left numeral is at least " + lo.str() + " but right numeral is at most " + hi.str());
  }
  return Enclosure(lo, hi);
}

VerificationReport independence_check(const Formula& f, const std::vector<FiniteMetricSpace>& spaces,
                                      const TruncationSchedule& schedule) {
  if (!is_sentence(f)) throw Error(ErrorCode::UnboundVariable, "independence check needs a sentence");
  VerificationReport report;
  for (const auto& s : spaces) {
    report.spaces.push_back(s.name);
    report.enclosures.push_back(eval_enclosure(f, s, schedule));
  }
  const std::size_t n = spaces.size();
  report.agreement.assign(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      report.agreement[i][j] = report.enclosures[i] == report.enclosures[j];
      report.all_agree = report.all_agree && report.agreement[i][j];
    }
  }
  return report;
}

ClassificationOutcome classification_check(const NumeralRecipe& recipe, const Formula& f) {
  ClassificationOutcome out;
  out.expected = recipe.side == Side::Right ? Rank::sigma(recipe.level) : Rank::pi(recipe.level);
  try {
    out.actual = classify(f);
  } catch (const Error& e) {
    out.message = e.what();
    return out;
  }
  out.pass = *out.actual == out.expected;
  out.message = out.pass ? "rank " + out.actual->str()
                         : "expected " + out.expected.str() + ", classified as " + out.actual->str();
  return out;
}

const char* to_string(Bound b) { return b == Bound::Upper ? "upper" : "lower"; }

ConvergenceReport convergence_report(const Formula& f, const BuiltinReal* truth, const std::vector<std::size_t>& depths,
                                     const FiniteMetricSpace& space, const ConvergenceOptions& options) {
  ConvergenceReport report;
  report.active = f.kind() == Formula::Kind::CSup ? Bound::Lower : Bound::Upper;
  const bool upper = report.active == Bound::Upper;
  for (std::size_t depth : depths) {
    Evaluator ev(space, options.schedule(depth));
    ConvergenceRow row;
    row.depth = depth;
    row.enclosure = ev.enclosure(f);
    row.active = upper ? row.enclosure.hi().value() : row.enclosure.lo().value();
    if (truth) {
      row.distance = row.active.to_double() - truth->to_double();
      const int c = truth->compare(row.active);  // sign(active - truth)
      row.sound = upper ? c >= 0 : c <= 0;
      report.sound = report.sound && *row.sound;
    }
    if (options.estimates) row.estimate = ev.truncated_value(f);
    if (!report.rows.empty()) {
      const Dyadic& prev = report.rows.back().active;
      if (upper ? prev < row.active : row.active < prev) report.monotone = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

VerifyResult verify_recipe(const NumeralRecipe& recipe, const VerifyOptions& options) {
  VerifyResult out;
  out.recipe = recipe.descriptor();
  const Formula f = build_numeral(recipe);
  out.code = serialize(f);

  const std::vector<FiniteMetricSpace> spaces = options.spaces.empty() ? builtin_suite(options.seed) : options.spaces;
  const TruncationSchedule schedule = TruncationSchedule::nested(options.depth);
  out.independence = independence_check(f, spaces, schedule);
  out.classification = classification_check(recipe, f);

  std::vector<std::size_t> ladder;
  for (std::size_t d : {options.depth / 64, options.depth / 16, options.depth / 4, options.depth}) {
    d = std::max<std::size_t>(d, 1);
    if (ladder.empty() || ladder.back() != d) ladder.push_back(d);
  }
  const BuiltinReal* truth = recipe.source->ground_truth();
  ConvergenceOptions copts;
  copts.estimates = true;
  out.convergence = convergence_report(f, truth, ladder, spaces.front(), copts);

  if (!truth) {
    out.notes.push_back("no ground truth for this source; tolerance not checked");
  } else if (recipe.level != Ordinal(1)) {
    out.notes.push_back("level " + recipe.level.str() +
                        ": truncation keeps only the inner families' one-sided bounds, so the active bound is not "
                        "certified; see the estimate column");
  } else {
    const Dyadic tol = Dyadic::pow2(-static_cast<int>(options.tolerance_bits));
    const Dyadic& active = out.convergence.rows.back().active;
    // Right numerals approach from above, left ones from below.
    out.within_tolerance = recipe.side == Side::Right ? truth->compare(active - tol) <= 0
                                                      : truth->compare(active + tol) >= 0;
  }
  out.passed = out.independence.all_agree && out.classification.pass && out.convergence.sound &&
               out.convergence.monotone && out.within_tolerance.value_or(true);
  return out;
}

}  // namespace contnum
