#include "contnum/acceptance.hpp"

#include <bit>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

#include "contnum/engine.hpp"
#include "contnum/error.hpp"
#include "contnum/reals.hpp"
#include "contnum/sources.hpp"

namespace contnum {

namespace {

// ---------------------------------------------------------------------------
// Oracles. These use plain integer arithmetic on the defining equations of
// the test reals and never call into the engine.
// ---------------------------------------------------------------------------

BigInt pow_big(BigInt base, unsigned e) {
  BigInt out = 1;
  while (e--) out *= base;
  return out;
}

/// sign(d - r) for the reals of the test corpus.
int oracle_sign(const Dyadic& d, const std::string& name) {
  const BigInt a = d.numerator();
  const unsigned e = d.exponent();
  const BigInt p2 = BigInt(1) << e;
  const auto sgn = [](const BigInt& x) { return x.sign(); };
  if (name == "sqrt-half") {
    if (a.sign() <= 0) return -1;
    return sgn(2 * a * a - p2 * p2);
  }
  if (name == "phi-inverse") {
    const BigInt s = 2 * a + p2;  // 2^e (2d + 1), positive for d >= 0
    if (s.sign() <= 0) return -1;
    return sgn(s * s - 5 * p2 * p2);
  }
  if (name == "cbrt-half") return sgn(2 * a * a * a - pow_big(p2, 3));
  const auto slash = name.find('/');
  if (slash == std::string::npos) throw Error(ErrorCode::Domain, "no oracle for " + name);
  const BigInt num(name.substr(0, slash));
  const BigInt den(name.substr(slash + 1));
  return sgn(a * den - num * p2);
}

/// Breadth-first dyadics of (0, 1): 1/2, 1/4, 3/4, 1/8, ...
std::vector<Dyadic> candidates(std::size_t n) {
  std::vector<Dyadic> out;
  for (unsigned level = 1; out.size() < n; ++level) {
    for (BigInt j = 1; j < (BigInt(1) << level) && out.size() < n; j += 2) out.emplace_back(j, level);
  }
  return out;
}

/// Best bound a level-1 numeral can show after reading n members: the least
/// candidate above r (right) or the greatest below r (left), or the trivial
/// bound when none has appeared.
Dyadic prefix_bound(Side side, const std::string& name, std::size_t n) {
  std::optional<Dyadic> best;
  for (const Dyadic& c : candidates(n)) {
    const int s = oracle_sign(c, name);
    if (side == Side::Right && s > 0 && (!best || c < *best)) best = c;
    if (side == Side::Left && s < 0 && (!best || *best < c)) best = c;
  }
  if (best) return *best;
  return side == Side::Right ? Dyadic(1) : Dyadic(0);
}

Dyadic floor_to_bits(const Rational& q, unsigned p) {
  const BigInt num = boost::multiprecision::numerator(q) << p;
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt f = num / den;
  if (num.sign() < 0 && f * den != num) f -= 1;
  return Dyadic(f, p);
}

Dyadic ceil_to_bits(const Rational& q, unsigned p) { return -floor_to_bits(-q, p); }

/// Stage-t value of r_n recomputed from the definition with no shared state:
/// s_k searches x1 < t for a refutation of R((k)0, x1, c) with c = q_{(k)1}
/// and takes the best q_i (i < t) below min(c, 1) (right side; or the best
/// below 1 once refuted), then r_n = min over k <= n. Left mirrors it.
Dyadic direct_extraction(const Sigma2Predicate& pred, std::uint64_t n, std::uint64_t t) {
  const bool right = pred.side() == Side::Right;
  const unsigned p = 8 + std::bit_width(t);
  std::optional<Dyadic> r;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const Rational c = RationalEnumeration::at(PairingCodec::second(k));
    bool refuted = false;
    for (std::uint64_t x1 = 0; x1 < t && !refuted; ++x1) refuted = !pred.holds(PairingCodec::first(k), x1, c);
    std::optional<Rational> best;
    for (std::uint64_t i = 0; i < t; ++i) {
      const Rational q = RationalEnumeration::at(i);
      if (right && q < 1 && (refuted || q < c) && (!best || q > *best)) best = q;
      if (!right && q > 0 && (refuted || q > c) && (!best || q < *best)) best = q;
    }
    const Dyadic s = right ? floor_to_bits(best && *best > 0 ? *best : Rational(0), p)
                           : ceil_to_bits(best && *best < 1 ? *best : Rational(1), p);
    r = !r ? s : right ? min(*r, s) : max(*r, s);
  }
  return *r;
}

std::string str(const Enclosure& e) { return e.str(); }

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (passed) detail.str("");
    if (!passed) detail << "; ";
    passed = false;
    detail << why;
  }
};

void dyadic_exactness(Outcome& out, std::uint64_t seed) {
  const auto suite = builtin_suite(seed);
  std::size_t checks = 0;
  for (unsigned m = 0; m <= 256; ++m) {
    const Dyadic r(BigInt(m), 8);
    for (NumeralFlavor q : {NumeralFlavor::Existential, NumeralFlavor::Universal}) {
      const Formula f = dyadic_numeral(r, q);
      for (const auto& space : suite) {
        const UnitValue v = eval_exact(f, space);
        ++checks;
        if (v.value() != r) {
          out.fail("numeral of " + r.str() + " (" + to_string(q) + ") is " + v.str() + " on " + space.name);
          return;
        }
      }
    }
  }
  out.detail << checks << " evaluations exact on " << suite.size() << " spaces";
}

std::optional<std::string> builtin_name(const NumeralRecipe& r) {
  const auto* truth = r.source->ground_truth();
  if (!truth || r.source->descriptor() != "(real builtin \"" + truth->name() + "\")") return std::nullopt;
  return truth->name();
}

void structure_independence(Outcome& out, std::uint64_t seed) {
  const auto suite = builtin_suite(seed);
  const auto schedule = TruncationSchedule::nested(128);
  std::size_t agreeing = 0;
  for (const auto& recipe : corpus_recipes()) {
    const Formula f = build_numeral(recipe);
    const VerificationReport report = independence_check(f, suite, schedule);
    if (report.spaces.size() < 5) out.fail("only " + std::to_string(report.spaces.size()) + " spaces");
    if (!report.all_agree) {
      out.fail(recipe.descriptor() + " differs across spaces");
      continue;
    }
    // Recompute on two spaces with fresh evaluators.
    for (std::size_t i : {std::size_t{0}, suite.size() - 1}) {
      const Enclosure again = Evaluator(suite[i], schedule).enclosure(f);
      if (again != report.enclosures[i]) out.fail(recipe.descriptor() + " not reproducible on " + suite[i].name);
    }
    if (recipe.level == Ordinal(1)) {
      if (auto name = builtin_name(recipe)) {
        const Dyadic want = prefix_bound(recipe.side, *name, 128);
        const Enclosure& e = report.enclosures.front();
        const Dyadic got = recipe.side == Side::Right ? e.hi().value() : e.lo().value();
        if (got != want) out.fail(recipe.descriptor() + ": bound " + got.str() + ", oracle " + want.str());
      }
    }
    ++agreeing;
  }
  if (out.passed) out.detail << agreeing << " numerals identical across " << suite.size() << " spaces at depth 128";
}

void sandwich_convergence(Outcome& out) {
  const auto singleton = builtin_suite().front();
  const Dyadic target = Dyadic::pow2(-10);
  for (const std::string name : {"1/3", "2/7", "sqrt-half"}) {
    const auto src = builtin_source(name);
    const Formula left = build_numeral({Side::Left, Ordinal(1), src});
    const Formula right = build_numeral({Side::Right, Ordinal(1), src});
    std::optional<std::size_t> reached;
    Enclosure e;
    for (std::size_t depth = 16; depth <= 4096; depth *= 2) {
      e = sandwich(left, right, singleton, TruncationSchedule::uniform(depth));
      if (oracle_sign(e.lo().value(), name) > 0 || oracle_sign(e.hi().value(), name) < 0) {
        out.fail(name + ": " + str(e) + " at depth " + std::to_string(depth) + " misses the real");
        break;
      }
      if (e.lo().value() != prefix_bound(Side::Left, name, depth) ||
          e.hi().value() != prefix_bound(Side::Right, name, depth)) {
        out.fail(name + ": " + str(e) + " at depth " + std::to_string(depth) + " disagrees with prefix oracle");
        break;
      }
      if (e.width() <= target) {
        reached = depth;
        break;
      }
    }
    if (!reached) {
      out.fail(name + ": width " + e.width().str() + " > 2^-10 by depth 4096");
      continue;
    }
    out.detail << (out.detail.tellp() > 0 ? "; " : "") << name << " " << str(e) << " at depth " << *reached;
  }
}

void extraction_pipeline(Outcome& out) {
  struct Case {
    const char* predicate;
    const char* real;
    Rational value;
  };
  const Case cases[] = {{"shifted-above", "1/3", Rational(1, 3)}, {"shifted-below", "2/3", Rational(2, 3)}};
  const std::uint64_t n_max = 32;
  const std::uint64_t t_max = 1024;
  const Rational tol(BigInt(1), BigInt(256));
  for (const auto& c : cases) {
    const auto pred = make_sigma2_predicate(c.predicate, c.real);
    const bool right = pred->side() == Side::Right;
    const auto seq = right ? extract_seq_right_sigma2(pred) : extract_seq_left_sigma2(pred);
    const std::string label = std::string(c.predicate) + " " + c.real;
    bool stages_ok = true;
    bool limits_ok = true;
    bool range_ok = true;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      for (std::uint64_t t = 0; t <= t_max; ++t) {
        const Dyadic v = seq->approx(n, t);
        if (v < Dyadic(0) || Dyadic(1) < v) range_ok = false;
        if (t > 0) {
          const Dyadic prev = seq->approx(n, t - 1);
          if (right ? v < prev : prev < v) stages_ok = false;
        }
      }
      if (n > 0) {
        const Dyadic prev = seq->approx(n - 1, t_max);
        const Dyadic v = seq->approx(n, t_max);
        if (right ? prev < v : v < prev) limits_ok = false;
      }
    }
    if (!stages_ok) out.fail(label + ": stage approximations not monotone in t");
    if (!limits_ok) out.fail(label + ": limits not monotone in n");
    if (!range_ok) out.fail(label + ": value outside [0, 1]");

    const Dyadic got = seq->approx(n_max, t_max);
    const Dyadic direct = direct_extraction(*pred, n_max, t_max);
    if (got != direct) out.fail(label + ": table " + got.str() + " but direct evaluation " + direct.str());
    const Rational diff = to_rational(got) - c.value;
    const Rational dist = diff < 0 ? Rational(-diff) : diff;
    std::ostringstream msg;
    msg << label << ": approx(32, 1024) = " << got.str() << ", distance " << rational_str(dist);
    if (dist > tol) {
      out.fail(msg.str() + " > 2^-8");
    } else if (out.passed) {
      out.detail << (out.detail.tellp() > 0 ? "; " : "") << msg.str();
    }
  }
}

std::vector<NumeralRecipe> classification_recipes() {
  std::vector<NumeralRecipe> out;
  for (const char* side : {"right", "left"}) {
    const std::string s = side;
    const std::string approach = s == "right" ? "above" : "below";
    for (const std::string level : {"1", "2", "3", "omega", "omega+1"}) {
      const std::string src = level == "omega"
                                  ? "(real leveled omega " + s + " (approach \"1/3\" " + approach + "))"
                                  : "(real builtin \"1/3\")";
      out.push_back(NumeralRecipe::parse("(numeral " + s + " " + level + " " + src + ")"));
    }
  }
  return out;
}

void classification_mapping(Outcome& out) {
  std::size_t ok = 0;
  for (const auto& recipe : classification_recipes()) {
    const Rank expected = recipe.side == Side::Right ? Rank::sigma(recipe.level) : Rank::pi(recipe.level);
    const ClassificationOutcome c = classification_check(recipe, build_numeral(recipe));
    if (!c.pass || !c.actual || *c.actual != expected) {
      out.fail(recipe.descriptor() + ": " + c.message);
      continue;
    }
    ++ok;
  }
  if (out.passed) out.detail << ok << " of 10 recipes classify as Sigma (right) / Pi (left) at their level";
}

void monotone_truncation(Outcome& out) {
  const auto singleton = builtin_suite().front();
  const std::vector<std::size_t> depths = {16, 64, 256, 1024};
  std::vector<NumeralRecipe> recipes = corpus_recipes();
  for (auto& r : classification_recipes()) recipes.push_back(std::move(r));
  std::size_t checked = 0;
  for (const auto& recipe : recipes) {
    const Formula f = build_numeral(recipe);
    const ConvergenceReport report = convergence_report(f, nullptr, depths, singleton);
    const bool right = recipe.side == Side::Right;
    if (report.active != (right ? Bound::Upper : Bound::Lower)) out.fail(recipe.descriptor() + ": wrong active bound");
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      const Dyadic& prev = report.rows[i - 1].active;
      const Dyadic& cur = report.rows[i].active;
      if (right ? prev < cur : cur < prev) {
        out.fail(recipe.descriptor() + ": " + prev.str() + " then " + cur.str());
      }
    }
    if (!report.monotone) out.fail(recipe.descriptor() + ": report flags non-monotone bounds");
    if (recipe.level == Ordinal(1)) {
      if (auto name = builtin_name(recipe)) {
        for (const auto& row : report.rows) {
          const Dyadic want = prefix_bound(recipe.side, *name, row.depth);
          if (row.active != want) out.fail(recipe.descriptor() + ": bound " + row.active.str() + ", oracle " + want.str());
        }
      }
    }
    ++checked;
  }
  if (out.passed) out.detail << checked << " numerals monotone over depths 16, 64, 256, 1024";
}

void negative_control(Outcome& out, std::uint64_t seed) {
  const auto suite = builtin_suite(seed);
  const Formula diameter = Formula::sup(0, Formula::sup(1, Formula::dist(0, 1)));
  const VerificationReport report = independence_check(diameter, suite, TruncationSchedule::uniform(1));
  if (report.all_agree) out.fail("diameter sentence passed the independence check");
  // Oracle: the diameter is the largest matrix entry.
  for (std::size_t i = 0; i < suite.size(); ++i) {
    Dyadic diam(0);
    for (const auto& row : suite[i].dist) {
      for (const auto& v : row) diam = max(diam, v);
    }
    if (report.enclosures[i] != Enclosure::point(UnitValue(diam))) {
      out.fail(suite[i].name + ": " + str(report.enclosures[i]) + ", diameter " + diam.str());
    }
  }
  if (out.passed) {
    out.detail << "rejected: " << report.spaces[0] << " " << str(report.enclosures[0]) << " vs " << report.spaces[1]
               << " " << str(report.enclosures[1]);
  }
}

}  // namespace

std::vector<NumeralRecipe> corpus_recipes() {
  const char* texts[] = {
      "(numeral right 1 (real builtin \"1/3\"))",
      "(numeral left 1 (real builtin \"1/3\"))",
      "(numeral right 1 (real builtin \"2/7\"))",
      "(numeral left 1 (real builtin \"2/7\"))",
      "(numeral right 1 (real builtin \"sqrt-half\"))",
      "(numeral left 1 (real builtin \"sqrt-half\"))",
      "(numeral right 1 (real builtin \"phi-inverse\"))",
      "(numeral left 1 (real builtin \"phi-inverse\"))",
      "(numeral right 1 (real builtin \"cbrt-half\"))",
      "(numeral left 1 (real builtin \"cbrt-half\"))",
      "(numeral right 2 (real builtin \"1/3\"))",
      "(numeral right 2 (real builtin \"sqrt-half\"))",
      "(numeral right 2 (real sigma2-right shifted-above \"1/3\"))",
      "(numeral right 2 (real sigma2-right exact-above \"2/7\"))",
      "(numeral right 2 (real sigma2-right decoy-above \"phi-inverse\"))",
      "(numeral left 2 (real builtin \"2/7\"))",
      "(numeral left 2 (real builtin \"cbrt-half\"))",
      "(numeral left 2 (real sigma2-left shifted-below \"2/3\"))",
      "(numeral left 2 (real sigma2-left exact-below \"sqrt-half\"))",
      "(numeral left 2 (real sigma2-left decoy-below \"1/3\"))",
  };
  std::vector<NumeralRecipe> out;
  for (const char* t : texts) out.push_back(NumeralRecipe::parse(t));
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  struct Entry {
    int id;
    const char* title;
    double budget;
    std::function<void(Outcome&)> run;
  };
  const std::uint64_t seed = options.seed;
  const std::vector<Entry> entries = {
      {1, "dyadic exactness", 5, [&](Outcome& o) { dyadic_exactness(o, seed); }},
      {2, "structure independence", 30, [&](Outcome& o) { structure_independence(o, seed); }},
      {3, "sandwich convergence", 60, [](Outcome& o) { sandwich_convergence(o); }},
      {4, "sigma2 extraction pipeline", 60, [](Outcome& o) { extraction_pipeline(o); }},
      {5, "classification mapping", 5, [](Outcome& o) { classification_mapping(o); }},
      {6, "monotone truncation", 30, [](Outcome& o) { monotone_truncation(o); }},
      {7, "negative control", 1, [&](Outcome& o) { negative_control(o, seed); }},
  };
  std::vector<CriterionResult> results;
  for (const auto& e : entries) {
    if (!options.only.empty() && !options.only.contains(e.id)) continue;
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(out);
    } catch (const std::exception& ex) {
      out.fail(std::string("error: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CriterionResult r{e.id, e.title, out.passed, out.detail.str(), secs, e.budget};
    if (secs > e.budget) {
      r.passed = false;
      std::ostringstream msg;
      msg << (r.detail.empty() ? "" : "; ") << "took " << secs << " s, budget " << e.budget << " s";
      r.detail += msg.str();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace contnum
