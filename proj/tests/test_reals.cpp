#include <doctest.h>

#include <functional>
#include <set>
#include <string>

#include "contnum/error.hpp"
#include "contnum/reals.hpp"
#include "contnum/sources.hpp"
#include "oracles.hpp"

using namespace contnum;

namespace {

oracle::Dy to_dy(const Dyadic& d) { return {d.numerator(), d.exponent()}; }

Rational R(const char* s) { return parse_rational(s); }

Rational to_rat(const oracle::Q& q) { return Rational(q.p, q.q); }

using SignFn = std::function<int(const oracle::Dy&)>;

// Sign of (dyadic - real) for each builtin, from integer arithmetic only.
const std::vector<std::pair<std::string, SignFn>>& builtin_oracles() {
  static const std::vector<std::pair<std::string, SignFn>> table = {
      {"1/3", [](const oracle::Dy& d) { return oracle::cmp_frac(d, 1, 3); }},
      {"2/7", [](const oracle::Dy& d) { return oracle::cmp_frac(d, 2, 7); }},
      {"1/2", [](const oracle::Dy& d) { return oracle::cmp_frac(d, 1, 2); }},
      {"sqrt-half", oracle::cmp_sqrt_half},
      {"phi-inverse", oracle::cmp_phi_inverse},
      {"cbrt-half", oracle::cmp_cbrt_half},
  };
  return table;
}

// The limit r_n of a Right exact-above "0" predicate after R1: witness
// c_k = q_{(k)1} contributes s_k = min(c_k, 1) when c_k > 0 and 1 otherwise.
oracle::Q right_zero_limit(std::uint64_t n) {
  oracle::Q best{1, 1};
  for (std::uint64_t k = 0; k <= n; ++k) {
    const oracle::Q c = oracle::enumerate(oracle::unpair(k).second);
    if (c.p > 0 && oracle::cmp(c, best) < 0) best = c;
  }
  return best;
}

// Mirror for a Left exact-below "1" predicate: s_k = max(c_k, 0) when c_k < 1.
oracle::Q left_one_limit(std::uint64_t n) {
  oracle::Q best{0, 1};
  for (std::uint64_t k = 0; k <= n; ++k) {
    const oracle::Q c = oracle::enumerate(oracle::unpair(k).second);
    if (oracle::cmp(c, oracle::Q{1, 1}) < 0 && oracle::cmp(c, best) > 0) best = c;
  }
  return best;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(rational_str(R("2/6")) == "1/3");
  CHECK(rational_str(R("3/2^3")) == "3/8");
  CHECK(rational_str(R("-4/2")) == "-2");
  CHECK_THROWS_AS(R("1/0"), Error);
  CHECK_THROWS_AS(R("x"), Error);
  CHECK(to_rational(Dyadic::parse("5/8")) == Rational(5, 8));
}

TEST_CASE("Cantor pairing is the reference bijection") {
  for (std::uint64_t x = 0; x < 40; ++x) {
    for (std::uint64_t y = 0; y < 40; ++y) {
      const std::uint64_t n = PairingCodec::pair(x, y);
      CHECK(n == oracle::pair(x, y));
      CHECK(PairingCodec::first(n) == x);
      CHECK(PairingCodec::second(n) == y);
    }
  }
  for (std::uint64_t n = 0; n < 2000; ++n) CHECK(PairingCodec::pair(PairingCodec::first(n), PairingCodec::second(n)) == n);
}

TEST_CASE("rational enumeration starts as documented") {
  const std::vector<Rational> head = {R("0"), R("1/3"), R("-1"), R("-1/3"), R("1/2"), R("2/3"), R("1"), R("-2/3")};
  for (std::size_t i = 0; i < head.size(); ++i) CHECK(RationalEnumeration::at(i) == head[i]);
}

TEST_CASE("rational enumeration matches the reference and is injective") {
  std::set<Rational> seen;
  for (std::uint64_t n = 0; n < 3000; ++n) {
    const Rational q = RationalEnumeration::at(n);
    CHECK(q == to_rat(oracle::enumerate(n)));
    CHECK(seen.insert(q).second);
  }
  CHECK(RationalEnumeration::max_below_one(0) == std::nullopt);
  CHECK(RationalEnumeration::max_below_one(8) == R("2/3"));
  CHECK(RationalEnumeration::min_above_zero(1) == std::nullopt);
  CHECK(RationalEnumeration::min_above_zero(8) == R("1/3"));
}

TEST_CASE("dyadic candidates are breadth first") {
  CHECK(dyadic_candidate(0).str() == "1/2");
  CHECK(dyadic_candidate(1).str() == "1/4");
  CHECK(dyadic_candidate(2).str() == "3/4");
  CHECK(dyadic_candidate(3).str() == "1/8");
  for (std::uint64_t i = 0; i < 600; ++i) CHECK(dyadic_candidate(i).str() == oracle::str(oracle::candidate(i)));
}

TEST_CASE("builtin reals compare like the integer oracles") {
  for (const auto& [name, sign] : builtin_oracles()) {
    const BuiltinReal& r = BuiltinReal::get(name);
    for (std::uint64_t i = 0; i < 600; ++i) {
      const Dyadic c = dyadic_candidate(i);
      CHECK(r.compare(c) == sign(to_dy(c)));
    }
  }
  CHECK(BuiltinReal::get("1/3").rational_value() == R("1/3"));
  CHECK(BuiltinReal::get("3/8").dyadic_value() == Dyadic::parse("3/8"));
  CHECK_FALSE(BuiltinReal::get("1/3").dyadic_value());
  CHECK(BuiltinReal::get("sqrt-half").to_double() == doctest::Approx(0.70710678));
  CHECK_THROWS_AS(BuiltinReal::get("4/3"), Error);
  CHECK_THROWS_AS(BuiltinReal::get("pi"), Error);
}

TEST_CASE("builtin cut membership examples") {
  const auto& half = BuiltinReal::get("1/2");
  CHECK(half.compare(Dyadic::parse("3/8")) < 0);
  CHECK(half.compare(Dyadic::parse("5/8")) > 0);
  const auto& third = BuiltinReal::get("1/3");
  CHECK(third.compare(Dyadic::parse("1/4")) < 0);
  CHECK(third.compare(Dyadic::parse("3/8")) > 0);
  CHECK(BuiltinReal::get("sqrt-half").compare(Dyadic::parse("5/8")) < 0);
}

TEST_CASE("builtin cut enumerators emit cut elements stage by stage") {
  for (const auto& [name, sign] : builtin_oracles()) {
    auto [left, right] = builtin_real(name);
    CHECK(left.side() == Side::Left);
    CHECK(right.side() == Side::Right);
    std::optional<oracle::Dy> last_l, last_r;
    for (std::uint64_t n = 0; n < 300; ++n) {
      const oracle::Dy c = oracle::candidate(n);
      if (sign(c) < 0) last_l = c;
      if (sign(c) > 0) last_r = c;
      CHECK(left.element(n).str() == (last_l ? oracle::str(*last_l) : "-1"));
      CHECK(right.element(n).str() == (last_r ? oracle::str(*last_r) : "2"));
    }
    CHECK(left.next() == left.element(0));
    CHECK(left.next() == left.element(1));
  }
}

TEST_CASE("named Sigma2 predicates") {
  auto sh = make_sigma2_predicate("shifted-above", "1/3");
  CHECK(sh->side() == Side::Right);
  CHECK(sh->encoded_real() == std::string("1/3"));
  // q >= 1/3 + 2^-x0
  CHECK(sh->holds(2, 0, R("7/12")));
  CHECK_FALSE(sh->holds(2, 0, R("1/2")));
  CHECK(sh->holds(3, 9, R("1/2")));
  auto eb = make_sigma2_predicate("exact-below", "2/3");
  CHECK(eb->side() == Side::Left);
  CHECK(eb->holds(0, 0, R("1/2")));
  CHECK_FALSE(eb->holds(0, 0, R("2/3")));
  auto decoy = make_sigma2_predicate("decoy-above", "1/3");
  // Odd x0 holds only for x1 < x0.
  CHECK(decoy->holds(3, 2, R("1/3")));
  CHECK_FALSE(decoy->holds(3, 3, R("1")));
  // Even x0 = 2m behaves as shifted with 2^-m.
  CHECK(decoy->holds(4, 100, R("7/12")));
  CHECK_FALSE(decoy->holds(4, 100, R("1/2")));
  CHECK_THROWS_AS(make_sigma2_predicate("nope", "1/3"), Error);
  CHECK(sigma2_predicate_names().size() == 6);
}

TEST_CASE("Sigma2 predicates present their cut") {
  // q > 1/3 iff some x0 has R(x0, x1, q) for all x1; x0 below 40 suffices for
  // the grid used here, and x1 is irrelevant for these predicates.
  auto sh = make_sigma2_predicate("shifted-above", "1/3");
  for (int m = 0; m <= 64; ++m) {
    const Rational q(m, 64);
    bool witnessed = false;
    for (std::uint64_t x0 = 0; x0 < 40 && !witnessed; ++x0) witnessed = sh->holds(x0, 0, q);
    CHECK(witnessed == (q > R("1/3")));
  }
}

TEST_CASE("transform_R1 guard examples") {
  const TransformedPredicate t = transform_R1(make_sigma2_predicate("exact-above", "1/3"));
  // x0 = <0, 4> carries the witness q_4 = 1/2.
  const std::uint64_t with_half = oracle::pair(0, 4);
  CHECK(t.witness(with_half) == R("1/2"));
  CHECK_FALSE(t.guard(with_half, R("1/4")));
  CHECK_FALSE(t.holds(with_half, 0, R("1/4")));
  CHECK(t.guard(with_half, R("3/4")));
  CHECK(t.holds(with_half, 0, R("3/4")) == t.core(with_half, 0));

  // q_1 = 1/3 sits below q = 1/2: R1 reduces to R((x0)0, x1, 1/3), which is
  // false for exact-above 1/3.
  const std::uint64_t with_third = oracle::pair(5, 1);
  CHECK(t.witness(with_third) == R("1/3"));
  CHECK(t.guard(with_third, R("1/2")));
  CHECK(t.holds(with_third, 7, R("1/2")) == t.base().holds(5, 7, R("1/3")));
  CHECK_FALSE(t.holds(with_third, 7, R("1/2")));
}

TEST_CASE("transform_R1 is closed upward on the right and downward on the left") {
  const std::vector<Rational> grid = {R("-1"), R("0"), R("1/8"), R("1/3"), R("1/2"), R("2/3"), R("7/8"), R("1"), R("2")};
  for (const char* name : {"shifted-above", "exact-above", "decoy-above", "shifted-below", "exact-below", "decoy-below"}) {
    const TransformedPredicate t = transform_R1(make_sigma2_predicate(name, "1/3"));
    for (std::uint64_t x0 = 0; x0 < 60; ++x0) {
      for (std::uint64_t x1 = 0; x1 < 6; ++x1) {
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
          const bool a = t.holds(x0, x1, grid[i]);
          const bool b = t.holds(x0, x1, grid[i + 1]);
          if (t.side() == Side::Right) {
            CHECK((!a || b));
          } else {
            CHECK((!b || a));
          }
        }
      }
    }
  }
}

TEST_CASE("stage precision") {
  CHECK(stage_precision(0) == 8);
  CHECK(stage_precision(1) == 9);
  CHECK(stage_precision(1024) == 19);
}

TEST_CASE("extracted sequences are monotone in the stage and in n") {
  for (const char* spec : {"shifted-above", "exact-below", "decoy-above"}) {
    auto seq = extract_seq(make_sigma2_predicate(spec, "1/3"));
    const bool right = seq->side() == Side::Right;
    CHECK(seq->direction() == (right ? Direction::FromBelow : Direction::FromAbove));
    for (std::uint64_t n = 0; n < 12; ++n) {
      for (std::uint64_t t = 1; t < 200; t += 7) {
        const Dyadic a = seq->approx(n, t);
        CHECK(Dyadic(0) <= a);
        CHECK(a <= Dyadic(1));
        const Dyadic later = seq->approx(n, t + 7);
        const Dyadic next_n = seq->approx(n + 1, t);
        if (right) {
          CHECK(a <= later);
          CHECK(next_n <= a);
        } else {
          CHECK(later <= a);
          CHECK(a <= next_n);
        }
      }
    }
  }
}

TEST_CASE("extraction of the right cut of 0 follows the positive witnesses") {
  // The construction takes s_k = c_k for every positive witness, so r_n is the
  // least positive witness so far and reaches 0 only in the limit.
  auto seq = extract_seq_right_sigma2(make_sigma2_predicate("exact-above", "0"));
  const Dyadic tol = Dyadic::pow2(-8);
  for (std::uint64_t n = 0; n < 12; ++n) {
    const Rational expect = to_rat(right_zero_limit(n));
    const Rational got = to_rational(seq->approx(n, 4096));
    CHECK(got <= expect);
    CHECK(expect - got <= to_rational(tol));
  }
}

TEST_CASE("extraction of the left cut of 1 follows the witnesses below 1") {
  auto seq = extract_seq_left_sigma2(make_sigma2_predicate("exact-below", "1"));
  const Dyadic tol = Dyadic::pow2(-8);
  for (std::uint64_t n = 0; n < 12; ++n) {
    const Rational expect = to_rat(left_one_limit(n));
    const Rational got = to_rational(seq->approx(n, 4096));
    CHECK(got >= expect);
    CHECK(got - expect <= to_rational(tol));
  }
}

TEST_CASE("extraction rejects a predicate on the wrong side") {
  CHECK_THROWS_AS(extract_seq_right_sigma2(make_sigma2_predicate("exact-below", "1/3")), Error);
  CHECK_THROWS_AS(extract_seq_left_sigma2(make_sigma2_predicate("exact-above", "1/3")), Error);
}

TEST_CASE("source descriptors round-trip and are interned") {
  for (const char* d : {"(real builtin \"1/3\")", "(real sigma2-right shifted-above \"1/3\")",
                        "(real sigma2-left exact-below \"sqrt-half\")",
                        "(real leveled w right (approach \"1/3\" above))",
                        "(real leveled w left (members (real builtin \"1/2\") (real builtin \"1/4\")))"}) {
    const SourcePtr s = parse_source(d);
    CHECK(s->descriptor() == d);
    CHECK(parse_source(s->descriptor()) == s);
  }
  CHECK_THROWS_AS(parse_source("(real nothing)"), Error);
  CHECK_THROWS_AS(parse_source("(real builtin \"5/4\")"), Error);
}

TEST_CASE("source levels") {
  const SourcePtr b = builtin_source("1/3");
  CHECK(b->level(Side::Right) == Ordinal(1));
  CHECK(b->level(Side::Left) == Ordinal(1));
  const SourcePtr s2 = sigma2_source(Side::Right, "shifted-above", "1/3");
  CHECK(s2->level(Side::Right) == Ordinal(2));
  const SourcePtr lw = parse_source("(real leveled w right (approach \"1/3\" above))");
  CHECK(lw->level(Side::Right) == Ordinal::omega());
}

TEST_CASE("lift_successor of a Sigma1 right cut is the running minimum") {
  const SourceSequence seq = lift_successor(builtin_source("1/3"), Side::Right, Ordinal(1));
  CHECK(seq.kind() == SourceSequence::Kind::RunningBound);
  oracle::Dy best{1, 0};
  Dyadic prev(1);
  for (std::uint64_t n = 0; n < 200; ++n) {
    const oracle::Dy c = oracle::candidate(n);
    if (oracle::cmp_frac(c, 1, 3) > 0 && oracle::cmp(c, best) < 0) best = c;
    const auto v = seq.at(n)->ground_truth()->dyadic_value();
    REQUIRE(v);
    CHECK(v->str() == oracle::str(best));
    CHECK(*v <= prev);
    CHECK(BuiltinReal::get("1/3").compare(*v) > 0);
    prev = *v;
  }
  CHECK(to_rational(prev) - R("1/3") < R("1/64"));
}

TEST_CASE("lift_successor of the empty left cut of 0 is constant 0") {
  const SourceSequence seq = lift_successor(builtin_source("0"), Side::Left, Ordinal(1));
  for (std::uint64_t n = 0; n < 20; ++n) CHECK(seq.at(n)->ground_truth()->rational_value() == R("0"));
}

TEST_CASE("lift_successor of a Sigma2 predicate is an extraction") {
  const SourceSequence seq = lift_successor(sigma2_source(Side::Right, "shifted-above", "1/3"), Side::Right, Ordinal(2));
  CHECK(seq.kind() == SourceSequence::Kind::Extraction);
  CHECK(seq.at(3)->descriptor().find("(real extract right 3") == 0);
  auto staged = seq.at(3)->staged();
  REQUIRE(staged);
  CHECK(staged->direction() == Direction::FromBelow);
}

TEST_CASE("lift_successor errors") {
  CHECK_THROWS_AS(lift_successor(builtin_source("1/3"), Side::Right, Ordinal(0)), Error);
  CHECK_THROWS_AS(lift_successor(builtin_source("1/3"), Side::Right, Ordinal::omega()), Error);
  try {
    lift_successor(sigma2_source(Side::Right, "shifted-above", "1/3"), Side::Right, Ordinal(1));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Incoherent);
  }
}

TEST_CASE("limit decomposition of a constant family is constant") {
  const SourcePtr fam = parse_source("(real leveled w right (members (real builtin \"1/2\")))");
  const SourceSequence seq = limit_decomposition(fam, Side::Right);
  CHECK(seq.kind() == SourceSequence::Kind::Prefixes);
  for (std::uint64_t n = 0; n < 10; ++n) CHECK(seq.at(n)->ground_truth()->rational_value() == R("1/2"));
}

TEST_CASE("limit decomposition takes running extremes of approaching members") {
  // Members 1/2 + 2^-(n+1) (right) and 1/2 - 2^-(n+1) (left).
  const SourceSequence right =
      limit_decomposition(parse_source("(real leveled w right (approach \"1/2\" above))"), Side::Right);
  const SourceSequence left =
      limit_decomposition(parse_source("(real leveled w left (approach \"1/2\" below))"), Side::Left);
  for (std::uint64_t n = 0; n < 12; ++n) {
    const Rational eps = Rational(1, oracle::Int(1) << (n + 1));
    CHECK(right.at(n)->ground_truth()->rational_value() == R("1/2") + eps);
    CHECK(left.at(n)->ground_truth()->rational_value() == R("1/2") - eps);
  }
}
