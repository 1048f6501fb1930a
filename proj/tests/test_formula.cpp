#include <doctest.h>

#include <string>
#include <vector>

#include "contnum/error.hpp"
#include "contnum/formula.hpp"
#include "contnum/numerals.hpp"
#include "oracles.hpp"

using namespace contnum;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_formula(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << text);
  return ErrorCode::Io;
}

const char* const kZero = "(inf x0 (dist x0 x0))";

}  // namespace

TEST_CASE("formula codes round-trip") {
  const std::vector<std::string> codes = {
      "(dist x0 x1)",
      "(neg (dist x0 x0))",
      "(half (dotminus (dist x0 x1) (dist x1 x2)))",
      "(sup x0 (inf x1 (dist x0 x1)))",
      "(cinf (list (inf x0 (dist x0 x0)) (half (neg (inf x0 (dist x0 x0))))))",
      "(csup (gen dyadic-lower-cut \"1/3\"))",
      "(cinf (gen dyadic-upper-cut \"sqrt-half\"))",
      "(csup (gen successor \"(numeral left 2 (real builtin \\\"1/3\\\"))\"))",
  };
  for (const auto& c : codes) {
    const Formula f = parse_formula(c);
    CHECK(serialize(f) == c);
    CHECK(parse_formula(serialize(f)) == f);
  }
}

TEST_CASE("whitespace and layout do not matter") {
  CHECK(serialize(parse_formula("  ( sup  x0\n (dist   x0 x0) ) ")) == "(sup x0 (dist x0 x0))");
}

TEST_CASE("malformed codes report Syntax with a position") {
  for (const char* bad : {"(dist x0", "(dist x0 y1)", "(neg)", "(dotminus (dist x0 x0))", "(inf x0)", "(foo x0)",
                          "(cinf (list))", "(cinf (gen dyadic-upper-cut 3))", "dist", "(dist x0 x0) extra"}) {
    CAPTURE(bad);
    try {
      parse_formula(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Syntax);
      CHECK(e.position().has_value());
    }
  }
  try {
    parse_formula("(neg (dist x0 q))");
  } catch (const Error& e) {
    CHECK(e.position() == 14u);
  }
}

TEST_CASE("unknown generators and bad generator parameters") {
  CHECK(code_of("(cinf (gen no-such-generator \"\"))") == ErrorCode::UnknownGenerator);
  CHECK(code_of("(cinf (gen dyadic-upper-cut \"not a real\"))") != ErrorCode::UnknownGenerator);
  CHECK(code_of("(cinf (gen successor \"(numeral\"))") == ErrorCode::Syntax);
}

TEST_CASE("structural equality") {
  CHECK(Formula::dist(0, 1) == Formula::dist(0, 1));
  CHECK_FALSE(Formula::dist(0, 1) == Formula::dist(1, 0));
  CHECK(parse_formula(kZero) == Formula::inf(0, Formula::dist(0, 0)));
  CHECK(FamilySpec::generated("dyadic-upper-cut", "1/3") == FamilySpec::generated("dyadic-upper-cut", "1/3"));
  CHECK_FALSE(FamilySpec::generated("dyadic-upper-cut", "1/3") == FamilySpec::generated("dyadic-lower-cut", "1/3"));
}

TEST_CASE("classification of finitary and explicit infinitary formulas") {
  CHECK(classify(parse_formula("(dist x0 x1)")) == Rank::finitary());
  CHECK(classify(parse_formula(kZero)).str() == "Finitary");
  const std::string sig1 = std::string("(cinf (list ") + kZero + " (neg " + kZero + ")))";
  const std::string pi1 = std::string("(csup (list ") + kZero + "))";
  CHECK(classify(parse_formula(sig1)) == Rank::sigma(1));
  CHECK(classify(parse_formula(pi1)) == Rank::pi(1));
  CHECK(classify(parse_formula("(neg " + sig1 + ")")) == Rank::pi(1));
  CHECK(classify(parse_formula("(half " + pi1 + ")")) == Rank::pi(1));
  CHECK(classify(parse_formula("(sup x3 " + sig1 + ")")) == Rank::sigma(1));
  CHECK(classify(parse_formula("(cinf (list " + pi1 + "))")) == Rank::sigma(2));
  CHECK(classify(parse_formula("(csup (list " + sig1 + "))")) == Rank::pi(2));
  // A Sigma_1 member counts as Pi_2 under CInf; there is no collapse.
  CHECK(classify(parse_formula("(cinf (list " + sig1 + " " + kZero + "))")) == Rank::sigma(3));
  CHECK(classify(parse_formula("(cinf (list (csup (list " + sig1 + "))))")) == Rank::sigma(3));
}

TEST_CASE("classification of generated families") {
  CHECK(classify(parse_formula("(cinf (gen dyadic-upper-cut \"1/3\"))")) == Rank::sigma(1));
  CHECK(classify(parse_formula("(csup (gen dyadic-lower-cut \"1/3\"))")) == Rank::pi(1));
}

TEST_CASE("dotminus with an infinitary operand is outside the normal fragment") {
  const std::string sig1 = std::string("(cinf (list ") + kZero + "))";
  try {
    classify(parse_formula("(dotminus " + sig1 + " " + kZero + ")"));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormal);
  }
}

TEST_CASE("rank levels in the cumulative hierarchy") {
  CHECK(sigma_level(Rank::finitary()) == Ordinal(0));
  CHECK(pi_level(Rank::finitary()) == Ordinal(0));
  CHECK(sigma_level(Rank::sigma(2)) == Ordinal(2));
  CHECK(pi_level(Rank::sigma(2)) == Ordinal(3));
  CHECK(sigma_level(Rank::pi(Ordinal::omega())) == Ordinal::parse("w+1"));
  CHECK(Rank::sigma(Ordinal::omega()).str() == "Sigma_w");
}

TEST_CASE("free variables") {
  CHECK(free_vars(parse_formula("(dist x0 x1)")) == std::set<unsigned>{0, 1});
  CHECK(free_vars(parse_formula("(inf x0 (dist x0 x1))")) == std::set<unsigned>{1});
  CHECK(free_vars(parse_formula("(dotminus (inf x0 (dist x0 x2)) (dist x0 x0))")) == std::set<unsigned>{0, 2});
  CHECK(free_vars(parse_formula("(sup x0 (inf x0 (dist x0 x0)))")).empty());
  CHECK(free_vars(parse_formula("(cinf (list (dist x4 x4) (inf x1 (dist x1 x0))))")) == std::set<unsigned>{0, 4});
  CHECK(is_sentence(parse_formula("(cinf (gen dyadic-upper-cut \"1/3\"))")));
  CHECK_FALSE(is_sentence(parse_formula("(half (dist x0 x0))")));
}

TEST_CASE("explicit family members and exhaustion") {
  const FamilySpec fam = FamilySpec::list({Formula::dist(0, 0), Formula::dist(1, 1)});
  CHECK(family_member(fam, 1) == Formula::dist(1, 1));
  try {
    family_member(fam, 2);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ExhaustedFamily);
  }
}

TEST_CASE("generated cut families enumerate the numerals of the cut") {
  // Reference: scan the breadth-first candidates, keep the latest one strictly
  // above 1/3 (or below, for the lower cut); before the first hit the member is
  // the numeral of the end of the unit interval.
  const FamilySpec upper = FamilySpec::generated("dyadic-upper-cut", "1/3");
  const FamilySpec lower = FamilySpec::generated("dyadic-lower-cut", "1/3");
  oracle::Dy last_up{1, 0};
  oracle::Dy last_lo{0, 0};
  for (std::size_t n = 0; n < 40; ++n) {
    const oracle::Dy c = oracle::candidate(n);
    if (oracle::cmp_frac(c, 1, 3) > 0) last_up = c;
    if (oracle::cmp_frac(c, 1, 3) < 0) last_lo = c;
    const Dyadic up = Dyadic::parse(oracle::str(last_up));
    const Dyadic lo = Dyadic::parse(oracle::str(last_lo));
    CHECK(family_member(upper, n) == dyadic_numeral(up, NumeralFlavor::Existential));
    CHECK(family_member(lower, n) == dyadic_numeral(lo, NumeralFlavor::Universal));
  }
}

TEST_CASE("the lower cut of 0 is padded with the numeral of 0") {
  const FamilySpec lower = FamilySpec::generated("dyadic-lower-cut", "0");
  for (std::size_t n = 0; n < 50; ++n) CHECK(family_member(lower, n) == parse_formula("(sup x0 (dist x0 x0))"));
}

TEST_CASE("generator registry") {
  const auto names = GeneratorRegistry::instance().names();
  for (const char* n : {"dyadic-upper-cut", "dyadic-lower-cut", "successor", "limit", "interleave"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  CHECK(GeneratorRegistry::instance().find("nope") == nullptr);
  CHECK_THROWS_AS(GeneratorRegistry::instance().get("nope"), Error);
}
