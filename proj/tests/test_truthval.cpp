#include <doctest.h>

#include <algorithm>
#include <vector>

#include "contnum/dyadic.hpp"
#include "contnum/error.hpp"
#include "contnum/truthval.hpp"
#include "oracles.hpp"

using namespace contnum;

namespace {

UnitValue u(const char* s) { return UnitValue(Dyadic::parse(s)); }
Enclosure enc(const char* lo, const char* hi) { return Enclosure(u(lo), u(hi)); }

// All multiples of 1/16 in [lo, hi].
std::vector<Dyadic> grid(const Enclosure& e) {
  std::vector<Dyadic> out;
  for (int m = 0; m <= 16; ++m) {
    Dyadic x(m, 4);
    if (e.contains(x)) out.push_back(x);
  }
  return out;
}

Dyadic clamp01(const Dyadic& x) { return std::clamp(x, Dyadic(0), Dyadic(1)); }

// Brute-force image of a pointwise connective over grid points; exact for
// connectives monotone in each argument because the endpoints are grid points.
Enclosure brute(Connective c, const std::vector<Enclosure>& args) {
  std::vector<Dyadic> values;
  if (args.size() == 1) {
    for (const auto& x : grid(args[0])) {
      values.push_back(c == Connective::Neg ? Dyadic(1) - x : (c == Connective::Half ? x.half() : x));
    }
  } else {
    for (const auto& x : grid(args[0])) {
      for (const auto& y : grid(args[1])) {
        if (c == Connective::DotMinus) values.push_back(clamp01(x - y));
        if (c == Connective::Min) values.push_back(std::min(x, y));
        if (c == Connective::Max) values.push_back(std::max(x, y));
      }
    }
  }
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return Enclosure(UnitValue(*lo), UnitValue(*hi));
}

}  // namespace

TEST_CASE("dyadic text form is canonical") {
  CHECK(Dyadic::parse("3/8").str() == "3/8");
  CHECK(Dyadic::parse("6/16").str() == "3/8");
  CHECK(Dyadic::parse("5/2^4").str() == "5/16");
  CHECK(Dyadic::parse("-5/4").str() == "-5/4");
  CHECK(Dyadic::parse("4/2").str() == "2");
  CHECK(Dyadic::parse("0").str() == "0");
  CHECK_FALSE(Dyadic::try_parse("1/3"));
  CHECK_FALSE(Dyadic::try_parse("abc"));
  CHECK_THROWS_AS(Dyadic::parse("1/3"), Error);
}

TEST_CASE("dyadic arithmetic and ordering") {
  const Dyadic a = Dyadic::parse("3/8");
  const Dyadic b = Dyadic::parse("1/4");
  CHECK((a + b).str() == "5/8");
  CHECK((a - b).str() == "1/8");
  CHECK((a * b).str() == "3/32");
  CHECK(a.half().str() == "3/16");
  CHECK(a.scaled(3).str() == "3");
  CHECK(Dyadic::pow2(-3).str() == "1/8");
  CHECK(b < a);
  CHECK(Dyadic::parse("2/4") == Dyadic::parse("1/2"));
}

TEST_CASE("dyadic rounding to a precision") {
  const Dyadic x = Dyadic::parse("11/32");
  CHECK(x.floor_to(3).str() == "1/4");
  CHECK(x.ceil_to(3).str() == "3/8");
  CHECK(x.floor_to(5) == x);
  CHECK(x.ceil_to(5) == x);
  for (unsigned k = 0; k <= 6; ++k) {
    CHECK(x.floor_to(k) <= x);
    CHECK(x <= x.ceil_to(k));
    CHECK(x.floor_to(k).exponent() <= k);
  }
}

TEST_CASE("dyadic text agrees with the reference formatter") {
  for (int k = 0; k < 7; ++k) {
    for (int m = -20; m <= 20; ++m) {
      const Dyadic d(m, k);
      CHECK(d.str() == oracle::str(oracle::Dy{m, static_cast<unsigned>(k)}));
    }
  }
}

TEST_CASE("unit values stay inside [0, 1]") {
  CHECK_THROWS_AS(UnitValue(Dyadic(2)), Error);
  CHECK_THROWS_AS(UnitValue(Dyadic(-1)), Error);
  try {
    UnitValue(Dyadic::parse("5/4"));
    FAIL("expected Domain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Domain);
  }
}

TEST_CASE("connectives on points") {
  CHECK(neg(u("1/4")) == u("3/4"));
  CHECK(neg(UnitValue::zero()) == UnitValue::one());
  CHECK(dotminus(u("3/4"), u("1/4")) == u("1/2"));
  CHECK(dotminus(u("1/4"), u("3/4")) == UnitValue::zero());
  CHECK(half(UnitValue::one()) == u("1/2"));
  CHECK(half(u("3/8")) == u("3/16"));
}

TEST_CASE("connectives satisfy their algebraic identities") {
  for (int m = 0; m <= 16; ++m) {
    const UnitValue x(Dyadic(m, 4));
    CHECK(neg(neg(x)) == x);
    CHECK(dotminus(x, x) == UnitValue::zero());
    CHECK(dotminus(x, UnitValue::zero()) == x);
    // half(x) + half(x) = x
    CHECK(half(x).value() + half(x).value() == x.value());
  }
}

TEST_CASE("enclosure construction") {
  CHECK(Enclosure::unknown() == enc("0", "1"));
  CHECK(Enclosure::point(u("1/2")).is_point());
  CHECK(enc("1/4", "3/4").width().str() == "1/2");
  CHECK(enc("1/4", "3/4").contains(Dyadic::parse("1/2")));
  CHECK_FALSE(enc("1/4", "3/4").contains(Dyadic::parse("7/8")));
  CHECK_THROWS_AS(enc("3/4", "1/4"), Error);
}

TEST_CASE("enclosure_apply examples") {
  const Enclosure a = enc("1/4", "1/2");
  const Enclosure b = enc("1/8", "1/4");
  const std::vector<Enclosure> ab{a, b};
  CHECK(enclosure_apply(Connective::DotMinus, ab) == enc("0", "3/8"));
  CHECK(enclosure_apply(Connective::Neg, std::vector<Enclosure>{a}) == enc("1/2", "3/4"));
  CHECK(enclosure_apply(Connective::Half, std::vector<Enclosure>{a}) == enc("1/8", "1/4"));
  CHECK(enclosure_apply(Connective::Min, ab) == enc("1/8", "1/4"));
  CHECK(enclosure_apply(Connective::Max, ab) == enc("1/4", "1/2"));
  const std::vector<Enclosure> three{a, b, enc("0", "1/16")};
  CHECK(enclosure_apply(Connective::Min, three) == enc("0", "1/16"));
  CHECK(enclosure_apply(Connective::Max, three) == enc("1/4", "1/2"));
}

TEST_CASE("enclosure_apply arity is checked") {
  const Enclosure a = enc("1/4", "1/2");
  CHECK_THROWS_AS(enclosure_apply(Connective::DotMinus, std::vector<Enclosure>{a}), Error);
  CHECK_THROWS_AS(enclosure_apply(Connective::Neg, std::vector<Enclosure>{a, a}), Error);
  CHECK_THROWS_AS(enclosure_apply(Connective::Min, std::vector<Enclosure>{}), Error);
}

TEST_CASE("enclosure_apply matches the brute-force image on a grid") {
  std::vector<Enclosure> boxes;
  for (int lo = 0; lo <= 16; lo += 3) {
    for (int hi = lo; hi <= 16; hi += 5) boxes.push_back(Enclosure(UnitValue(Dyadic(lo, 4)), UnitValue(Dyadic(hi, 4))));
  }
  for (const auto& x : boxes) {
    for (Connective c : {Connective::Neg, Connective::Half}) {
      CHECK(enclosure_apply(c, std::vector<Enclosure>{x}) == brute(c, {x}));
    }
    for (const auto& y : boxes) {
      for (Connective c : {Connective::DotMinus, Connective::Min, Connective::Max}) {
        CHECK(enclosure_apply(c, std::vector<Enclosure>{x, y}) == brute(c, {x, y}));
      }
    }
  }
}
