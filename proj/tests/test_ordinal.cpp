#include <doctest.h>

#include "contnum/error.hpp"
#include "contnum/ordinal.hpp"

using namespace contnum;

namespace {
Ordinal O(const char* s) { return Ordinal::parse(s); }
}  // namespace

TEST_CASE("ordinal parse and print round-trip") {
  for (const char* s : {"0", "1", "7", "w", "w*2", "w+3", "w^2", "w^2*3+w+5", "w^3+w^2"}) {
    CHECK(O(s).str() == s);
  }
  CHECK(O("omega").str() == "w");
  CHECK_THROWS_AS(O(""), Error);
  CHECK_THROWS_AS(O("w+"), Error);
  CHECK_THROWS_AS(O("x"), Error);
}

TEST_CASE("ordinal arithmetic absorbs smaller terms on the left") {
  CHECK(Ordinal(1) + Ordinal::omega() == Ordinal::omega());
  CHECK((Ordinal::omega() + Ordinal(1)).str() == "w+1");
  CHECK((Ordinal::omega() + Ordinal::omega()).str() == "w*2");
  CHECK((O("w+5") + O("w^2")).str() == "w^2");
  CHECK((O("w^2+w") + O("w*3+1")).str() == "w^2+w*4+1");
}

TEST_CASE("ordinal classification of successor and limit") {
  CHECK(O("0").is_zero());
  CHECK(O("3").is_successor());
  CHECK(O("w+1").is_successor());
  CHECK(O("w").is_limit());
  CHECK(O("w^2+w").is_limit());
  CHECK(O("w+1").predecessor() == O("w"));
  CHECK(O("w").successor() == O("w+1"));
  CHECK(O("3").finite_value() == 3u);
  CHECK_FALSE(O("w").finite_value());
}

TEST_CASE("ordinal comparison is lexicographic on normal forms") {
  CHECK(ordinal_compare(O("5"), O("w")) == OrdinalOrder::LT);
  CHECK(ordinal_compare(O("w*2"), O("w+100")) == OrdinalOrder::GT);
  CHECK(ordinal_compare(O("w^2"), O("w*100+7")) == OrdinalOrder::GT);
  CHECK(ordinal_compare(O("w^2+1"), O("w^2+1")) == OrdinalOrder::EQ);
  CHECK(ordinal_compare(O("w+1"), O("w+2")) == OrdinalOrder::LT);
  CHECK(O("w") < O("w+1"));
  CHECK(max(O("w"), O("17")) == O("w"));
}

TEST_CASE("fundamental sequences") {
  CHECK(fundamental_sequence(O("w"), 0) == O("0"));
  CHECK(fundamental_sequence(O("w"), 5) == O("5"));
  CHECK(fundamental_sequence(O("w*2"), 3) == O("w+3"));
  CHECK(fundamental_sequence(O("w^2"), 4) == O("w*4"));
  CHECK(fundamental_sequence(O("w^2+w"), 2) == O("w^2+2"));
  CHECK(fundamental_sequence(O("w^3"), 2) == O("w^2*2"));
  for (std::uint64_t n = 0; n < 20; ++n) {
    CHECK(fundamental_sequence(O("w*2"), n) < O("w*2"));
    CHECK(fundamental_sequence(O("w*2"), n) < fundamental_sequence(O("w*2"), n + 1));
  }
  CHECK_THROWS_AS(fundamental_sequence(O("w+1"), 0), Error);
  CHECK_THROWS_AS(fundamental_sequence(O("0"), 0), Error);
}
