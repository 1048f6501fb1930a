#include <doctest.h>

#include <string>

#include "contnum/error.hpp"
#include "contnum/structures.hpp"

using namespace contnum;

namespace {

const std::string kData = CONTNUM_TEST_DATA;

// Independent axiom check over all index tuples.
bool is_metric(const FiniteMetricSpace& s) {
  for (std::size_t i = 0; i < s.size; ++i) {
    if (s.d(i, i) != Dyadic(0)) return false;
    for (std::size_t j = 0; j < s.size; ++j) {
      if (s.d(i, j) != s.d(j, i)) return false;
      if (s.d(i, j) < Dyadic(0) || s.d(i, j) > Dyadic(1)) return false;
      for (std::size_t k = 0; k < s.size; ++k) {
        if (s.d(i, k) > s.d(i, j) + s.d(j, k)) return false;
      }
    }
  }
  return true;
}

FiniteMetricSpace square(std::string name, std::vector<std::vector<const char*>> rows) {
  FiniteMetricSpace s;
  s.name = std::move(name);
  s.size = rows.size();
  for (const auto& r : rows) {
    std::vector<Dyadic> row;
    for (const char* v : r) row.push_back(Dyadic::parse(v));
    s.dist.push_back(std::move(row));
  }
  return s;
}

ErrorCode load_error(const std::string& text) {
  try {
    load_space(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("accepted: " << text);
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("validate reports the triangle violation at (0, 1, 2)") {
  const auto s = square("broken", {{"0", "1/8", "1"}, {"1/8", "0", "1/8"}, {"1", "1/8", "0"}});
  const ValidationReport r = validate(s);
  CHECK_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.violations) {
    CHECK(v.axiom == Axiom::Triangle);
    if (v.i == 0 && v.j == 1 && v.k == 2) found = true;
  }
  CHECK(found);
  CHECK(r.violations.front().str().find("triangle") == 0);
}

TEST_CASE("validate reports each axiom") {
  CHECK(validate(square("a", {{"0", "1/2"}, {"1/4", "0"}})).violations.at(0).axiom == Axiom::Symmetry);
  CHECK(validate(square("b", {{"1/2", "0"}, {"0", "0"}})).violations.at(0).axiom == Axiom::Diagonal);
  CHECK(validate(square("c", {{"0", "2"}, {"2", "0"}})).violations.at(0).axiom == Axiom::Bound);
  CHECK(validate(square("d", {{"0", "1/2"}, {"1/2", "0"}})).ok());
  FiniteMetricSpace wrong = square("e", {{"0", "1/2"}, {"1/2", "0"}});
  wrong.size = 3;
  CHECK_THROWS_AS(validate(wrong), Error);
}

TEST_CASE("metric closure repairs a matrix to the largest metric below it") {
  auto s = square("r", {{"0", "1", "1/4"}, {"1", "0", "1/4"}, {"1/4", "1/4", "0"}});
  metric_closure(s);
  CHECK(is_metric(s));
  CHECK(s.d(0, 1) == Dyadic::parse("1/2"));
  CHECK(s.d(0, 2) == Dyadic::parse("1/4"));
}

TEST_CASE("builtin suite") {
  const auto suite = builtin_suite();
  REQUIRE(suite.size() == 5);
  const std::vector<std::pair<std::string, std::size_t>> shape = {
      {"singleton", 1}, {"two-point", 2}, {"path-5", 5}, {"random-16", 16}, {"ultrametric-8", 8}};
  for (std::size_t i = 0; i < suite.size(); ++i) {
    CHECK(suite[i].name == shape[i].first);
    CHECK(suite[i].size == shape[i].second);
    CHECK(is_metric(suite[i]));
    CHECK(validate(suite[i]).ok());
  }
  CHECK(suite[1].d(0, 1) == Dyadic::parse("1/2"));
  CHECK(suite[2].d(0, 4) == Dyadic(1));
  CHECK(suite[2].d(1, 2) == Dyadic::parse("1/4"));
  // Ultrametric inequality d(i, k) <= max(d(i, j), d(j, k)).
  const auto& u = suite[4];
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      for (std::size_t k = 0; k < 8; ++k) CHECK(u.d(i, k) <= std::max(u.d(i, j), u.d(j, k)));
    }
  }
}

TEST_CASE("builtin suite is deterministic in the seed") {
  CHECK(builtin_suite(1) == builtin_suite(1));
  CHECK(builtin_suite(7) == builtin_suite(7));
  CHECK_FALSE(builtin_suite(1)[3] == builtin_suite(2)[3]);
  for (std::uint64_t seed : {2u, 3u, 99u}) CHECK(is_metric(builtin_suite(seed)[3]));
}

TEST_CASE("load a structure file") {
  const auto s = load_space_file(kData + "/three-point.txt");
  CHECK(s.name == "three-point");
  REQUIRE(s.size == 3);
  CHECK(s.d(0, 2) == Dyadic::parse("3/4"));
  CHECK(s.d(2, 1) == Dyadic::parse("1/2"));
  CHECK(s.d(1, 2) == Dyadic::parse("1/2"));
}

TEST_CASE("serialize and load round-trip") {
  for (const auto& s : builtin_suite(5)) {
    const std::string text = serialize_space(s);
    CHECK(load_space(text) == s);
    CHECK(serialize_space(load_space(text)) == text);
  }
}

TEST_CASE("a full square matrix is accepted") {
  const auto s = load_space("name: sq\nsize: 2\ndist: 0 1/2 1/2 0\n");
  CHECK(s.d(0, 1) == Dyadic::parse("1/2"));
}

TEST_CASE("load errors carry distinct codes") {
  auto file_code = [](const std::string& name) {
    try {
      load_space_file(kData + "/" + name);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;  // not reached for the files below
  };
  CHECK(file_code("asymmetric.txt") == ErrorCode::Validation);
  CHECK(file_code("triangle-violation.txt") == ErrorCode::Validation);
  CHECK(file_code("garbled.txt") == ErrorCode::Syntax);
  try {
    load_space_file(kData + "/missing.txt");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
  CHECK(load_error("size: 2\ndist: 0 1/2\n") == ErrorCode::Syntax);
  CHECK(load_error("name: x\nsize: 2\ndist: 0 1/3 0\n") == ErrorCode::Syntax);
  CHECK(load_error("name: x\nsize: 1\nweird: 3\ndist: 0\n") == ErrorCode::Syntax);
}
