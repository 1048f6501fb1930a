#include "contnum/structures.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "contnum/error.hpp"

namespace contnum {

const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::Diagonal: return "diagonal";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::Triangle: return "triangle";
    case Axiom::Bound: return "bound";
  }
  return "?";
}

std::string Violation::str() const {
  const auto s = [](std::size_t v) { return std::to_string(v); };
  switch (axiom) {
    case Axiom::Diagonal: return "diagonal: d(" + s(i) + "," + s(i) + ") != 0";
    case Axiom::Symmetry: return "symmetry: d(" + s(i) + "," + s(j) + ") != d(" + s(j) + "," + s(i) + ")";
    case Axiom::Triangle:
      return "triangle: d(" + s(i) + "," + s(k) + ") > d(" + s(i) + "," + s(j) + ") + d(" + s(j) + "," + s(k) + ")";
    case Axiom::Bound: return "bound: d(" + s(i) + "," + s(j) + ") outside [0, 1]";
  }
  return "?";
}

ValidationReport validate(const FiniteMetricSpace& space) {
  const std::size_t n = space.size;
  if (n == 0) throw Error(ErrorCode::Domain, "metric space must have at least one point");
  if (space.dist.size() != n) {
    throw Error(ErrorCode::Domain, "distance matrix has " + std::to_string(space.dist.size()) + " rows, size is " +
                                       std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (space.dist[i].size() != n) {
      throw Error(ErrorCode::Domain, "row " + std::to_string(i) + " has " + std::to_string(space.dist[i].size()) +
                                         " entries, size is " + std::to_string(n));
    }
  }
  ValidationReport report;
  const Dyadic zero(0);
  const Dyadic one(1);
  for (std::size_t i = 0; i < n; ++i) {
    if (space.d(i, i) != zero) report.violations.push_back({Axiom::Diagonal, i, i, 0});
    for (std::size_t j = 0; j < n; ++j) {
      if (space.d(i, j) < zero || space.d(i, j) > one) report.violations.push_back({Axiom::Bound, i, j, 0});
      if (i < j && space.d(i, j) != space.d(j, i)) report.violations.push_back({Axiom::Symmetry, i, j, 0});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (space.d(i, k) > space.d(i, j) + space.d(j, k)) report.violations.push_back({Axiom::Triangle, i, j, k});
      }
    }
  }
  return report;
}

void metric_closure(FiniteMetricSpace& space) {
  const std::size_t n = space.size;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Dyadic via = space.dist[i][k] + space.dist[k][j];
        if (via < space.dist[i][j]) space.dist[i][j] = std::move(via);
      }
    }
  }
}

namespace {

FiniteMetricSpace from_function(std::string name, std::size_t n, auto&& d) {
  FiniteMetricSpace s{std::move(name), n, std::vector<std::vector<Dyadic>>(n, std::vector<Dyadic>(n))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s.dist[i][j] = i == j ? Dyadic(0) : d(i, j);
  }
  return s;
}

}  // namespace

std::vector<FiniteMetricSpace> builtin_suite(std::uint64_t seed) {
  std::vector<FiniteMetricSpace> suite;
  suite.push_back(from_function("singleton", 1, [](std::size_t, std::size_t) { return Dyadic(0); }));
  suite.push_back(from_function("two-point", 2, [](std::size_t, std::size_t) { return Dyadic(1).half(); }));

  const std::vector<Dyadic> positions = {Dyadic(0), Dyadic::parse("1/8"), Dyadic::parse("3/8"), Dyadic::parse("1/2"),
                                         Dyadic(1)};
  suite.push_back(from_function("path-5", positions.size(), [&](std::size_t i, std::size_t j) {
    return positions[i] < positions[j] ? positions[j] - positions[i] : positions[i] - positions[j];
  }));

  std::mt19937_64 rng(seed);
  const std::size_t n = 16;
  auto random = from_function("random-16", n, [](std::size_t, std::size_t) { return Dyadic(0); });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Dyadic v(BigInt(1 + rng() % 4), 2);  // 1/4, 1/2, 3/4 or 1
      random.dist[i][j] = v;
      random.dist[j][i] = v;
    }
  }
  metric_closure(random);
  suite.push_back(std::move(random));

  // d(i, j) depends only on the highest differing bit of i and j.
  suite.push_back(from_function("ultrametric-8", 8, [](std::size_t i, std::size_t j) {
    const std::size_t x = i ^ j;
    if (x >= 4) return Dyadic(1);
    if (x >= 2) return Dyadic(1).half();
    return Dyadic::parse("1/4");
  }));
  return suite;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Syntax, "line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

FiniteMetricSpace load_space(std::string_view text) {
  std::optional<std::string> name;
  std::optional<std::size_t> size;
  std::optional<std::vector<Dyadic>> entries;
  std::string current;  // field whose value may continue on following lines
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::string value;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      current = trim(std::string_view(line).substr(0, colon));
      value = trim(std::string_view(line).substr(colon + 1));
      if (current == "name") {
        if (name) bad(line_no, "duplicate field 'name'");
        if (value.empty()) bad(line_no, "empty name");
        name = value;
        continue;
      }
      if (current == "size") {
        if (size) bad(line_no, "duplicate field 'size'");
        if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 6) {
          bad(line_no, "size must be a positive integer");
        }
        size = std::stoul(value);
        if (*size == 0) bad(line_no, "size must be a positive integer");
        continue;
      }
      if (current != "dist") bad(line_no, "unknown field '" + current + "'");
      if (entries) bad(line_no, "duplicate field 'dist'");
      entries.emplace();
    } else {
      if (current != "dist") bad(line_no, "expected 'field: value'");
      value = line;
    }
    std::istringstream tokens(value);
    std::string tok;
    while (tokens >> tok) {
      auto d = Dyadic::try_parse(tok);
      if (!d) bad(line_no, "'" + tok + "' is not a dyadic literal");
      entries->push_back(*d);
    }
  }
  if (!name) bad(line_no, "missing field 'name'");
  if (!size) bad(line_no, "missing field 'size'");
  if (!entries) bad(line_no, "missing field 'dist'");

  const std::size_t n = *size;
  FiniteMetricSpace space{*name, n, std::vector<std::vector<Dyadic>>(n, std::vector<Dyadic>(n))};
  if (entries->size() == n * (n + 1) / 2) {
    std::size_t at = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        space.dist[i][j] = (*entries)[at];
        space.dist[j][i] = (*entries)[at];
        ++at;
      }
    }
  } else if (entries->size() == n * n) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) space.dist[i][j] = (*entries)[i * n + j];
    }
  } else {
    throw Error(ErrorCode::Syntax, "dist has " + std::to_string(entries->size()) + " entries; size " +
                                       std::to_string(n) + " needs " + std::to_string(n * (n + 1) / 2) +
                                       " (lower triangle) or " + std::to_string(n * n) + " (full matrix)");
  }
  const ValidationReport report = validate(space);
  if (!report.ok()) {
    throw Error(ErrorCode::Validation, "space '" + space.name + "' is not a metric space: " +
                                           report.violations.front().str() +
                                           (report.violations.size() > 1
                                                ? " (and " + std::to_string(report.violations.size() - 1) + " more)"
                                                : ""));
  }
  return space;
}

FiniteMetricSpace load_space_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_space(buf.str());
}

std::string serialize_space(const FiniteMetricSpace& space) {
  std::ostringstream out;
  out << "name: " << space.name << "\n";
  out << "size: " << space.size << "\n";
  out << "dist:\n";
  for (std::size_t i = 0; i < space.size; ++i) {
    for (std::size_t j = 0; j <= i; ++j) out << (j ? " " : "") << space.d(i, j).str();
    out << "\n";
  }
  return out.str();
}

}  // namespace contnum
