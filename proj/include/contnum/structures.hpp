#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "contnum/dyadic.hpp"

namespace contnum {

/// Finite metric space with dyadic distances bounded by 1.
struct FiniteMetricSpace {
  std::string name;
  std::size_t size = 0;
  std::vector<std::vector<Dyadic>> dist;

  const Dyadic& d(std::size_t i, std::size_t j) const { return dist[i][j]; }
  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;
};

enum class Axiom { Diagonal, Symmetry, Triangle, Bound };

const char* to_string(Axiom a);

struct Violation {
  Axiom axiom;
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;  // triangle only: d(i, k) > d(i, j) + d(j, k)
  std::string str() const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every axiom on every index tuple. Throws Error(Domain) when the
/// matrix shape does not match the declared size.
ValidationReport validate(const FiniteMetricSpace& space);

/// Shortest-path closure: the largest metric below the given symmetric
/// matrix. Used to repair random matrices.
void metric_closure(FiniteMetricSpace& space);

/// Singleton, two points at 1/2, a five-point path, a sixteen-point random
/// space with distances in {1/4, 1/2, 3/4, 1} (repaired), and an eight-point
/// ultrametric. Deterministic in the seed.
std::vector<FiniteMetricSpace> builtin_suite(std::uint64_t seed = 1);

/// Structure file:
///   # comment
///   name: two-point
///   size: 2
///   dist: 0 1/2 0
/// The dist entries are the lower triangle including the diagonal, row by
/// row (n(n+1)/2 entries); a full n*n matrix is also accepted so that
/// asymmetric input can be reported. Parse failures throw Error(Syntax),
/// axiom failures Error(Validation).
FiniteMetricSpace load_space(std::string_view text);
FiniteMetricSpace load_space_file(const std::filesystem::path& path);
std::string serialize_space(const FiniteMetricSpace& space);

}  // namespace contnum
