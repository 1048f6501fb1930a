#pragma once

// Reference computations used as expected values. Each one is written
// directly from the definitions with plain integer arithmetic and does not
// call into the library under test.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Int = boost::multiprecision::cpp_int;

/// A dyadic m / 2^k held as a plain pair, reduced.
struct Dy {
  Int m;
  unsigned k = 0;
};

inline Dy reduce(Int m, unsigned k) {
  while (k > 0 && m % 2 == 0) {
    m /= 2;
    --k;
  }
  return {m, k};
}

/// Sign of a/2^ka - b/2^kb.
inline int cmp(const Dy& a, const Dy& b) {
  const unsigned k = std::max(a.k, b.k);
  const Int x = a.m << (k - a.k);
  const Int y = b.m << (k - b.k);
  return x < y ? -1 : (x > y ? 1 : 0);
}

inline std::string str(const Dy& d) {
  const Dy r = reduce(d.m, d.k);
  if (r.k == 0) return r.m.str();
  return r.m.str() + "/" + (Int(1) << r.k).str();
}

/// i-th dyadic of (0, 1) breadth first: 1/2, 1/4, 3/4, 1/8, ...
inline Dy candidate(std::uint64_t i) {
  unsigned k = 1;
  std::uint64_t level = 1;  // number of candidates with denominator 2^k
  while (i >= level) {
    i -= level;
    ++k;
    level *= 2;
  }
  return reduce(Int(2 * i + 1), k);
}

/// Sign of m/2^k - p/q for q > 0.
inline int cmp_frac(const Dy& d, long long p, long long q) {
  const Int lhs = d.m * q;
  const Int rhs = Int(p) << d.k;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Sign of m/2^k - sqrt(1/2), by squaring: m^2 * 2 vs 4^k.
inline int cmp_sqrt_half(const Dy& d) {
  if (d.m <= 0) return -1;
  const Int lhs = 2 * d.m * d.m;
  const Int rhs = Int(1) << (2 * d.k);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Sign of x - (sqrt 5 - 1)/2 with x = m/2^k, via x^2 + x - 1.
inline int cmp_phi_inverse(const Dy& d) {
  if (d.m <= 0) return -1;
  // 2^2k (x^2 + x - 1) = m^2 + m 2^k - 4^k
  const Int v = d.m * d.m + (d.m << d.k) - (Int(1) << (2 * d.k));
  return v < 0 ? -1 : (v > 0 ? 1 : 0);
}

/// Sign of x - cbrt(1/2), via 2 m^3 vs 8^k.
inline int cmp_cbrt_half(const Dy& d) {
  if (d.m <= 0) return -1;
  const Int lhs = 2 * d.m * d.m * d.m;
  const Int rhs = Int(1) << (3 * d.k);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Truth value of the dyadic numeral code built by the halving/negation
/// recursion, evaluated symbolically: the code for r is a chain of "neg" and
/// "half" around a zero-valued base, so its value is recomputed by walking
/// the chain from the inside.
inline Dy chain_value(const std::vector<std::string>& ops_outside_in) {
  Dy v{0, 0};
  for (auto it = ops_outside_in.rbegin(); it != ops_outside_in.rend(); ++it) {
    if (*it == "neg") {
      v = reduce((Int(1) << v.k) - v.m, v.k);
    } else {
      v = reduce(v.m, v.k + 1);
    }
  }
  return v;
}

/// Cantor pairing and its inverse, by search.
inline std::uint64_t pair(std::uint64_t x, std::uint64_t y) { return (x + y) * (x + y + 1) / 2 + y; }
inline std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t n) {
  std::uint64_t s = 0;
  while ((s + 1) * (s + 2) / 2 <= n) ++s;
  const std::uint64_t y = n - s * (s + 1) / 2;
  return {s - y, y};
}

/// A rational p/q (q > 0) as a plain pair.
struct Q {
  Int p;
  Int q = 1;
};

inline Q normalize(Int p, Int q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const Int g = boost::multiprecision::gcd(p < 0 ? Int(-p) : p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  return {p, q};
}

inline bool is_power_of_two(const Int& v) { return v > 0 && (v & (v - 1)) == 0; }

/// The fixed enumeration of the rationals. Even n = 2m: m + 1 = 2^a (2b + 1),
/// integer part 0, -1, 1, -2, 2, ... (indexed by a), fractional part 0 for
/// b = 0 and otherwise the (b-1)-th breadth-first dyadic of (0, 1). Odd
/// n = 2m + 1: the m-th entry of +x, -x over the Calkin-Wilf sequence with
/// the dyadics removed.
inline Q enumerate(std::uint64_t n) {
  if (n % 2 == 0) {
    std::uint64_t v = n / 2 + 1;
    std::uint64_t a = 0;
    while (v % 2 == 0) {
      v /= 2;
      ++a;
    }
    const std::uint64_t b = (v - 1) / 2;
    const long long whole = a % 2 == 0 ? static_cast<long long>(a / 2) : -static_cast<long long>((a + 1) / 2);
    if (b == 0) return {Int(whole), 1};
    const Dy f = candidate(b - 1);
    const Int den = Int(1) << f.k;
    return normalize(Int(whole) * den + f.m, den);
  }
  const std::uint64_t m = (n - 1) / 2;
  std::uint64_t seen = 0;
  Int p = 1, q = 1;  // Calkin-Wilf: x -> 1 / (2 floor(x) - x + 1)
  for (;;) {
    if (!is_power_of_two(q)) {
      if (seen == m / 2) return m % 2 == 0 ? Q{p, q} : Q{-p, q};
      ++seen;
    }
    const Int fl = p / q;
    const Int np = q;
    const Int nq = 2 * fl * q - p + q;
    p = np;
    q = nq;
  }
}

inline int cmp(const Q& a, const Q& b) {
  const Int l = a.p * b.q;
  const Int r = b.p * a.q;
  return l < r ? -1 : (l > r ? 1 : 0);
}

inline std::string str(const Q& v) { return v.q == 1 ? v.p.str() : v.p.str() + "/" + v.q.str(); }

}  // namespace oracle
