#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contnum {

/// Ordinal below omega^omega in Cantor normal form:
/// sum of omega^e * c with strictly decreasing exponents and positive
/// coefficients. Text form: "0", "3", "w", "w+1", "w*2+5", "w^2*3+w+7".
class Ordinal {
 public:
  struct Term {
    std::uint32_t exponent;
    std::uint64_t coefficient;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT(google-explicit-constructor)

  static Ordinal omega() { return omega_power(1); }
  static Ordinal omega_power(std::uint32_t exponent, std::uint64_t coefficient = 1);
  static Ordinal from_terms(std::vector<Term> terms);
  static Ordinal parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0); }
  bool is_successor() const { return !terms_.empty() && terms_.back().exponent == 0; }
  bool is_limit() const { return !terms_.empty() && terms_.back().exponent > 0; }
  std::optional<std::uint64_t> finite_value() const;

  Ordinal successor() const;
  /// Only defined for successor ordinals.
  Ordinal predecessor() const;

  std::string str() const;

  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal&, const Ordinal&) = default;
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Ordinal& o);

const Ordinal& max(const Ordinal& a, const Ordinal& b);

/// Canonical cofinal sequence of a limit: for alpha = d + w^e, alpha[n] =
/// d + w^(e-1) * n (so w[n] = n, (w*2)[n] = w + n, (w^2)[n] = w * n).
/// Throws Error(Domain) unless alpha is a limit.
Ordinal fundamental_sequence(const Ordinal& alpha, std::uint64_t n);

enum class OrdinalOrder { LT, EQ, GT };

/// Lexicographic comparison of Cantor normal forms.
OrdinalOrder ordinal_compare(const Ordinal& a, const Ordinal& b);

}  // namespace contnum
