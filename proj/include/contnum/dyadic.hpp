#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace contnum {

using BigInt = boost::multiprecision::cpp_int;

/// Exact binary rational numerator / 2^exponent.
///
/// Always held in canonical form: the numerator is odd or the exponent is
/// zero, so structural equality coincides with numeric equality. The text
/// form is a plain fraction with a power-of-two denominator ("3/8", "-5/4",
/// "1"); parse() additionally accepts "m/2^k".
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long value) : numerator_(value) {}  // NOLINT(google-explicit-constructor)
  Dyadic(BigInt numerator, std::uint32_t exponent);

  /// 2^k for any integer k.
  static Dyadic pow2(int k);
  static Dyadic parse(std::string_view text);
  static std::optional<Dyadic> try_parse(std::string_view text);

  const BigInt& numerator() const { return numerator_; }
  std::uint32_t exponent() const { return exponent_; }
  int sign() const { return numerator_.sign(); }
  bool is_integer() const { return exponent_ == 0; }

  std::string str() const;
  double to_double() const;

  Dyadic operator-() const;
  Dyadic half() const;
  /// this * 2^k.
  Dyadic scaled(int k) const;

  /// Largest / smallest dyadic with exponent at most `precision` that is
  /// below / above this value.
  Dyadic floor_to(std::uint32_t precision) const;
  Dyadic ceil_to(std::uint32_t precision) const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  void normalize();

  BigInt numerator_{0};
  std::uint32_t exponent_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Dyadic& d);

inline const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
inline const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

}  // namespace contnum
