#pragma once

#include <compare>
#include <iosfwd>
#include <span>
#include <string>

#include "contnum/dyadic.hpp"

namespace contnum {

/// A truth value: an exact dyadic in [0, 1].
class UnitValue {
 public:
  UnitValue() = default;
  explicit UnitValue(Dyadic value);

  static UnitValue zero() { return UnitValue(); }
  static UnitValue one() { return UnitValue(Dyadic(1)); }

  const Dyadic& value() const { return value_; }
  std::string str() const { return value_.str(); }

  friend bool operator==(const UnitValue&, const UnitValue&) = default;
  friend std::strong_ordering operator<=>(const UnitValue& a, const UnitValue& b) {
    return a.value_ <=> b.value_;
  }

 private:
  Dyadic value_;
};

std::ostream& operator<<(std::ostream& os, const UnitValue& v);

// Connective semantics.
UnitValue neg(const UnitValue& x);                          // 1 - x
UnitValue dotminus(const UnitValue& x, const UnitValue& y);  // max(x - y, 0)
UnitValue half(const UnitValue& x);                          // x / 2

/// Closed interval [lo, hi] inside [0, 1] known to contain a truth value.
class Enclosure {
 public:
  Enclosure() : lo_(UnitValue::zero()), hi_(UnitValue::one()) {}
  Enclosure(UnitValue lo, UnitValue hi);

  static Enclosure point(const UnitValue& v) { return Enclosure(v, v); }
  static Enclosure unknown() { return Enclosure(); }

  const UnitValue& lo() const { return lo_; }
  const UnitValue& hi() const { return hi_; }
  Dyadic width() const { return hi_.value() - lo_.value(); }
  bool is_point() const { return lo_ == hi_; }
  bool contains(const Dyadic& x) const { return lo_.value() <= x && x <= hi_.value(); }

  std::string str() const;

  friend bool operator==(const Enclosure&, const Enclosure&) = default;

 private:
  UnitValue lo_;
  UnitValue hi_;
};

std::ostream& operator<<(std::ostream& os, const Enclosure& e);

enum class Connective { Neg, DotMinus, Half, Min, Max };

/// Monotone interval extension of a connective. Neg and Half take one
/// argument, DotMinus two, Min and Max one or more.
Enclosure enclosure_apply(Connective conn, std::span<const Enclosure> args);

}  // namespace contnum
