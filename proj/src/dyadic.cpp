#include "contnum/dyadic.hpp"

#include <cctype>
#include <ostream>

#include "contnum/error.hpp"

namespace contnum {

namespace mp = boost::multiprecision;

Dyadic::Dyadic(BigInt numerator, std::uint32_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  const BigInt magnitude = mp::abs(numerator_);
  const auto tz = static_cast<std::uint32_t>(mp::lsb(magnitude));
  const std::uint32_t shift = tz < exponent_ ? tz : exponent_;
  if (shift > 0) {
    numerator_ >>= shift;  // exact: the low bits are zero
    exponent_ -= shift;
  }
}

Dyadic Dyadic::pow2(int k) {
  if (k >= 0) return Dyadic(BigInt(1) << k, 0);
  return Dyadic(BigInt(1), static_cast<std::uint32_t>(-k));
}

Dyadic Dyadic::operator-() const {
  Dyadic out = *this;
  out.numerator_ = -out.numerator_;
  return out;
}

Dyadic Dyadic::half() const { return Dyadic(numerator_, exponent_ + 1); }

Dyadic Dyadic::scaled(int k) const {
  if (k >= 0) {
    if (static_cast<std::uint32_t>(k) <= exponent_) return Dyadic(numerator_, exponent_ - k);
    return Dyadic(numerator_ << (k - static_cast<int>(exponent_)), 0);
  }
  return Dyadic(numerator_, exponent_ + static_cast<std::uint32_t>(-k));
}

namespace {

// Numerators of a and b brought to the common exponent max(ea, eb).
std::pair<BigInt, BigInt> aligned(const Dyadic& a, const Dyadic& b, std::uint32_t& exponent) {
  exponent = a.exponent() > b.exponent() ? a.exponent() : b.exponent();
  BigInt na = a.numerator() << (exponent - a.exponent());
  BigInt nb = b.numerator() << (exponent - b.exponent());
  return {std::move(na), std::move(nb)};
}

// Floor division of n by 2^s for signed n.
BigInt floor_shift(const BigInt& n, std::uint32_t s) {
  if (n.sign() >= 0) return n >> s;
  BigInt m = -n;
  BigInt q = m >> s;
  if ((q << s) != m) q += 1;
  return -q;
}

}  // namespace

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = 0;
  auto [na, nb] = aligned(a, b, e);
  return Dyadic(na + nb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  std::uint32_t e = 0;
  auto [na, nb] = aligned(a, b, e);
  return Dyadic(na - nb, e);
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.numerator_ * b.numerator_, a.exponent_ + b.exponent_);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  if (a.exponent_ == b.exponent_) return a.numerator_.compare(b.numerator_) <=> 0;
  std::uint32_t e = 0;
  auto [na, nb] = aligned(a, b, e);
  return na.compare(nb) <=> 0;
}

Dyadic Dyadic::floor_to(std::uint32_t precision) const {
  if (exponent_ <= precision) return *this;
  return Dyadic(floor_shift(numerator_, exponent_ - precision), precision);
}

Dyadic Dyadic::ceil_to(std::uint32_t precision) const { return -((-*this).floor_to(precision)); }

std::string Dyadic::str() const {
  if (exponent_ == 0) return numerator_.str();
  BigInt denominator = BigInt(1) << exponent_;
  return numerator_.str() + "/" + denominator.str();
}

double Dyadic::to_double() const {
  return static_cast<double>(numerator_) / static_cast<double>(BigInt(1) << exponent_);
}

namespace {

std::optional<BigInt> parse_unsigned(std::string_view digits) {
  if (digits.empty() || digits.size() > 4096) return std::nullopt;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  return BigInt(std::string(digits));
}

}  // namespace

std::optional<Dyadic> Dyadic::try_parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  auto numerator = parse_unsigned(text.substr(0, slash));
  if (!numerator) return std::nullopt;
  if (negative) *numerator = -*numerator;
  if (slash == std::string_view::npos) return Dyadic(*numerator, 0);

  std::string_view denominator = text.substr(slash + 1);
  if (denominator.starts_with("2^")) {
    auto k = parse_unsigned(denominator.substr(2));
    if (!k || *k > 1'000'000) return std::nullopt;
    return Dyadic(*numerator, static_cast<std::uint32_t>(*k));
  }
  auto d = parse_unsigned(denominator);
  if (!d || *d == 0) return std::nullopt;
  // Denominator must be an exact power of two.
  const auto k = static_cast<std::uint32_t>(mp::msb(*d));
  if ((BigInt(1) << k) != *d) return std::nullopt;
  return Dyadic(*numerator, k);
}

Dyadic Dyadic::parse(std::string_view text) {
  if (auto d = try_parse(text)) return *d;
  throw Error(ErrorCode::Domain, "not a dyadic literal: '" + std::string(text) + "'");
}

std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.str(); }

}  // namespace contnum
