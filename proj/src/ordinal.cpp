#include "contnum/ordinal.hpp"

#include <cctype>
#include <ostream>

#include "contnum/error.hpp"

namespace contnum {

Ordinal::Ordinal(std::uint64_t n) {
  if (n > 0) terms_.push_back({0, n});
}

Ordinal Ordinal::omega_power(std::uint32_t exponent, std::uint64_t coefficient) {
  return from_terms({{exponent, coefficient}});
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw Error(ErrorCode::Domain, "ordinal coefficient must be positive");
    if (i > 0 && terms[i].exponent >= terms[i - 1].exponent) {
      throw Error(ErrorCode::Domain, "ordinal exponents must strictly decrease");
    }
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

std::optional<std::uint64_t> Ordinal::finite_value() const {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

Ordinal Ordinal::successor() const { return *this + Ordinal(1); }

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) throw Error(ErrorCode::Domain, "ordinal " + str() + " has no predecessor");
  Ordinal out = *this;
  if (--out.terms_.back().coefficient == 0) out.terms_.pop_back();
  return out;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto lead = b.terms_.front().exponent;
  Ordinal out;
  for (const auto& t : a.terms_) {
    if (t.exponent > lead) out.terms_.push_back(t);
    else if (t.exponent == lead) {
      out.terms_.push_back({lead, t.coefficient + b.terms_.front().coefficient});
      out.terms_.insert(out.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
      return out;
    }
  }
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.exponent != y.exponent) return x.exponent <=> y.exponent;
    if (x.coefficient != y.coefficient) return x.coefficient <=> y.coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

OrdinalOrder ordinal_compare(const Ordinal& a, const Ordinal& b) {
  const auto c = a <=> b;
  if (c < 0) return OrdinalOrder::LT;
  if (c > 0) return OrdinalOrder::GT;
  return OrdinalOrder::EQ;
}

const Ordinal& max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += "+";
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (t.exponent > 1) out += "^" + std::to_string(t.exponent);
    if (t.coefficient > 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Ordinal& o) { return os << o.str(); }

namespace {

class OrdinalReader {
 public:
  explicit OrdinalReader(std::string_view text) : text_(text) {}

  Ordinal read() {
    if (text_.empty()) fail("empty ordinal");
    if (text_ == "0") return Ordinal();
    std::vector<Ordinal::Term> terms;
    for (;;) {
      terms.push_back(term());
      if (pos_ == text_.size()) break;
      expect('+');
    }
    try {
      return Ordinal::from_terms(std::move(terms));
    } catch (const Error&) {
      fail("terms not in Cantor normal form");
    }
  }

 private:
  Ordinal::Term term() {
    if (peek_word("omega") || peek('w')) {
      pos_ += peek_word("omega") ? 5 : 1;
      std::uint64_t exponent = 1;
      std::uint64_t coefficient = 1;
      if (accept('^')) exponent = number();
      if (accept('*')) coefficient = number();
      if (exponent > 1'000'000) fail("exponent too large");
      return {static_cast<std::uint32_t>(exponent), coefficient};
    }
    return {0, number()};
  }

  std::uint64_t number() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > (UINT64_MAX - 9) / 10) fail("number too large");
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }

  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  bool peek_word(std::string_view w) const { return text_.substr(pos_).starts_with(w); }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Syntax, what + " in ordinal '" + std::string(text_) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) { return OrdinalReader(text).read(); }

Ordinal fundamental_sequence(const Ordinal& alpha, std::uint64_t n) {
  if (!alpha.is_limit()) throw Error(ErrorCode::Domain, "ordinal " + alpha.str() + " is not a limit");
  std::vector<Ordinal::Term> terms = alpha.terms();
  const std::uint32_t e = terms.back().exponent;
  if (--terms.back().coefficient == 0) terms.pop_back();
  Ordinal out = Ordinal::from_terms(std::move(terms));
  if (n == 0) return out;
  return out + Ordinal::omega_power(e - 1, n);
}

}  // namespace contnum
