#include "contnum/reals.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <set>

#include "contnum/error.hpp"
#include "contnum/sexpr.hpp"

namespace contnum {

namespace mp = boost::multiprecision;

Rational to_rational(const Dyadic& d) {
  return Rational(d.numerator(), BigInt(1) << d.exponent());
}

std::string rational_str(const Rational& q) {
  const BigInt num = mp::numerator(q);
  const BigInt den = mp::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  if (text.find('^') != std::string_view::npos) return to_rational(Dyadic::parse(text));
  const auto slash = text.find('/');
  auto read_int = [&](std::string_view part, bool allow_sign) -> BigInt {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && part[0] == '-') i = 1;
    if (i == part.size()) throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < part.size(); ++j) {
      if (part[j] < '0' || part[j] > '9') {
        throw Error(ErrorCode::Syntax, "malformed rational '" + std::string(text) + "'");
      }
    }
    return BigInt(std::string(part));
  };
  if (slash == std::string_view::npos) return Rational(read_int(text, true));
  const BigInt num = read_int(text.substr(0, slash), true);
  const BigInt den = read_int(text.substr(slash + 1), false);
  if (den == 0) throw Error(ErrorCode::Domain, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

Side parse_side(std::string_view text) {
  if (text == "left") return Side::Left;
  if (text == "right") return Side::Right;
  throw Error(ErrorCode::Syntax, "side must be 'left' or 'right', got '" + std::string(text) + "'");
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::FromAbove: return "from-above";
    case Direction::FromBelow: return "from-below";
    case Direction::Limit: return "limit";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Pairing and enumerations
// ---------------------------------------------------------------------------

std::uint64_t PairingCodec::pair(std::uint64_t x, std::uint64_t y) {
  const std::uint64_t s = x + y;
  return s * (s + 1) / 2 + y;
}

namespace {

// Largest w with w(w + 1)/2 <= n.
std::uint64_t diagonal(std::uint64_t n) {
  auto w = static_cast<std::uint64_t>((std::sqrt(8.0L * static_cast<long double>(n) + 1) - 1) / 2);
  while (w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  return w;
}

}  // namespace

std::uint64_t PairingCodec::first(std::uint64_t n) {
  const std::uint64_t w = diagonal(n);
  return w - (n - w * (w + 1) / 2);
}

std::uint64_t PairingCodec::second(std::uint64_t n) {
  const std::uint64_t w = diagonal(n);
  return n - w * (w + 1) / 2;
}

Dyadic dyadic_candidate(std::uint64_t i) {
  const auto level = static_cast<std::uint32_t>(std::bit_width(i + 1) - 1);  // i + 1 in [2^level, 2^(level+1))
  const std::uint64_t index = i + 1 - (std::uint64_t{1} << level);
  return Dyadic(BigInt(2 * index + 1), level + 1);
}

namespace {

// b-th dyadic of [0, 1): 0, 1/2, 1/4, 3/4, 1/8, ...
Rational unit_fraction(std::uint64_t b) {
  if (b == 0) return Rational(0);
  return to_rational(dyadic_candidate(b - 1));
}

Rational dyadic_stream(std::uint64_t m) {
  std::uint64_t v = m + 1;
  const auto a = static_cast<std::uint64_t>(std::countr_zero(v));
  v >>= a;
  const std::uint64_t b = (v - 1) / 2;
  const std::int64_t z = (a % 2 == 1) ? -static_cast<std::int64_t>((a + 1) / 2) : static_cast<std::int64_t>(a / 2);
  return Rational(z) + unit_fraction(b);
}

std::uint64_t fusc(std::uint64_t n) {
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  while (n > 0) {
    if (n & 1) b += a;
    else a += b;
    n >>= 1;
  }
  return b;
}

bool is_dyadic(const Rational& q) {
  const BigInt den = mp::denominator(q);
  return (den & (den - 1)) == 0;
}

class NonDyadicStream {
 public:
  Rational at(std::uint64_t j) {
    std::lock_guard lock(mu_);
    while (values_.size() <= j) {
      Rational q(fusc(next_), fusc(next_ + 1));
      ++next_;
      if (is_dyadic(q)) continue;
      values_.push_back(q);
      values_.push_back(-q);
    }
    return values_[j];
  }

 private:
  std::mutex mu_;
  std::uint64_t next_ = 1;
  std::vector<Rational> values_;
};

NonDyadicStream& nondyadic_stream() {
  static NonDyadicStream stream;
  return stream;
}

// Running extreme over the prefix of the enumeration, cached.
class PrefixExtreme {
 public:
  PrefixExtreme(bool maximum, Rational bound) : maximum_(maximum), bound_(std::move(bound)) {}

  std::optional<Rational> at(std::uint64_t t) {
    std::lock_guard lock(mu_);
    while (values_.size() < t) {
      const Rational q = RationalEnumeration::at(values_.size());
      std::optional<Rational> cur = values_.empty() ? std::nullopt : values_.back();
      const bool eligible = maximum_ ? q < bound_ : q > bound_;
      if (eligible && (!cur || (maximum_ ? q > *cur : q < *cur))) cur = q;
      values_.push_back(cur);
    }
    if (t == 0) return std::nullopt;
    return values_[t - 1];
  }

 private:
  std::mutex mu_;
  bool maximum_;
  Rational bound_;
  std::vector<std::optional<Rational>> values_;
};

}  // namespace

Rational RationalEnumeration::at(std::uint64_t n) {
  if (n % 2 == 0) return dyadic_stream(n / 2);
  return nondyadic_stream().at((n - 1) / 2);
}

std::optional<Rational> RationalEnumeration::max_below_one(std::uint64_t t) {
  static PrefixExtreme table(true, Rational(1));
  return table.at(t);
}

std::optional<Rational> RationalEnumeration::min_above_zero(std::uint64_t t) {
  static PrefixExtreme table(false, Rational(0));
  return table.at(t);
}

// ---------------------------------------------------------------------------
// Builtin reals
// ---------------------------------------------------------------------------

BuiltinReal::BuiltinReal(std::string name, Kind kind, std::optional<Rational> value)
    : name_(std::move(name)), kind_(kind), rational_(std::move(value)) {}

const BuiltinReal& BuiltinReal::get(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<BuiltinReal>, std::less<>> registry;
  std::lock_guard lock(mu);
  if (auto it = registry.find(name); it != registry.end()) return *it->second;

  std::unique_ptr<BuiltinReal> real;
  if (name == "sqrt-half") {
    real.reset(new BuiltinReal("sqrt-half", Kind::SqrtHalf, std::nullopt));
  } else if (name == "phi-inverse") {
    real.reset(new BuiltinReal("phi-inverse", Kind::PhiInverse, std::nullopt));
  } else if (name == "cbrt-half") {
    real.reset(new BuiltinReal("cbrt-half", Kind::CbrtHalf, std::nullopt));
  } else {
    Rational value;
    try {
      value = parse_rational(name);
    } catch (const Error&) {
      throw Error(ErrorCode::Domain, "unknown builtin real '" + std::string(name) + "'");
    }
    if (value < 0 || value > 1) {
      throw Error(ErrorCode::Domain, "builtin real '" + std::string(name) + "' lies outside [0, 1]");
    }
    real.reset(new BuiltinReal(rational_str(value), Kind::Literal, value));
  }
  const BuiltinReal* out = real.get();
  const std::string canonical = real->name();
  if (auto it = registry.find(canonical); it != registry.end()) {
    out = it->second.get();
  } else {
    registry.emplace(canonical, std::move(real));
  }
  if (canonical != name) {
    // Alias the spelling the caller used to the canonical entry.
    registry.emplace(std::string(name), std::unique_ptr<BuiltinReal>(new BuiltinReal(*out)));
    return *registry.find(name)->second;
  }
  return *out;
}

std::vector<std::string> BuiltinReal::named_constants() { return {"sqrt-half", "phi-inverse", "cbrt-half"}; }

int BuiltinReal::compare(const Rational& q) const {
  auto sign_of = [](const BigInt& v) { return v.sign(); };
  const BigInt a = mp::numerator(q);
  const BigInt b = mp::denominator(q);
  switch (kind_) {
    case Kind::Literal: {
      if (q < *rational_) return -1;
      return q > *rational_ ? 1 : 0;
    }
    case Kind::SqrtHalf:
      if (a.sign() <= 0) return -1;
      return sign_of(2 * a * a - b * b);
    case Kind::PhiInverse: {
      const BigInt x = 2 * a + b;  // 2q + 1 = x / b compared with sqrt 5
      if (x.sign() <= 0) return -1;
      return sign_of(x * x - 5 * b * b);
    }
    case Kind::CbrtHalf: return sign_of(2 * a * a * a - b * b * b);
  }
  return 0;
}

std::optional<Dyadic> BuiltinReal::dyadic_value() const {
  if (!rational_ || !is_dyadic(*rational_)) return std::nullopt;
  const BigInt den = mp::denominator(*rational_);
  return Dyadic(mp::numerator(*rational_), static_cast<std::uint32_t>(mp::msb(den)));
}

double BuiltinReal::to_double() const {
  switch (kind_) {
    case Kind::Literal: return rational_->convert_to<double>();
    case Kind::SqrtHalf: return std::sqrt(0.5);
    case Kind::PhiInverse: return (std::sqrt(5.0) - 1) / 2;
    case Kind::CbrtHalf: return std::cbrt(0.5);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Cut streams
// ---------------------------------------------------------------------------

CutEnumerator::CutEnumerator(Side side, std::string target, std::shared_ptr<const CutStream> stream)
    : side_(side), target_(std::move(target)), stream_(std::move(stream)) {}

namespace {

Dyadic sentinel(Side side) { return side == Side::Left ? Dyadic(-1) : Dyadic(2); }

// Shared prefix cache; subclasses decide stage n given the elements before it.
class PrefixStream : public CutStream {
 public:
  explicit PrefixStream(Side side) : side_(side) {}

  Dyadic element(std::uint64_t n) const final {
    std::lock_guard lock(mu_);
    while (elements_.size() <= n) {
      const std::uint64_t stage = elements_.size();
      std::optional<Dyadic> found = compute(stage);
      if (found) {
        elements_.push_back(*found);
      } else {
        elements_.push_back(elements_.empty() || !emitted_ ? sentinel(side_) : elements_.back());
      }
      emitted_ = emitted_ || found.has_value();
    }
    return elements_[n];
  }

 protected:
  Side side() const { return side_; }
  /// Element found at this stage, if any. Called once per stage, in order.
  virtual std::optional<Dyadic> compute(std::uint64_t stage) const = 0;

 private:
  Side side_;
  mutable std::mutex mu_;
  mutable std::vector<Dyadic> elements_;
  mutable bool emitted_ = false;
};

class BuiltinStream final : public PrefixStream {
 public:
  BuiltinStream(Side side, const BuiltinReal& real) : PrefixStream(side), real_(real) {}

 protected:
  std::optional<Dyadic> compute(std::uint64_t stage) const override {
    Dyadic c = dyadic_candidate(stage);
    const int cmp = real_.compare(c);
    if (side() == Side::Left ? cmp < 0 : cmp > 0) return c;
    return std::nullopt;
  }

 private:
  const BuiltinReal& real_;
};

class StagedStream final : public PrefixStream {
 public:
  StagedStream(Side side, std::shared_ptr<const StagedReal> real) : PrefixStream(side), real_(std::move(real)) {}

 protected:
  std::optional<Dyadic> compute(std::uint64_t stage) const override {
    const std::uint64_t m = stage / 2;
    const Dyadic a = real_->approx(m);
    const bool left = side() == Side::Left;
    if (stage % 2 == 0) {
      while (pool_.size() <= m) pool_.insert(dyadic_candidate(pool_.size()));
      if (left) {
        auto it = pool_.lower_bound(a);  // first >= a
        if (it == pool_.begin()) return std::nullopt;
        return *std::prev(it);
      }
      auto it = pool_.upper_bound(a);  // first > a
      if (it == pool_.end()) return std::nullopt;
      return *it;
    }
    Dyadic c = dyadic_candidate(PairingCodec::first(m));
    if (left ? c < a : c > a) return c;
    return std::nullopt;
  }

 private:
  std::shared_ptr<const StagedReal> real_;
  mutable std::set<Dyadic> pool_;
};

}  // namespace

std::pair<CutEnumerator, CutEnumerator> builtin_real(std::string_view name) {
  const BuiltinReal& real = BuiltinReal::get(name);
  static std::mutex mu;
  static std::map<std::string, std::pair<std::shared_ptr<const CutStream>, std::shared_ptr<const CutStream>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(real.name());
  if (it == cache.end()) {
    it = cache
             .emplace(real.name(), std::make_pair(std::make_shared<BuiltinStream>(Side::Left, real),
                                                  std::make_shared<BuiltinStream>(Side::Right, real)))
             .first;
  }
  return {CutEnumerator(Side::Left, real.name(), it->second.first),
          CutEnumerator(Side::Right, real.name(), it->second.second)};
}

std::shared_ptr<const CutStream> staged_cut_stream(Side side, std::shared_ptr<const StagedReal> real) {
  const Direction want = side == Side::Left ? Direction::FromBelow : Direction::FromAbove;
  if (real->direction() != want) {
    throw Error(ErrorCode::Incoherent, std::string("a ") + to_string(side) + " cut needs a " + to_string(want) +
                                           " approximation, got " + to_string(real->direction()));
  }
  return std::make_shared<StagedStream>(side, std::move(real));
}

// ---------------------------------------------------------------------------
// Predicates
// ---------------------------------------------------------------------------

namespace {

Rational pow2_inverse(std::uint64_t k) { return Rational(BigInt(1), BigInt(1) << k); }

class NamedPredicate final : public Sigma2Predicate {
 public:
  enum class Rule { Shifted, Exact, Decoy };

  NamedPredicate(std::string name, Side side, Rule rule, const BuiltinReal& real)
      : name_(std::move(name)), side_(side), rule_(rule), real_(real) {}

  Side side() const override { return side_; }
  std::string key() const override { return name_ + " " + quote_string(real_.name()); }
  std::optional<std::string> encoded_real() const override { return real_.name(); }

  bool holds(std::uint64_t x0, std::uint64_t x1, const Rational& q) const override {
    switch (rule_) {
      case Rule::Shifted: return shifted(x0, q);
      case Rule::Exact: return side_ == Side::Right ? real_.compare(q) > 0 : real_.compare(q) < 0;
      case Rule::Decoy:
        if (x0 % 2 == 0) return shifted(x0 / 2, q);
        return x1 < x0;
    }
    return false;
  }

 private:
  bool shifted(std::uint64_t k, const Rational& q) const {
    if (side_ == Side::Right) return real_.compare(q - pow2_inverse(k)) >= 0;
    return real_.compare(q + pow2_inverse(k)) <= 0;
  }

  std::string name_;
  Side side_;
  Rule rule_;
  const BuiltinReal& real_;
};

class EnumerationView final : public Sigma2Predicate {
 public:
  explicit EnumerationView(CutEnumerator cut) : cut_(std::move(cut)) {}

  Side side() const override { return cut_.side(); }
  std::string key() const override { return std::string("enumeration ") + to_string(cut_.side()) + " " + cut_.target(); }

  bool holds(std::uint64_t x0, std::uint64_t, const Rational& q) const override {
    if (cut_.side() == Side::Right) return q > 1 || to_rational(cut_.element(x0)) <= q;
    return q < 0 || q <= to_rational(cut_.element(x0));
  }

 private:
  CutEnumerator cut_;
};

class ComplementView final : public Sigma2Predicate {
 public:
  explicit ComplementView(CutEnumerator cut) : cut_(std::move(cut)) {}

  Side side() const override { return opposite(cut_.side()); }
  std::string key() const override {
    return std::string("complement ") + to_string(cut_.side()) + " " + cut_.target();
  }

  bool holds(std::uint64_t x0, std::uint64_t x1, const Rational& q) const override {
    const Rational d = RationalEnumeration::at(x0);
    const Rational e = to_rational(cut_.element(x1));
    if (side() == Side::Right) return d < q && e < d;
    return q < d && d < e;
  }

 private:
  CutEnumerator cut_;
};

}  // namespace

std::shared_ptr<const Sigma2Predicate> make_sigma2_predicate(std::string_view name, std::string_view param) {
  using Rule = NamedPredicate::Rule;
  struct Entry {
    const char* name;
    Side side;
    Rule rule;
  };
  static const Entry entries[] = {
      {"shifted-above", Side::Right, Rule::Shifted}, {"shifted-below", Side::Left, Rule::Shifted},
      {"exact-above", Side::Right, Rule::Exact},     {"exact-below", Side::Left, Rule::Exact},
      {"decoy-above", Side::Right, Rule::Decoy},     {"decoy-below", Side::Left, Rule::Decoy},
  };
  for (const auto& e : entries) {
    if (name == e.name) return std::make_shared<NamedPredicate>(e.name, e.side, e.rule, BuiltinReal::get(param));
  }
  throw Error(ErrorCode::Domain, "unknown predicate '" + std::string(name) + "'");
}

std::vector<std::string> sigma2_predicate_names() {
  return {"shifted-above", "shifted-below", "exact-above", "exact-below", "decoy-above", "decoy-below"};
}

std::shared_ptr<const Sigma2Predicate> enumeration_view(const CutEnumerator& cut) {
  return std::make_shared<EnumerationView>(cut);
}

std::shared_ptr<const Sigma2Predicate> complement_view(const CutEnumerator& opposite_cut) {
  return std::make_shared<ComplementView>(opposite_cut);
}

TransformedPredicate::TransformedPredicate(std::shared_ptr<const Sigma2Predicate> base) : base_(std::move(base)) {}

Rational TransformedPredicate::witness(std::uint64_t x0) const {
  return RationalEnumeration::at(PairingCodec::second(x0));
}

bool TransformedPredicate::guard(std::uint64_t x0, const Rational& q) const {
  const Rational c = witness(x0);
  return side() == Side::Right ? c <= q : q <= c;
}

bool TransformedPredicate::core(std::uint64_t x0, std::uint64_t x1) const {
  return base_->holds(PairingCodec::first(x0), x1, witness(x0));
}

bool TransformedPredicate::holds(std::uint64_t x0, std::uint64_t x1, const Rational& q) const {
  return guard(x0, q) && core(x0, x1);
}

TransformedPredicate transform_R1(std::shared_ptr<const Sigma2Predicate> pred) {
  return TransformedPredicate(std::move(pred));
}

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

std::uint32_t stage_precision(std::uint64_t t) { return 8 + static_cast<std::uint32_t>(std::bit_width(t)); }

namespace {

Dyadic floor_dyadic(const Rational& q, std::uint32_t p) {
  const BigInt scaled = mp::numerator(q) << p;
  const BigInt den = mp::denominator(q);
  BigInt f = scaled / den;
  if (scaled.sign() < 0 && f * den != scaled) f -= 1;
  return Dyadic(f, p);
}

Dyadic ceil_dyadic(const Rational& q, std::uint32_t p) { return -floor_dyadic(-q, p); }

class StageTable final : public ExtractedSequence {
 public:
  explicit StageTable(std::shared_ptr<const Sigma2Predicate> pred) : r1_(std::move(pred)) {}

  Side side() const override { return r1_.side(); }
  Direction direction() const override { return right() ? Direction::FromBelow : Direction::FromAbove; }

  Dyadic approx(std::uint64_t n, std::uint64_t t) const override {
    std::lock_guard lock(mu_);
    return row_value(n, t);
  }

  Dyadic component(std::uint64_t n, std::uint64_t t) const override {
    std::lock_guard lock(mu_);
    return component_value(n, t);
  }

 private:
  // Incremental search state for one s_k.
  struct Component {
    Rational witness;
    std::optional<std::uint64_t> refuted_at;  // least t with a refutation among x1 < t
    std::uint64_t checked = 0;                // x1 values examined
    std::uint64_t scanned = 0;                // q_i examined
    std::vector<std::pair<std::uint64_t, Rational>> best;  // (from stage, value) breakpoints
  };

  bool right() const { return r1_.side() == Side::Right; }

  Component& component_state(std::uint64_t k) const {
    while (components_.size() <= k) {
      Component c;
      c.witness = r1_.witness(components_.size());
      components_.push_back(std::move(c));
    }
    return components_[k];
  }

  void advance(std::uint64_t k, std::uint64_t t) const {
    Component& c = component_state(k);
    while (!c.refuted_at && c.checked < t) {
      if (!r1_.core(k, c.checked)) c.refuted_at = c.checked + 1;
      ++c.checked;
    }
    while (c.scanned < t) {
      const Rational q = RationalEnumeration::at(c.scanned);
      ++c.scanned;
      const bool eligible = right() ? (q < 1 && q < c.witness) : (q > 0 && q > c.witness);
      if (!eligible) continue;
      if (c.best.empty() || (right() ? q > c.best.back().second : q < c.best.back().second)) {
        c.best.emplace_back(c.scanned, q);
      }
    }
  }

  Dyadic component_value(std::uint64_t k, std::uint64_t t) const {
    advance(k, t);
    const Component& c = components_[k];
    std::optional<Rational> base;
    if (c.refuted_at && *c.refuted_at <= t) {
      base = right() ? RationalEnumeration::max_below_one(t) : RationalEnumeration::min_above_zero(t);
    } else {
      auto it = std::upper_bound(c.best.begin(), c.best.end(), t,
                                 [](std::uint64_t stage, const auto& bp) { return stage < bp.first; });
      if (it != c.best.begin()) base = std::prev(it)->second;
    }
    const std::uint32_t p = stage_precision(t);
    if (right()) {
      const Rational v = base && *base > 0 ? *base : Rational(0);
      return floor_dyadic(v, p);
    }
    const Rational v = base && *base < 1 ? *base : Rational(1);
    return ceil_dyadic(v, p);
  }

  Dyadic row_value(std::uint64_t n, std::uint64_t t) const {
    while (rows_.size() <= n) rows_.emplace_back();
    for (std::uint64_t k = 0; k <= n; ++k) {
      auto& row = rows_[k];
      while (row.size() <= t) {
        const std::uint64_t stage = row.size();
        Dyadic v = component_value(k, stage);
        if (k > 0) {
          const Dyadic& prev = rows_[k - 1][stage];
          v = right() ? min(prev, v) : max(prev, v);
        }
        row.push_back(std::move(v));
      }
    }
    return rows_[n][t];
  }

  TransformedPredicate r1_;
  mutable std::mutex mu_;
  mutable std::vector<Component> components_;
  mutable std::vector<std::vector<Dyadic>> rows_;
};

class ExtractedMember final : public StagedReal {
 public:
  ExtractedMember(std::shared_ptr<const ExtractedSequence> seq, std::uint64_t n) : seq_(std::move(seq)), n_(n) {}
  Dyadic approx(std::uint64_t t) const override { return seq_->approx(n_, t); }
  Direction direction() const override { return seq_->direction(); }

 private:
  std::shared_ptr<const ExtractedSequence> seq_;
  std::uint64_t n_;
};

}  // namespace

std::shared_ptr<const StagedReal> ExtractedSequence::member(std::uint64_t n) const {
  return std::make_shared<ExtractedMember>(shared_from_this(), n);
}

std::shared_ptr<const ExtractedSequence> extract_seq(std::shared_ptr<const Sigma2Predicate> pred) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ExtractedSequence>> cache;
  const std::string key = pred->key();
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_shared<StageTable>(std::move(pred))).first;
  return it->second;
}

std::shared_ptr<const ExtractedSequence> extract_seq_right_sigma2(std::shared_ptr<const Sigma2Predicate> pred) {
  if (pred->side() != Side::Right) throw Error(ErrorCode::Incoherent, "expected a right-cut predicate");
  return extract_seq(std::move(pred));
}

std::shared_ptr<const ExtractedSequence> extract_seq_left_sigma2(std::shared_ptr<const Sigma2Predicate> pred) {
  if (pred->side() != Side::Left) throw Error(ErrorCode::Incoherent, "expected a left-cut predicate");
  return extract_seq(std::move(pred));
}

}  // namespace contnum
