#include "contnum/sources.hpp"

#include <map>
#include <mutex>

#include "contnum/error.hpp"
#include "contnum/sexpr.hpp"

namespace contnum {

namespace {

SourcePtr intern(SourcePtr fresh) {
  static std::mutex mu;
  static std::map<std::string, SourcePtr> table;
  std::string key = fresh->descriptor();
  std::lock_guard lock(mu);
  auto [it, inserted] = table.emplace(std::move(key), fresh);
  return it->second;
}

[[noreturn]] void incoherent(const std::string& what) { throw Error(ErrorCode::Incoherent, what); }

std::optional<Ordinal> plus_one(const std::optional<Ordinal>& o) {
  if (!o) return std::nullopt;
  return o->successor();
}

// Rational value of a known ground truth, if it is rational.
std::optional<Rational> rational_truth(const SourcePtr& s) {
  const BuiltinReal* truth = s->ground_truth();
  if (!truth) return std::nullopt;
  return truth->rational_value();
}

// Largest dyadic with `bits` fractional bits that is <= the builtin value.
Dyadic floor_builtin(const BuiltinReal& real, std::uint32_t bits) {
  BigInt lo = 0;
  BigInt hi = BigInt(1) << bits;  // value <= 1
  while (lo < hi) {
    BigInt mid = (lo + hi + 1) / 2;
    if (real.compare(Dyadic(mid, bits)) <= 0) lo = mid;
    else hi = mid - 1;
  }
  return Dyadic(lo, bits);
}

// ---------------------------------------------------------------------------

class BuiltinStaged final : public StagedReal {
 public:
  explicit BuiltinStaged(const BuiltinReal& real) : real_(real) {}
  Dyadic approx(std::uint64_t t) const override { return floor_builtin(real_, stage_precision(t)); }
  Direction direction() const override { return Direction::FromBelow; }

 private:
  const BuiltinReal& real_;
};

class BuiltinSource final : public RealSource {
 public:
  explicit BuiltinSource(const BuiltinReal& real) : real_(real) {}

  std::string descriptor() const override { return "(real builtin " + quote_string(real_.name()) + ")"; }
  std::string short_name() const override { return real_.name(); }
  std::optional<Ordinal> native_level(Side) const override { return Ordinal(1); }
  CutEnumerator cut_enumerator(Side side) const override {
    auto [left, right] = builtin_real(real_.name());
    return side == Side::Left ? left : right;
  }
  std::shared_ptr<const StagedReal> staged() const override { return std::make_shared<BuiltinStaged>(real_); }
  const BuiltinReal* ground_truth() const override { return &real_; }

 private:
  const BuiltinReal& real_;
};

class Sigma2Source final : public RealSource {
 public:
  Sigma2Source(Side side, std::string name, std::string param)
      : side_(side), name_(std::move(name)), param_(std::move(param)), pred_(make_sigma2_predicate(name_, param_)) {
    if (pred_->side() != side_) {
      throw Error(ErrorCode::Incoherent, "predicate '" + name_ + "' describes a " + to_string(pred_->side()) +
                                             " cut, not a " + to_string(side_) + " cut");
    }
  }

  std::string descriptor() const override {
    return std::string("(real sigma2-") + to_string(side_) + " " + name_ + " " + quote_string(param_) + ")";
  }
  std::optional<Ordinal> native_level(Side side) const override {
    if (side == side_) return Ordinal(2);
    return std::nullopt;
  }
  std::shared_ptr<const Sigma2Predicate> sigma2_view(Side side) const override {
    if (side == side_) return pred_;
    return RealSource::sigma2_view(side);
  }
  const BuiltinReal* ground_truth() const override {
    if (auto name = pred_->encoded_real()) return &BuiltinReal::get(*name);
    return nullptr;
  }

 private:
  Side side_;
  std::string name_;
  std::string param_;
  std::shared_ptr<const Sigma2Predicate> pred_;
};

class ExtractedSource final : public RealSource {
 public:
  ExtractedSource(Side side, std::uint64_t n, SourcePtr from)
      : side_(side), n_(n), from_(std::move(from)), seq_(extract_seq(from_->sigma2_view(side_))) {}

  std::string descriptor() const override {
    return std::string("(real extract ") + to_string(side_) + " " + std::to_string(n_) + " " + from_->descriptor() +
           ")";
  }
  // r_n of a right extraction is approximable from below, so its left cut is enumerable.
  std::optional<Ordinal> native_level(Side side) const override {
    if (side == opposite(side_)) return Ordinal(1);
    return std::nullopt;
  }
  CutEnumerator cut_enumerator(Side side) const override {
    if (side != opposite(side_)) return RealSource::cut_enumerator(side);
    std::call_once(stream_once_, [&] { stream_ = staged_cut_stream(side, seq_->member(n_)); });
    return CutEnumerator(side, descriptor(), stream_);
  }
  std::shared_ptr<const StagedReal> staged() const override { return seq_->member(n_); }

 private:
  Side side_;
  std::uint64_t n_;
  SourcePtr from_;
  std::shared_ptr<const ExtractedSequence> seq_;
  mutable std::once_flag stream_once_;
  mutable std::shared_ptr<const CutStream> stream_;
};

// ---------------------------------------------------------------------------

class ExtremeStaged final : public StagedReal {
 public:
  ExtremeStaged(Side side, std::vector<std::shared_ptr<const StagedReal>> parts)
      : side_(side), parts_(std::move(parts)) {}

  Dyadic approx(std::uint64_t t) const override {
    Dyadic out = parts_.front()->approx(t);
    for (std::size_t i = 1; i < parts_.size(); ++i) {
      const Dyadic v = parts_[i]->approx(t);
      out = side_ == Side::Right ? min(out, v) : max(out, v);
    }
    return out;
  }
  Direction direction() const override { return Direction::Limit; }

 private:
  Side side_;
  std::vector<std::shared_ptr<const StagedReal>> parts_;
};

class LeveledStaged final : public StagedReal {
 public:
  explicit LeveledStaged(std::shared_ptr<const LeveledSource> source) : source_(std::move(source)) {}

  Dyadic approx(std::uint64_t t) const override {
    const bool right = source_->side() == Side::Right;
    std::optional<Dyadic> out;
    for (std::uint64_t i = 0; i <= t; ++i) {
      auto staged = source_->member(i)->staged();
      const Dyadic v = staged->approx(t);
      out = !out ? v : (right ? min(*out, v) : max(*out, v));
    }
    return *out;
  }
  Direction direction() const override { return Direction::Limit; }

 private:
  std::shared_ptr<const LeveledSource> source_;
};

class LeveledBase : public LeveledSource {
 public:
  LeveledBase(Ordinal limit, Side side) : limit_(std::move(limit)), side_(side) {
    if (!limit_.is_limit()) incoherent("leveled families need a limit ordinal, got " + limit_.str());
  }

  const Ordinal& limit() const override { return limit_; }
  Side side() const override { return side_; }
  std::optional<Ordinal> native_level(Side side) const override {
    if (side == side_) return limit_;
    return std::nullopt;
  }
  std::shared_ptr<const StagedReal> staged() const override {
    for (std::uint64_t i = 0; i < probe_members(); ++i) {
      if (!member(i)->staged()) return nullptr;
    }
    return std::make_shared<LeveledStaged>(std::static_pointer_cast<const LeveledSource>(shared_from_this()));
  }

 protected:
  std::string head() const {
    return "(real leveled " + limit_.str() + " " + to_string(side_) + " ";
  }
  /// Number of members that determine the family up to cycling.
  virtual std::uint64_t probe_members() const = 0;

  void check_member(const SourcePtr& m) const {
    auto lvl = m->level(side_);
    if (!lvl) incoherent("member " + m->descriptor() + " has no " + to_string(side_) + " level");
    if (!(*lvl < limit_)) {
      incoherent("member " + m->descriptor() + " has level " + lvl->str() + ", not below " + limit_.str());
    }
  }

 private:
  Ordinal limit_;
  Side side_;
};

class ListedLeveled final : public LeveledBase {
 public:
  ListedLeveled(Ordinal limit, Side side, std::vector<SourcePtr> members)
      : LeveledBase(std::move(limit), side), members_(std::move(members)) {
    if (members_.empty()) incoherent("leveled family needs at least one member");
    for (const auto& m : members_) check_member(m);
  }

  std::string descriptor() const override {
    std::string out = head() + "(members";
    for (const auto& m : members_) out += " " + m->descriptor();
    return out + "))";
  }
  SourcePtr member(std::uint64_t n) const override { return members_[n % members_.size()]; }
  const BuiltinReal* ground_truth() const override {
    std::optional<Rational> best;
    for (const auto& m : members_) {
      auto v = rational_truth(m);
      if (!v) return nullptr;
      if (!best || (side() == Side::Right ? *v < *best : *v > *best)) best = v;
    }
    return &BuiltinReal::get(rational_str(*best));
  }

 protected:
  std::uint64_t probe_members() const override { return members_.size(); }

 private:
  std::vector<SourcePtr> members_;
};

class ApproachLeveled final : public LeveledBase {
 public:
  ApproachLeveled(Ordinal limit, Side side, const BuiltinReal& point, bool above)
      : LeveledBase(std::move(limit), side), point_(point), above_(above) {
    if (!point_.rational_value()) incoherent("approach point must be rational, got " + point_.name());
  }

  std::string descriptor() const override {
    return head() + "(approach " + quote_string(point_.name()) + (above_ ? " above" : " below") + "))";
  }
  SourcePtr member(std::uint64_t n) const override {
    std::lock_guard lock(mu_);
    auto it = members_.find(n);
    if (it == members_.end()) it = members_.emplace(n, make_member(n)).first;
    return it->second;
  }
  SourcePtr make_member(std::uint64_t n) const {
    const Rational step(BigInt(1), BigInt(1) << (n + 1));
    Rational v = above_ ? Rational(*point_.rational_value() + step) : Rational(*point_.rational_value() - step);
    if (v > 1) v = 1;
    if (v < 0) v = 0;
    return builtin_source(rational_str(v));
  }
  const BuiltinReal* ground_truth() const override {
    // inf of the members above P is P, as is the sup of those below; the
    // other two combinations are attained at n = 0.
    if (above_ == (side() == Side::Right)) return &point_;
    return member(0)->ground_truth();
  }

 protected:
  std::uint64_t probe_members() const override { return 1; }

 private:
  const BuiltinReal& point_;
  bool above_;
  mutable std::mutex mu_;
  mutable std::map<std::uint64_t, SourcePtr> members_;
};

class PrefixSource final : public RealSource {
 public:
  PrefixSource(std::uint64_t n, std::shared_ptr<const LeveledSource> family) : n_(n), family_(std::move(family)) {}

  std::string descriptor() const override {
    return "(real prefix " + std::to_string(n_) + " " + family_->descriptor() + ")";
  }
  std::optional<Ordinal> native_level(Side side) const override {
    if (side != family_->side()) return std::nullopt;
    return family_->prefix_level(n_);
  }
  std::shared_ptr<const StagedReal> staged() const override {
    std::vector<std::shared_ptr<const StagedReal>> parts;
    for (std::uint64_t i = 0; i <= n_; ++i) {
      auto s = family_->member(i)->staged();
      if (!s) return nullptr;
      parts.push_back(std::move(s));
    }
    return std::make_shared<ExtremeStaged>(family_->side(), std::move(parts));
  }
  const BuiltinReal* ground_truth() const override {
    std::optional<Rational> best;
    for (std::uint64_t i = 0; i <= n_; ++i) {
      auto v = rational_truth(family_->member(i));
      if (!v) return nullptr;
      if (!best || (family_->side() == Side::Right ? *v < *best : *v > *best)) best = v;
    }
    return &BuiltinReal::get(rational_str(*best));
  }

  std::uint64_t count() const { return n_ + 1; }
  const std::shared_ptr<const LeveledSource>& family() const { return family_; }

 private:
  std::uint64_t n_;
  std::shared_ptr<const LeveledSource> family_;
};

// ---------------------------------------------------------------------------
// Descriptor reader
// ---------------------------------------------------------------------------

[[noreturn]] void syntax(const SExpr& at, const std::string& what) { throw Error(ErrorCode::Syntax, what, at.offset); }

std::uint64_t read_index(const SExpr& e) {
  if (!e.is_symbol() || e.text.empty() || e.text.size() > 18) syntax(e, "expected a natural number");
  std::uint64_t v = 0;
  for (char c : e.text) {
    if (c < '0' || c > '9') syntax(e, "expected a natural number");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

Side read_side(const SExpr& e) {
  if (!e.is_symbol()) syntax(e, "expected 'left' or 'right'");
  try {
    return parse_side(e.text);
  } catch (const Error& err) {
    syntax(e, err.what());
  }
}

Ordinal read_ordinal(const SExpr& e) {
  if (!e.is_symbol()) syntax(e, "expected an ordinal");
  try {
    return Ordinal::parse(e.text);
  } catch (const Error& err) {
    syntax(e, err.what());
  }
}

const std::string& read_string(const SExpr& e) {
  if (!e.is_string()) syntax(e, "expected a double-quoted string");
  return e.text;
}

void expect_size(const SExpr& e, std::size_t n) {
  if (e.items.size() != n) syntax(e, "form '" + e.items[1].text + "' expects " + std::to_string(n - 2) + " argument(s)");
}

SourcePtr read_source(const SExpr& e) {
  if (!e.is_form("real") || e.items.size() < 2 || !e.items[1].is_symbol()) {
    syntax(e, "expected a real-source descriptor (real KIND ...)");
  }
  const std::string& kind = e.items[1].text;
  if (kind == "builtin") {
    expect_size(e, 3);
    return builtin_source(read_string(e.items[2]));
  }
  if (kind == "sigma2-right" || kind == "sigma2-left") {
    expect_size(e, 4);
    if (!e.items[2].is_symbol()) syntax(e.items[2], "expected a predicate name");
    return sigma2_source(kind == "sigma2-right" ? Side::Right : Side::Left, e.items[2].text, read_string(e.items[3]));
  }
  if (kind == "extract") {
    expect_size(e, 5);
    return extracted_source(read_side(e.items[2]), read_index(e.items[3]), read_source(e.items[4]));
  }
  if (kind == "leveled") {
    expect_size(e, 5);
    const Ordinal limit = read_ordinal(e.items[2]);
    const Side side = read_side(e.items[3]);
    const SExpr& body = e.items[4];
    if (body.is_form("members")) {
      if (body.items.size() < 2) syntax(body, "'members' needs at least one source");
      std::vector<SourcePtr> members;
      for (std::size_t i = 1; i < body.items.size(); ++i) members.push_back(read_source(body.items[i]));
      return leveled_source(limit, side, std::move(members));
    }
    if (body.is_form("approach")) {
      if (body.items.size() != 3) syntax(body, "expected (approach \"P\" above|below)");
      const SExpr& dir = body.items[2];
      if (!dir.is_symbol("above") && !dir.is_symbol("below")) syntax(dir, "expected 'above' or 'below'");
      return approach_source(limit, side, read_string(body.items[1]), dir.is_symbol("above"));
    }
    syntax(body, "expected (members ...) or (approach ...)");
  }
  if (kind == "prefix") {
    expect_size(e, 4);
    return prefix_source(read_index(e.items[2]), read_source(e.items[3]));
  }
  syntax(e.items[1], "unknown real-source kind '" + kind + "'");
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<Ordinal> RealSource::level(Side side) const {
  auto own = native_level(side);
  auto other = plus_one(native_level(opposite(side)));
  if (own && other) return *other < *own ? *other : *own;
  return own ? own : other;
}

CutEnumerator RealSource::cut_enumerator(Side side) const {
  incoherent(std::string("the ") + to_string(side) + " cut of " + descriptor() + " is not enumerable");
}

std::shared_ptr<const Sigma2Predicate> RealSource::sigma2_view(Side side) const {
  const Ordinal one(1);
  if (auto own = native_level(side); own && *own <= one) return enumeration_view(cut_enumerator(side));
  if (auto other = native_level(opposite(side)); other && *other <= one) {
    return complement_view(cut_enumerator(opposite(side)));
  }
  incoherent(std::string("the ") + to_string(side) + " cut of " + descriptor() + " has no Sigma^0_2 presentation");
}

Ordinal LeveledSource::h(std::uint64_t n) const {
  auto lvl = member(n)->level(side());
  if (!lvl) incoherent("member " + std::to_string(n) + " has no " + to_string(side()) + " level");
  return max(*lvl, fundamental_sequence(limit(), n));
}

Ordinal LeveledSource::prefix_level(std::uint64_t n) const {
  std::lock_guard lock(mu_);
  while (prefix_levels_.size() <= n) {
    const Ordinal next = h(prefix_levels_.size());
    prefix_levels_.push_back(prefix_levels_.empty() ? next : max(prefix_levels_.back(), next));
  }
  return prefix_levels_[n];
}

SourcePtr builtin_source(std::string_view name) {
  return intern(std::make_shared<BuiltinSource>(BuiltinReal::get(name)));
}

SourcePtr sigma2_source(Side side, std::string_view predicate, std::string_view param) {
  return intern(std::make_shared<Sigma2Source>(side, std::string(predicate), BuiltinReal::get(param).name()));
}

SourcePtr extracted_source(Side side, std::uint64_t n, const SourcePtr& from) {
  return intern(std::make_shared<ExtractedSource>(side, n, from));
}

SourcePtr prefix_source(std::uint64_t n, const SourcePtr& leveled) {
  auto family = std::dynamic_pointer_cast<const LeveledSource>(leveled);
  if (!family) incoherent("prefix needs a leveled family, got " + leveled->descriptor());
  return intern(std::make_shared<PrefixSource>(n, std::move(family)));
}

std::optional<PrefixParts> prefix_parts(const SourcePtr& source) {
  auto prefix = std::dynamic_pointer_cast<const PrefixSource>(source);
  if (!prefix) return std::nullopt;
  return PrefixParts{prefix->count(), prefix->family()};
}

SourcePtr leveled_source(const Ordinal& limit, Side side, std::vector<SourcePtr> members) {
  return intern(std::make_shared<ListedLeveled>(limit, side, std::move(members)));
}

SourcePtr approach_source(const Ordinal& limit, Side side, std::string_view point, bool above) {
  return intern(std::make_shared<ApproachLeveled>(limit, side, BuiltinReal::get(point), above));
}

SourcePtr parse_source(std::string_view text) { return read_source(parse_sexpr(text)); }

SourcePtr source_from_param(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
  if (i < text.size() && text[i] == '(') return parse_source(text);
  return builtin_source(text);
}

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

SourceSequence::SourceSequence(Kind kind, Side side, SourcePtr source)
    : kind_(kind), side_(side), source_(std::move(source)) {}

const char* to_string(SourceSequence::Kind kind) {
  switch (kind) {
    case SourceSequence::Kind::RunningBound: return "running-bound";
    case SourceSequence::Kind::Constant: return "constant";
    case SourceSequence::Kind::Extraction: return "extraction";
    case SourceSequence::Kind::Prefixes: return "prefixes";
  }
  return "?";
}

SourcePtr SourceSequence::at(std::uint64_t n) const {
  switch (kind_) {
    case Kind::RunningBound: {
      const CutEnumerator cut = source_->cut_enumerator(side_);
      Dyadic bound = side_ == Side::Right ? Dyadic(1) : Dyadic(0);
      for (std::uint64_t i = 0; i <= n; ++i) {
        const Dyadic e = cut.element(i);
        bound = side_ == Side::Right ? min(bound, e) : max(bound, e);
      }
      return builtin_source(bound.str());
    }
    case Kind::Constant: return source_;
    case Kind::Extraction: return extracted_source(side_, n, source_);
    case Kind::Prefixes: return prefix_source(n, source_);
  }
  return source_;
}

SourceSequence lift_successor(const SourcePtr& source, Side side, const Ordinal& alpha) {
  if (alpha.is_zero()) throw Error(ErrorCode::Domain, "nothing to lift at level 0");
  if (alpha.is_limit()) throw Error(ErrorCode::Domain, "level " + alpha.str() + " is a limit, not a successor");
  const auto own = source->level(side);
  if (!own || *own > alpha) {
    incoherent(std::string("the ") + to_string(side) + " cut of " + source->descriptor() + " is not Sigma^0_" +
               alpha.str());
  }
  const Ordinal beta = alpha.predecessor();
  using Kind = SourceSequence::Kind;
  if (beta.is_zero()) {
    source->cut_enumerator(side);  // must exist
    return SourceSequence(Kind::RunningBound, side, source);
  }
  if (beta == Ordinal(1)) {
    source->sigma2_view(side);
    return SourceSequence(Kind::Extraction, side, source);
  }
  if (auto other = source->level(opposite(side)); other && *other <= beta) {
    return SourceSequence(Kind::Constant, side, source);
  }
  if (auto family = std::dynamic_pointer_cast<const LeveledSource>(source); family && family->side() == side) {
    return SourceSequence(Kind::Prefixes, side, source);
  }
  if (*own <= Ordinal(2)) {
    source->sigma2_view(side);
    return SourceSequence(Kind::Extraction, side, source);
  }
  incoherent("no successor decomposition for " + source->descriptor() + " at level " + alpha.str());
}

SourceSequence limit_decomposition(const SourcePtr& leveled, Side side) {
  auto family = std::dynamic_pointer_cast<const LeveledSource>(leveled);
  if (!family) throw Error(ErrorCode::Domain, "limit decomposition needs a leveled family at a limit level");
  if (family->side() != side) {
    incoherent(std::string("leveled family is ") + to_string(family->side()) + ", not " + to_string(side));
  }
  return SourceSequence(SourceSequence::Kind::Prefixes, side, leveled);
}

}  // namespace contnum
