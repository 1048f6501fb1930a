#include "contnum/numerals.hpp"

#include <map>
#include <mutex>

#include "contnum/error.hpp"
#include "contnum/sexpr.hpp"

namespace contnum {

NumeralFlavor flip(NumeralFlavor q) {
  return q == NumeralFlavor::Existential ? NumeralFlavor::Universal : NumeralFlavor::Existential;
}

const char* to_string(NumeralFlavor q) { return q == NumeralFlavor::Existential ? "exists" : "forall"; }

NumeralFlavor parse_flavor(std::string_view text) {
  if (text == "exists" || text == "existential") return NumeralFlavor::Existential;
  if (text == "forall" || text == "universal") return NumeralFlavor::Universal;
  throw Error(ErrorCode::Syntax, "flavor must be 'exists' or 'forall', got '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Dyadic numerals
// ---------------------------------------------------------------------------

namespace {

class NumeralCache {
 public:
  std::optional<Formula> find(const Dyadic& r, NumeralFlavor q) {
    std::lock_guard lock(mu_);
    auto it = table_.find({r, q});
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }
  Formula store(const Dyadic& r, NumeralFlavor q, Formula f) {
    std::lock_guard lock(mu_);
    return table_.emplace(std::make_pair(r, q), std::move(f)).first->second;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<Dyadic, NumeralFlavor>, Formula> table_;
};

NumeralCache& numeral_cache() {
  static NumeralCache cache;
  return cache;
}

}  // namespace

Formula dyadic_numeral(const Dyadic& r, NumeralFlavor q) {
  if (r < Dyadic(0) || r > Dyadic(1)) {
    throw Error(ErrorCode::Domain, "dyadic numeral needs a value in [0, 1], got " + r.str());
  }
  if (auto hit = numeral_cache().find(r, q)) return *hit;
  Formula f = [&] {
    if (r == Dyadic(0)) {
      Formula d = Formula::dist(0, 0);
      return q == NumeralFlavor::Existential ? Formula::inf(0, d) : Formula::sup(0, d);
    }
    if (r > Dyadic(1).half()) return Formula::neg(dyadic_numeral(Dyadic(1) - r, flip(q)));
    return Formula::half(dyadic_numeral(r.scaled(1), q));
  }();
  return numeral_cache().store(r, q, std::move(f));
}

// ---------------------------------------------------------------------------
// Wrappers
// ---------------------------------------------------------------------------

namespace {

Formula wrap(Side side, FamilySpec family) {
  return side == Side::Right ? Formula::cinf(std::move(family)) : Formula::csup(std::move(family));
}

Formula::Kind wrapper_kind(Side side) { return side == Side::Right ? Formula::Kind::CInf : Formula::Kind::CSup; }

const char* cut_generator(Side side) { return side == Side::Right ? "dyadic-upper-cut" : "dyadic-lower-cut"; }

}  // namespace

Formula base_numeral(const CutEnumerator& cut) {
  return wrap(cut.side(), FamilySpec::generated(cut_generator(cut.side()), cut.target()));
}

Formula successor_numeral(Side side, FamilySpec members) {
  if (members.is_explicit()) {
    for (const auto& m : members.as_explicit().members) {
      if (!is_sentence(m)) throw Error(ErrorCode::Domain, "numeral members must be sentences: " + serialize(m));
    }
  }
  return wrap(side, std::move(members));
}

// ---------------------------------------------------------------------------
// Recipes
// ---------------------------------------------------------------------------

std::string NumeralRecipe::descriptor() const {
  return std::string("(numeral ") + to_string(side) + " " + level.str() + " " + source->descriptor() + ")";
}

NumeralRecipe NumeralRecipe::parse(std::string_view text) {
  const SExpr e = parse_sexpr(text);
  if (!e.is_form("numeral") || e.items.size() != 4) {
    throw Error(ErrorCode::Syntax, "expected (numeral SIDE LEVEL SOURCE)", e.offset);
  }
  NumeralRecipe r;
  if (!e.items[1].is_symbol()) throw Error(ErrorCode::Syntax, "expected 'left' or 'right'", e.items[1].offset);
  try {
    r.side = parse_side(e.items[1].text);
  } catch (const Error& err) {
    throw Error(ErrorCode::Syntax, err.what(), e.items[1].offset);
  }
  if (!e.items[2].is_symbol()) throw Error(ErrorCode::Syntax, "expected an ordinal level", e.items[2].offset);
  try {
    r.level = Ordinal::parse(e.items[2].text);
  } catch (const Error& err) {
    throw Error(ErrorCode::Syntax, err.what(), e.items[2].offset);
  }
  r.source = parse_source(to_string(e.items[3]));
  return r;
}

namespace {

void check_level(const NumeralRecipe& r) {
  if (r.level.is_zero()) throw Error(ErrorCode::Domain, "numerals start at level 1");
  auto own = r.source->level(r.side);
  if (!own) {
    throw Error(ErrorCode::Incoherent,
                std::string("the ") + to_string(r.side) + " cut of " + r.source->descriptor() + " has no known level");
  }
  if (*own > r.level) {
    throw Error(ErrorCode::Incoherent, std::string("the ") + to_string(r.side) + " cut of " +
                                           r.source->descriptor() + " has level " + own->str() + ", above " +
                                           r.level.str());
  }
}

// The leveled family a limit recipe decomposes: the source itself when it is
// already leveled at this limit on this side, else the one-member family.
SourcePtr limit_family(const NumeralRecipe& r) {
  if (auto family = std::dynamic_pointer_cast<const LeveledSource>(r.source)) {
    if (family->limit() == r.level && family->side() == r.side) return r.source;
  }
  return leveled_source(r.level, r.side, {r.source});
}

}  // namespace

Formula build_numeral(const NumeralRecipe& recipe) {
  check_level(recipe);
  if (prefix_parts(recipe.source)) {
    return wrap(recipe.side, FamilySpec::generated("interleave", recipe.descriptor()));
  }
  if (recipe.level == Ordinal(1)) return base_numeral(recipe.source->cut_enumerator(recipe.side));
  if (recipe.level.is_successor()) {
    lift_successor(recipe.source, recipe.side, recipe.level);  // fail early when no lift applies
    return wrap(recipe.side, FamilySpec::generated("successor", recipe.descriptor()));
  }
  NumeralRecipe limit = recipe;
  limit.source = limit_family(recipe);
  return wrap(recipe.side, FamilySpec::generated("limit", limit.descriptor()));
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

// Parsed parameter blocks, shared across calls.
template <typename State>
class StateCache {
 public:
  template <typename Make>
  std::shared_ptr<const State> get(std::string_view params, Make make) const {
    {
      std::lock_guard lock(mu_);
      if (auto it = table_.find(params); it != table_.end()) return it->second;
    }
    auto fresh = std::make_shared<const State>(make(params));
    std::lock_guard lock(mu_);
    return table_.emplace(std::string(params), std::move(fresh)).first->second;
  }

 private:
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const State>, std::less<>> table_;
};

NumeralRecipe read_recipe(std::string_view params) {
  try {
    return NumeralRecipe::parse(params);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::Syntax) throw;
    throw Error(err.code(), std::string("in generator parameters: ") + err.what());
  }
}

Monotonicity value_monotonicity(Side side) {
  return side == Side::Right ? Monotonicity::Nonincreasing : Monotonicity::Nondecreasing;
}

FamilyBound below_level(Side side, const Ordinal& level) {
  if (level.is_limit()) return {side == Side::Right ? Rank::sigma(level) : Rank::pi(level), true};
  const Ordinal beta = level.predecessor();
  if (beta.is_zero()) return {Rank::finitary(), false};
  return {side == Side::Right ? Rank::pi(beta) : Rank::sigma(beta), false};
}

class CutGenerator final : public FamilyGenerator {
 public:
  explicit CutGenerator(Side side) : side_(side) {}

  std::string_view name() const override { return cut_generator(side_); }
  void validate(std::string_view params) const override { state(params); }
  Formula member(std::string_view params, std::size_t n) const override {
    Dyadic v = state(params)->element(n);
    if (v < Dyadic(0)) v = Dyadic(0);
    if (v > Dyadic(1)) v = Dyadic(1);
    return dyadic_numeral(v, side_ == Side::Right ? NumeralFlavor::Existential : NumeralFlavor::Universal);
  }
  FamilyBound member_bound(std::string_view) const override { return {Rank::finitary(), false}; }
  bool sentences_only() const override { return true; }
  Monotonicity monotonicity(std::string_view) const override { return Monotonicity::None; }

 private:
  std::shared_ptr<const CutEnumerator> state(std::string_view params) const {
    return cache_.get(params, [&](std::string_view p) { return source_from_param(p)->cut_enumerator(side_); });
  }

  Side side_;
  StateCache<CutEnumerator> cache_;
};

struct SuccessorState {
  NumeralRecipe recipe;
  Ordinal beta;
  SourceSequence sequence;
};

class SuccessorGenerator final : public FamilyGenerator {
 public:
  std::string_view name() const override { return "successor"; }
  void validate(std::string_view params) const override { state(params); }
  Formula member(std::string_view params, std::size_t n) const override {
    auto s = state(params);
    return build_numeral({opposite(s->recipe.side), s->beta, s->sequence.at(n)});
  }
  FamilyBound member_bound(std::string_view params) const override {
    auto s = state(params);
    return below_level(s->recipe.side, s->recipe.level);
  }
  bool sentences_only() const override { return true; }
  Monotonicity monotonicity(std::string_view params) const override {
    return value_monotonicity(state(params)->recipe.side);
  }
  std::optional<Formula::Kind> generated_member_root(std::string_view params) const override {
    // Members are built numerals, which always wrap a generated family.
    return wrapper_kind(opposite(state(params)->recipe.side));
  }

 private:
  std::shared_ptr<const SuccessorState> state(std::string_view params) const {
    return cache_.get(params, [](std::string_view p) {
      NumeralRecipe r = read_recipe(p);
      if (!r.level.is_successor() || r.level == Ordinal(1)) {
        throw Error(ErrorCode::Domain, "successor family needs a successor level above 1, got " + r.level.str());
      }
      check_level(r);
      SourceSequence seq = lift_successor(r.source, r.side, r.level);
      const Ordinal beta = r.level.predecessor();
      return SuccessorState{std::move(r), beta, std::move(seq)};
    });
  }

  StateCache<SuccessorState> cache_;
};

struct LimitState {
  NumeralRecipe recipe;
  std::shared_ptr<const LeveledSource> family;
  // Numeral of family member i at level h(i), built on first use.
  struct Roots {
    std::mutex mu;
    std::vector<Formula> built;
  };
  std::shared_ptr<Roots> roots = std::make_shared<Roots>();
};

// Member n combines the numerals of family members 0..n with the wrapper of
// the recipe side: a numeral of the running min (right) or max (left). The
// member numerals are shared between all later members.
class LimitGenerator final : public FamilyGenerator {
 public:
  std::string_view name() const override { return "limit"; }
  void validate(std::string_view params) const override { state(params); }
  Formula member(std::string_view params, std::size_t n) const override {
    auto s = state(params);
    std::vector<Formula> members;
    {
      auto& roots = *s->roots;
      std::lock_guard lock(roots.mu);
      while (roots.built.size() <= n) {
        const std::uint64_t i = roots.built.size();
        roots.built.push_back(build_numeral({s->recipe.side, s->family->h(i), s->family->member(i)}));
      }
      members.assign(roots.built.begin(), roots.built.begin() + static_cast<std::ptrdiff_t>(n + 1));
    }
    return wrap(s->recipe.side, FamilySpec::list(std::move(members)));
  }
  FamilyBound member_bound(std::string_view params) const override {
    auto s = state(params);
    return below_level(s->recipe.side, s->recipe.level);
  }
  bool sentences_only() const override { return true; }
  Monotonicity monotonicity(std::string_view params) const override {
    return value_monotonicity(state(params)->recipe.side);
  }

 private:
  std::shared_ptr<const LimitState> state(std::string_view params) const {
    return cache_.get(params, [](std::string_view p) {
      NumeralRecipe r = read_recipe(p);
      if (!r.level.is_limit()) throw Error(ErrorCode::Domain, "limit family needs a limit level, got " + r.level.str());
      check_level(r);
      limit_decomposition(r.source, r.side);  // validates the family
      auto family = std::dynamic_pointer_cast<const LeveledSource>(r.source);
      if (family->limit() != r.level) {
        throw Error(ErrorCode::Incoherent, "leveled family at " + family->limit().str() + " used at " + r.level.str());
      }
      return LimitState{std::move(r), std::move(family)};
    });
  }

  StateCache<LimitState> cache_;
};

struct InterleaveState {
  NumeralRecipe recipe;
  PrefixParts parts;
};

// Members of the prefix numeral: the root families of the member numerals,
// taken round-robin, so that the wrapper's inf/sup is the min/max of the
// member values.
class InterleaveGenerator final : public FamilyGenerator {
 public:
  std::string_view name() const override { return "interleave"; }
  void validate(std::string_view params) const override { state(params); }
  Formula member(std::string_view params, std::size_t n) const override {
    auto s = state(params);
    const std::uint64_t i = n % s->parts.count;
    const std::uint64_t j = n / s->parts.count;
    const auto& family = s->parts.family;
    const Formula root = build_numeral({s->recipe.side, family->h(i), family->member(i)});
    return family_member(root.family(), j);
  }
  FamilyBound member_bound(std::string_view params) const override {
    auto s = state(params);
    return below_level(s->recipe.side, s->recipe.level);
  }
  bool sentences_only() const override { return true; }
  Monotonicity monotonicity(std::string_view) const override { return Monotonicity::None; }

 private:
  std::shared_ptr<const InterleaveState> state(std::string_view params) const {
    return cache_.get(params, [](std::string_view p) {
      NumeralRecipe r = read_recipe(p);
      auto parts = prefix_parts(r.source);
      if (!parts) throw Error(ErrorCode::Domain, "interleave family needs a prefix source");
      check_level(r);
      return InterleaveState{std::move(r), *parts};
    });
  }

  StateCache<InterleaveState> cache_;
};

}  // namespace

void register_builtin_generators(GeneratorRegistry& registry) {
  registry.add(std::make_unique<CutGenerator>(Side::Right));
  registry.add(std::make_unique<CutGenerator>(Side::Left));
  registry.add(std::make_unique<SuccessorGenerator>());
  registry.add(std::make_unique<LimitGenerator>());
  registry.add(std::make_unique<InterleaveGenerator>());
}

}  // namespace contnum
