#include "contnum/formula.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <ostream>

#include "contnum/error.hpp"
#include "contnum/sexpr.hpp"

namespace contnum {

void register_builtin_generators(GeneratorRegistry& registry);  // numerals.cpp

// ---------------------------------------------------------------------------
// Rank
// ---------------------------------------------------------------------------

std::string Rank::str() const {
  switch (flavor) {
    case Flavor::Finitary: return "Finitary";
    case Flavor::Sigma: return "Sigma_" + level.str();
    case Flavor::Pi: return "Pi_" + level.str();
  }
  return "?";
}

std::ostream& operator<<(std::ostream& os, const Rank& r) { return os << r.str(); }

Ordinal sigma_level(const Rank& r) {
  switch (r.flavor) {
    case Flavor::Finitary: return Ordinal(0);
    case Flavor::Sigma: return r.level;
    case Flavor::Pi: return r.level.successor();
  }
  return Ordinal(0);
}

Ordinal pi_level(const Rank& r) {
  switch (r.flavor) {
    case Flavor::Finitary: return Ordinal(0);
    case Flavor::Sigma: return r.level.successor();
    case Flavor::Pi: return r.level;
  }
  return Ordinal(0);
}

// ---------------------------------------------------------------------------
// Nodes
// ---------------------------------------------------------------------------

struct Formula::Node {
  Kind kind;
  unsigned vars[2] = {0, 0};
  std::vector<Formula> operands;
  std::unique_ptr<FamilySpec> family;
  bool finitary = true;
};

namespace {

bool operands_finitary(const std::vector<Formula>& ops) {
  return std::all_of(ops.begin(), ops.end(), [](const Formula& f) { return f.is_finitary(); });
}

}  // namespace

Formula Formula::dist(unsigned lhs, unsigned rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atomic;
  n->vars[0] = lhs;
  n->vars[1] = rhs;
  return Formula(std::move(n));
}

#define CONTNUM_UNARY(NAME, KIND)              \
  Formula Formula::NAME(Formula f) {           \
    auto n = std::make_shared<Node>();         \
    n->kind = Kind::KIND;                      \
    n->operands.push_back(std::move(f));       \
    n->finitary = operands_finitary(n->operands); \
    return Formula(std::move(n));              \
  }

CONTNUM_UNARY(neg, Neg)
CONTNUM_UNARY(half, Half)
#undef CONTNUM_UNARY

Formula Formula::dotminus(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::DotMinus;
  n->operands = {std::move(lhs), std::move(rhs)};
  n->finitary = operands_finitary(n->operands);
  return Formula(std::move(n));
}

Formula Formula::inf(unsigned var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::InfQ;
  n->vars[0] = var;
  n->operands.push_back(std::move(body));
  n->finitary = operands_finitary(n->operands);
  return Formula(std::move(n));
}

Formula Formula::sup(unsigned var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SupQ;
  n->vars[0] = var;
  n->operands.push_back(std::move(body));
  n->finitary = operands_finitary(n->operands);
  return Formula(std::move(n));
}

namespace {

void check_family(const FamilySpec& family) {
  if (family.is_explicit()) {
    if (family.as_explicit().members.empty()) throw Error(ErrorCode::Domain, "explicit family must be non-empty");
  } else {
    const auto& g = family.as_generated();
    GeneratorRegistry::instance().get(g.generator).validate(g.params);
  }
}

}  // namespace

Formula Formula::cinf(FamilySpec family) {
  check_family(family);
  auto n = std::make_shared<Node>();
  n->kind = Kind::CInf;
  n->family = std::make_unique<FamilySpec>(std::move(family));
  n->finitary = false;
  return Formula(std::move(n));
}

Formula Formula::csup(FamilySpec family) {
  check_family(family);
  auto n = std::make_shared<Node>();
  n->kind = Kind::CSup;
  n->family = std::make_unique<FamilySpec>(std::move(family));
  n->finitary = false;
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
unsigned Formula::var(std::size_t i) const { return node_->vars[i]; }
const Formula& Formula::operand(std::size_t i) const { return node_->operands.at(i); }
const FamilySpec& Formula::family() const {
  if (!node_->family) throw Error(ErrorCode::Domain, "formula node has no family");
  return *node_->family;
}
bool Formula::is_finitary() const { return node_->finitary; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Formula::Kind::Atomic: return x.vars[0] == y.vars[0] && x.vars[1] == y.vars[1];
    case Formula::Kind::InfQ:
    case Formula::Kind::SupQ: return x.vars[0] == y.vars[0] && x.operands[0] == y.operands[0];
    case Formula::Kind::CInf:
    case Formula::Kind::CSup: return *x.family == *y.family;
    default: return x.operands == y.operands;
  }
}

FamilySpec FamilySpec::list(std::vector<Formula> members) { return FamilySpec(Explicit{std::move(members)}); }

FamilySpec FamilySpec::generated(std::string generator, std::string params) {
  return FamilySpec(Generated{std::move(generator), std::move(params)});
}

bool operator==(const FamilySpec& a, const FamilySpec& b) {
  if (a.is_explicit() != b.is_explicit()) return false;
  if (a.is_explicit()) return a.as_explicit().members == b.as_explicit().members;
  return a.as_generated().generator == b.as_generated().generator && a.as_generated().params == b.as_generated().params;
}

// ---------------------------------------------------------------------------
// Generator registry
// ---------------------------------------------------------------------------

GeneratorRegistry::GeneratorRegistry() { register_builtin_generators(*this); }

GeneratorRegistry& GeneratorRegistry::instance() {
  static GeneratorRegistry registry;
  return registry;
}

void GeneratorRegistry::add(std::unique_ptr<FamilyGenerator> generator) {
  if (find(generator->name())) {
    throw Error(ErrorCode::Domain, "generator registered twice: " + std::string(generator->name()));
  }
  generators_.push_back(std::move(generator));
}

const FamilyGenerator* GeneratorRegistry::find(std::string_view name) const {
  for (const auto& g : generators_) {
    if (g->name() == name) return g.get();
  }
  return nullptr;
}

const FamilyGenerator& GeneratorRegistry::get(std::string_view name) const {
  if (const auto* g = find(name)) return *g;
  throw Error(ErrorCode::UnknownGenerator, "unknown generator '" + std::string(name) + "'");
}

std::vector<std::string> GeneratorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& g : generators_) out.emplace_back(g->name());
  return out;
}

namespace {

std::string family_key(const FamilySpec::Generated& g) { return g.generator + '\x1f' + g.params; }

}  // namespace

Formula family_member(const FamilySpec& family, std::size_t n) {
  if (family.is_explicit()) {
    const auto& members = family.as_explicit().members;
    if (n >= members.size()) {
      throw Error(ErrorCode::ExhaustedFamily,
                  "explicit family has " + std::to_string(members.size()) + " members, index " + std::to_string(n));
    }
    return members[n];
  }
  const auto& g = family.as_generated();
  return GeneratorRegistry::instance().get(g.generator).member(g.params, n);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

void write(const Formula& f, std::string& out) {
  auto var = [&](unsigned v) { out += "x" + std::to_string(v); };
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      out += "(dist ";
      var(f.var(0));
      out += " ";
      var(f.var(1));
      out += ")";
      return;
    case Formula::Kind::Neg:
      out += "(neg ";
      write(f.operand(), out);
      out += ")";
      return;
    case Formula::Kind::Half:
      out += "(half ";
      write(f.operand(), out);
      out += ")";
      return;
    case Formula::Kind::DotMinus:
      out += "(dotminus ";
      write(f.operand(0), out);
      out += " ";
      write(f.operand(1), out);
      out += ")";
      return;
    case Formula::Kind::InfQ:
    case Formula::Kind::SupQ:
      out += f.kind() == Formula::Kind::InfQ ? "(inf " : "(sup ";
      var(f.var(0));
      out += " ";
      write(f.operand(), out);
      out += ")";
      return;
    case Formula::Kind::CInf:
    case Formula::Kind::CSup: {
      out += f.kind() == Formula::Kind::CInf ? "(cinf " : "(csup ";
      const auto& fam = f.family();
      if (fam.is_explicit()) {
        out += "(list";
        for (const auto& m : fam.as_explicit().members) {
          out += " ";
          write(m, out);
        }
        out += ")";
      } else {
        out += "(gen " + fam.as_generated().generator + " " + quote_string(fam.as_generated().params) + ")";
      }
      out += ")";
      return;
    }
  }
}

[[noreturn]] void syntax(const SExpr& at, const std::string& what) { throw Error(ErrorCode::Syntax, what, at.offset); }

unsigned read_var(const SExpr& e) {
  if (!e.is_symbol() || e.text.size() < 2 || e.text[0] != 'x') syntax(e, "expected a variable x<digits>");
  unsigned long v = 0;
  for (std::size_t i = 1; i < e.text.size(); ++i) {
    const char c = e.text[i];
    if (c < '0' || c > '9') syntax(e, "expected a variable x<digits>");
    v = v * 10 + static_cast<unsigned long>(c - '0');
    if (v > 1'000'000) syntax(e, "variable index too large");
  }
  return static_cast<unsigned>(v);
}

void expect_size(const SExpr& e, std::size_t n, const char* form) {
  if (e.items.size() != n) {
    syntax(e, std::string("'") + form + "' expects " + std::to_string(n - 1) + " argument(s)");
  }
}

Formula read_formula(const SExpr& e);

FamilySpec read_family(const SExpr& e) {
  if (e.is_form("list")) {
    if (e.items.size() < 2) syntax(e, "'list' needs at least one formula");
    std::vector<Formula> members;
    for (std::size_t i = 1; i < e.items.size(); ++i) members.push_back(read_formula(e.items[i]));
    return FamilySpec::list(std::move(members));
  }
  if (e.is_form("gen")) {
    expect_size(e, 3, "gen");
    if (!e.items[1].is_symbol()) syntax(e.items[1], "generator name must be a symbol");
    if (!e.items[2].is_string()) syntax(e.items[2], "generator parameters must be a string");
    const auto& name = e.items[1].text;
    const auto& generator = GeneratorRegistry::instance().get(name);
    try {
      generator.validate(e.items[2].text);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::Syntax) syntax(e.items[2], std::string("bad parameters: ") + err.what());
      throw;
    }
    return FamilySpec::generated(name, e.items[2].text);
  }
  syntax(e, "expected (list ...) or (gen NAME \"params\")");
}

Formula read_formula(const SExpr& e) {
  if (!e.is_list() || e.items.empty() || !e.items[0].is_symbol()) syntax(e, "expected a formula");
  const std::string& head = e.items[0].text;
  if (head == "dist") {
    expect_size(e, 3, "dist");
    return Formula::dist(read_var(e.items[1]), read_var(e.items[2]));
  }
  if (head == "neg") {
    expect_size(e, 2, "neg");
    return Formula::neg(read_formula(e.items[1]));
  }
  if (head == "half") {
    expect_size(e, 2, "half");
    return Formula::half(read_formula(e.items[1]));
  }
  if (head == "dotminus") {
    expect_size(e, 3, "dotminus");
    return Formula::dotminus(read_formula(e.items[1]), read_formula(e.items[2]));
  }
  if (head == "inf" || head == "sup") {
    expect_size(e, 3, head == "inf" ? "inf" : "sup");
    const unsigned v = read_var(e.items[1]);
    Formula body = read_formula(e.items[2]);
    return head == "inf" ? Formula::inf(v, std::move(body)) : Formula::sup(v, std::move(body));
  }
  if (head == "cinf" || head == "csup") {
    expect_size(e, 2, head == "cinf" ? "cinf" : "csup");
    FamilySpec fam = read_family(e.items[1]);
    return head == "cinf" ? Formula::cinf(std::move(fam)) : Formula::csup(std::move(fam));
  }
  syntax(e.items[0], "unknown connective '" + head + "'");
}

}  // namespace

std::string serialize(const Formula& f) {
  std::string out;
  write(f, out);
  return out;
}

Formula parse_formula(std::string_view code) { return read_formula(parse_sexpr(code)); }

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << serialize(f); }

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

Rank swap_flavor(Rank r) {
  if (r.flavor == Flavor::Sigma) r.flavor = Flavor::Pi;
  else if (r.flavor == Flavor::Pi) r.flavor = Flavor::Sigma;
  return r;
}

bool within_bound(const Rank& r, const FamilyBound& b) {
  if (r.flavor == Flavor::Finitary) return true;
  if (b.strict) return r.level < b.rank.level;
  if (b.rank.flavor == Flavor::Finitary) return false;
  if (r.flavor == b.rank.flavor) return r.level <= b.rank.level;
  return r.level < b.rank.level;
}

// Level contributed by a member to a CInf (Pi side) or CSup (Sigma side).
Ordinal member_level(const Rank& r, bool under_inf) { return under_inf ? pi_level(r) : sigma_level(r); }

Ordinal bound_level(const FamilyBound& b, bool under_inf) {
  if (b.strict) return b.rank.level;  // every member lies strictly below a limit
  return member_level(b.rank, under_inf).successor();
}

class ClassCache {
 public:
  std::optional<Rank> lookup(const std::string& key) {
    std::lock_guard lock(mu_);
    auto it = ranks_.find(key);
    if (it == ranks_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, const Rank& r) {
    std::lock_guard lock(mu_);
    ranks_.emplace(key, r);
  }

 private:
  std::mutex mu_;
  std::map<std::string, Rank> ranks_;
};

ClassCache& class_cache() {
  static ClassCache cache;
  return cache;
}

Rank classify_node(const Formula& f, const ClassifyOptions& options);

Rank classify_family(const Formula& f, const ClassifyOptions& options) {
  const bool under_inf = f.kind() == Formula::Kind::CInf;
  const auto& fam = f.family();
  if (fam.is_explicit()) {
    Ordinal level(1);
    for (const auto& m : fam.as_explicit().members) {
      level = max(level, member_level(classify_node(m, options), under_inf).successor());
    }
    return under_inf ? Rank::sigma(level) : Rank::pi(level);
  }

  const auto& g = fam.as_generated();
  const std::string key = std::string(under_inf ? "inf" : "sup") + '\x1f' + std::to_string(options.spot_check) +
                          '\x1f' + family_key(g);
  if (auto hit = class_cache().lookup(key)) return *hit;

  const auto& generator = GeneratorRegistry::instance().get(g.generator);
  const FamilyBound bound = generator.member_bound(g.params);
  for (std::size_t i = 0; i < options.spot_check; ++i) {
    const Rank r = classify_node(family_member(fam, i), options);
    if (!within_bound(r, bound)) {
      throw Error(ErrorCode::NotNormal, "member " + std::to_string(i) + " of generator '" + g.generator +
                                            "' has rank " + r.str() + ", outside the declared bound " +
                                            bound.rank.str() + (bound.strict ? " (strict)" : ""));
    }
  }
  const Ordinal level = max(Ordinal(1), bound_level(bound, under_inf));
  Rank out = under_inf ? Rank::sigma(level) : Rank::pi(level);
  class_cache().store(key, out);
  return out;
}

Rank classify_node(const Formula& f, const ClassifyOptions& options) {
  if (f.is_finitary()) return Rank::finitary();
  switch (f.kind()) {
    case Formula::Kind::Atomic: return Rank::finitary();
    case Formula::Kind::Neg: return swap_flavor(classify_node(f.operand(), options));
    case Formula::Kind::Half:
    case Formula::Kind::InfQ:
    case Formula::Kind::SupQ: return classify_node(f.operand(), options);
    case Formula::Kind::DotMinus:
      throw Error(ErrorCode::NotNormal, "dotminus operands must be finitary");
    case Formula::Kind::CInf:
    case Formula::Kind::CSup: return classify_family(f, options);
  }
  return Rank::finitary();
}

void collect_free(const Formula& f, std::set<unsigned>& bound, std::set<unsigned>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      for (unsigned v : {f.var(0), f.var(1)}) {
        if (!bound.contains(v)) out.insert(v);
      }
      return;
    case Formula::Kind::InfQ:
    case Formula::Kind::SupQ: {
      const unsigned v = f.var(0);
      const bool was_bound = bound.contains(v);
      bound.insert(v);
      collect_free(f.operand(), bound, out);
      if (!was_bound) bound.erase(v);
      return;
    }
    case Formula::Kind::Neg:
    case Formula::Kind::Half: collect_free(f.operand(), bound, out); return;
    case Formula::Kind::DotMinus:
      collect_free(f.operand(0), bound, out);
      collect_free(f.operand(1), bound, out);
      return;
    case Formula::Kind::CInf:
    case Formula::Kind::CSup: {
      const auto& fam = f.family();
      if (fam.is_explicit()) {
        for (const auto& m : fam.as_explicit().members) collect_free(m, bound, out);
      } else if (!GeneratorRegistry::instance().get(fam.as_generated().generator).sentences_only()) {
        // Members of a generated family share their free variables.
        collect_free(family_member(fam, 0), bound, out);
      }
      return;
    }
  }
}

}  // namespace

Rank classify(const Formula& f, const ClassifyOptions& options) { return classify_node(f, options); }

std::set<unsigned> free_vars(const Formula& f) {
  std::set<unsigned> bound;
  std::set<unsigned> out;
  collect_free(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

}  // namespace contnum
