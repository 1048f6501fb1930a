#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "contnum/ordinal.hpp"

namespace contnum {

// ---------------------------------------------------------------------------
// Ranks
// ---------------------------------------------------------------------------

enum class Flavor { Finitary, Sigma, Pi };

/// Position of a formula in the Sigma/Pi hierarchy. Finitary formulas sit at
/// level 0; the hierarchy is cumulative, so a rank at level b also counts as
/// both flavors at every level above b.
struct Rank {
  Flavor flavor = Flavor::Finitary;
  Ordinal level;

  static Rank finitary() { return {}; }
  static Rank sigma(Ordinal level) { return {Flavor::Sigma, std::move(level)}; }
  static Rank pi(Ordinal level) { return {Flavor::Pi, std::move(level)}; }

  std::string str() const;
  friend bool operator==(const Rank&, const Rank&) = default;
};

std::ostream& operator<<(std::ostream& os, const Rank& r);

/// Least level at which a formula of rank r counts as Sigma (resp. Pi).
Ordinal sigma_level(const Rank& r);
Ordinal pi_level(const Rank& r);

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

class Formula;

/// The body of a countable inf/sup: either a finite list or a named generator
/// with a textual parameter block. Generated families are total.
class FamilySpec {
 public:
  struct Explicit {
    std::vector<Formula> members;
  };
  struct Generated {
    std::string generator;
    std::string params;
  };

  FamilySpec(Explicit e) : v_(std::move(e)) {}    // NOLINT(google-explicit-constructor)
  FamilySpec(Generated g) : v_(std::move(g)) {}   // NOLINT(google-explicit-constructor)

  static FamilySpec list(std::vector<Formula> members);
  static FamilySpec generated(std::string generator, std::string params);

  bool is_explicit() const { return std::holds_alternative<Explicit>(v_); }
  const Explicit& as_explicit() const { return std::get<Explicit>(v_); }
  const Generated& as_generated() const { return std::get<Generated>(v_); }

  friend bool operator==(const FamilySpec& a, const FamilySpec& b);

 private:
  std::variant<Explicit, Generated> v_;
};

/// Immutable, shared formula of the metric language: the only non-logical
/// symbol is the distance d, variables are x0, x1, ...
class Formula {
 public:
  enum class Kind { Atomic, Neg, DotMinus, Half, InfQ, SupQ, CInf, CSup };

  static Formula dist(unsigned lhs, unsigned rhs);
  static Formula neg(Formula f);
  static Formula dotminus(Formula lhs, Formula rhs);
  static Formula half(Formula f);
  static Formula inf(unsigned var, Formula body);
  static Formula sup(unsigned var, Formula body);
  static Formula cinf(FamilySpec family);
  static Formula csup(FamilySpec family);

  Kind kind() const;
  /// Atomic: the two variables. InfQ/SupQ: var(0) is the bound variable.
  unsigned var(std::size_t i = 0) const;
  /// Neg/Half/InfQ/SupQ: operand(0). DotMinus: operand(0) and operand(1).
  const Formula& operand(std::size_t i = 0) const;
  const FamilySpec& family() const;

  /// True when the formula contains no CInf/CSup node.
  bool is_finitary() const;
  bool is_infinitary_node() const { return kind() == Kind::CInf || kind() == Kind::CSup; }

  /// Node identity, stable for the lifetime of the formula.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Declared bound on the members of a generated family: every member has
/// rank at most `rank`, or when `strict` is set, level strictly below
/// rank.level (used for limit levels).
struct FamilyBound {
  Rank rank;
  bool strict = false;
};

enum class Monotonicity { None, Nonincreasing, Nondecreasing };

class FamilyGenerator {
 public:
  virtual ~FamilyGenerator() = default;

  virtual std::string_view name() const = 0;
  /// Throws Error(Syntax) when the parameter block is malformed.
  virtual void validate(std::string_view params) const = 0;
  /// Must be pure: the same (params, n) always yields an equal formula.
  virtual Formula member(std::string_view params, std::size_t n) const = 0;
  virtual FamilyBound member_bound(std::string_view params) const = 0;
  virtual Monotonicity monotonicity(std::string_view params) const = 0;
  /// CInf or CSup when every member is that node over a generated family,
  /// so that truncation of the member bounds only one side.
  virtual std::optional<Formula::Kind> generated_member_root(std::string_view) const { return std::nullopt; }
  /// True when every member is a sentence, whatever the parameters.
  virtual bool sentences_only() const { return false; }
};

class GeneratorRegistry {
 public:
  static GeneratorRegistry& instance();

  void add(std::unique_ptr<FamilyGenerator> generator);
  const FamilyGenerator* find(std::string_view name) const;
  /// Throws Error(UnknownGenerator).
  const FamilyGenerator& get(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  GeneratorRegistry();
  std::vector<std::unique_ptr<FamilyGenerator>> generators_;
};

/// n-th member. Explicit families signal ExhaustedFamily past their end.
Formula family_member(const FamilySpec& family, std::size_t n);

// ---------------------------------------------------------------------------
// Codes, classification, variables
// ---------------------------------------------------------------------------

std::string serialize(const Formula& f);
Formula parse_formula(std::string_view code);

std::ostream& operator<<(std::ostream& os, const Formula& f);

struct ClassifyOptions {
  /// Number of leading members of each generated family whose rank is
  /// checked against the generator's declared bound.
  std::size_t spot_check = 2;
};

/// Sigma/Pi rank of a classification-normal formula (DotMinus operands
/// finitary). CInf is the Sigma-forming node, CSup the Pi-forming one.
Rank classify(const Formula& f, const ClassifyOptions& options = {});

std::set<unsigned> free_vars(const Formula& f);
bool is_sentence(const Formula& f);

}  // namespace contnum
