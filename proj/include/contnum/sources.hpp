#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contnum/ordinal.hpp"
#include "contnum/reals.hpp"

namespace contnum {

/// A description of a real in [0, 1] together with what is known about the
/// complexity of its two cuts.
///
/// Descriptor grammar:
///   (real builtin "NAME")
///   (real sigma2-right PRED "PARAM") | (real sigma2-left PRED "PARAM")
///   (real extract SIDE N SOURCE)       r_N extracted from SOURCE's SIDE cut
///   (real leveled ALPHA SIDE (members SOURCE+))          members cycled
///   (real leveled ALPHA SIDE (approach "P" above|below)) member n = P +- 2^-(n+1)
///   (real prefix N SOURCE)             min (right) / max (left) of members 0..N
class RealSource : public std::enable_shared_from_this<RealSource> {
 public:
  virtual ~RealSource() = default;

  /// Canonical descriptor; parse_source(descriptor()) yields this source.
  virtual std::string descriptor() const = 0;
  /// Level at which the cut on this side is known to be Sigma^0.
  virtual std::optional<Ordinal> native_level(Side side) const = 0;
  /// min(native(side), native(opposite) + 1).
  std::optional<Ordinal> level(Side side) const;

  /// Throws Error(Incoherent) unless the cut on this side is enumerable.
  virtual CutEnumerator cut_enumerator(Side side) const;
  /// Throws Error(Incoherent) unless the cut on this side is Sigma^0_2.
  virtual std::shared_ptr<const Sigma2Predicate> sigma2_view(Side side) const;
  /// Stage approximations, or null when the source has none.
  virtual std::shared_ptr<const StagedReal> staged() const { return nullptr; }
  /// The exact value as a builtin real, when known.
  virtual const BuiltinReal* ground_truth() const { return nullptr; }
  /// Text identifying the source inside generator parameters: the bare name
  /// for builtin reals, the descriptor otherwise.
  virtual std::string short_name() const { return descriptor(); }
};

using SourcePtr = std::shared_ptr<const RealSource>;

/// Sources are interned by canonical descriptor, so equal descriptors share
/// enumerators and stage tables.
SourcePtr parse_source(std::string_view text);
/// Bare builtin name or a descriptor.
SourcePtr source_from_param(std::string_view text);

SourcePtr builtin_source(std::string_view name);
SourcePtr sigma2_source(Side side, std::string_view predicate, std::string_view param);
SourcePtr extracted_source(Side side, std::uint64_t n, const SourcePtr& from);
SourcePtr prefix_source(std::uint64_t n, const SourcePtr& leveled);

/// Family of sources indexed by n with levels h(n) cofinal in a limit.
class LeveledSource : public RealSource {
 public:
  virtual const Ordinal& limit() const = 0;
  virtual Side side() const = 0;
  virtual SourcePtr member(std::uint64_t n) const = 0;
  /// max(level of member n on side(), fundamental_sequence(limit, n)).
  Ordinal h(std::uint64_t n) const;
  /// max(h(0), ..., h(n)).
  Ordinal prefix_level(std::uint64_t n) const;

 private:
  mutable std::mutex mu_;
  mutable std::vector<Ordinal> prefix_levels_;  // prefix_level(0..)
};

struct PrefixParts {
  std::uint64_t count;  // members 0..count-1
  std::shared_ptr<const LeveledSource> family;
};

/// Components of a (real prefix ...) source, or nullopt for other kinds.
std::optional<PrefixParts> prefix_parts(const SourcePtr& source);

SourcePtr leveled_source(const Ordinal& limit, Side side, std::vector<SourcePtr> members);
SourcePtr approach_source(const Ordinal& limit, Side side, std::string_view point, bool above);

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

/// Sequence of sources produced by a successor or limit step.
class SourceSequence {
 public:
  enum class Kind {
    RunningBound,  // running min/max of a cut enumeration, as dyadic constants
    Constant,      // the source itself, already low enough on the other side
    Extraction,    // the extracted sequence of a Sigma^0_2 view
    Prefixes,      // running min/max over the members of a leveled family
  };

  SourceSequence(Kind kind, Side side, SourcePtr source);

  Kind kind() const { return kind_; }
  Side side() const { return side_; }
  const SourcePtr& source() const { return source_; }
  SourcePtr at(std::uint64_t n) const;

 private:
  Kind kind_;
  Side side_;
  SourcePtr source_;
};

const char* to_string(SourceSequence::Kind kind);

/// For a side-S source of level alpha = beta + 1, a sequence of sources whose
/// opposite cut has level at most beta and whose inf (S = right) or sup
/// (S = left) is the source's value; monotone in n. Throws Error(Domain) for
/// alpha = 0 or a limit, Error(Incoherent) when the source is above alpha or
/// no decomposition applies.
SourceSequence lift_successor(const SourcePtr& source, Side side, const Ordinal& alpha);

/// Running min (right) or max (left) over the members of a leveled family.
SourceSequence limit_decomposition(const SourcePtr& leveled, Side side);

}  // namespace contnum
