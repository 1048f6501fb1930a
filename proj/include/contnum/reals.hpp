#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "contnum/dyadic.hpp"

namespace contnum {

using Rational = boost::multiprecision::cpp_rational;

Rational to_rational(const Dyadic& d);
/// "p/q" in lowest terms, or "p" for integers.
std::string rational_str(const Rational& q);
/// Accepts "p", "p/q" and "m/2^k".
Rational parse_rational(std::string_view text);

enum class Side { Left, Right };

Side opposite(Side s);
const char* to_string(Side s);
Side parse_side(std::string_view text);

// ---------------------------------------------------------------------------
// Fixed codings
// ---------------------------------------------------------------------------

/// Cantor pairing <x, y> = (x + y)(x + y + 1)/2 + y.
struct PairingCodec {
  static std::uint64_t pair(std::uint64_t x, std::uint64_t y);
  static std::uint64_t first(std::uint64_t n);
  static std::uint64_t second(std::uint64_t n);
};

/// The fixed enumeration n -> q_n of the rationals. Even indices run through
/// the dyadics (m + 1 = 2^a (2b + 1): integer part zigzag(a), fractional
/// part the b-th dyadic of [0, 1) breadth first), odd indices run through
/// the remaining rationals in signed Calkin-Wilf order.
/// q_0..q_7 = 0, 1/3, -1, -1/3, 1/2, 2/3, 1, -2/3.
class RationalEnumeration {
 public:
  static Rational at(std::uint64_t n);
  /// max{q_i : i < t, q_i < 1}, or nullopt for t = 0.
  static std::optional<Rational> max_below_one(std::uint64_t t);
  /// min{q_i : i < t, q_i > 0}, or nullopt when no such q_i exists yet.
  static std::optional<Rational> min_above_zero(std::uint64_t t);
};

/// i-th dyadic of the open unit interval in breadth-first order:
/// 1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, 1/16, ...
Dyadic dyadic_candidate(std::uint64_t i);

// ---------------------------------------------------------------------------
// Builtin reals
// ---------------------------------------------------------------------------

/// A real in [0, 1] whose order relation to any rational is decidable by
/// integer arithmetic. Names: rational literals "p/q" (and "m/2^k") inside
/// [0, 1], "sqrt-half" = sqrt(1/2), "phi-inverse" = (sqrt 5 - 1)/2 and
/// "cbrt-half" = cbrt(1/2).
class BuiltinReal {
 public:
  /// Throws Error(Domain) for unknown names or literals outside [0, 1].
  static const BuiltinReal& get(std::string_view name);
  static std::vector<std::string> named_constants();

  const std::string& name() const { return name_; }
  /// Sign of q - r.
  int compare(const Rational& q) const;
  int compare(const Dyadic& d) const { return compare(to_rational(d)); }
  const std::optional<Rational>& rational_value() const { return rational_; }
  std::optional<Dyadic> dyadic_value() const;
  double to_double() const;

 private:
  enum class Kind { Literal, SqrtHalf, PhiInverse, CbrtHalf };
  BuiltinReal(std::string name, Kind kind, std::optional<Rational> value);

  std::string name_;
  Kind kind_;
  std::optional<Rational> rational_;
};

// ---------------------------------------------------------------------------
// Cut enumerators
// ---------------------------------------------------------------------------

/// Total enumeration of (dyadic elements of) one Dedekind cut. Elements are
/// computed once and shared; every element lies in the cut. When a stage
/// finds nothing new the previous element is repeated, and before any
/// element is found the sentinel -1 (Left) or 2 (Right) is emitted.
class CutStream {
 public:
  virtual ~CutStream() = default;
  virtual Dyadic element(std::uint64_t n) const = 0;
};

class CutEnumerator {
 public:
  CutEnumerator(Side side, std::string target, std::shared_ptr<const CutStream> stream);

  Side side() const { return side_; }
  /// Source the enumerator describes: a builtin name or a source descriptor.
  const std::string& target() const { return target_; }
  Dyadic element(std::uint64_t n) const { return stream_->element(n); }
  /// Stateful cursor over element(0), element(1), ...
  Dyadic next() { return stream_->element(cursor_++); }

 private:
  Side side_;
  std::string target_;
  std::shared_ptr<const CutStream> stream_;
  std::uint64_t cursor_ = 0;
};

/// (left, right) enumerators of a builtin real. Stage n tests
/// dyadic_candidate(n) against the exact value.
std::pair<CutEnumerator, CutEnumerator> builtin_real(std::string_view name);

// ---------------------------------------------------------------------------
// Sigma^0_2 predicates
// ---------------------------------------------------------------------------

/// Decidable R(x0, x1, q) presenting one cut as an exists-forall set:
/// Right: q > r <=> exists x0 forall x1 R; Left: q < r likewise.
class Sigma2Predicate {
 public:
  virtual ~Sigma2Predicate() = default;
  virtual Side side() const = 0;
  /// Stable identity, used to share stage tables.
  virtual std::string key() const = 0;
  virtual bool holds(std::uint64_t x0, std::uint64_t x1, const Rational& q) const = 0;
  /// Name of the builtin real the predicate encodes, when there is one.
  virtual std::optional<std::string> encoded_real() const { return std::nullopt; }
};

/// Named predicates, parameter = builtin real name P:
///   shifted-above  (Right)  R <=> q >= P + 2^-x0
///   shifted-below  (Left)   R <=> q <= P - 2^-x0
///   exact-above    (Right)  R <=> q > P
///   exact-below    (Left)   R <=> q < P
///   decoy-above / decoy-below: even x0 = 2m behaves as shifted with 2^-m;
///     odd x0 holds only for x1 < x0, so it never witnesses.
std::shared_ptr<const Sigma2Predicate> make_sigma2_predicate(std::string_view name, std::string_view param);
std::vector<std::string> sigma2_predicate_names();

/// R1 of a predicate. Right: R1(x0, x1, q) <=> c <= q and R((x0)0, x1, c)
/// with c = q_{(x0)1}; Left uses q <= c. R1 is upward (Right) or downward
/// (Left) closed in q.
class TransformedPredicate {
 public:
  explicit TransformedPredicate(std::shared_ptr<const Sigma2Predicate> base);

  Side side() const { return base_->side(); }
  const Sigma2Predicate& base() const { return *base_; }
  Rational witness(std::uint64_t x0) const;
  bool guard(std::uint64_t x0, const Rational& q) const;
  /// The q-independent part R((x0)0, x1, q_{(x0)1}).
  bool core(std::uint64_t x0, std::uint64_t x1) const;
  bool holds(std::uint64_t x0, std::uint64_t x1, const Rational& q) const;

 private:
  std::shared_ptr<const Sigma2Predicate> base_;
};

TransformedPredicate transform_R1(std::shared_ptr<const Sigma2Predicate> pred);

// ---------------------------------------------------------------------------
// Staged reals and sequence extraction
// ---------------------------------------------------------------------------

enum class Direction { FromAbove, FromBelow, Limit };

const char* to_string(Direction d);

/// Stage approximations of a real in [0, 1].
class StagedReal {
 public:
  virtual ~StagedReal() = default;
  virtual Dyadic approx(std::uint64_t t) const = 0;
  virtual Direction direction() const = 0;
};

/// Bits kept by stage-t approximations: 8 + bit_width(t).
std::uint32_t stage_precision(std::uint64_t t);

/// Sequence (r_n) extracted from a Sigma^0_2 predicate.
///
/// Right: S_n = (-inf, 0) u {q < 1 : exists x1 not R1(n, x1, q)}, s_n = sup S_n,
/// r_n = min(s_0..s_n); r_n is approximated from below at stage t by a search
/// over x1 < t and q_0..q_{t-1}, rounded down to stage_precision(t) bits.
/// Left mirrors this with sup/inf, min/max and rounding swapped.
class ExtractedSequence : public std::enable_shared_from_this<ExtractedSequence> {
 public:
  virtual ~ExtractedSequence() = default;
  virtual Side side() const = 0;
  /// FromBelow for a Right predicate, FromAbove for a Left one.
  virtual Direction direction() const = 0;
  virtual Dyadic approx(std::uint64_t n, std::uint64_t t) const = 0;
  /// Stage-t approximation of s_n (before the running min/max).
  virtual Dyadic component(std::uint64_t n, std::uint64_t t) const = 0;
  std::shared_ptr<const StagedReal> member(std::uint64_t n) const;
};

/// Shared per predicate key.
std::shared_ptr<const ExtractedSequence> extract_seq_right_sigma2(std::shared_ptr<const Sigma2Predicate> pred);
std::shared_ptr<const ExtractedSequence> extract_seq_left_sigma2(std::shared_ptr<const Sigma2Predicate> pred);
std::shared_ptr<const ExtractedSequence> extract_seq(std::shared_ptr<const Sigma2Predicate> pred);

/// Cut stream of a monotone staged real: the left cut of a FromBelow real or
/// the right cut of a FromAbove one. Even stages emit the best of the first
/// candidates against the current approximation, odd stages dovetail over
/// all candidates so that every dyadic of the cut is eventually emitted.
std::shared_ptr<const CutStream> staged_cut_stream(Side side, std::shared_ptr<const StagedReal> real);

/// Sigma^0_2 reading of a Sigma^0_1 cut: Right R(x0, x1, q) <=> q > 1 or
/// element(x0) <= q; Left R <=> q < 0 or q <= element(x0).
std::shared_ptr<const Sigma2Predicate> enumeration_view(const CutEnumerator& cut);

/// Sigma^0_2 reading of the cut opposite to an enumerated one. With
/// d = q_{x0}: Right R(x0, x1, q) <=> d < q and element(x1) < d, i.e. some
/// rational below q bounds the whole left cut; Left mirrors it.
std::shared_ptr<const Sigma2Predicate> complement_view(const CutEnumerator& opposite_cut);

}  // namespace contnum
