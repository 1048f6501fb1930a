#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "contnum/dyadic.hpp"
#include "contnum/formula.hpp"
#include "contnum/ordinal.hpp"
#include "contnum/sources.hpp"

namespace contnum {

enum class NumeralFlavor { Existential, Universal };

NumeralFlavor flip(NumeralFlavor q);
const char* to_string(NumeralFlavor q);
/// "exists"/"existential" or "forall"/"universal".
NumeralFlavor parse_flavor(std::string_view text);

/// Finitary numeral of a dyadic r in [0, 1]:
///   nu^E_0 = inf x0 d(x0, x0), nu^A_0 = sup x0 d(x0, x0),
///   nu^Q_r = neg nu^Q'_{1-r} for r > 1/2 (Q' the other flavor),
///   nu^Q_r = half nu^Q_{2r} for 0 < r <= 1/2.
/// Results are cached, so equal numerals share nodes.
Formula dyadic_numeral(const Dyadic& r, NumeralFlavor q);

/// Level-1 numeral from an enumerated cut: CInf over the existential numerals
/// of the (clamped) right-cut elements, or CSup over the universal numerals of
/// the left-cut elements.
Formula base_numeral(const CutEnumerator& cut);

/// CInf (right) or CSup (left) wrapping a family of numerals.
/// Throws Error(Domain) when an explicit member is not a sentence.
Formula successor_numeral(Side side, FamilySpec members);

/// Theorem-style recipe: the side's cut of `source` is Sigma^0_level.
struct NumeralRecipe {
  Side side = Side::Right;
  Ordinal level;
  SourcePtr source;

  /// (numeral SIDE LEVEL SOURCE)
  std::string descriptor() const;
  static NumeralRecipe parse(std::string_view text);
};

/// Transfinite recursion on the recipe level:
///   1       -> base_numeral of the side's cut enumerator
///   beta+1  -> wrapper over numerals (opposite side, level beta) of the
///              lift_successor sequence
///   limit   -> wrapper over numerals of the running-bound prefixes of the
///              leveled family (the source itself, or the one-member family
///              of it)
/// Right recipes classify as Sigma_level, left ones as Pi_level.
/// Throws Error(Domain) at level 0, Error(Incoherent) when the source does
/// not support the recipe.
Formula build_numeral(const NumeralRecipe& recipe);

}  // namespace contnum
