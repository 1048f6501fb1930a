#include "contnum/truthval.hpp"

#include <ostream>

#include "contnum/error.hpp"

namespace contnum {

UnitValue::UnitValue(Dyadic value) : value_(std::move(value)) {
  if (value_ < Dyadic(0) || value_ > Dyadic(1)) {
    throw Error(ErrorCode::Domain, "truth value outside [0,1]: " + value_.str());
  }
}

std::ostream& operator<<(std::ostream& os, const UnitValue& v) { return os << v.value(); }

UnitValue neg(const UnitValue& x) { return UnitValue(Dyadic(1) - x.value()); }

UnitValue dotminus(const UnitValue& x, const UnitValue& y) {
  if (x.value() <= y.value()) return UnitValue::zero();
  return UnitValue(x.value() - y.value());
}

UnitValue half(const UnitValue& x) { return UnitValue(x.value().half()); }

Enclosure::Enclosure(UnitValue lo, UnitValue hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) {
    throw Error(ErrorCode::Domain, "inverted enclosure [" + lo_.str() + ", " + hi_.str() + "]");
  }
}

std::string Enclosure::str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

std::ostream& operator<<(std::ostream& os, const Enclosure& e) { return os << e.str(); }

namespace {

void expect_arity(std::span<const Enclosure> args, std::size_t n, const char* name) {
  if (args.size() != n) {
    throw Error(ErrorCode::Arity, std::string(name) + " expects " + std::to_string(n) + " argument(s), got " +
                                      std::to_string(args.size()));
  }
}

}  // namespace

Enclosure enclosure_apply(Connective conn, std::span<const Enclosure> args) {
  switch (conn) {
    case Connective::Neg:
      expect_arity(args, 1, "neg");
      return Enclosure(neg(args[0].hi()), neg(args[0].lo()));
    case Connective::Half:
      expect_arity(args, 1, "half");
      return Enclosure(half(args[0].lo()), half(args[0].hi()));
    case Connective::DotMinus:
      // Increasing in the first argument, decreasing in the second.
      expect_arity(args, 2, "dotminus");
      return Enclosure(dotminus(args[0].lo(), args[1].hi()), dotminus(args[0].hi(), args[1].lo()));
    case Connective::Min:
    case Connective::Max: {
      if (args.empty()) throw Error(ErrorCode::Arity, "min/max expects at least one argument");
      UnitValue lo = args[0].lo();
      UnitValue hi = args[0].hi();
      for (const auto& a : args.subspan(1)) {
        if (conn == Connective::Min) {
          if (a.lo() < lo) lo = a.lo();
          if (a.hi() < hi) hi = a.hi();
        } else {
          if (lo < a.lo()) lo = a.lo();
          if (hi < a.hi()) hi = a.hi();
        }
      }
      return Enclosure(std::move(lo), std::move(hi));
    }
  }
  throw Error(ErrorCode::Arity, "unknown connective");
}

}  // namespace contnum
