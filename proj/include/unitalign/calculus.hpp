#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "unitalign/mathml.hpp"
#include "unitalign/rational.hpp"
#include "unitalign/rdf.hpp"

namespace unitalign {

// Integer exponents over the seven base dimensions, in fixed slot order.
struct DimensionVector {
  static constexpr int kAxes = 7;
  static const std::array<std::string, kAxes>& names();  // slot -> dimension name

  std::array<int, kAxes> exponents{};

  static DimensionVector axis(int index);
  // Slot for a dimension name ("length", "mass", ...), if any.
  static std::optional<int> axisOf(const std::string& name);

  bool isZero() const;
  // True when exactly one slot is 1 and the rest are 0.
  bool isSingleAxis() const;

  DimensionVector operator+(const DimensionVector& other) const;
  DimensionVector operator-(const DimensionVector& other) const;
  DimensionVector operator*(int scale) const;

  friend bool operator==(const DimensionVector& a, const DimensionVector& b) {
    return a.exponents == b.exponents;
  }
  friend bool operator!=(const DimensionVector& a, const DimensionVector& b) {
    return !(a == b);
  }

  // "(1, 1, -2, 0, 0, 0, 0)"
  std::string str() const;
};

// Fully reduced form of a unit: value_base = multiplier * value + offset,
// with the unit's dimension over the context's base units.
struct CanonicalForm {
  Rational multiplier;
  Rational offset;
  DimensionVector dims;

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.multiplier == b.multiplier && a.offset == b.offset && a.dims == b.dims;
  }
  friend bool operator!=(const CanonicalForm& a, const CanonicalForm& b) {
    return !(a == b);
  }

  std::string str() const;
};

// Immutable resolution context: unit definitions plus base units pinned to
// dimension axes. Canonicalization results are memoized per context; the
// memo is internally synchronized, so lookups from several threads are safe.
class UnitContext {
 public:
  // Base units must sit on distinct axes. A definition supplied for a base
  // unit IRI is dropped: bases are axioms here.
  UnitContext(std::map<Iri, UnitExpression> definitions,
              std::map<Iri, DimensionVector> baseUnits);

  const std::map<Iri, UnitExpression>& definitions() const { return definitions_; }
  const std::map<Iri, DimensionVector>& baseUnits() const { return baseUnits_; }

  bool isBase(const Iri& unit) const { return baseUnits_.count(unit) > 0; }
  bool knows(const Iri& unit) const {
    return isBase(unit) || definitions_.count(unit) > 0;
  }

  std::optional<CanonicalForm> memoLookup(const Iri& unit) const;
  void memoStore(const Iri& unit, const CanonicalForm& form) const;

 private:
  std::map<Iri, UnitExpression> definitions_;
  std::map<Iri, DimensionVector> baseUnits_;

  mutable std::mutex memoMutex_;
  mutable std::map<Iri, CanonicalForm> memo_;
};

// Reduces a unit to its canonical form over the context's base units.
// Throws UnknownUnit, CyclicDefinition, or OffsetComposition.
CanonicalForm canonicalize(const Iri& unit, const UnitContext& context);

// Rewrites a unit as a single expression over base units only, merging
// repeated factors within each side but keeping numerator and denominator
// uncancelled against each other.
UnitExpression expandToBase(const Iri& unit, const UnitContext& context);

// Cancels factors occurring on both sides by net exponent; factor order
// follows first occurrence on the surviving side.
UnitExpression reduce(const UnitExpression& expression);

// Canonical-form equivalence: same multiplier, offset, and dimensions.
bool formsEqual(const CanonicalForm& a, const CanonicalForm& b);

// Converts a value through base-unit space:
//   (from.multiplier * value + from.offset - to.offset) / to.multiplier.
// Throws DimensionMismatch when the dimensions differ.
Rational convertValue(const Rational& value, const CanonicalForm& from,
                      const CanonicalForm& to);

}  // namespace unitalign
