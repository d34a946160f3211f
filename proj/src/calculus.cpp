#include "unitalign/calculus.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "unitalign/errors.hpp"

namespace unitalign {

// ---------------------------------------------------------------------------
// DimensionVector
// ---------------------------------------------------------------------------

const std::array<std::string, DimensionVector::kAxes>& DimensionVector::names() {
  static const std::array<std::string, kAxes> kNames = {
      "length",      "mass",   "time",      "electric-current",
      "temperature", "amount-of-substance", "luminosity"};
  return kNames;
}

DimensionVector DimensionVector::axis(int index) {
  if (index < 0 || index >= kAxes) {
    throw std::out_of_range("dimension axis out of range");
  }
  DimensionVector v;
  v.exponents[static_cast<std::size_t>(index)] = 1;
  return v;
}

std::optional<int> DimensionVector::axisOf(const std::string& name) {
  const auto& all = names();
  for (int k = 0; k < kAxes; ++k) {
    if (all[static_cast<std::size_t>(k)] == name) return k;
  }
  return std::nullopt;
}

bool DimensionVector::isZero() const {
  for (int e : exponents) {
    if (e != 0) return false;
  }
  return true;
}

bool DimensionVector::isSingleAxis() const {
  int ones = 0;
  for (int e : exponents) {
    if (e == 1) {
      ++ones;
    } else if (e != 0) {
      return false;
    }
  }
  return ones == 1;
}

DimensionVector DimensionVector::operator+(const DimensionVector& other) const {
  DimensionVector out;
  for (std::size_t k = 0; k < kAxes; ++k) {
    out.exponents[k] = exponents[k] + other.exponents[k];
  }
  return out;
}

DimensionVector DimensionVector::operator-(const DimensionVector& other) const {
  DimensionVector out;
  for (std::size_t k = 0; k < kAxes; ++k) {
    out.exponents[k] = exponents[k] - other.exponents[k];
  }
  return out;
}

DimensionVector DimensionVector::operator*(int scale) const {
  DimensionVector out;
  for (std::size_t k = 0; k < kAxes; ++k) {
    out.exponents[k] = exponents[k] * scale;
  }
  return out;
}

std::string DimensionVector::str() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < kAxes; ++k) {
    if (k > 0) out << ", ";
    out << exponents[k];
  }
  out << ")";
  return out.str();
}

std::string CanonicalForm::str() const {
  std::string out = "multiplier " + multiplier.str();
  if (!offset.isZero()) {
    out += ", offset " + offset.str();
  }
  out += ", dimensions " + dims.str();
  return out;
}

// ---------------------------------------------------------------------------
// UnitContext
// ---------------------------------------------------------------------------

UnitContext::UnitContext(std::map<Iri, UnitExpression> definitions,
                         std::map<Iri, DimensionVector> baseUnits)
    : definitions_(std::move(definitions)), baseUnits_(std::move(baseUnits)) {
  std::set<int> axesSeen;
  for (const auto& [iri, dims] : baseUnits_) {
    if (!dims.isSingleAxis()) {
      throw std::invalid_argument("base unit " + iri.value() +
                                  " must sit on a single dimension axis");
    }
    for (int k = 0; k < DimensionVector::kAxes; ++k) {
      if (dims.exponents[static_cast<std::size_t>(k)] == 1 &&
          !axesSeen.insert(k).second) {
        throw std::invalid_argument("two base units on dimension axis " +
                                    std::to_string(k));
      }
    }
    definitions_.erase(iri);
  }
}

std::optional<CanonicalForm> UnitContext::memoLookup(const Iri& unit) const {
  std::lock_guard<std::mutex> lock(memoMutex_);
  auto it = memo_.find(unit);
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

void UnitContext::memoStore(const Iri& unit, const CanonicalForm& form) const {
  std::lock_guard<std::mutex> lock(memoMutex_);
  memo_.emplace(unit, form);
}

// ---------------------------------------------------------------------------
// Canonicalization
// ---------------------------------------------------------------------------

namespace {

// True when the expression is a plain affine step over a single unit:
// multiplier * target + offset, no denominator, exponent 1. Only this shape
// may carry an offset downward.
bool isAffineStep(const UnitExpression& e) {
  return e.denominator().empty() && e.numerator().size() == 1 &&
         e.numerator()[0].exponent == 1;
}

CanonicalForm canonRec(const Iri& unit, const UnitContext& context,
                       std::set<Iri>& visiting) {
  if (context.isBase(unit)) {
    return CanonicalForm{Rational(1), Rational(0), context.baseUnits().at(unit)};
  }
  if (auto hit = context.memoLookup(unit)) {
    return *hit;
  }
  auto def = context.definitions().find(unit);
  if (def == context.definitions().end()) {
    throw UnknownUnit("unknown unit <" + unit.value() + ">");
  }
  if (!visiting.insert(unit).second) {
    throw CyclicDefinition("cyclic definition through <" + unit.value() + ">");
  }
  const UnitExpression& e = def->second;

  CanonicalForm out;
  if (isAffineStep(e)) {
    CanonicalForm sub = canonRec(e.numerator()[0].iri, context, visiting);
    out.multiplier = sub.multiplier * e.multiplier();
    out.offset = sub.multiplier * e.offset() + sub.offset;
    out.dims = sub.dims;
  } else {
    Rational composed(1);
    DimensionVector dims;
    for (const UnitFactor& factor : e.numerator()) {
      CanonicalForm sub = canonRec(factor.iri, context, visiting);
      if (!sub.offset.isZero()) {
        throw OffsetComposition("offset unit <" + factor.iri.value() +
                                "> inside a composite definition of <" +
                                unit.value() + ">");
      }
      composed *= sub.multiplier.pow(factor.exponent);
      dims = dims + sub.dims * factor.exponent;
    }
    for (const UnitFactor& factor : e.denominator()) {
      CanonicalForm sub = canonRec(factor.iri, context, visiting);
      if (!sub.offset.isZero()) {
        throw OffsetComposition("offset unit <" + factor.iri.value() +
                                "> inside a composite definition of <" +
                                unit.value() + ">");
      }
      composed /= sub.multiplier.pow(factor.exponent);
      dims = dims - sub.dims * factor.exponent;
    }
    out.multiplier = e.multiplier() * composed;
    out.offset = composed * e.offset();
    out.dims = dims;
  }

  if (!out.offset.isZero() && !out.dims.isSingleAxis()) {
    throw OffsetComposition("offset unit <" + unit.value() +
                            "> on a composite dimension " + out.dims.str());
  }

  visiting.erase(unit);
  context.memoStore(unit, out);
  return out;
}

}  // namespace

CanonicalForm canonicalize(const Iri& unit, const UnitContext& context) {
  std::set<Iri> visiting;
  return canonRec(unit, context, visiting);
}

// ---------------------------------------------------------------------------
// Base-unit expansion
// ---------------------------------------------------------------------------

namespace {

// Expression factors over base units, one ordered list per side.
struct Expansion {
  Rational multiplier{1};
  Rational offset{0};
  std::vector<std::pair<Iri, int>> numerator;
  std::vector<std::pair<Iri, int>> denominator;
};

void mergeFactor(std::vector<std::pair<Iri, int>>& side, const Iri& iri, int exponent) {
  for (auto& [existing, exp] : side) {
    if (existing == iri) {
      exp += exponent;
      return;
    }
  }
  side.emplace_back(iri, exponent);
}

void mergeScaled(Expansion& into, const Expansion& sub, int exponent, bool inverted) {
  bool flip = inverted != (exponent < 0);
  int magnitude = exponent < 0 ? -exponent : exponent;
  for (const auto& [iri, exp] : sub.numerator) {
    mergeFactor(flip ? into.denominator : into.numerator, iri, exp * magnitude);
  }
  for (const auto& [iri, exp] : sub.denominator) {
    mergeFactor(flip ? into.numerator : into.denominator, iri, exp * magnitude);
  }
}

Expansion expandRec(const Iri& unit, const UnitContext& context,
                    std::set<Iri>& visiting) {
  Expansion out;
  if (context.isBase(unit)) {
    out.numerator.emplace_back(unit, 1);
    return out;
  }
  auto def = context.definitions().find(unit);
  if (def == context.definitions().end()) {
    throw UnknownUnit("unknown unit <" + unit.value() + ">");
  }
  if (!visiting.insert(unit).second) {
    throw CyclicDefinition("cyclic definition through <" + unit.value() + ">");
  }
  const UnitExpression& e = def->second;

  if (isAffineStep(e)) {
    Expansion sub = expandRec(e.numerator()[0].iri, context, visiting);
    out = sub;
    out.multiplier = sub.multiplier * e.multiplier();
    out.offset = sub.multiplier * e.offset() + sub.offset;
  } else {
    Rational composed(1);
    for (const UnitFactor& factor : e.numerator()) {
      Expansion sub = expandRec(factor.iri, context, visiting);
      if (!sub.offset.isZero()) {
        throw OffsetComposition("offset unit <" + factor.iri.value() +
                                "> inside a composite definition of <" +
                                unit.value() + ">");
      }
      composed *= sub.multiplier.pow(factor.exponent);
      mergeScaled(out, sub, factor.exponent, false);
    }
    for (const UnitFactor& factor : e.denominator()) {
      Expansion sub = expandRec(factor.iri, context, visiting);
      if (!sub.offset.isZero()) {
        throw OffsetComposition("offset unit <" + factor.iri.value() +
                                "> inside a composite definition of <" +
                                unit.value() + ">");
      }
      composed /= sub.multiplier.pow(factor.exponent);
      mergeScaled(out, sub, factor.exponent, true);
    }
    out.multiplier = e.multiplier() * composed;
    out.offset = composed * e.offset();
  }

  visiting.erase(unit);
  return out;
}

// Drops zero-exponent entries left by same-side merging.
std::vector<std::pair<Iri, int>> pruneZeros(std::vector<std::pair<Iri, int>> side) {
  std::vector<std::pair<Iri, int>> out;
  for (auto& [iri, exp] : side) {
    if (exp != 0) out.emplace_back(std::move(iri), exp);
  }
  return out;
}

}  // namespace

UnitExpression expandToBase(const Iri& unit, const UnitContext& context) {
  std::set<Iri> visiting;
  Expansion e = expandRec(unit, context, visiting);
  return UnitExpression::make(e.multiplier, e.offset, pruneZeros(e.numerator),
                              pruneZeros(e.denominator));
}

UnitExpression reduce(const UnitExpression& expression) {
  std::map<Iri, int> net;
  for (const UnitFactor& f : expression.numerator()) {
    net[f.iri] += f.exponent;
  }
  for (const UnitFactor& f : expression.denominator()) {
    net[f.iri] -= f.exponent;
  }
  std::set<Iri> emitted;
  std::vector<std::pair<Iri, int>> numerator;
  std::vector<std::pair<Iri, int>> denominator;
  for (const UnitFactor& f : expression.numerator()) {
    if (net[f.iri] > 0 && emitted.insert(f.iri).second) {
      numerator.emplace_back(f.iri, net[f.iri]);
    }
  }
  for (const UnitFactor& f : expression.denominator()) {
    if (net[f.iri] < 0 && emitted.insert(f.iri).second) {
      denominator.emplace_back(f.iri, -net[f.iri]);
    }
  }
  return UnitExpression::make(expression.multiplier(), expression.offset(),
                              std::move(numerator), std::move(denominator));
}

bool formsEqual(const CanonicalForm& a, const CanonicalForm& b) {
  return a == b;
}

Rational convertValue(const Rational& value, const CanonicalForm& from,
                      const CanonicalForm& to) {
  if (from.dims != to.dims) {
    throw DimensionMismatch("cannot convert between dimensions " +
                            from.dims.str() + " and " + to.dims.str());
  }
  return (from.multiplier * value + from.offset - to.offset) / to.multiplier;
}

}  // namespace unitalign
