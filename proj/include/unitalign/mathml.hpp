#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unitalign/rational.hpp"
#include "unitalign/rdf.hpp"

namespace unitalign {

// One referenced unit inside an expression: the unit's IRI, the bound
// variable standing for it, and a positive integer exponent.
struct UnitFactor {
  Iri iri;
  std::string var;
  int exponent = 1;

  friend bool operator==(const UnitFactor& a, const UnitFactor& b) {
    return a.iri == b.iri && a.var == b.var && a.exponent == b.exponent;
  }
};

// A unit definition
//
//   unit = multiplier * (prod numerator / prod denominator) + offset
//
// in terms of other units. Factor order is significant and preserved.
// Invariants: multiplier != 0; exponents >= 1; a pure scalar (both factor
// lists empty) has offset 0.
class UnitExpression {
 public:
  // Builds an expression, assigning variable names n1..nk to the numerator
  // and d(k+1).. to the denominator, numbering continuing across sides.
  static UnitExpression make(Rational multiplier, Rational offset,
                             std::vector<std::pair<Iri, int>> numerator,
                             std::vector<std::pair<Iri, int>> denominator);

  const Rational& multiplier() const { return multiplier_; }
  const Rational& offset() const { return offset_; }
  const std::vector<UnitFactor>& numerator() const { return numerator_; }
  const std::vector<UnitFactor>& denominator() const { return denominator_; }

  bool isPureScalar() const { return numerator_.empty() && denominator_.empty(); }

  // Human-readable rendering with local names, e.g.
  // "1/86400000 * meter / second".
  std::string str() const;

  friend bool operator==(const UnitExpression& a, const UnitExpression& b) {
    return a.multiplier_ == b.multiplier_ && a.offset_ == b.offset_ &&
           a.numerator_ == b.numerator_ && a.denominator_ == b.denominator_;
  }
  friend bool operator!=(const UnitExpression& a, const UnitExpression& b) {
    return !(a == b);
  }

 private:
  UnitExpression() = default;

  Rational multiplier_{1};
  Rational offset_{0};
  std::vector<UnitFactor> numerator_;
  std::vector<UnitFactor> denominator_;
};

// Renders the expression as Content MathML: a lambda binding one variable
// per referenced unit over an arith1 divide/times/power body, scaled by the
// multiplier and shifted by the offset when present. Deterministic;
// parseMathML(generateMathML(e)) == e.
std::string generateMathML(const UnitExpression& expression);

// Reads the restricted Content MathML dialect back into an expression.
// Variable names in the input are ignored; canonical names are reassigned.
// Throws MalformedXml for broken XML and NotUnitMathML for well-formed XML
// outside the dialect.
UnitExpression parseMathML(const std::string& xmlText);

}  // namespace unitalign
