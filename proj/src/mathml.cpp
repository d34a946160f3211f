#include "unitalign/mathml.hpp"

#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "unitalign/errors.hpp"
#include "unitalign/xml.hpp"

namespace unitalign {

namespace {

constexpr const char* kMathMLNs = "http://www.w3.org/1998/Math/MathML";

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

void emitCn(std::ostringstream& out, int indent, const Rational& value) {
  out << std::string(indent, ' ');
  if (value.isInteger()) {
    out << "<cn>" << value.numerator().str() << "</cn>\n";
  } else {
    out << "<cn type=\"rational\">" << value.numerator().str() << "<sep/>"
        << value.denominator().str() << "</cn>\n";
  }
}

void emitPower(std::ostringstream& out, int indent, const UnitFactor& factor) {
  std::string pad(indent, ' ');
  out << pad << "<apply><csymbol cd=\"arith1\">power</csymbol>\n";
  out << pad << "  <ci xref=\"" << xml::escapeAttribute(factor.iri.value())
      << "\">" << xml::escapeText(factor.var) << "</ci><cn>" << factor.exponent
      << "</cn>\n";
  out << pad << "</apply>\n";
}

void emitProduct(std::ostringstream& out, int indent,
                 const std::vector<UnitFactor>& factors) {
  if (factors.size() == 1) {
    emitPower(out, indent, factors[0]);
    return;
  }
  std::string pad(indent, ' ');
  out << pad << "<apply><csymbol cd=\"arith1\">times</csymbol>\n";
  for (const UnitFactor& factor : factors) {
    emitPower(out, indent + 2, factor);
  }
  out << pad << "</apply>\n";
}

void emitCore(std::ostringstream& out, int indent, const UnitExpression& e) {
  std::string pad(indent, ' ');
  if (!e.numerator().empty() && !e.denominator().empty()) {
    out << pad << "<apply><csymbol cd=\"arith1\">divide</csymbol>\n";
    emitProduct(out, indent + 2, e.numerator());
    emitProduct(out, indent + 2, e.denominator());
    out << pad << "</apply>\n";
  } else if (!e.numerator().empty()) {
    emitProduct(out, indent, e.numerator());
  } else {
    out << pad << "<apply><csymbol cd=\"arith1\">divide</csymbol>\n";
    emitCn(out, indent + 2, Rational(1));
    emitProduct(out, indent + 2, e.denominator());
    out << pad << "</apply>\n";
  }
}

void emitScaled(std::ostringstream& out, int indent, const UnitExpression& e) {
  if (e.multiplier().isOne()) {
    emitCore(out, indent, e);
    return;
  }
  std::string pad(indent, ' ');
  out << pad << "<apply><csymbol cd=\"arith1\">times</csymbol>\n";
  emitCn(out, indent + 2, e.multiplier());
  emitCore(out, indent + 2, e);
  out << pad << "</apply>\n";
}

void emitBody(std::ostringstream& out, int indent, const UnitExpression& e) {
  if (e.isPureScalar()) {
    emitCn(out, indent, e.multiplier());
    return;
  }
  if (!e.offset().isZero()) {
    std::string pad(indent, ' ');
    out << pad << "<apply><csymbol cd=\"arith1\">plus</csymbol>\n";
    emitScaled(out, indent + 2, e);
    emitCn(out, indent + 2, e.offset());
    out << pad << "</apply>\n";
    return;
  }
  emitScaled(out, indent, e);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

// Child elements, rejecting stray non-whitespace text.
std::vector<const xml::Element*> strictChildren(const xml::Element& element) {
  for (const xml::Node& node : element.children) {
    if (const auto* s = std::get_if<std::string>(&node)) {
      if (!trim(*s).empty()) {
        throw NotUnitMathML("unexpected text inside <" + element.name + ">");
      }
    }
  }
  return element.childElements();
}

Rational parseCn(const xml::Element& cn) {
  const std::string* type = cn.attribute("type");
  if (type && *type == "rational") {
    std::string before;
    std::string after;
    bool seenSep = false;
    for (const xml::Node& node : cn.children) {
      if (const auto* s = std::get_if<std::string>(&node)) {
        (seenSep ? after : before) += *s;
        continue;
      }
      const auto& child = std::get<xml::Element>(node);
      if (child.localName() != "sep" || seenSep) {
        throw NotUnitMathML("malformed rational <cn>");
      }
      seenSep = true;
    }
    if (!seenSep) {
      throw NotUnitMathML("rational <cn> without <sep/>");
    }
    try {
      Rational p = Rational::fromLexical(trim(before));
      Rational q = Rational::fromLexical(trim(after));
      if (!p.isInteger() || !q.isInteger() || q.isZero()) {
        throw NotUnitMathML("rational <cn> parts must be integers with a nonzero denominator");
      }
      return p / q;
    } catch (const NotANumber&) {
      throw NotUnitMathML("invalid rational <cn> value");
    }
  }
  if (type && *type != "integer" && *type != "real" && *type != "double") {
    throw NotUnitMathML("unsupported <cn> type \"" + *type + "\"");
  }
  if (!cn.childElements().empty()) {
    throw NotUnitMathML("unexpected markup inside <cn>");
  }
  try {
    return Rational::fromLexical(trim(cn.text()));
  } catch (const NotANumber&) {
    throw NotUnitMathML("invalid <cn> value \"" + trim(cn.text()) + "\"");
  }
}

// Result of evaluating a body subtree: multiplier, offset, and referenced
// variables with signed exponents in document order.
struct BodyValue {
  Rational multiplier{1};
  Rational offset{0};
  std::vector<std::pair<std::string, int>> factors;
};

int parseExponent(const xml::Element& cn) {
  Rational value = parseCn(cn);
  if (!value.isInteger() || value <= Rational(0) ||
      value.numerator() > INT_MAX) {
    throw NotUnitMathML("exponent must be a positive integer");
  }
  return static_cast<int>(value.numerator().convert_to<long long>());
}

class BodyParser {
 public:
  explicit BodyParser(std::map<std::string, std::string>* xrefByVar)
      : xrefByVar_(xrefByVar) {}

  BodyValue eval(const xml::Element& element) {
    std::string local = element.localName();
    if (local == "cn") {
      BodyValue value;
      value.multiplier = parseCn(element);
      return value;
    }
    if (local == "ci") {
      return evalCi(element);
    }
    if (local == "apply") {
      return evalApply(element);
    }
    throw NotUnitMathML("unexpected element <" + element.name + "> in body");
  }

 private:
  std::map<std::string, std::string>* xrefByVar_;

  BodyValue evalCi(const xml::Element& ci) {
    std::string var = trim(ci.text());
    if (var.empty()) {
      throw NotUnitMathML("empty <ci> in body");
    }
    if (const std::string* xref = ci.attribute("xref")) {
      auto [it, inserted] = xrefByVar_->emplace(var, *xref);
      if (!inserted && it->second != *xref) {
        throw NotUnitMathML("conflicting xref for variable \"" + var + "\"");
      }
    }
    BodyValue value;
    value.factors.emplace_back(var, 1);
    return value;
  }

  BodyValue evalApply(const xml::Element& apply) {
    std::vector<const xml::Element*> children = strictChildren(apply);
    if (children.empty() || children[0]->localName() != "csymbol") {
      throw NotUnitMathML("<apply> must start with <csymbol>");
    }
    const xml::Element& op = *children[0];
    const std::string* cd = op.attribute("cd");
    if (!cd || *cd != "arith1") {
      throw NotUnitMathML("unsupported content dictionary \"" +
                          (cd ? *cd : std::string("")) + "\"");
    }
    std::string name = trim(op.text());
    std::vector<const xml::Element*> args(children.begin() + 1, children.end());

    if (name == "times") {
      if (args.size() < 2) {
        throw NotUnitMathML("times needs at least two operands");
      }
      BodyValue out;
      for (const xml::Element* arg : args) {
        BodyValue v = eval(*arg);
        requireLinear(v, "product");
        out.multiplier *= v.multiplier;
        out.factors.insert(out.factors.end(), v.factors.begin(), v.factors.end());
      }
      return out;
    }
    if (name == "divide") {
      if (args.size() != 2) {
        throw NotUnitMathML("divide needs exactly two operands");
      }
      BodyValue num = eval(*args[0]);
      BodyValue den = eval(*args[1]);
      requireLinear(num, "quotient");
      requireLinear(den, "quotient");
      if (den.multiplier.isZero()) {
        throw NotUnitMathML("division by zero");
      }
      BodyValue out;
      out.multiplier = num.multiplier / den.multiplier;
      out.factors = std::move(num.factors);
      for (auto& [var, exp] : den.factors) {
        out.factors.emplace_back(var, -exp);
      }
      return out;
    }
    if (name == "power") {
      if (args.size() != 2 || args[0]->localName() != "ci" ||
          args[1]->localName() != "cn") {
        throw NotUnitMathML("power needs a <ci> base and a <cn> exponent");
      }
      BodyValue base = evalCi(*args[0]);
      int exponent = parseExponent(*args[1]);
      base.factors[0].second = exponent;
      return base;
    }
    if (name == "plus") {
      if (args.size() != 2) {
        throw NotUnitMathML("plus needs exactly two operands");
      }
      bool firstIsCn = args[0]->localName() == "cn";
      bool secondIsCn = args[1]->localName() == "cn";
      if (firstIsCn == secondIsCn) {
        throw NotUnitMathML("plus needs exactly one constant operand");
      }
      const xml::Element& constant = firstIsCn ? *args[0] : *args[1];
      const xml::Element& rest = firstIsCn ? *args[1] : *args[0];
      BodyValue out = eval(rest);
      requireLinear(out, "sum");
      out.offset = parseCn(constant);
      return out;
    }
    throw NotUnitMathML("unsupported operator \"" + name + "\"");
  }

  static void requireLinear(const BodyValue& value, const char* context) {
    if (!value.offset.isZero()) {
      throw NotUnitMathML(std::string("offset term inside a ") + context);
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// UnitExpression
// ---------------------------------------------------------------------------

UnitExpression UnitExpression::make(Rational multiplier, Rational offset,
                                    std::vector<std::pair<Iri, int>> numerator,
                                    std::vector<std::pair<Iri, int>> denominator) {
  if (multiplier.isZero()) {
    throw std::invalid_argument("unit expression with zero multiplier");
  }
  if (numerator.empty() && denominator.empty() && !offset.isZero()) {
    throw std::invalid_argument("pure scalar expression with an offset");
  }
  UnitExpression e;
  e.multiplier_ = std::move(multiplier);
  e.offset_ = std::move(offset);
  int counter = 0;
  for (auto& [iri, exponent] : numerator) {
    if (exponent < 1) throw std::invalid_argument("factor exponent must be >= 1");
    if (iri.value().empty()) throw std::invalid_argument("factor with empty IRI");
    e.numerator_.push_back({std::move(iri), "n" + std::to_string(++counter), exponent});
  }
  for (auto& [iri, exponent] : denominator) {
    if (exponent < 1) throw std::invalid_argument("factor exponent must be >= 1");
    if (iri.value().empty()) throw std::invalid_argument("factor with empty IRI");
    e.denominator_.push_back({std::move(iri), "d" + std::to_string(++counter), exponent});
  }
  return e;
}

std::string UnitExpression::str() const {
  auto renderFactor = [](const UnitFactor& f) {
    std::string s = f.iri.localName();
    if (f.exponent != 1) {
      s += "^" + std::to_string(f.exponent);
    }
    return s;
  };
  auto renderSide = [&](const std::vector<UnitFactor>& side) {
    std::string s;
    for (std::size_t i = 0; i < side.size(); ++i) {
      if (i > 0) s += " * ";
      s += renderFactor(side[i]);
    }
    return s;
  };

  std::string core;
  if (!numerator_.empty()) {
    core = renderSide(numerator_);
  } else if (!denominator_.empty()) {
    core = "1";
  }
  if (!denominator_.empty()) {
    std::string den = renderSide(denominator_);
    core += " / " + (denominator_.size() > 1 ? "(" + den + ")" : den);
  }

  std::string out;
  if (core.empty()) {
    out = multiplier_.str();
  } else if (multiplier_.isOne()) {
    out = core;
  } else {
    out = multiplier_.str() + " * " + core;
  }
  if (!offset_.isZero()) {
    if (offset_.isNegative()) {
      out += " - " + (-offset_).str();
    } else {
      out += " + " + offset_.str();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Codec entry points
// ---------------------------------------------------------------------------

std::string generateMathML(const UnitExpression& expression) {
  std::ostringstream out;
  out << "<math xmlns=\"" << kMathMLNs << "\">\n";
  out << "  <bind><csymbol cd=\"fns1\">lambda</csymbol>\n";
  for (const std::vector<UnitFactor>* side :
       {&expression.numerator(), &expression.denominator()}) {
    for (const UnitFactor& factor : *side) {
      out << "    <bvar><ci id=\"" << xml::escapeAttribute(factor.iri.value())
          << "\">" << xml::escapeText(factor.var) << "</ci></bvar>\n";
    }
  }
  emitBody(out, 4, expression);
  out << "  </bind>\n";
  out << "</math>";
  return out.str();
}

UnitExpression parseMathML(const std::string& xmlText) {
  xml::Element root = xml::parseDocument(xmlText);
  if (root.localName() != "math") {
    throw NotUnitMathML("root element is <" + root.name + ">, expected <math>");
  }
  std::vector<const xml::Element*> mathChildren = strictChildren(root);
  if (mathChildren.size() != 1 || mathChildren[0]->localName() != "bind") {
    throw NotUnitMathML("<math> must contain exactly one <bind>");
  }
  const xml::Element& bind = *mathChildren[0];
  std::vector<const xml::Element*> parts = strictChildren(bind);
  if (parts.empty() || parts[0]->localName() != "csymbol") {
    throw NotUnitMathML("<bind> must start with the lambda <csymbol>");
  }
  const std::string* headCd = parts[0]->attribute("cd");
  if (!headCd || *headCd != "fns1" || trim(parts[0]->text()) != "lambda") {
    throw NotUnitMathML("<bind> head must be the fns1 lambda symbol");
  }

  // Bound variables, in declaration order.
  std::vector<std::pair<std::string, Iri>> bvars;
  std::map<std::string, Iri> iriByVar;
  std::size_t i = 1;
  for (; i < parts.size() && parts[i]->localName() == "bvar"; ++i) {
    std::vector<const xml::Element*> inner = strictChildren(*parts[i]);
    if (inner.size() != 1 || inner[0]->localName() != "ci") {
      throw NotUnitMathML("<bvar> must contain exactly one <ci>");
    }
    const xml::Element& ci = *inner[0];
    const std::string* id = ci.attribute("id");
    if (!id || id->empty()) {
      throw NotUnitMathML("bound variable <ci> without id attribute");
    }
    std::string var = trim(ci.text());
    if (var.empty()) {
      throw NotUnitMathML("bound variable with empty name");
    }
    if (!iriByVar.emplace(var, Iri(*id)).second) {
      throw NotUnitMathML("duplicate bound variable \"" + var + "\"");
    }
    bvars.emplace_back(var, Iri(*id));
  }
  if (i + 1 != parts.size()) {
    throw NotUnitMathML("<bind> must contain exactly one body expression");
  }

  std::map<std::string, std::string> xrefByVar;
  BodyValue body = BodyParser(&xrefByVar).eval(*parts[i]);

  if (body.multiplier.isZero()) {
    throw NotUnitMathML("unit expression with zero multiplier");
  }

  std::set<std::string> used;
  std::vector<std::pair<Iri, int>> numerator;
  std::vector<std::pair<Iri, int>> denominator;
  for (const auto& [var, exponent] : body.factors) {
    auto it = iriByVar.find(var);
    if (it == iriByVar.end()) {
      throw NotUnitMathML("variable \"" + var + "\" is not bound");
    }
    if (!used.insert(var).second) {
      throw NotUnitMathML("variable \"" + var + "\" used more than once");
    }
    if (exponent > 0) {
      numerator.emplace_back(it->second, exponent);
    } else {
      denominator.emplace_back(it->second, -exponent);
    }
  }
  for (const auto& [var, iri] : bvars) {
    if (!used.count(var)) {
      throw NotUnitMathML("bound variable \"" + var + "\" is unused");
    }
    auto xref = xrefByVar.find(var);
    if (xref != xrefByVar.end() && xref->second != iri.value()) {
      throw NotUnitMathML("xref of \"" + var + "\" does not match its binding");
    }
  }
  if (body.factors.empty() && !body.offset.isZero()) {
    throw NotUnitMathML("pure scalar expression with an offset");
  }

  return UnitExpression::make(std::move(body.multiplier), std::move(body.offset),
                              std::move(numerator), std::move(denominator));
}

}  // namespace unitalign
