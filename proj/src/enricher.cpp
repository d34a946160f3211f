#include "unitalign/enricher.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "unitalign/errors.hpp"

namespace unitalign {

namespace {

const std::map<std::string, Role>& rolesByName() {
  static const std::map<std::string, Role> kRoles = {
      {"numerator", Role::Numerator},
      {"denominator", Role::Denominator},
      {"term1", Role::Term1},
      {"term2", Role::Term2},
      {"base", Role::Base},
      {"exponent", Role::Exponent},
      {"prefix", Role::Prefix},
      {"prefix-value", Role::PrefixValue},
      {"numerical-factor", Role::NumericalFactor},
      {"singular-unit", Role::SingularUnit},
      {"unit-of-measure", Role::UnitOfMeasure},
      {"dimension", Role::Dimension},
  };
  return kRoles;
}

}  // namespace

const std::string& roleName(Role role) {
  for (const auto& [name, value] : rolesByName()) {
    if (value == role) return name;
  }
  throw std::logic_error("unnamed role");
}

PatternProfile PatternProfile::fromJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ProfileMismatch(std::string("profile is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ProfileMismatch("profile must be a JSON object");
  }

  PatternProfile profile;
  if (!doc.contains("unit_class") || !doc["unit_class"].is_string()) {
    throw ProfileMismatch("profile needs a \"unit_class\" IRI string");
  }
  profile.unitClass = Iri(doc["unit_class"].get<std::string>());

  if (!doc.contains("roles") || !doc["roles"].is_object()) {
    throw ProfileMismatch("profile needs a \"roles\" object");
  }
  for (const auto& [property, value] : doc["roles"].items()) {
    if (!value.is_string()) {
      throw ProfileMismatch("role for <" + property + "> must be a string");
    }
    auto it = rolesByName().find(value.get<std::string>());
    if (it == rolesByName().end()) {
      throw ProfileMismatch("unknown role \"" + value.get<std::string>() +
                            "\" for <" + property + ">");
    }
    profile.roleMap[Iri(property)] = it->second;
  }

  if (!doc.contains("base_units") || !doc["base_units"].is_object()) {
    throw ProfileMismatch("profile needs a \"base_units\" object");
  }
  std::set<int> axesSeen;
  for (const auto& [unit, value] : doc["base_units"].items()) {
    if (!value.is_string()) {
      throw ProfileMismatch("dimension of <" + unit + "> must be a string");
    }
    auto axis = DimensionVector::axisOf(value.get<std::string>());
    if (!axis) {
      throw ProfileMismatch("unknown dimension \"" + value.get<std::string>() +
                            "\" for <" + unit + ">");
    }
    if (!axesSeen.insert(*axis).second) {
      throw ProfileMismatch("dimension \"" + value.get<std::string>() +
                            "\" assigned to two base units");
    }
    profile.baseUnitAxes[Iri(unit)] = *axis;
  }
  if (profile.baseUnitAxes.size() != DimensionVector::kAxes) {
    throw ProfileMismatch("base_units must cover all 7 dimensions, got " +
                          std::to_string(profile.baseUnitAxes.size()));
  }

  if (doc.contains("prefixes")) {
    if (!doc["prefixes"].is_object()) {
      throw ProfileMismatch("\"prefixes\" must be an object");
    }
    for (const auto& [prefix, value] : doc["prefixes"].items()) {
      if (!value.is_string()) {
        throw ProfileMismatch("prefix value for <" + prefix + "> must be a string");
      }
      try {
        profile.prefixOverrides[Iri(prefix)] =
            Rational::fromLexical(value.get<std::string>());
      } catch (const NotANumber&) {
        throw ProfileMismatch("prefix value for <" + prefix +
                              "> is not a number: \"" +
                              value.get<std::string>() + "\"");
      }
    }
  }
  return profile;
}

const std::map<std::string, Rational>& PatternProfile::standardPrefixes() {
  static const std::map<std::string, Rational> kPrefixes = [] {
    std::map<std::string, Rational> table;
    auto powerOfTen = [](int exponent) { return Rational(10).pow(exponent); };
    table["yotta"] = powerOfTen(24);
    table["zetta"] = powerOfTen(21);
    table["exa"] = powerOfTen(18);
    table["peta"] = powerOfTen(15);
    table["tera"] = powerOfTen(12);
    table["giga"] = powerOfTen(9);
    table["mega"] = powerOfTen(6);
    table["kilo"] = powerOfTen(3);
    table["hecto"] = powerOfTen(2);
    table["deca"] = powerOfTen(1);
    table["deka"] = powerOfTen(1);
    table["deci"] = powerOfTen(-1);
    table["centi"] = powerOfTen(-2);
    table["milli"] = powerOfTen(-3);
    table["micro"] = powerOfTen(-6);
    table["nano"] = powerOfTen(-9);
    table["pico"] = powerOfTen(-12);
    table["femto"] = powerOfTen(-15);
    table["atto"] = powerOfTen(-18);
    table["zepto"] = powerOfTen(-21);
    table["yocto"] = powerOfTen(-24);
    return table;
  }();
  return kPrefixes;
}

std::map<Iri, DimensionVector> PatternProfile::baseUnitVectors() const {
  std::map<Iri, DimensionVector> out;
  for (const auto& [iri, axis] : baseUnitAxes) {
    out[iri] = DimensionVector::axis(axis);
  }
  return out;
}

namespace {

// Per-unit extraction failure; becomes a SkippedUnit entry.
struct WalkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Working form of an expression during the walk: multiplier over ordered
// (iri, exponent) factor lists. Offsets never arise here; the role set has
// no offset channel.
struct Expr {
  Rational a{1};
  std::vector<std::pair<Iri, int>> num;
  std::vector<std::pair<Iri, int>> den;
};

void addFactor(std::vector<std::pair<Iri, int>>& side, const Iri& iri, int exponent) {
  for (auto& [existing, exp] : side) {
    if (existing == iri) {
      exp += exponent;
      return;
    }
  }
  side.emplace_back(iri, exponent);
}

Expr multiplied(const Expr& x, const Expr& y) {
  Expr out = x;
  out.a *= y.a;
  for (const auto& [iri, exp] : y.num) addFactor(out.num, iri, exp);
  for (const auto& [iri, exp] : y.den) addFactor(out.den, iri, exp);
  return out;
}

Expr divided(const Expr& x, const Expr& y) {
  if (y.a.isZero()) {
    throw WalkError("division by a zero factor");
  }
  Expr out = x;
  out.a /= y.a;
  for (const auto& [iri, exp] : y.num) addFactor(out.den, iri, exp);
  for (const auto& [iri, exp] : y.den) addFactor(out.num, iri, exp);
  return out;
}

Expr powered(const Expr& x, int exponent) {
  if (exponent == 0) {
    return Expr{};
  }
  Expr out;
  out.a = x.a.pow(exponent);
  bool flip = exponent < 0;
  int magnitude = flip ? -exponent : exponent;
  for (const auto& [iri, exp] : x.num) {
    addFactor(flip ? out.den : out.num, iri, exp * magnitude);
  }
  for (const auto& [iri, exp] : x.den) {
    addFactor(flip ? out.num : out.den, iri, exp * magnitude);
  }
  return out;
}

class Walker {
 public:
  Walker(const Graph& graph, const PatternProfile& profile)
      : graph_(graph), profile_(profile) {
    for (const Triple& t :
         graph.query({}, vocab::rdfType(), Term(profile.unitClass))) {
      typedUnits_.insert(t.subject);
    }
  }

  const std::set<Iri>& typedUnits() const { return typedUnits_; }

  UnitExpression walkUnit(const Iri& subject) {
    std::set<Iri> visiting;
    Expr e = walkNode(subject, visiting);
    if (e.a.isZero()) {
      throw WalkError("zero conversion factor");
    }
    std::vector<std::pair<Iri, int>> num;
    std::vector<std::pair<Iri, int>> den;
    for (auto& [iri, exp] : e.num) {
      if (exp != 0) num.emplace_back(iri, exp);
    }
    for (auto& [iri, exp] : e.den) {
      if (exp != 0) den.emplace_back(iri, exp);
    }
    return UnitExpression::make(e.a, Rational(0), std::move(num), std::move(den));
  }

 private:
  const Graph& graph_;
  const PatternProfile& profile_;
  std::set<Iri> typedUnits_;

  std::map<Role, std::vector<Term>> rolesOf(const Iri& node) const {
    std::map<Role, std::vector<Term>> out;
    for (const Triple& t : graph_.query(node, {}, {})) {
      auto role = profile_.roleMap.find(t.predicate);
      if (role != profile_.roleMap.end()) {
        out[role->second].push_back(t.object);
      }
    }
    return out;
  }

  static bool isStructural(Role role) {
    switch (role) {
      case Role::Numerator:
      case Role::Denominator:
      case Role::Term1:
      case Role::Term2:
      case Role::Base:
      case Role::Exponent:
      case Role::Prefix:
      case Role::NumericalFactor:
      case Role::SingularUnit:
        return true;
      default:
        return false;
    }
  }

  static bool isComposite(const std::map<Role, std::vector<Term>>& roles) {
    return roles.count(Role::Numerator) || roles.count(Role::Denominator) ||
           roles.count(Role::Term1) || roles.count(Role::Term2) ||
           roles.count(Role::Base) || roles.count(Role::Exponent);
  }

  const Term& single(const std::map<Role, std::vector<Term>>& roles, Role role,
                     const char* what) const {
    const auto& values = roles.at(role);
    if (values.size() != 1) {
      throw WalkError(std::string("ambiguous ") + what + " (" +
                      std::to_string(values.size()) + " values)");
    }
    return values[0];
  }

  Rational literalValue(const Term& term, const char* what) const {
    const auto* literal = std::get_if<Literal>(&term);
    if (!literal) {
      throw WalkError(std::string(what) + " must be a literal value");
    }
    try {
      return Rational::fromLexical(literal->lexical);
    } catch (const NotANumber&) {
      throw WalkError(std::string(what) + " is not a number: \"" +
                      literal->lexical + "\"");
    }
  }

  Rational prefixValue(const Iri& prefix) const {
    auto override = profile_.prefixOverrides.find(prefix);
    if (override != profile_.prefixOverrides.end()) {
      return override->second;
    }
    // An in-graph statement of the prefix's value wins over the standard
    // table.
    for (const Triple& t : graph_.query(prefix, {}, {})) {
      auto role = profile_.roleMap.find(t.predicate);
      if (role != profile_.roleMap.end() && role->second == Role::PrefixValue) {
        return literalValue(t.object, "prefix value");
      }
    }
    std::string name = prefix.localName();
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    auto standard = PatternProfile::standardPrefixes().find(name);
    if (standard != PatternProfile::standardPrefixes().end()) {
      return standard->second;
    }
    throw WalkError("unknown prefix <" + prefix.value() + ">");
  }

  Expr refTo(const Iri& unit) const {
    Expr e;
    e.num.emplace_back(unit, 1);
    return e;
  }

  Expr walkOperand(const Term& term, std::set<Iri>& visiting) {
    if (const auto* literal = std::get_if<Literal>(&term)) {
      Expr e;
      e.a = literalValue(Term(*literal), "numeric operand");
      return e;
    }
    const Iri& target = std::get<Iri>(term);
    auto roles = rolesOf(target);
    bool structural = false;
    for (const auto& [role, values] : roles) {
      if (isStructural(role)) structural = true;
    }
    if (!structural) {
      if (typedUnits_.count(target) || profile_.baseUnitAxes.count(target)) {
        return refTo(target);
      }
      throw WalkError("reference to <" + target.value() +
                      "> which has no unit structure");
    }
    // Composite definitions of real (typed) units stay references so the
    // emitted equation mirrors the ontology's own structure (a joule built
    // from newton keeps the newton reference). Scaled forms (prefix,
    // factor, plain alias) and untyped intermediate nodes fold in.
    if (isComposite(roles) && typedUnits_.count(target)) {
      return refTo(target);
    }
    return walkNode(target, visiting);
  }

  Expr walkNode(const Iri& node, std::set<Iri>& visiting) {
    if (!visiting.insert(node).second) {
      throw WalkError("cyclic structure through <" + node.value() + ">");
    }
    auto roles = rolesOf(node);
    Expr out;
    if (roles.count(Role::Numerator) || roles.count(Role::Denominator)) {
      Expr num;
      if (roles.count(Role::Numerator)) {
        num = walkOperand(single(roles, Role::Numerator, "numerator"), visiting);
      }
      if (roles.count(Role::Denominator)) {
        Expr den = walkOperand(single(roles, Role::Denominator, "denominator"), visiting);
        out = divided(num, den);
      } else {
        out = num;
      }
    } else if (roles.count(Role::Term1) || roles.count(Role::Term2)) {
      if (!roles.count(Role::Term1) || !roles.count(Role::Term2)) {
        throw WalkError("product needs both term1 and term2");
      }
      out = multiplied(walkOperand(single(roles, Role::Term1, "term1"), visiting),
                       walkOperand(single(roles, Role::Term2, "term2"), visiting));
    } else if (roles.count(Role::Base) || roles.count(Role::Exponent)) {
      if (!roles.count(Role::Base) || !roles.count(Role::Exponent)) {
        throw WalkError("power needs both base and exponent");
      }
      Expr base = walkOperand(single(roles, Role::Base, "base"), visiting);
      Rational exponent =
          literalValue(single(roles, Role::Exponent, "exponent"), "exponent");
      if (!exponent.isInteger() || exponent.numerator() > 1000 ||
          exponent.numerator() < -1000) {
        throw WalkError("exponent must be a small integer, got " + exponent.str());
      }
      out = powered(base, static_cast<int>(exponent.numerator().convert_to<long long>()));
    } else if (roles.count(Role::Prefix)) {
      if (!roles.count(Role::SingularUnit)) {
        throw WalkError("prefix without a singular unit");
      }
      const Term& prefixTerm = single(roles, Role::Prefix, "prefix");
      const auto* prefixIri = std::get_if<Iri>(&prefixTerm);
      if (!prefixIri) {
        throw WalkError("prefix must be an IRI");
      }
      Expr base = walkOperand(single(roles, Role::SingularUnit, "singular unit"), visiting);
      out = base;
      out.a *= prefixValue(*prefixIri);
    } else if (roles.count(Role::NumericalFactor)) {
      Rational factor = literalValue(
          single(roles, Role::NumericalFactor, "numerical factor"), "numerical factor");
      if (factor.isZero()) {
        throw WalkError("zero numerical factor");
      }
      if (roles.count(Role::UnitOfMeasure)) {
        out = walkOperand(single(roles, Role::UnitOfMeasure, "unit of measure"), visiting);
        out.a *= factor;
      } else {
        out.a = factor;
      }
    } else if (roles.count(Role::SingularUnit)) {
      out = walkOperand(single(roles, Role::SingularUnit, "singular unit"), visiting);
    } else if (profile_.baseUnitAxes.count(node)) {
      out = refTo(node);
    } else {
      throw WalkError("no pattern matched");
    }
    visiting.erase(node);
    return out;
  }
};

// Dimension-annotation IRIs resolve to an axis only when their local name
// (lowercased, '_' -> '-', optional trailing "-dimension" stripped) is one
// of the seven dimension names. Anything else is accepted silently.
std::optional<int> resolveDimensionAxis(const Iri& dimension) {
  std::string name = dimension.localName();
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) {
    return c == '_' ? '-' : std::tolower(c);
  });
  const std::string suffix = "-dimension";
  if (name.size() > suffix.size() &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
    name.resize(name.size() - suffix.size());
  }
  return DimensionVector::axisOf(name);
}

}  // namespace

ExtractionResult extractUnitDefs(const Graph& graph, const PatternProfile& profile) {
  Walker walker(graph, profile);
  if (walker.typedUnits().empty()) {
    if (graph.size() == 0) {
      return {};
    }
    throw ProfileMismatch("no subjects of unit class <" +
                          profile.unitClass.value() + "> in the graph");
  }

  ExtractionResult result;
  for (const Iri& subject : walker.typedUnits()) {
    try {
      result.units.push_back({subject, walker.walkUnit(subject)});
    } catch (const WalkError& e) {
      result.skipped.push_back({subject, e.what()});
    }
  }

  // Cross-check derived dimensions against resolvable dimension
  // annotations.
  std::map<Iri, UnitExpression> definitions;
  for (const UnitDef& unit : result.units) {
    definitions.emplace(unit.iri, unit.expression);
  }
  UnitContext context(std::move(definitions), profile.baseUnitVectors());

  Iri dimensionProperty;
  bool haveDimensionProperty = false;
  for (const auto& [property, role] : profile.roleMap) {
    if (role == Role::Dimension) {
      dimensionProperty = property;
      haveDimensionProperty = true;
    }
  }

  if (haveDimensionProperty) {
    std::vector<UnitDef> kept;
    for (UnitDef& unit : result.units) {
      bool conflict = false;
      for (const Triple& t : graph.query(unit.iri, dimensionProperty, {})) {
        const auto* dimensionIri = std::get_if<Iri>(&t.object);
        if (!dimensionIri) continue;
        auto axis = resolveDimensionAxis(*dimensionIri);
        if (!axis) continue;
        try {
          if (canonicalize(unit.iri, context).dims != DimensionVector::axis(*axis)) {
            conflict = true;
          }
        } catch (const Error&) {
          // The unit does not canonicalize here; the annotation cannot be
          // checked and the mismatch (if any) surfaces during matching.
        }
      }
      if (conflict) {
        result.skipped.push_back({unit.iri, "dimension conflict"});
      } else {
        kept.push_back(std::move(unit));
      }
    }
    result.units = std::move(kept);
  }

  std::sort(result.units.begin(), result.units.end(),
            [](const UnitDef& a, const UnitDef& b) { return a.iri < b.iri; });
  std::sort(result.skipped.begin(), result.skipped.end(),
            [](const SkippedUnit& a, const SkippedUnit& b) { return a.iri < b.iri; });
  return result;
}

EnrichResult enrich(const Graph& graph, const PatternProfile& profile) {
  ExtractionResult extracted = extractUnitDefs(graph, profile);
  Graph out = graph;
  for (const UnitDef& unit : extracted.units) {
    for (const Triple& t : out.query(unit.iri, vocab::rdfsComment(), {})) {
      const auto* literal = std::get_if<Literal>(&t.object);
      if (!literal || !literal->isXml()) continue;
      try {
        parseMathML(literal->lexical);
      } catch (const Error&) {
        continue;  // not machine-made unit MathML; leave it alone
      }
      out.erase(t);
    }
    out.insert(Triple{unit.iri, vocab::rdfsComment(),
                      Literal::typed(generateMathML(unit.expression),
                                     vocab::rdfXmlLiteral())});
  }
  return {std::move(out), std::move(extracted.units), std::move(extracted.skipped)};
}

}  // namespace unitalign
