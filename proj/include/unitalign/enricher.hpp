#pragma once

#include <map>
#include <string>
#include <vector>

#include "unitalign/calculus.hpp"
#include "unitalign/mathml.hpp"
#include "unitalign/rational.hpp"
#include "unitalign/rdf.hpp"

namespace unitalign {

// Structural roles a property can play in a unit definition pattern.
enum class Role {
  Numerator,
  Denominator,
  Term1,
  Term2,
  Base,
  Exponent,
  Prefix,
  PrefixValue,
  NumericalFactor,
  SingularUnit,
  UnitOfMeasure,
  Dimension,
};

const std::string& roleName(Role role);

// Declarative description of how one ontology encodes unit structure:
// which class marks units, which properties play which structural role,
// which units anchor the seven dimensions, and any prefix values that
// the ontology does not state in-graph.
struct PatternProfile {
  Iri unitClass;
  std::map<Iri, Role> roleMap;
  std::map<Iri, int> baseUnitAxes;          // base unit IRI -> dimension slot
  std::map<Iri, Rational> prefixOverrides;  // prefix IRI -> value

  // Reads the JSON form: {"unit_class": iri, "roles": {iri: role},
  // "base_units": {iri: dimension-name}, "prefixes": {iri: rational}}.
  // Throws ProfileMismatch on structural problems.
  static PatternProfile fromJson(const std::string& text);

  // The standard SI prefix values keyed by lowercase prefix name
  // (yotta .. yocto), used when neither the profile nor the graph
  // states a prefix's value.
  static const std::map<std::string, Rational>& standardPrefixes();

  std::map<Iri, DimensionVector> baseUnitVectors() const;
};

struct UnitDef {
  Iri iri;
  UnitExpression expression;
};

struct SkippedUnit {
  Iri iri;
  std::string reason;
};

struct ExtractionResult {
  std::vector<UnitDef> units;        // sorted by IRI
  std::vector<SkippedUnit> skipped;  // sorted by IRI
};

// Walks every subject of the profile's unit class and derives its
// UnitExpression from the structural roles. Per-unit failures become
// SkippedUnit entries. Throws ProfileMismatch when a non-empty graph has
// no subjects of the unit class.
ExtractionResult extractUnitDefs(const Graph& graph, const PatternProfile& profile);

struct EnrichResult {
  Graph graph;
  std::vector<UnitDef> units;
  std::vector<SkippedUnit> skipped;
};

// Extraction plus annotation: each successful unit receives an
// rdfs:comment carrying its MathML as an XML literal; stale machine-made
// MathML comments (ones that parse in the dialect) are replaced,
// human comments are kept. Idempotent.
EnrichResult enrich(const Graph& graph, const PatternProfile& profile);

}  // namespace unitalign
