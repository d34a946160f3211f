#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "unitalign/alignment.hpp"
#include "unitalign/calculus.hpp"
#include "unitalign/mathml.hpp"
#include "unitalign/rdf.hpp"

namespace unitalign {

// The user-supplied matching of the seven base units between two
// ontologies. Line order assigns the dimension slots.
struct SeedAlignment {
  std::vector<std::pair<Iri, Iri>> pairs;

  // Reads TSV lines "<iri-in-onto1>\t<iri-in-onto2>"; '#' comments and blank
  // lines are skipped. Throws SeedInvalid unless there are exactly 7
  // well-formed pairs with no IRI repeated on either side.
  static SeedAlignment fromTsv(const std::string& text);

  // Same checks as fromTsv, for programmatically built seeds.
  void validate() const;

  std::vector<Iri> left() const;
  std::vector<Iri> right() const;
  SeedAlignment flipped() const;
};

struct ExtractedUnits {
  std::map<Iri, UnitExpression> units;
  std::vector<std::string> warnings;  // unparseable MathML literals
};

// Collects every subject whose rdfs:comment is an XML literal parsing in
// the unit MathML dialect (plain literals that look like <math...> are
// tried too). Subjects without MathML are simply absent.
ExtractedUnits extractUnits(const Graph& graph);

// Context whose base units are the given seven IRIs, axis k taken from
// position k. Definitions supplied for those IRIs are dropped.
UnitContext makeSeededContext(const std::map<Iri, UnitExpression>& units,
                              const std::vector<Iri>& seedBases);

// Context for a single ontology with no seed: units defined as the identity
// over themselves become the bases, axes assigned in IRI order. Throws when
// there are more than seven such units, or none.
UnitContext makeLeafContext(const std::map<Iri, UnitExpression>& units);

// Normalized Levenshtein similarity: 1 - distance/max(length) after
// lowercasing and stripping "_-. " delimiters. 1.0 for two empty strings.
double lexicalSimilarity(const std::string& s1, const std::string& s2);

struct ExcludedUnit {
  Iri iri;
  std::string reason;
};

struct CoverageReport {
  std::size_t extracted1 = 0;
  std::size_t extracted2 = 0;
  std::vector<std::string> warnings1;
  std::vector<std::string> warnings2;
  std::vector<ExcludedUnit> excluded1;  // canonicalization failures
  std::vector<ExcludedUnit> excluded2;
  std::vector<Iri> unmatched1;  // canonicalizable units with no cell
  std::vector<Iri> unmatched2;
  // Canonical-form cells whose local names are not lexically close:
  // mathematically equivalent, conceptually unverified.
  std::vector<Correspondence> unverified;
};

std::string renderCoverageReport(const CoverageReport& report);

struct AlignResult {
  Alignment alignment;
  CoverageReport coverage;
};

// Phase II: extract units from both enriched graphs, canonicalize them over
// seed-anchored contexts, and emit equivalence cells:
//   - every seed pair, evidence seed, confidence 1.0;
//   - every cross pair with equal canonical forms and a nonzero dimension,
//     evidence canonical-form, confidence 1.0;
//   - every dimensionless cross pair with equal multiplier and offset whose
//     name similarity reaches the threshold, evidence lexical-dimensionless,
//     confidence = similarity.
// Units that fail to canonicalize are excluded and reported. The cell set
// is verified to be a fixpoint (recomputing it changes nothing).
AlignResult align(const Graph& graph1, const Graph& graph2,
                  const SeedAlignment& seed, double lexicalThreshold = 0.85);

struct TraceStep {
  std::string name;
  bool passed = false;
  std::string detail;
};

// The five comparison steps in order: offset check, multiplier check,
// base-unit breakdown, dimension reduction, dimension comparison. The first
// failing step ends the report.
struct TraceReport {
  std::vector<TraceStep> steps;
  bool equivalent = false;

  std::string str() const;
};

// Diagnostic step-by-step comparison of one unit pair. Propagates
// canonicalization errors.
TraceReport comparisonTrace(const Iri& unit1, const UnitContext& context1,
                            const Iri& unit2, const UnitContext& context2);

}  // namespace unitalign
