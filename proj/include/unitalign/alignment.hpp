#pragma once

#include <optional>
#include <set>
#include <string>

#include "unitalign/rdf.hpp"

namespace unitalign {

// How a correspondence was established.
enum class Evidence {
  Seed,                  // user-supplied base unit pair
  CanonicalForm,         // equal canonical forms
  LexicalDimensionless,  // dimensionless pair with similar names
};

const std::string& evidenceName(Evidence evidence);
std::optional<Evidence> evidenceFromName(const std::string& name);

// One equivalence cell. The relation is always equivalence, so it is not a
// field. Identity (and set ordering) is the entity pair; confidence and
// evidence describe the cell.
struct Correspondence {
  Iri entity1;
  Iri entity2;
  double confidence = 1.0;
  Evidence evidence = Evidence::CanonicalForm;

  friend bool operator<(const Correspondence& a, const Correspondence& b) {
    if (a.entity1 != b.entity1) return a.entity1 < b.entity1;
    return a.entity2 < b.entity2;
  }
  friend bool operator==(const Correspondence& a, const Correspondence& b) {
    return a.entity1 == b.entity1 && a.entity2 == b.entity2 &&
           a.confidence == b.confidence && a.evidence == b.evidence;
  }
};

// A set of correspondences between two ontologies; n-to-m cardinality is
// allowed (an entity may appear in several cells).
struct Alignment {
  std::string onto1;
  std::string onto2;
  std::set<Correspondence> cells;

  friend bool operator==(const Alignment& a, const Alignment& b) {
    return a.onto1 == b.onto1 && a.onto2 == b.onto2 && a.cells == b.cells;
  }
};

}  // namespace unitalign
