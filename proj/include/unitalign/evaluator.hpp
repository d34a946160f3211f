#pragma once

#include <cstddef>
#include <vector>

#include "unitalign/alignment.hpp"

namespace unitalign {

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double fMeasure = 0.0;
  std::size_t truePositives = 0;
  std::size_t falsePositives = 0;
  std::size_t falseNegatives = 0;
  std::vector<Correspondence> falsePositiveCells;
};

// Classical set-based precision/recall/F-measure. Cell identity is the
// entity pair (the relation is always equivalence); confidence is ignored.
// ignoreSeed drops evidence=seed cells from the produced set first.
// Degenerate cases: an empty considered set scores precision 0 against a
// non-empty reference (and 1 against an empty one); F is 0 when P + R = 0.
// Throws OntologyPairMismatch when both alignments name their ontology
// pair and the pairs differ.
Metrics evaluate(const Alignment& produced, const Alignment& reference,
                 bool ignoreSeed = false);

}  // namespace unitalign
