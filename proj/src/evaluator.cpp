#include "unitalign/evaluator.hpp"

#include <set>

#include "unitalign/errors.hpp"

namespace unitalign {

Metrics evaluate(const Alignment& produced, const Alignment& reference,
                 bool ignoreSeed) {
  bool bothNamed = !produced.onto1.empty() && !produced.onto2.empty() &&
                   !reference.onto1.empty() && !reference.onto2.empty();
  if (bothNamed && (produced.onto1 != reference.onto1 ||
                    produced.onto2 != reference.onto2)) {
    throw OntologyPairMismatch(
        "produced alignment is over (" + produced.onto1 + ", " + produced.onto2 +
        ") but the reference is over (" + reference.onto1 + ", " +
        reference.onto2 + ")");
  }

  // Identity is the entity pair; Correspondence set ordering already
  // compares exactly that.
  std::set<std::pair<Iri, Iri>> referencePairs;
  for (const Correspondence& cell : reference.cells) {
    referencePairs.emplace(cell.entity1, cell.entity2);
  }

  Metrics metrics;
  std::size_t considered = 0;
  for (const Correspondence& cell : produced.cells) {
    if (ignoreSeed && cell.evidence == Evidence::Seed) continue;
    ++considered;
    if (referencePairs.count({cell.entity1, cell.entity2})) {
      ++metrics.truePositives;
    } else {
      ++metrics.falsePositives;
      metrics.falsePositiveCells.push_back(cell);
    }
  }
  metrics.falseNegatives = referencePairs.size() - metrics.truePositives;

  if (considered > 0) {
    metrics.precision =
        static_cast<double>(metrics.truePositives) / static_cast<double>(considered);
  } else {
    metrics.precision = referencePairs.empty() ? 1.0 : 0.0;
  }
  if (!referencePairs.empty()) {
    metrics.recall = static_cast<double>(metrics.truePositives) /
                     static_cast<double>(referencePairs.size());
  } else {
    metrics.recall = metrics.falsePositives == 0 ? 1.0 : 0.0;
  }
  double sum = metrics.precision + metrics.recall;
  metrics.fMeasure = sum > 0.0 ? 2.0 * metrics.precision * metrics.recall / sum : 0.0;
  return metrics;
}

}  // namespace unitalign
