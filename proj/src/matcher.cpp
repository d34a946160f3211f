#include "unitalign/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "unitalign/errors.hpp"

namespace unitalign {

// ---------------------------------------------------------------------------
// SeedAlignment
// ---------------------------------------------------------------------------

SeedAlignment SeedAlignment::fromTsv(const std::string& text) {
  SeedAlignment seed;
  std::istringstream in(text);
  std::string line;
  std::size_t lineNumber = 0;
  while (std::getline(in, line)) {
    ++lineNumber;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    std::size_t first = trimmed.find_first_not_of(" \t");
    if (first == std::string::npos || trimmed[first] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw SeedInvalid("seed line " + std::to_string(lineNumber) +
                        " has no tab separator");
    }
    std::string leftIri = line.substr(0, tab);
    std::string rightIri = line.substr(tab + 1);
    // Allow trailing columns after the pair.
    std::size_t extra = rightIri.find('\t');
    if (extra != std::string::npos) rightIri.resize(extra);
    if (leftIri.empty() || rightIri.empty()) {
      throw SeedInvalid("seed line " + std::to_string(lineNumber) +
                        " has an empty IRI");
    }
    seed.pairs.emplace_back(Iri(leftIri), Iri(rightIri));
  }
  seed.validate();
  return seed;
}

void SeedAlignment::validate() const {
  if (pairs.size() != DimensionVector::kAxes) {
    throw SeedInvalid("seed must have exactly 7 pairs, got " +
                      std::to_string(pairs.size()));
  }
  std::set<Iri> leftSeen;
  std::set<Iri> rightSeen;
  for (const auto& [l, r] : pairs) {
    if (!leftSeen.insert(l).second) {
      throw SeedInvalid("seed repeats <" + l.value() + "> on the left side");
    }
    if (!rightSeen.insert(r).second) {
      throw SeedInvalid("seed repeats <" + r.value() + "> on the right side");
    }
  }
}

std::vector<Iri> SeedAlignment::left() const {
  std::vector<Iri> out;
  for (const auto& [l, r] : pairs) out.push_back(l);
  return out;
}

std::vector<Iri> SeedAlignment::right() const {
  std::vector<Iri> out;
  for (const auto& [l, r] : pairs) out.push_back(r);
  return out;
}

SeedAlignment SeedAlignment::flipped() const {
  SeedAlignment out;
  for (const auto& [l, r] : pairs) out.pairs.emplace_back(r, l);
  return out;
}

// ---------------------------------------------------------------------------
// Extraction and contexts
// ---------------------------------------------------------------------------

ExtractedUnits extractUnits(const Graph& graph) {
  ExtractedUnits out;
  for (const Triple& t : graph.query({}, vocab::rdfsComment(), {})) {
    const auto* literal = std::get_if<Literal>(&t.object);
    if (!literal) continue;
    bool looksLikeMath =
        literal->isXml() || literal->lexical.rfind("<math", 0) == 0;
    if (!looksLikeMath) continue;
    try {
      UnitExpression expression = parseMathML(literal->lexical);
      auto [it, inserted] = out.units.emplace(t.subject, std::move(expression));
      if (!inserted) {
        out.warnings.push_back("<" + t.subject.value() +
                               ">: several MathML definitions; keeping the first");
      }
    } catch (const Error& e) {
      out.warnings.push_back("<" + t.subject.value() + ">: " + e.what());
    }
  }
  return out;
}

UnitContext makeSeededContext(const std::map<Iri, UnitExpression>& units,
                              const std::vector<Iri>& seedBases) {
  if (seedBases.size() != DimensionVector::kAxes) {
    throw SeedInvalid("expected 7 base units, got " +
                      std::to_string(seedBases.size()));
  }
  std::map<Iri, DimensionVector> bases;
  for (std::size_t k = 0; k < seedBases.size(); ++k) {
    if (!bases.emplace(seedBases[k], DimensionVector::axis(static_cast<int>(k))).second) {
      throw SeedInvalid("base unit <" + seedBases[k].value() + "> repeated");
    }
  }
  return UnitContext(units, std::move(bases));
}

UnitContext makeLeafContext(const std::map<Iri, UnitExpression>& units) {
  std::map<Iri, DimensionVector> bases;
  int axis = 0;
  for (const auto& [iri, e] : units) {
    bool selfIdentity = e.multiplier().isOne() && e.offset().isZero() &&
                        e.denominator().empty() && e.numerator().size() == 1 &&
                        e.numerator()[0].iri == iri &&
                        e.numerator()[0].exponent == 1;
    if (!selfIdentity) continue;
    if (axis >= DimensionVector::kAxes) {
      throw Error("more than 7 self-defining base units; cannot assign dimensions");
    }
    bases.emplace(iri, DimensionVector::axis(axis++));
  }
  if (bases.empty()) {
    throw Error("no self-defining base units found");
  }
  return UnitContext(units, std::move(bases));
}

// ---------------------------------------------------------------------------
// Lexical similarity
// ---------------------------------------------------------------------------

namespace {

std::string normalizeName(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    if (c == '_' || c == '-' || c == '.' || c == ' ') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t previous = row[j];
      std::size_t substitution = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, substitution});
      diagonal = previous;
    }
  }
  return row[b.size()];
}

}  // namespace

double lexicalSimilarity(const std::string& s1, const std::string& s2) {
  std::string a = normalizeName(s1);
  std::string b = normalizeName(s2);
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

// ---------------------------------------------------------------------------
// Alignment
// ---------------------------------------------------------------------------

namespace {

struct CanonicalizedSide {
  std::map<Iri, CanonicalForm> forms;
  std::vector<ExcludedUnit> excluded;
};

CanonicalizedSide canonicalizeSide(const std::map<Iri, UnitExpression>& units,
                                   const std::vector<Iri>& seedBases,
                                   const UnitContext& context) {
  CanonicalizedSide out;
  for (const Iri& base : seedBases) {
    out.forms.emplace(base, canonicalize(base, context));
  }
  for (const auto& [iri, e] : units) {
    if (out.forms.count(iri)) continue;
    try {
      out.forms.emplace(iri, canonicalize(iri, context));
    } catch (const Error& error) {
      out.excluded.push_back({iri, error.what()});
    }
  }
  return out;
}

}  // namespace

AlignResult align(const Graph& graph1, const Graph& graph2,
                  const SeedAlignment& seed, double lexicalThreshold) {
  seed.validate();
  if (lexicalThreshold < 0.0 || lexicalThreshold > 1.0) {
    throw std::invalid_argument("lexical threshold must be in [0, 1]");
  }

  ExtractedUnits side1 = extractUnits(graph1);
  ExtractedUnits side2 = extractUnits(graph2);
  UnitContext context1 = makeSeededContext(side1.units, seed.left());
  UnitContext context2 = makeSeededContext(side2.units, seed.right());

  CanonicalizedSide canon1 = canonicalizeSide(side1.units, seed.left(), context1);
  CanonicalizedSide canon2 = canonicalizeSide(side2.units, seed.right(), context2);

  std::set<std::pair<Iri, Iri>> seedPairs(seed.pairs.begin(), seed.pairs.end());

  auto computeCells = [&]() {
    std::set<Correspondence> cells;
    for (const auto& [l, r] : seed.pairs) {
      cells.insert({l, r, 1.0, Evidence::Seed});
    }
    for (const auto& [u1, f1] : canon1.forms) {
      for (const auto& [u2, f2] : canon2.forms) {
        if (seedPairs.count({u1, u2})) continue;
        if (f1.dims.isZero() && f2.dims.isZero()) {
          if (f1.multiplier == f2.multiplier && f1.offset == f2.offset) {
            double similarity = lexicalSimilarity(u1.localName(), u2.localName());
            if (similarity >= lexicalThreshold) {
              cells.insert({u1, u2, similarity, Evidence::LexicalDimensionless});
            }
          }
        } else if (formsEqual(f1, f2)) {
          cells.insert({u1, u2, 1.0, Evidence::CanonicalForm});
        }
      }
    }
    return cells;
  };

  std::set<Correspondence> cells = computeCells();
  // Canonical forms are total within one context, so one pass is complete;
  // verify the fixpoint anyway.
  if (computeCells() != cells) {
    throw std::logic_error("alignment is not a fixpoint");
  }

  AlignResult result;
  result.alignment.onto1 = seed.pairs[0].first.namespacePart();
  result.alignment.onto2 = seed.pairs[0].second.namespacePart();
  result.alignment.cells = std::move(cells);

  CoverageReport& coverage = result.coverage;
  coverage.extracted1 = side1.units.size();
  coverage.extracted2 = side2.units.size();
  coverage.warnings1 = std::move(side1.warnings);
  coverage.warnings2 = std::move(side2.warnings);
  coverage.excluded1 = std::move(canon1.excluded);
  coverage.excluded2 = std::move(canon2.excluded);

  std::set<Iri> matched1;
  std::set<Iri> matched2;
  for (const Correspondence& cell : result.alignment.cells) {
    matched1.insert(cell.entity1);
    matched2.insert(cell.entity2);
    if (cell.evidence == Evidence::CanonicalForm &&
        lexicalSimilarity(cell.entity1.localName(), cell.entity2.localName()) <
            lexicalThreshold) {
      coverage.unverified.push_back(cell);
    }
  }
  for (const auto& [iri, form] : canon1.forms) {
    if (!matched1.count(iri)) coverage.unmatched1.push_back(iri);
  }
  for (const auto& [iri, form] : canon2.forms) {
    if (!matched2.count(iri)) coverage.unmatched2.push_back(iri);
  }
  return result;
}

std::string renderCoverageReport(const CoverageReport& report) {
  std::ostringstream out;
  out << "coverage report\n";
  out << "  ontology 1: " << report.extracted1 << " units with MathML\n";
  for (const std::string& warning : report.warnings1) {
    out << "    warning: " << warning << "\n";
  }
  for (const ExcludedUnit& unit : report.excluded1) {
    out << "    excluded <" << unit.iri.value() << ">: " << unit.reason << "\n";
  }
  out << "  ontology 2: " << report.extracted2 << " units with MathML\n";
  for (const std::string& warning : report.warnings2) {
    out << "    warning: " << warning << "\n";
  }
  for (const ExcludedUnit& unit : report.excluded2) {
    out << "    excluded <" << unit.iri.value() << ">: " << unit.reason << "\n";
  }
  if (!report.unmatched1.empty()) {
    out << "  unmatched in ontology 1:";
    for (const Iri& iri : report.unmatched1) out << " " << iri.localName();
    out << "\n";
  }
  if (!report.unmatched2.empty()) {
    out << "  unmatched in ontology 2:";
    for (const Iri& iri : report.unmatched2) out << " " << iri.localName();
    out << "\n";
  }
  for (const Correspondence& cell : report.unverified) {
    out << "  note: <" << cell.entity1.value() << "> = <" << cell.entity2.value()
        << "> is mathematically equivalent, conceptually unverified\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Comparison trace
// ---------------------------------------------------------------------------

TraceReport comparisonTrace(const Iri& unit1, const UnitContext& context1,
                            const Iri& unit2, const UnitContext& context2) {
  CanonicalForm form1 = canonicalize(unit1, context1);
  CanonicalForm form2 = canonicalize(unit2, context2);

  TraceReport report;
  auto step = [&report](const std::string& name, bool passed,
                        const std::string& detail) {
    report.steps.push_back({name, passed, detail});
    return passed;
  };

  if (!step("offset check", form1.offset == form2.offset,
            form1.offset.str() + " vs " + form2.offset.str())) {
    return report;
  }
  if (!step("multiplier check", form1.multiplier == form2.multiplier,
            form1.multiplier.str() + " vs " + form2.multiplier.str())) {
    return report;
  }

  UnitExpression expanded1 = expandToBase(unit1, context1);
  UnitExpression expanded2 = expandToBase(unit2, context2);
  step("base-unit breakdown", true,
       expanded1.str() + " vs " + expanded2.str());

  UnitExpression reduced1 = reduce(expanded1);
  UnitExpression reduced2 = reduce(expanded2);
  step("dimension reduction", true, reduced1.str() + " vs " + reduced2.str());

  report.equivalent = step("dimension comparison", form1.dims == form2.dims,
                           form1.dims.str() + " vs " + form2.dims.str());
  return report;
}

std::string TraceReport::str() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    out << "step " << (k + 1) << " (" << steps[k].name << "): "
        << (steps[k].passed ? "pass" : "fail") << " [" << steps[k].detail
        << "]\n";
  }
  out << (equivalent ? "equivalent" : "not equivalent") << "\n";
  return out.str();
}

}  // namespace unitalign
