#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "unitalign/alignment_io.hpp"
#include "unitalign/enricher.hpp"
#include "unitalign/errors.hpp"
#include "unitalign/evaluator.hpp"
#include "unitalign/matcher.hpp"

namespace {

using namespace unitalign;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write \"" + path + "\"");
  }
  out << content;
  if (!out) {
    throw Error("write to \"" + path + "\" failed");
  }
}

Graph readGraph(const std::string& path) {
  std::vector<std::string> warnings;
  Graph graph = parseGraph(readFile(path), &warnings);
  for (const std::string& warning : warnings) {
    std::cerr << path << ": warning: " << warning << "\n";
  }
  return graph;
}

int cmdEnrich(const std::string& inputPath, const std::string& profilePath,
              const std::string& outputPath) {
  Graph graph = readGraph(inputPath);
  PatternProfile profile = PatternProfile::fromJson(readFile(profilePath));
  EnrichResult result = enrich(graph, profile);
  writeFile(outputPath, serializeGraph(result.graph));
  std::cerr << "enriched " << result.units.size() << " units\n";
  for (const SkippedUnit& unit : result.skipped) {
    std::cerr << "skipped <" << unit.iri.value() << ">: " << unit.reason << "\n";
  }
  return result.skipped.empty() ? 0 : 2;
}

int cmdAlign(const std::string& leftPath, const std::string& rightPath,
             const std::string& seedPath, const std::string& outputPath,
             double threshold, const std::string& format) {
  Graph left = readGraph(leftPath);
  Graph right = readGraph(rightPath);
  SeedAlignment seed = SeedAlignment::fromTsv(readFile(seedPath));
  AlignResult result = align(left, right, seed, threshold);
  writeFile(outputPath, format == "xml" ? writeAlignmentXml(result.alignment)
                                        : writeAlignmentTsv(result.alignment));
  std::cerr << renderCoverageReport(result.coverage);
  std::cerr << result.alignment.cells.size() << " cells written to "
            << outputPath << "\n";
  bool partial = !result.coverage.excluded1.empty() ||
                 !result.coverage.excluded2.empty() ||
                 !result.coverage.warnings1.empty() ||
                 !result.coverage.warnings2.empty();
  return partial ? 2 : 0;
}

int cmdEval(const std::string& alignmentPath, const std::string& referencePath,
            bool ignoreSeed) {
  Alignment produced = readAlignment(readFile(alignmentPath));
  Alignment reference = readAlignment(readFile(referencePath));
  Metrics metrics = evaluate(produced, reference, ignoreSeed);
  char line[64];
  std::snprintf(line, sizeof line, "precision: %.4f\n", metrics.precision);
  std::cout << line;
  std::snprintf(line, sizeof line, "recall: %.4f\n", metrics.recall);
  std::cout << line;
  std::snprintf(line, sizeof line, "f-measure: %.4f\n", metrics.fMeasure);
  std::cout << line;
  std::cout << "false positives (" << metrics.falsePositiveCells.size() << "):\n";
  for (const Correspondence& cell : metrics.falsePositiveCells) {
    std::cout << "  " << cell.entity1.value() << " = " << cell.entity2.value()
              << " [" << evidenceName(cell.evidence) << "]\n";
  }
  return 0;
}

int cmdConvert(const std::string& ontologyPath, const std::string& fromIri,
               const std::string& toIri, const std::string& valueText) {
  Graph graph = readGraph(ontologyPath);
  ExtractedUnits extracted = extractUnits(graph);
  for (const std::string& warning : extracted.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  UnitContext context = makeLeafContext(extracted.units);
  Rational value = Rational::fromLexical(valueText);
  CanonicalForm from = canonicalize(Iri(fromIri), context);
  CanonicalForm to = canonicalize(Iri(toIri), context);
  Rational converted = convertValue(value, from, to);
  std::cout << "exact: " << converted.str() << "\n";
  std::cout << "decimal: " << converted.decimalStr() << "\n";
  return 0;
}

int cmdTrace(const std::string& leftPath, const std::string& rightPath,
             const std::string& seedPath, const std::string& unit1,
             const std::string& unit2) {
  Graph left = readGraph(leftPath);
  Graph right = readGraph(rightPath);
  SeedAlignment seed = SeedAlignment::fromTsv(readFile(seedPath));
  ExtractedUnits side1 = extractUnits(left);
  ExtractedUnits side2 = extractUnits(right);
  UnitContext context1 = makeSeededContext(side1.units, seed.left());
  UnitContext context2 = makeSeededContext(side2.units, seed.right());
  TraceReport report = comparisonTrace(Iri(unit1), context1, Iri(unit2), context2);
  std::cout << report.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit ontology enrichment, alignment, and evaluation"};
  app.require_subcommand(1);

  std::string input, profile, output, left, right, seedPath;
  std::string alignmentPath, referencePath;
  std::string fromIri, toIri, valueText = "1";
  std::string unit1, unit2;
  std::string format = "tsv";
  double threshold = 0.85;
  bool ignoreSeed = false;

  CLI::App* enrichCmd =
      app.add_subcommand("enrich", "Annotate a unit ontology with MathML");
  enrichCmd->add_option("input", input, "ontology (Turtle)")->required();
  enrichCmd->add_option("--profile", profile, "pattern profile (JSON)")->required();
  enrichCmd->add_option("-o,--out", output, "enriched output path")->required();

  CLI::App* alignCmd =
      app.add_subcommand("align", "Align the units of two enriched ontologies");
  alignCmd->add_option("left", left, "first ontology (Turtle)")->required();
  alignCmd->add_option("right", right, "second ontology (Turtle)")->required();
  alignCmd->add_option("--seed", seedPath, "seed base unit pairs (TSV)")->required();
  alignCmd->add_option("-o,--out", output, "alignment output path")->required();
  alignCmd->add_option("--threshold", threshold, "lexical similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  alignCmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"tsv", "xml"}));

  CLI::App* evalCmd =
      app.add_subcommand("eval", "Score an alignment against a reference");
  evalCmd->add_option("alignment", alignmentPath, "produced alignment")->required();
  evalCmd->add_option("reference", referencePath, "reference alignment")->required();
  evalCmd->add_flag("--ignore-seed", ignoreSeed,
                    "drop seed cells from the produced alignment");

  CLI::App* convertCmd =
      app.add_subcommand("convert", "Convert a value between two units");
  convertCmd->add_option("ontology", input, "enriched ontology (Turtle)")->required();
  convertCmd->add_option("--from", fromIri, "source unit IRI")->required();
  convertCmd->add_option("--to", toIri, "target unit IRI")->required();
  convertCmd->add_option("--value", valueText, "value to convert (rational)");

  CLI::App* traceCmd =
      app.add_subcommand("trace", "Step-by-step comparison of one unit pair");
  traceCmd->add_option("left", left, "first ontology (Turtle)")->required();
  traceCmd->add_option("right", right, "second ontology (Turtle)")->required();
  traceCmd->add_option("--seed", seedPath, "seed base unit pairs (TSV)")->required();
  traceCmd->add_option("--unit1", unit1, "unit IRI in the first ontology")->required();
  traceCmd->add_option("--unit2", unit2, "unit IRI in the second ontology")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enrichCmd) return cmdEnrich(input, profile, output);
    if (*alignCmd) return cmdAlign(left, right, seedPath, output, threshold, format);
    if (*evalCmd) return cmdEval(alignmentPath, referencePath, ignoreSeed);
    if (*convertCmd) return cmdConvert(input, fromIri, toIri, valueText);
    if (*traceCmd) return cmdTrace(left, right, seedPath, unit1, unit2);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
