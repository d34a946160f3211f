#include <doctest.h>

#include <random>
#include <string>

#include <unitalign/alignment.hpp>
#include <unitalign/alignment_io.hpp>
#include <unitalign/errors.hpp>
#include <unitalign/evaluator.hpp>

#include "support/generators.hpp"

using namespace unitalign;

namespace {

Correspondence cell(const std::string& e1, const std::string& e2,
                    Evidence evidence = Evidence::CanonicalForm,
                    double confidence = 1.0) {
  Correspondence c;
  c.entity1 = Iri("http://a/" + e1);
  c.entity2 = Iri("http://b/" + e2);
  c.confidence = confidence;
  c.evidence = evidence;
  return c;
}

Alignment alignmentOf(std::initializer_list<Correspondence> cells) {
  Alignment a;
  a.onto1 = "http://a/";
  a.onto2 = "http://b/";
  a.cells.insert(cells.begin(), cells.end());
  return a;
}

}  // namespace

TEST_CASE("precision, recall and F-measure on a mixed alignment") {
  Alignment produced = alignmentOf({cell("m", "m"), cell("s", "s"), cell("kg", "kg"),
                                    cell("rad", "sr")});
  Alignment reference = alignmentOf({cell("m", "m"), cell("s", "s"), cell("kg", "kg"),
                                     cell("mol", "mol"), cell("cd", "cd")});

  Metrics m = evaluate(produced, reference);
  CHECK(m.truePositives == 3);
  CHECK(m.falsePositives == 1);
  CHECK(m.falseNegatives == 2);
  CHECK(m.precision == doctest::Approx(0.75));
  CHECK(m.recall == doctest::Approx(0.6));
  CHECK(m.fMeasure == doctest::Approx(2.0 / 3.0));
  REQUIRE(m.falsePositiveCells.size() == 1);
  CHECK(m.falsePositiveCells[0].entity1 == Iri("http://a/rad"));
  CHECK(m.falsePositiveCells[0].entity2 == Iri("http://b/sr"));
}

TEST_CASE("ignoreSeed drops produced seed cells but not reference expectations") {
  Alignment produced = alignmentOf({cell("m", "m", Evidence::Seed),
                                    cell("s", "s", Evidence::Seed),
                                    cell("j", "nm"), cell("hz", "bq")});
  Alignment reference = alignmentOf({cell("m", "m"), cell("s", "s"), cell("j", "nm"),
                                     cell("pa", "pa")});

  Metrics all = evaluate(produced, reference);
  CHECK(all.truePositives == 3);
  CHECK(all.falsePositives == 1);
  CHECK(all.falseNegatives == 1);
  CHECK(all.precision == doctest::Approx(0.75));
  CHECK(all.recall == doctest::Approx(0.75));

  Metrics rest = evaluate(produced, reference, true);
  CHECK(rest.truePositives == 1);
  CHECK(rest.falsePositives == 1);
  CHECK(rest.falseNegatives == 3);  // the seed pairs now count as missed
  CHECK(rest.precision == doctest::Approx(0.5));
  CHECK(rest.recall == doctest::Approx(0.25));
}

TEST_CASE("degenerate alignments follow the documented conventions") {
  Alignment empty = alignmentOf({});
  Alignment nonEmpty = alignmentOf({cell("m", "m")});
  Alignment wrong = alignmentOf({cell("x", "y")});

  Metrics both = evaluate(empty, empty);
  CHECK(both.precision == doctest::Approx(1.0));
  CHECK(both.recall == doctest::Approx(1.0));
  CHECK(both.fMeasure == doctest::Approx(1.0));

  Metrics nothingFound = evaluate(empty, nonEmpty);
  CHECK(nothingFound.precision == doctest::Approx(0.0));
  CHECK(nothingFound.recall == doctest::Approx(0.0));
  CHECK(nothingFound.fMeasure == doctest::Approx(0.0));

  Metrics allWrong = evaluate(wrong, empty);
  CHECK(allWrong.precision == doctest::Approx(0.0));
  CHECK(allWrong.recall == doctest::Approx(0.0));
  CHECK(allWrong.fMeasure == doctest::Approx(0.0));

  // Seed-only produced set against a reference: nothing left to consider.
  Alignment seedOnly = alignmentOf({cell("m", "m", Evidence::Seed)});
  Metrics ignored = evaluate(seedOnly, nonEmpty, true);
  CHECK(ignored.precision == doctest::Approx(0.0));
  CHECK(ignored.recall == doctest::Approx(0.0));
  Metrics ignoredEmptyRef = evaluate(seedOnly, empty, true);
  CHECK(ignoredEmptyRef.precision == doctest::Approx(1.0));
  CHECK(ignoredEmptyRef.recall == doctest::Approx(1.0));
}

TEST_CASE("ontology pair checking") {
  Alignment produced = alignmentOf({cell("m", "m")});
  Alignment reference = alignmentOf({cell("m", "m")});

  CHECK_NOTHROW(evaluate(produced, reference));

  Alignment other = reference;
  other.onto2 = "http://c/";
  CHECK_THROWS_AS(evaluate(produced, other), OntologyPairMismatch);

  Alignment unnamed = reference;
  unnamed.onto1.clear();
  unnamed.onto2.clear();
  CHECK_NOTHROW(evaluate(produced, unnamed));
  CHECK_NOTHROW(evaluate(unnamed, other));
}

TEST_CASE("confidence never affects the metrics") {
  Alignment produced = alignmentOf({cell("m", "m", Evidence::CanonicalForm, 0.25),
                                    cell("s", "s", Evidence::LexicalDimensionless, 0.0)});
  Alignment reference = alignmentOf({cell("m", "m"), cell("s", "s")});
  Metrics m = evaluate(produced, reference);
  CHECK(m.precision == doctest::Approx(1.0));
  CHECK(m.recall == doctest::Approx(1.0));
  CHECK(m.fMeasure == doctest::Approx(1.0));
}

TEST_CASE("every alignment scores perfectly against itself") {
  std::mt19937 rng(246810);
  for (int i = 0; i < 20; ++i) {
    Alignment a = gen::randomAlignment(rng, "http://a/", "http://b/");
    Metrics m = evaluate(a, a);
    CHECK(m.precision == doctest::Approx(1.0));
    CHECK(m.recall == doctest::Approx(1.0));
    CHECK(m.fMeasure == doctest::Approx(1.0));
    CHECK(m.falsePositiveCells.empty());
  }
}

TEST_CASE("TSV and XML serializations round-trip") {
  std::mt19937 rng(135791);
  for (int i = 0; i < 25; ++i) {
    Alignment a = gen::randomAlignment(rng, "http://left.example/ns#",
                                       "http://right.example/ns#");
    Alignment viaTsv = readAlignmentTsv(writeAlignmentTsv(a));
    CHECK(viaTsv == a);
    Alignment viaXml = readAlignmentXml(writeAlignmentXml(a));
    CHECK(viaXml == a);

    // The sniffing reader accepts both encodings.
    CHECK(readAlignment(writeAlignmentTsv(a)) == a);
    CHECK(readAlignment(writeAlignmentXml(a)) == a);
  }
}

TEST_CASE("alignment readers reject malformed input") {
  CHECK_THROWS_AS(readAlignmentTsv("http://a/m\n"), Error);  // missing columns
  CHECK_THROWS_AS(readAlignmentTsv("http://a/m\thttp://b/m\t=\tbanana\tseed\n"), Error);
  CHECK_THROWS_AS(readAlignmentTsv("http://a/m\thttp://b/m\t=\t1.0\tguesswork\n"), Error);
  CHECK_THROWS_AS(readAlignmentTsv("http://a/m\thttp://b/m\t<\t1.0\tseed\n"), Error);
  CHECK_THROWS_AS(readAlignmentXml("<Alignment><map><Cell></Cell></map>"), Error);
  CHECK_THROWS_AS(readAlignmentXml("not xml at all"), Error);
}
