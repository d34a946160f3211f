#include <doctest.h>

#include <string>
#include <vector>

#include <unitalign/errors.hpp>
#include <unitalign/rdf.hpp>

using namespace unitalign;

namespace {

const Triple* findTriple(const Graph& g, const std::string& s, const std::string& p) {
  for (const Triple& t : g.triples()) {
    if (t.subject.value() == s && t.predicate.value() == p) return &t;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("iri local name and namespace split") {
  CHECK(Iri("http://example.org/onto1/meter").localName() == "meter");
  CHECK(Iri("http://example.org/units#second").localName() == "second");
  CHECK(Iri("urn:x:candela").localName() == "candela");
  CHECK(Iri("meter").localName() == "meter");
  CHECK(Iri("http://example.org/onto1/meter").namespacePart() == "http://example.org/onto1/");
  CHECK(Iri("http://example.org/units#second").namespacePart() == "http://example.org/units#");
  CHECK(Iri("_:b0").isBlank());
  CHECK_FALSE(Iri("http://example.org/b0").isBlank());
}

TEST_CASE("parses prefixes, 'a', and predicate/object lists") {
  std::string ttl = R"(@prefix ex: <http://example.org/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .

ex:meter a ex:Unit ;
  rdfs:label "meter" , "metre" ;
  ex:related ex:second .
)";
  Graph g = parseGraph(ttl);
  CHECK(g.size() == 4);
  CHECK(g.prefixes().at("ex") == "http://example.org/");
  auto typed = g.query(Iri("http://example.org/meter"), vocab::rdfType(), std::nullopt);
  REQUIRE(typed.size() == 1);
  CHECK(std::get<Iri>(typed[0].object).value() == "http://example.org/Unit");
  auto labels = g.query(Iri("http://example.org/meter"), vocab::rdfsLabel(), std::nullopt);
  CHECK(labels.size() == 2);
}

TEST_CASE("literal forms: language tags, datatypes, numbers keep their lexical form") {
  std::string ttl = R"(@prefix ex: <http://example.org/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
ex:u ex:label "Meter"@de .
ex:u ex:count 42 .
ex:u ex:factor 0.001 .
ex:u ex:tiny 1e-3 .
ex:u ex:typed "5/9"^^xsd:string .
)";
  Graph g = parseGraph(ttl);
  const Triple* lang = findTriple(g, "http://example.org/u", "http://example.org/label");
  REQUIRE(lang);
  auto langLit = std::get<Literal>(lang->object);
  CHECK(langLit.language == std::string("de"));

  const Triple* count = findTriple(g, "http://example.org/u", "http://example.org/count");
  auto countLit = std::get<Literal>(count->object);
  CHECK(countLit.lexical == "42");
  CHECK(countLit.datatype == vocab::xsdInteger());

  const Triple* factor = findTriple(g, "http://example.org/u", "http://example.org/factor");
  auto factorLit = std::get<Literal>(factor->object);
  CHECK(factorLit.lexical == "0.001");
  CHECK(factorLit.datatype == vocab::xsdDecimal());

  const Triple* tiny = findTriple(g, "http://example.org/u", "http://example.org/tiny");
  auto tinyLit = std::get<Literal>(tiny->object);
  CHECK(tinyLit.lexical == "1e-3");
  CHECK(tinyLit.datatype == vocab::xsdDouble());

  const Triple* typed = findTriple(g, "http://example.org/u", "http://example.org/typed");
  auto typedLit = std::get<Literal>(typed->object);
  CHECK(typedLit.lexical == "5/9");
  CHECK(typedLit.datatype == vocab::xsdString());
}

TEST_CASE("string escapes and long strings") {
  std::string ttl = "@prefix ex: <http://example.org/> .\n"
                    "ex:a ex:p \"line\\nbreak \\\"quoted\\\" tab\\there\" .\n"
                    "ex:a ex:q \"\"\"raw \"quote\" and\nnewline\"\"\" .\n"
                    "ex:a ex:r \"\\u00e9\\U0001F600\" .\n";
  Graph g = parseGraph(ttl);
  auto p = std::get<Literal>(findTriple(g, "http://example.org/a", "http://example.org/p")->object);
  CHECK(p.lexical == "line\nbreak \"quoted\" tab\there");
  auto q = std::get<Literal>(findTriple(g, "http://example.org/a", "http://example.org/q")->object);
  CHECK(q.lexical == "raw \"quote\" and\nnewline");
  auto r = std::get<Literal>(findTriple(g, "http://example.org/a", "http://example.org/r")->object);
  CHECK(r.lexical == "\xc3\xa9\xf0\x9f\x98\x80");
}

TEST_CASE("blank node labels travel through") {
  std::string ttl = "@prefix ex: <http://example.org/> .\n"
                    "ex:newton ex:numerator _:num .\n"
                    "_:num ex:term1 ex:meter .\n";
  Graph g = parseGraph(ttl);
  const Triple* t = findTriple(g, "http://example.org/newton", "http://example.org/numerator");
  REQUIRE(t);
  Iri blank = std::get<Iri>(t->object);
  CHECK(blank.isBlank());
  CHECK(g.query(blank, std::nullopt, std::nullopt).size() == 1);
}

TEST_CASE("unsupported constructs are named, not mangled") {
  CHECK_THROWS_AS(parseGraph("@base <http://example.org/> ."), UnsupportedConstruct);
  CHECK_THROWS_AS(
      parseGraph("@prefix ex: <http://e/> . ex:a ex:p [ ex:q ex:b ] ."),
      UnsupportedConstruct);
  CHECK_THROWS_AS(parseGraph("@prefix ex: <http://e/> . ex:a ex:p ( ex:b ) ."),
                  UnsupportedConstruct);
}

TEST_CASE("syntax errors carry 1-based positions") {
  try {
    parseGraph("@prefix ex: <http://e/> .\nex:a ex:p ex:b ;\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() >= 2);
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
  CHECK_THROWS_AS(parseGraph("ex:a ex:p ex:b ."), SyntaxError);  // unknown prefix
  CHECK_THROWS_AS(parseGraph("@prefix ex: <http://e/> . ex:a ex:p ."), SyntaxError);
  CHECK_THROWS_AS(parseGraph("@prefix ex: <http://e/> . ex:a ex:p ex:b"), SyntaxError);
}

TEST_CASE("prefix redefinition warns and the last definition wins") {
  std::vector<std::string> warnings;
  Graph g = parseGraph("@prefix ex: <http://one/> .\n"
                       "@prefix ex: <http://two/> .\n"
                       "ex:a ex:p ex:b .\n",
                       &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("ex") != std::string::npos);
  CHECK(findTriple(g, "http://two/a", "http://two/p") != nullptr);
}

TEST_CASE("xml literals must be well-formed") {
  std::string good = "@prefix ex: <http://e/> .\n"
                     "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
                     "ex:a ex:p \"<x>ok</x>\"^^rdf:XMLLiteral .\n";
  Graph g = parseGraph(good);
  auto lit = std::get<Literal>(g.triples().begin()->object);
  CHECK(lit.isXml());

  std::string bad = "@prefix ex: <http://e/> .\n"
                    "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n"
                    "ex:a ex:p \"<x>broken\"^^rdf:XMLLiteral .\n";
  CHECK_THROWS_AS(parseGraph(bad), SyntaxError);
}

TEST_CASE("query patterns") {
  Graph g = parseGraph("@prefix ex: <http://e/> .\n"
                       "ex:a ex:p ex:b .\n"
                       "ex:a ex:q ex:c .\n"
                       "ex:d ex:p ex:b .\n");
  CHECK(g.query(Iri("http://e/a"), std::nullopt, std::nullopt).size() == 2);
  CHECK(g.query(std::nullopt, Iri("http://e/p"), std::nullopt).size() == 2);
  CHECK(g.query(std::nullopt, std::nullopt, Term(Iri("http://e/b"))).size() == 2);
  CHECK(g.query(Iri("http://e/d"), Iri("http://e/p"), Term(Iri("http://e/b"))).size() == 1);
  CHECK(g.query(Iri("http://e/missing"), std::nullopt, std::nullopt).empty());
}

TEST_CASE("serialization round-trips exactly, including awkward literals") {
  Graph g;
  g.addPrefix("ex", "http://example.org/");
  g.addPrefix("rdf", vocab::kRdfNs);
  Iri s("http://example.org/unit");
  g.insert({s, Iri("http://example.org/note"),
            Literal::plain("quote \" backslash \\ newline \n tab \t done")});
  g.insert({s, Iri("http://example.org/math"),
            Literal::typed("<a href=\"x\">y &amp; z</a>", vocab::rdfXmlLiteral())});
  g.insert({s, Iri("http://example.org/num"), Literal::typed("0.001", vocab::xsdDecimal())});
  g.insert({s, Iri("http://example.org/lang"), Literal::lang("метр", "ru")});
  g.insert({s, Iri("http://example.org/odd.local"), Iri("_:b1")});
  g.insert({Iri("_:b1"), Iri("http://example.org/p"), Term(s)});
  // An IRI whose local part can't be a prefixed name must fall back to <...>.
  g.insert({s, Iri("http://example.org/p"), Term(Iri("http://example.org/a(b)"))});

  std::string text = serializeGraph(g);
  Graph back = parseGraph(text);
  CHECK(back == g);
  // Determinism: serializing the reparse is byte-identical.
  CHECK(serializeGraph(back) == text);
}

TEST_CASE("serialization orders prefixes and triples deterministically") {
  Graph g;
  g.addPrefix("z", "http://z/");
  g.addPrefix("a", "http://a/");
  g.insert({Iri("http://z/s"), Iri("http://z/p"), Term(Iri("http://z/o"))});
  g.insert({Iri("http://a/s"), Iri("http://a/p"), Term(Iri("http://a/o"))});
  std::string text = serializeGraph(g);
  CHECK(text.find("@prefix a:") < text.find("@prefix z:"));
  CHECK(text.find("a:s") < text.find("z:s"));
}
