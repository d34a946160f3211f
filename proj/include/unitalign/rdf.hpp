#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace unitalign {

// IRI or blank node label. Blank nodes keep their "_:" prefix so both kinds
// travel through triples uniformly.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value) : value_(std::move(value)) {}

  const std::string& value() const { return value_; }
  bool isBlank() const { return value_.rfind("_:", 0) == 0; }

  // Part after the last '#' or '/' (or the whole IRI).
  std::string localName() const;

  // Everything up to and including the last '#' or '/'.
  std::string namespacePart() const;

  friend bool operator==(const Iri& a, const Iri& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Iri& a, const Iri& b) { return a.value_ != b.value_; }
  friend bool operator<(const Iri& a, const Iri& b) { return a.value_ < b.value_; }

 private:
  std::string value_;
};

struct Literal {
  std::string lexical;
  std::optional<Iri> datatype;
  std::optional<std::string> language;

  static Literal plain(std::string text) { return {std::move(text), {}, {}}; }
  static Literal lang(std::string text, std::string tag) {
    return {std::move(text), {}, std::move(tag)};
  }
  static Literal typed(std::string text, Iri type) {
    return {std::move(text), std::move(type), {}};
  }

  bool isXml() const;

  friend bool operator==(const Literal& a, const Literal& b) {
    return a.lexical == b.lexical && a.datatype == b.datatype &&
           a.language == b.language;
  }
  friend bool operator<(const Literal& a, const Literal& b) {
    if (a.lexical != b.lexical) return a.lexical < b.lexical;
    if (a.datatype != b.datatype) return a.datatype < b.datatype;
    return a.language < b.language;
  }
};

using Term = std::variant<Iri, Literal>;

struct Triple {
  Iri subject;
  Iri predicate;
  Term object;

  friend bool operator==(const Triple& a, const Triple& b) {
    return a.subject == b.subject && a.predicate == b.predicate &&
           a.object == b.object;
  }
  friend bool operator<(const Triple& a, const Triple& b) {
    if (a.subject != b.subject) return a.subject < b.subject;
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return a.object < b.object;
  }
};

namespace vocab {
inline const std::string kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string kRdfsNs = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string kXsdNs = "http://www.w3.org/2001/XMLSchema#";

Iri rdfType();
Iri rdfXmlLiteral();
Iri rdfsComment();
Iri rdfsLabel();
Iri xsdInteger();
Iri xsdDecimal();
Iri xsdDouble();
Iri xsdString();
}  // namespace vocab

// Triple store with set semantics and deterministic iteration order.
class Graph {
 public:
  using TripleSet = std::set<Triple>;

  void addPrefix(const std::string& name, const std::string& ns) {
    prefixes_[name] = ns;
  }
  bool insert(Triple triple) { return triples_.insert(std::move(triple)).second; }
  bool erase(const Triple& triple) { return triples_.erase(triple) > 0; }

  const TripleSet& triples() const { return triples_; }
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }
  std::size_t size() const { return triples_.size(); }

  // Triples matching the given pattern; empty optionals match anything.
  std::vector<Triple> query(const std::optional<Iri>& subject,
                            const std::optional<Iri>& predicate,
                            const std::optional<Term>& object) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.triples_ == b.triples_ && a.prefixes_ == b.prefixes_;
  }

 private:
  TripleSet triples_;
  std::map<std::string, std::string> prefixes_;
};

// Parses the supported Turtle subset: @prefix, prefixed names, IRIs, blank
// node labels, 'a', ';' and ',' lists, string literals (short and long form,
// language tags, datatypes), bare numbers, and '#' comments. Collections,
// property lists, and @base raise UnsupportedConstruct; anything else
// ill-formed raises SyntaxError. Non-fatal notes (duplicate prefix
// redefinitions) are appended to *warnings when given.
Graph parseGraph(const std::string& text, std::vector<std::string>* warnings = nullptr);

// Deterministic serialization: sorted @prefix block, then triples sorted by
// subject, predicate, object, one per line. parse(serialize(g)) == g.
std::string serializeGraph(const Graph& graph);

}  // namespace unitalign
