#include "unitalign/alignment_io.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "unitalign/errors.hpp"
#include "unitalign/xml.hpp"

namespace unitalign {

const std::string& evidenceName(Evidence evidence) {
  static const std::string kSeed = "seed";
  static const std::string kCanonical = "canonical-form";
  static const std::string kLexical = "lexical-dimensionless";
  switch (evidence) {
    case Evidence::Seed: return kSeed;
    case Evidence::CanonicalForm: return kCanonical;
    case Evidence::LexicalDimensionless: return kLexical;
  }
  throw std::logic_error("unnamed evidence");
}

std::optional<Evidence> evidenceFromName(const std::string& name) {
  if (name == "seed") return Evidence::Seed;
  if (name == "canonical-form") return Evidence::CanonicalForm;
  if (name == "lexical-dimensionless") return Evidence::LexicalDimensionless;
  return std::nullopt;
}

namespace {

std::string formatConfidence(double confidence) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", confidence);
  return buffer;
}

std::vector<std::string> splitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// TSV
// ---------------------------------------------------------------------------

std::string writeAlignmentTsv(const Alignment& alignment) {
  std::ostringstream out;
  out << "# unit alignment\n";
  out << "# onto1: " << alignment.onto1 << "\n";
  out << "# onto2: " << alignment.onto2 << "\n";
  for (const Correspondence& cell : alignment.cells) {
    out << cell.entity1.value() << "\t" << cell.entity2.value() << "\t=\t"
        << formatConfidence(cell.confidence) << "\t"
        << evidenceName(cell.evidence) << "\n";
  }
  return out.str();
}

Alignment readAlignmentTsv(const std::string& text) {
  Alignment alignment;
  std::istringstream in(text);
  std::string line;
  std::size_t lineNumber = 0;
  while (std::getline(in, line)) {
    ++lineNumber;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string content = trimmed(line);
    if (content.empty()) continue;
    if (content[0] == '#') {
      std::string comment = trimmed(content.substr(1));
      if (comment.rfind("onto1:", 0) == 0) {
        alignment.onto1 = trimmed(comment.substr(6));
      } else if (comment.rfind("onto2:", 0) == 0) {
        alignment.onto2 = trimmed(comment.substr(6));
      }
      continue;
    }
    std::vector<std::string> fields = splitTabs(line);
    if (fields.size() < 3 || fields.size() > 5) {
      throw Error("alignment line " + std::to_string(lineNumber) +
                  " must have 3 to 5 tab-separated columns");
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw Error("alignment line " + std::to_string(lineNumber) +
                  " has an empty entity");
    }
    if (fields[2] != "=") {
      throw Error("alignment line " + std::to_string(lineNumber) +
                  " has unsupported relation \"" + fields[2] + "\"");
    }
    Correspondence cell;
    cell.entity1 = Iri(fields[0]);
    cell.entity2 = Iri(fields[1]);
    if (fields.size() >= 4) {
      try {
        cell.confidence = std::stod(fields[3]);
      } catch (const std::exception&) {
        throw Error("alignment line " + std::to_string(lineNumber) +
                    " has a bad confidence \"" + fields[3] + "\"");
      }
      if (cell.confidence < 0.0 || cell.confidence > 1.0) {
        throw Error("alignment line " + std::to_string(lineNumber) +
                    " has confidence outside [0, 1]");
      }
    }
    if (fields.size() == 5) {
      auto evidence = evidenceFromName(fields[4]);
      if (!evidence) {
        throw Error("alignment line " + std::to_string(lineNumber) +
                    " has unknown evidence \"" + fields[4] + "\"");
      }
      cell.evidence = *evidence;
    }
    alignment.cells.insert(cell);
  }
  return alignment;
}

// ---------------------------------------------------------------------------
// Alignment-format XML
// ---------------------------------------------------------------------------

std::string writeAlignmentXml(const Alignment& alignment) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n";
  out << "<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\" "
         "xmlns=\"http://knowledgeweb.semanticweb.org/heterogeneity/"
         "alignment\">\n";
  out << "  <Alignment>\n";
  out << "    <xml>yes</xml>\n";
  out << "    <level>0</level>\n";
  out << "    <type>**</type>\n";
  out << "    <onto1>" << xml::escapeText(alignment.onto1) << "</onto1>\n";
  out << "    <onto2>" << xml::escapeText(alignment.onto2) << "</onto2>\n";
  for (const Correspondence& cell : alignment.cells) {
    out << "    <map>\n";
    out << "      <Cell>\n";
    out << "        <entity1 rdf:resource=\""
        << xml::escapeAttribute(cell.entity1.value()) << "\"/>\n";
    out << "        <entity2 rdf:resource=\""
        << xml::escapeAttribute(cell.entity2.value()) << "\"/>\n";
    out << "        <relation>=</relation>\n";
    out << "        <measure rdf:datatype=\"http://www.w3.org/2001/"
           "XMLSchema#float\">"
        << formatConfidence(cell.confidence) << "</measure>\n";
    out << "        <evidence>" << evidenceName(cell.evidence)
        << "</evidence>\n";
    out << "      </Cell>\n";
    out << "    </map>\n";
  }
  out << "  </Alignment>\n";
  out << "</rdf:RDF>\n";
  return out.str();
}

namespace {

const xml::Element* findElement(const xml::Element& root, const std::string& local) {
  if (root.localName() == local) return &root;
  for (const xml::Element* child : root.childElements()) {
    if (const xml::Element* found = findElement(*child, local)) {
      return found;
    }
  }
  return nullptr;
}

void collectCells(const xml::Element& element, std::vector<const xml::Element*>& out) {
  if (element.localName() == "Cell") {
    out.push_back(&element);
    return;
  }
  for (const xml::Element* child : element.childElements()) {
    collectCells(*child, out);
  }
}

std::string entityOf(const xml::Element& cell, const std::string& name) {
  for (const xml::Element* child : cell.childElements()) {
    if (child->localName() != name) continue;
    for (const auto& [attrName, value] : child->attributes) {
      std::size_t colon = attrName.rfind(':');
      std::string local = colon == std::string::npos ? attrName
                                                     : attrName.substr(colon + 1);
      if (local == "resource") return value;
    }
    return trimmed(child->text());
  }
  throw Error("alignment cell without <" + name + ">");
}

}  // namespace

Alignment readAlignmentXml(const std::string& text) {
  xml::Element root = xml::parseDocument(text);
  const xml::Element* alignmentElement = findElement(root, "Alignment");
  if (!alignmentElement) {
    throw Error("no <Alignment> element in document");
  }
  Alignment alignment;
  for (const xml::Element* child : alignmentElement->childElements()) {
    if (child->localName() == "onto1") alignment.onto1 = trimmed(child->text());
    if (child->localName() == "onto2") alignment.onto2 = trimmed(child->text());
  }
  std::vector<const xml::Element*> cellElements;
  collectCells(*alignmentElement, cellElements);
  for (const xml::Element* cellElement : cellElements) {
    Correspondence cell;
    cell.entity1 = Iri(entityOf(*cellElement, "entity1"));
    cell.entity2 = Iri(entityOf(*cellElement, "entity2"));
    if (cell.entity1.value().empty() || cell.entity2.value().empty()) {
      throw Error("alignment cell with an empty entity");
    }
    for (const xml::Element* field : cellElement->childElements()) {
      std::string local = field->localName();
      if (local == "relation") {
        std::string relation = trimmed(field->text());
        if (relation != "=") {
          throw Error("unsupported relation \"" + relation + "\"");
        }
      } else if (local == "measure") {
        try {
          cell.confidence = std::stod(trimmed(field->text()));
        } catch (const std::exception&) {
          throw Error("bad measure \"" + trimmed(field->text()) + "\"");
        }
      } else if (local == "evidence") {
        auto evidence = evidenceFromName(trimmed(field->text()));
        if (!evidence) {
          throw Error("unknown evidence \"" + trimmed(field->text()) + "\"");
        }
        cell.evidence = *evidence;
      }
    }
    alignment.cells.insert(cell);
  }
  return alignment;
}

Alignment readAlignment(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '<') {
    return readAlignmentXml(text);
  }
  return readAlignmentTsv(text);
}

}  // namespace unitalign
