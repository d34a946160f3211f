#pragma once

#include <string>
#include <variant>
#include <vector>

namespace unitalign::xml {

// Minimal XML document model: elements, attributes, text. Comments are
// dropped at parse time, CDATA becomes text, DTDs are rejected.
struct Element;

using Node = std::variant<Element, std::string>;

struct Element {
  std::string name;  // as written, prefix included
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;

  // First value for the attribute, or nullptr.
  const std::string* attribute(const std::string& attributeName) const;

  // Name part after the last ':'.
  std::string localName() const;

  // Child elements in document order, skipping text.
  std::vector<const Element*> childElements() const;

  // Concatenated direct text children.
  std::string text() const;
};

// Parses a document with a single root element, optionally preceded by an
// XML declaration, comments and whitespace. Throws MalformedXml.
Element parseDocument(const std::string& input);

bool isWellFormed(const std::string& input);

std::string escapeText(const std::string& raw);
std::string escapeAttribute(const std::string& raw);

}  // namespace unitalign::xml
