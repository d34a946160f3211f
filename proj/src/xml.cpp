#include "unitalign/xml.hpp"

#include <cctype>

#include "unitalign/errors.hpp"

namespace unitalign::xml {

namespace {

bool isNameStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool isNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         c == '-' || c == '.';
}

bool isSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

void appendUtf8(std::string& out, unsigned long cp) {
  if (cp <= 0x7F) {
    out += static_cast<char>(cp);
  } else if (cp <= 0x7FF) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp <= 0xFFFF) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp <= 0x10FFFF) {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    throw MalformedXml("character reference out of range");
  }
}

class Parser {
 public:
  explicit Parser(const std::string& input) : in_(input) {}

  Element parseDocument() {
    skipProlog();
    if (eof() || peek() != '<') {
      throw MalformedXml("expected root element");
    }
    Element root = parseElement();
    skipMisc();
    if (!eof()) {
      throw MalformedXml("content after root element");
    }
    return root;
  }

 private:
  const std::string& in_;
  std::size_t pos_ = 0;

  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }
  char get() { return in_[pos_++]; }

  bool lookingAt(const char* s) const {
    std::size_t k = 0;
    while (s[k] != '\0') {
      if (pos_ + k >= in_.size() || in_[pos_ + k] != s[k]) return false;
      ++k;
    }
    return true;
  }

  void expect(const char* s) {
    if (!lookingAt(s)) {
      throw MalformedXml(std::string("expected \"") + s + "\"");
    }
    pos_ += std::string(s).size();
  }

  void skipSpace() {
    while (!eof() && isSpace(peek())) ++pos_;
  }

  void skipComment() {
    expect("<!--");
    std::size_t end = in_.find("-->", pos_);
    if (end == std::string::npos) {
      throw MalformedXml("unterminated comment");
    }
    pos_ = end + 3;
  }

  void skipProlog() {
    skipSpace();
    if (lookingAt("<?xml")) {
      std::size_t end = in_.find("?>", pos_);
      if (end == std::string::npos) {
        throw MalformedXml("unterminated XML declaration");
      }
      pos_ = end + 2;
    }
    skipMisc();
    if (lookingAt("<!DOCTYPE")) {
      throw MalformedXml("DOCTYPE is not supported");
    }
  }

  void skipMisc() {
    for (;;) {
      skipSpace();
      if (lookingAt("<!--")) {
        skipComment();
      } else if (lookingAt("<?")) {
        std::size_t end = in_.find("?>", pos_);
        if (end == std::string::npos) {
          throw MalformedXml("unterminated processing instruction");
        }
        pos_ = end + 2;
      } else {
        return;
      }
    }
  }

  std::string parseName() {
    if (eof() || !isNameStart(peek())) {
      throw MalformedXml("expected a name");
    }
    std::size_t start = pos_;
    ++pos_;
    while (!eof() && isNameChar(peek())) ++pos_;
    return in_.substr(start, pos_ - start);
  }

  std::string parseReference() {
    // Caller consumed '&'.
    std::size_t semi = in_.find(';', pos_);
    if (semi == std::string::npos || semi - pos_ > 10) {
      throw MalformedXml("unterminated entity reference");
    }
    std::string name = in_.substr(pos_, semi - pos_);
    pos_ = semi + 1;
    if (name == "lt") return "<";
    if (name == "gt") return ">";
    if (name == "amp") return "&";
    if (name == "quot") return "\"";
    if (name == "apos") return "'";
    if (!name.empty() && name[0] == '#') {
      bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      std::string digits = name.substr(hex ? 2 : 1);
      if (digits.empty()) {
        throw MalformedXml("empty character reference");
      }
      unsigned long cp = 0;
      for (char c : digits) {
        int v;
        if (std::isdigit(static_cast<unsigned char>(c))) {
          v = c - '0';
        } else if (hex && std::isxdigit(static_cast<unsigned char>(c))) {
          v = std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
        } else {
          throw MalformedXml("invalid character reference");
        }
        if (v >= 10 && !hex) {
          throw MalformedXml("invalid character reference");
        }
        cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
        if (cp > 0x10FFFF) {
          throw MalformedXml("character reference out of range");
        }
      }
      std::string out;
      appendUtf8(out, cp);
      return out;
    }
    throw MalformedXml("unknown entity \"&" + name + ";\"");
  }

  std::string parseAttributeValue() {
    if (eof() || (peek() != '"' && peek() != '\'')) {
      throw MalformedXml("expected attribute value");
    }
    char quote = get();
    std::string value;
    for (;;) {
      if (eof()) {
        throw MalformedXml("unterminated attribute value");
      }
      char c = get();
      if (c == quote) break;
      if (c == '<') {
        throw MalformedXml("'<' in attribute value");
      }
      if (c == '&') {
        value += parseReference();
      } else {
        value += c;
      }
    }
    return value;
  }

  Element parseElement() {
    expect("<");
    Element element;
    element.name = parseName();
    for (;;) {
      bool hadSpace = !eof() && isSpace(peek());
      skipSpace();
      if (eof()) {
        throw MalformedXml("unterminated start tag");
      }
      if (lookingAt("/>")) {
        pos_ += 2;
        return element;
      }
      if (peek() == '>') {
        ++pos_;
        parseContent(element);
        return element;
      }
      if (!hadSpace) {
        throw MalformedXml("expected whitespace before attribute");
      }
      std::string attrName = parseName();
      for (const auto& [existing, _] : element.attributes) {
        if (existing == attrName) {
          throw MalformedXml("duplicate attribute \"" + attrName + "\"");
        }
      }
      skipSpace();
      expect("=");
      skipSpace();
      element.attributes.emplace_back(attrName, parseAttributeValue());
    }
  }

  void parseContent(Element& element) {
    std::string text;
    auto flushText = [&]() {
      if (!text.empty()) {
        element.children.emplace_back(std::move(text));
        text.clear();
      }
    };
    for (;;) {
      if (eof()) {
        throw MalformedXml("unterminated element <" + element.name + ">");
      }
      char c = peek();
      if (c == '<') {
        if (lookingAt("</")) {
          flushText();
          pos_ += 2;
          std::string closeName = parseName();
          if (closeName != element.name) {
            throw MalformedXml("mismatched close tag </" + closeName +
                               "> for <" + element.name + ">");
          }
          skipSpace();
          expect(">");
          return;
        }
        if (lookingAt("<!--")) {
          skipComment();
          continue;
        }
        if (lookingAt("<![CDATA[")) {
          pos_ += 9;
          std::size_t end = in_.find("]]>", pos_);
          if (end == std::string::npos) {
            throw MalformedXml("unterminated CDATA section");
          }
          text += in_.substr(pos_, end - pos_);
          pos_ = end + 3;
          continue;
        }
        if (lookingAt("<?")) {
          std::size_t end = in_.find("?>", pos_);
          if (end == std::string::npos) {
            throw MalformedXml("unterminated processing instruction");
          }
          pos_ = end + 2;
          continue;
        }
        if (lookingAt("<!")) {
          throw MalformedXml("unsupported markup declaration");
        }
        flushText();
        element.children.emplace_back(parseElement());
        continue;
      }
      if (c == '&') {
        ++pos_;
        text += parseReference();
        continue;
      }
      text += get();
    }
  }
};

}  // namespace

const std::string* Element::attribute(const std::string& attributeName) const {
  for (const auto& [name, value] : attributes) {
    if (name == attributeName) return &value;
  }
  return nullptr;
}

std::string Element::localName() const {
  std::size_t colon = name.rfind(':');
  return colon == std::string::npos ? name : name.substr(colon + 1);
}

std::vector<const Element*> Element::childElements() const {
  std::vector<const Element*> out;
  for (const Node& child : children) {
    if (const auto* e = std::get_if<Element>(&child)) {
      out.push_back(e);
    }
  }
  return out;
}

std::string Element::text() const {
  std::string out;
  for (const Node& child : children) {
    if (const auto* s = std::get_if<std::string>(&child)) {
      out += *s;
    }
  }
  return out;
}

Element parseDocument(const std::string& input) {
  return Parser(input).parseDocument();
}

bool isWellFormed(const std::string& input) {
  try {
    parseDocument(input);
    return true;
  } catch (const MalformedXml&) {
    return false;
  }
}

std::string escapeText(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escapeAttribute(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace unitalign::xml
