#include "unitalign/rdf.hpp"

#include <cctype>
#include <sstream>

#include "unitalign/errors.hpp"
#include "unitalign/xml.hpp"

namespace unitalign {

std::string Iri::localName() const {
  std::size_t cut = value_.find_last_of("#/");
  if (cut == std::string::npos) {
    std::size_t colon = value_.rfind(':');
    return colon == std::string::npos ? value_ : value_.substr(colon + 1);
  }
  return value_.substr(cut + 1);
}

std::string Iri::namespacePart() const {
  std::size_t cut = value_.find_last_of("#/");
  if (cut == std::string::npos) {
    std::size_t colon = value_.rfind(':');
    return colon == std::string::npos ? std::string() : value_.substr(0, colon + 1);
  }
  return value_.substr(0, cut + 1);
}

bool Literal::isXml() const {
  return datatype && datatype->value() == vocab::kRdfNs + "XMLLiteral";
}

namespace vocab {
Iri rdfType() { return Iri(kRdfNs + "type"); }
Iri rdfXmlLiteral() { return Iri(kRdfNs + "XMLLiteral"); }
Iri rdfsComment() { return Iri(kRdfsNs + "comment"); }
Iri rdfsLabel() { return Iri(kRdfsNs + "label"); }
Iri xsdInteger() { return Iri(kXsdNs + "integer"); }
Iri xsdDecimal() { return Iri(kXsdNs + "decimal"); }
Iri xsdDouble() { return Iri(kXsdNs + "double"); }
Iri xsdString() { return Iri(kXsdNs + "string"); }
}  // namespace vocab

std::vector<Triple> Graph::query(const std::optional<Iri>& subject,
                                 const std::optional<Iri>& predicate,
                                 const std::optional<Term>& object) const {
  std::vector<Triple> out;
  for (const Triple& t : triples_) {
    if (subject && !(t.subject == *subject)) continue;
    if (predicate && !(t.predicate == *predicate)) continue;
    if (object && !(t.object == *object)) continue;
    out.push_back(t);
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokenKind {
  IriRef,    // <...>, decoded
  PName,     // prefix:local, raw
  Blank,     // _:label
  Str,       // string literal, decoded
  Number,    // bare numeric, lexical as written
  A,         // keyword 'a'
  Dot,
  Semi,
  Comma,
  HatHat,    // ^^
  AtWord,    // @word (directive or language tag)
  End,
};

enum class NumberKind { Integer, Decimal, Double };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  NumberKind numberKind = NumberKind::Integer;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool isPnameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '.' || c == ':';
}

class Lexer {
 public:
  explicit Lexer(const std::string& input) : in_(input) {}

  Token next() {
    skipSpaceAndComments();
    Token token;
    token.line = line_;
    token.column = column_;
    if (eof()) {
      token.kind = TokenKind::End;
      return token;
    }
    char c = peek();
    switch (c) {
      case '<': return lexIriRef(token);
      case '_': return lexBlank(token);
      case '"':
      case '\'': return lexString(token, c);
      case '.': {
        // Leading-dot decimals ( .5 ) are numbers, otherwise end of statement.
        if (pos_ + 1 < in_.size() &&
            std::isdigit(static_cast<unsigned char>(in_[pos_ + 1]))) {
          return lexNumber(token);
        }
        advance();
        token.kind = TokenKind::Dot;
        return token;
      }
      case ';': advance(); token.kind = TokenKind::Semi; return token;
      case ',': advance(); token.kind = TokenKind::Comma; return token;
      case '^':
        advance();
        if (eof() || peek() != '^') {
          fail("expected \"^^\"", token);
        }
        advance();
        token.kind = TokenKind::HatHat;
        return token;
      case '@': return lexAtWord(token);
      case '[':
      case ']':
        throw UnsupportedConstruct(posMessage("blank node property lists are not supported"));
      case '(':
      case ')':
        throw UnsupportedConstruct(posMessage("collections are not supported"));
      default:
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
          return lexNumber(token);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
          return lexWord(token);
        }
        fail(std::string("unexpected character '") + c + "'", token);
    }
    return token;  // unreachable
  }

 private:
  const std::string& in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;

  bool eof() const { return pos_ >= in_.size(); }
  char peek() const { return in_[pos_]; }

  char advance() {
    char c = in_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  std::string posMessage(const std::string& message) const {
    return message + " at line " + std::to_string(line_) + ", column " +
           std::to_string(column_);
  }

  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw SyntaxError(message, at.line, at.column);
  }

  [[noreturn]] void failHere(const std::string& message) const {
    throw SyntaxError(message, line_, column_);
  }

  void skipSpaceAndComments() {
    for (;;) {
      while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      }
      if (!eof() && peek() == '#') {
        while (!eof() && peek() != '\n') advance();
        continue;
      }
      return;
    }
  }

  unsigned long lexHex(int count) {
    unsigned long value = 0;
    for (int k = 0; k < count; ++k) {
      if (eof() || !std::isxdigit(static_cast<unsigned char>(peek()))) {
        failHere("invalid \\u escape");
      }
      char c = advance();
      int v = std::isdigit(static_cast<unsigned char>(c))
                  ? c - '0'
                  : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
      value = value * 16 + static_cast<unsigned long>(v);
    }
    return value;
  }

  void appendCodepoint(std::string& out, unsigned long cp) {
    if (cp > 0x10FFFF) {
      failHere("escape out of range");
    }
    if (cp <= 0x7F) {
      out += static_cast<char>(cp);
    } else if (cp <= 0x7FF) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp <= 0xFFFF) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  Token lexIriRef(Token token) {
    advance();  // '<'
    std::string value;
    for (;;) {
      if (eof()) fail("unterminated IRI", token);
      char c = advance();
      if (c == '>') break;
      if (c == '\n') fail("newline inside IRI", token);
      if (c == '\\') {
        if (eof()) fail("unterminated IRI", token);
        char e = advance();
        if (e == 'u') {
          appendCodepoint(value, lexHex(4));
        } else if (e == 'U') {
          appendCodepoint(value, lexHex(8));
        } else {
          failHere("invalid escape in IRI");
        }
        continue;
      }
      value += c;
    }
    token.kind = TokenKind::IriRef;
    token.text = std::move(value);
    return token;
  }

  Token lexBlank(Token token) {
    advance();  // '_'
    if (eof() || peek() != ':') {
      fail("expected ':' after '_'", token);
    }
    advance();
    std::string label;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_' || peek() == '-' || peek() == '.')) {
      label += advance();
    }
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
      --column_;
    }
    if (label.empty()) {
      fail("empty blank node label", token);
    }
    token.kind = TokenKind::Blank;
    token.text = "_:" + label;
    return token;
  }

  Token lexString(Token token, char quote) {
    bool longForm = false;
    advance();
    if (!eof() && peek() == quote) {
      advance();
      if (!eof() && peek() == quote) {
        advance();
        longForm = true;
      } else {
        // Empty short string.
        token.kind = TokenKind::Str;
        return token;
      }
    }
    std::string value;
    for (;;) {
      if (eof()) fail("unterminated string", token);
      char c = peek();
      if (c == quote) {
        if (!longForm) {
          advance();
          break;
        }
        std::size_t run = 0;
        while (!eof() && peek() == quote) {
          advance();
          ++run;
        }
        if (run >= 3) {
          value.append(run - 3, quote);
          break;
        }
        value.append(run, quote);
        continue;
      }
      if (!longForm && (c == '\n' || c == '\r')) {
        fail("newline in single-line string", token);
      }
      advance();
      if (c == '\\') {
        if (eof()) fail("unterminated string", token);
        char e = advance();
        switch (e) {
          case 't': value += '\t'; break;
          case 'b': value += '\b'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'u': appendCodepoint(value, lexHex(4)); break;
          case 'U': appendCodepoint(value, lexHex(8)); break;
          default: failHere("invalid string escape");
        }
        continue;
      }
      value += c;
    }
    token.kind = TokenKind::Str;
    token.text = std::move(value);
    return token;
  }

  Token lexNumber(Token token) {
    std::string text;
    if (peek() == '+' || peek() == '-') {
      text += advance();
    }
    bool sawDigit = false;
    bool sawDot = false;
    bool sawExp = false;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      text += advance();
      sawDigit = true;
    }
    if (!eof() && peek() == '.' && pos_ + 1 < in_.size() &&
        std::isdigit(static_cast<unsigned char>(in_[pos_ + 1]))) {
      text += advance();
      sawDot = true;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        text += advance();
        sawDigit = true;
      }
    }
    if (!eof() && (peek() == 'e' || peek() == 'E')) {
      text += advance();
      sawExp = true;
      if (!eof() && (peek() == '+' || peek() == '-')) {
        text += advance();
      }
      bool expDigit = false;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
        text += advance();
        expDigit = true;
      }
      if (!expDigit) fail("malformed number", token);
    }
    if (!sawDigit) fail("malformed number", token);
    token.kind = TokenKind::Number;
    token.text = std::move(text);
    token.numberKind = sawExp   ? NumberKind::Double
                       : sawDot ? NumberKind::Decimal
                                : NumberKind::Integer;
    return token;
  }

  Token lexAtWord(Token token) {
    advance();  // '@'
    std::string word;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
      word += advance();
    }
    if (word.empty()) fail("expected word after '@'", token);
    token.kind = TokenKind::AtWord;
    token.text = std::move(word);
    return token;
  }

  Token lexWord(Token token) {
    std::string text;
    while (!eof() && isPnameChar(peek())) {
      text += advance();
    }
    while (!text.empty() && text.back() == '.') {
      text.pop_back();
      --pos_;
      --column_;
    }
    if (text == "a") {
      token.kind = TokenKind::A;
      return token;
    }
    if (text.find(':') == std::string::npos) {
      fail("unexpected word \"" + text + "\"", token);
    }
    token.kind = TokenKind::PName;
    token.text = std::move(text);
    return token;
  }
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class TurtleParser {
 public:
  TurtleParser(const std::string& input, std::vector<std::string>* warnings)
      : lexer_(input), warnings_(warnings) {
    shift();
  }

  Graph parse() {
    while (current_.kind != TokenKind::End) {
      if (current_.kind == TokenKind::AtWord) {
        parseDirective();
      } else {
        parseStatement();
      }
    }
    return std::move(graph_);
  }

 private:
  Lexer lexer_;
  Token current_;
  Graph graph_;
  std::vector<std::string>* warnings_;

  void shift() { current_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, current_.line, current_.column);
  }

  void expect(TokenKind kind, const char* what) {
    if (current_.kind != kind) {
      fail(std::string("expected ") + what);
    }
    shift();
  }

  void parseDirective() {
    if (current_.text == "base") {
      throw UnsupportedConstruct("@base is not supported");
    }
    if (current_.text != "prefix") {
      fail("unknown directive @" + current_.text);
    }
    shift();
    if (current_.kind != TokenKind::PName) {
      fail("expected prefix name");
    }
    std::string raw = current_.text;
    if (raw.back() != ':' || raw.find(':') != raw.size() - 1) {
      fail("expected prefix name ending in ':'");
    }
    std::string name = raw.substr(0, raw.size() - 1);
    shift();
    if (current_.kind != TokenKind::IriRef) {
      fail("expected IRI in @prefix");
    }
    std::string ns = current_.text;
    auto it = graph_.prefixes().find(name);
    if (it != graph_.prefixes().end() && it->second != ns && warnings_) {
      warnings_->push_back("prefix \"" + name + ":\" redefined from <" +
                           it->second + "> to <" + ns + ">");
    }
    graph_.addPrefix(name, ns);
    shift();
    expect(TokenKind::Dot, "'.' after @prefix");
  }

  Iri expandPName(const Token& token) const {
    std::size_t colon = token.text.find(':');
    std::string prefix = token.text.substr(0, colon);
    std::string local = token.text.substr(colon + 1);
    auto it = graph_.prefixes().find(prefix);
    if (it == graph_.prefixes().end()) {
      throw SyntaxError("unknown prefix \"" + prefix + ":\"", token.line,
                        token.column);
    }
    return Iri(it->second + local);
  }

  Iri parseIriTerm(const char* what) {
    Iri iri;
    switch (current_.kind) {
      case TokenKind::IriRef: iri = Iri(current_.text); break;
      case TokenKind::PName: iri = expandPName(current_); break;
      case TokenKind::Blank: iri = Iri(current_.text); break;
      default: fail(std::string("expected ") + what);
    }
    shift();
    return iri;
  }

  Iri parsePredicate() {
    if (current_.kind == TokenKind::A) {
      shift();
      return vocab::rdfType();
    }
    if (current_.kind == TokenKind::Blank) {
      fail("blank node as predicate");
    }
    return parseIriTerm("predicate");
  }

  Term parseObject() {
    switch (current_.kind) {
      case TokenKind::IriRef:
      case TokenKind::PName:
      case TokenKind::Blank:
        return parseIriTerm("object");
      case TokenKind::Str: {
        Token stringToken = current_;
        shift();
        Literal literal = Literal::plain(stringToken.text);
        if (current_.kind == TokenKind::AtWord) {
          literal.language = current_.text;
          shift();
        } else if (current_.kind == TokenKind::HatHat) {
          shift();
          if (current_.kind != TokenKind::IriRef && current_.kind != TokenKind::PName) {
            fail("expected datatype IRI");
          }
          literal.datatype = parseIriTerm("datatype IRI");
        }
        if (literal.isXml() && !xml::isWellFormed(literal.lexical)) {
          throw SyntaxError("XML literal is not well-formed XML",
                            stringToken.line, stringToken.column);
        }
        return literal;
      }
      case TokenKind::Number: {
        Iri datatype = current_.numberKind == NumberKind::Integer ? vocab::xsdInteger()
                       : current_.numberKind == NumberKind::Decimal
                           ? vocab::xsdDecimal()
                           : vocab::xsdDouble();
        Literal literal = Literal::typed(current_.text, datatype);
        shift();
        return literal;
      }
      default:
        fail("expected object term");
    }
  }

  void parseStatement() {
    Iri subject = parseIriTerm("subject");
    for (;;) {
      Iri predicate = parsePredicate();
      for (;;) {
        Term object = parseObject();
        graph_.insert(Triple{subject, predicate, std::move(object)});
        if (current_.kind == TokenKind::Comma) {
          shift();
          continue;
        }
        break;
      }
      if (current_.kind == TokenKind::Semi) {
        shift();
        // Trailing ';' before '.' is allowed.
        while (current_.kind == TokenKind::Semi) shift();
        if (current_.kind == TokenKind::Dot) break;
        continue;
      }
      break;
    }
    expect(TokenKind::Dot, "'.' at end of statement");
  }
};

// ---------------------------------------------------------------------------
// Serializer
// ---------------------------------------------------------------------------

bool isValidLocalName(const std::string& local) {
  if (local.empty() || local.back() == '.') return false;
  for (std::size_t i = 0; i < local.size(); ++i) {
    char c = local[i];
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
              (i > 0 && (c == '-' || c == '.'));
    if (!ok) return false;
  }
  return true;
}

std::string escapeIriRef(const std::string& iri) {
  std::string out = "<";
  for (char c : iri) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (uc <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '^' || c == '`' || c == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04X", uc);
      out += buf;
    } else {
      out += c;
    }
  }
  out += ">";
  return out;
}

std::string renderIri(const Iri& iri, const std::map<std::string, std::string>& prefixes) {
  if (iri.isBlank()) {
    return iri.value();
  }
  const std::string& full = iri.value();
  const std::string* bestName = nullptr;
  std::size_t bestLen = 0;
  for (const auto& [name, ns] : prefixes) {
    if (ns.size() > bestLen && full.size() >= ns.size() &&
        full.compare(0, ns.size(), ns) == 0 &&
        isValidLocalName(full.substr(ns.size()))) {
      bestName = &name;
      bestLen = ns.size();
    }
  }
  if (bestName) {
    return *bestName + ":" + full.substr(bestLen);
  }
  return escapeIriRef(full);
}

std::string escapeShortString(const std::string& raw) {
  std::string out = "\"";
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned char>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += "\"";
  return out;
}

std::string escapeLongString(const std::string& raw) {
  std::string out = "\"\"\"";
  for (char c : raw) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '"') {
      out += "\\\"";
    } else {
      out += c;
    }
  }
  out += "\"\"\"";
  return out;
}

std::string renderTerm(const Term& term, const std::map<std::string, std::string>& prefixes) {
  if (const auto* iri = std::get_if<Iri>(&term)) {
    return renderIri(*iri, prefixes);
  }
  const auto& literal = std::get<Literal>(term);
  std::string out;
  if (literal.isXml()) {
    out = escapeLongString(literal.lexical);
  } else {
    out = escapeShortString(literal.lexical);
  }
  if (literal.language) {
    out += "@" + *literal.language;
  } else if (literal.datatype) {
    out += "^^" + renderIri(*literal.datatype, prefixes);
  }
  return out;
}

}  // namespace

Graph parseGraph(const std::string& text, std::vector<std::string>* warnings) {
  return TurtleParser(text, warnings).parse();
}

std::string serializeGraph(const Graph& graph) {
  std::ostringstream out;
  for (const auto& [name, ns] : graph.prefixes()) {
    out << "@prefix " << name << ": " << escapeIriRef(ns) << " .\n";
  }
  if (!graph.prefixes().empty() && !graph.triples().empty()) {
    out << "\n";
  }
  for (const Triple& t : graph.triples()) {
    out << renderIri(t.subject, graph.prefixes()) << " "
        << renderIri(t.predicate, graph.prefixes()) << " "
        << renderTerm(t.object, graph.prefixes()) << " .\n";
  }
  return out.str();
}

}  // namespace unitalign
