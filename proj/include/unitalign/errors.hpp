#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unitalign {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Turtle input that is not part of the supported grammar at the lexical or
// syntactic level, with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Syntactically valid Turtle that uses a construct outside the supported
// subset (collections, property lists, @base).
class UnsupportedConstruct : public Error {
 public:
  using Error::Error;
};

// Input that is not well-formed XML.
class MalformedXml : public Error {
 public:
  using Error::Error;
};

// Well-formed XML that does not follow the unit-definition MathML dialect.
class NotUnitMathML : public Error {
 public:
  using Error::Error;
};

// A lexical value that cannot be read as an exact rational number.
class NotANumber : public Error {
 public:
  using Error::Error;
};

// A unit reference that is neither a base unit nor a defined unit.
class UnknownUnit : public Error {
 public:
  using Error::Error;
};

// A unit whose definition chain reaches itself.
class CyclicDefinition : public Error {
 public:
  using Error::Error;
};

// An offset (affine) unit used where only linear composition is valid:
// inside a product, under an exponent other than 1, in a denominator, or
// producing an offset on a composite dimension.
class OffsetComposition : public Error {
 public:
  using Error::Error;
};

// A value conversion between units of different dimensions.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An extraction profile that does not fit the ontology, or is invalid.
class ProfileMismatch : public Error {
 public:
  using Error::Error;
};

// A seed alignment that does not provide exactly seven well-formed,
// one-to-one base unit pairs.
class SeedInvalid : public Error {
 public:
  using Error::Error;
};

// An evaluation between alignments over different ontology pairs.
class OntologyPairMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace unitalign
