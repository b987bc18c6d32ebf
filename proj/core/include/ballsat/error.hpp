#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ballsat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (mismatched sizes, bad parameters).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A desk-scale resource cap would be exceeded (q^t, 2^b, d^n ...).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A randomized construction ran out of retries.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  kMissingHeader,
  kMalformedHeader,
  kDuplicateHeader,
  kInvalidToken,
  kVariableOutOfRange,
  kValueOutOfDomain,
  kMalformedPair,
  kMissingTerminator,
  kEmptyConstraint,
  kSizeMismatch,
  kDuplicateWord,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
      : Error("line " + std::to_string(line) + ": " + to_string(kind) +
              (detail.empty() ? "" : ": " + detail)),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  // 1-based; 0 when the error refers to the document as a whole.
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace ballsat
