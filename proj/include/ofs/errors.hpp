#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ofs {

// Base of every fault raised by the library. Data problems that are
// reported as values (validation reports, ingest rejects) never throw.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text: model/prototype/pattern/alphabet files.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidModel : public Error {
 public:
  using Error::Error;
};

class UnknownToken : public Error {
 public:
  explicit UnknownToken(const std::string& token)
      : Error("unknown token '" + token + "'"), token_(token) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

class UnknownClass : public Error {
 public:
  explicit UnknownClass(const std::string& name)
      : Error("unknown token class '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UntokenizableInput : public Error {
 public:
  UntokenizableInput(const std::string& line, std::size_t offset)
      : Error("cannot tokenize input at byte offset " + std::to_string(offset) +
              ": '" + line + "'"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus is empty") {}
};

class UndefinedSimilarity : public Error {
 public:
  UndefinedSimilarity() : Error("similarity is undefined for two empty sets") {}
};

class UnprunedModel : public Error {
 public:
  explicit UnprunedModel(const std::string& rule)
      : Error("model is not pruned: level-0 rule '" + rule + "' has an empty set") {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::uint64_t budget)
      : Error("determinization exceeded the state budget of " + std::to_string(budget)),
        budget_(budget) {}
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t budget_;
};

// A postcondition the library guarantees did not hold. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ofs
