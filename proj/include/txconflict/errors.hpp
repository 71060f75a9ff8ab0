#pragma once

#include <stdexcept>
#include <string>

namespace txconflict {

/// Base for every diagnostic raised while reading Solidity source. Carries a
/// 1-based line/column; column 0 means "whole line".
class SourceError : public std::runtime_error {
 public:
  SourceError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class LexError : public SourceError {
 public:
  using SourceError::SourceError;
};

class ParseError : public SourceError {
 public:
  using SourceError::SourceError;
};

/// Raised for valid Solidity that lies outside the analyzable subset
/// (inheritance, assembly, libraries, ...). Files raising it are skipped.
class UnsupportedConstruct : public SourceError {
 public:
  using SourceError::SourceError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace txconflict
