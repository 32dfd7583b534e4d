#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsd {

/// A term was weighted or queried before any document containing it was
/// absorbed into the vector space (df == 0). Callers must absorb first.
class UnknownTerm : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A document id was inserted or processed twice.
class DuplicateDoc : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An (k, p_coll) combination whose collision probability rounds to 0 or 1,
/// or whose required table count is not representable.
class DegenerateParams : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Error rates are undefined because one of the truth classes is empty.
class DegenerateTruth : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A stream or verdict file record could not be parsed.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Stream timestamps decreased at the given line.
class OrderError : public std::runtime_error {
public:
  explicit OrderError(std::size_t line)
      : std::runtime_error("line " + std::to_string(line) +
                           ": timestamp decreases"),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// File could not be opened or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace fsd
