#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace attrsample {

/// Bad input: malformed files, unknown ids, violated preconditions.
/// Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters that are well-formed but cannot be satisfied (K > N, a graph
/// too sparse for the requested sample, a singular design). Exit code 2.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : InputError(path + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Edge sampling ran out of edges before reaching the requested node count.
class CoverageError : public InfeasibleError {
 public:
  CoverageError(std::size_t requested, std::size_t reached)
      : InfeasibleError("edge sampling exhausted all edges after reaching " +
                        std::to_string(reached) + " of " + std::to_string(requested) +
                        " nodes"),
        requested_(requested),
        reached_(reached) {}

  std::size_t requested() const { return requested_; }
  std::size_t reached() const { return reached_; }

 private:
  std::size_t requested_;
  std::size_t reached_;
};

/// Random walk exceeded its step budget without collecting K nodes.
class NonTerminationError : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

/// Rank-deficient regression design; carries the names of the columns
/// that are linearly dependent.
class SingularityError : public InfeasibleError {
 public:
  SingularityError(const std::string& what, std::vector<std::string> columns)
      : InfeasibleError(what), columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::vector<std::string> columns_;
};

}  // namespace attrsample
