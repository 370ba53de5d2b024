#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

/// A Dedekind real whose lower approximation overtook its upper one. This
/// only happens when an upstream construction is broken.
class CutInversion : public std::logic_error {
public:
  explicit CutInversion(const std::string& what) : std::logic_error("cut inversion: " + what) {}
};

/// A semidecidable search ran past its configured work ceiling.
class BudgetExhausted : public std::runtime_error {
public:
  explicit BudgetExhausted(const std::string& what)
      : std::runtime_error("budget exhausted: " + what) {}
};

/// Subset enumeration over more terms than the configured guard allows.
class InstanceTooLarge : public std::runtime_error {
public:
  explicit InstanceTooLarge(const std::string& what)
      : std::runtime_error("instance too large: " + what) {}
};

/// Two independent computations of the same object disagreed.
class ConsistencyFailure : public std::logic_error {
public:
  explicit ConsistencyFailure(const std::string& what) : std::logic_error(what) {}
};

/// Text input that does not match a grammar; carries a 1-based position.
class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& what, int line, int column)
      : std::invalid_argument(what + " at line " + std::to_string(line) + ", column " +
                              std::to_string(column)),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace riesz
