#pragma once
#include <stdexcept>
#include <string>

namespace wtsim {

// A caller broke a documented precondition (mismatched sides, stale tick...).
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class EmptyInputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
public:
  FitError(const std::string& what, std::size_t points)
    : std::runtime_error(what + " (" + std::to_string(points) + " usable points)"),
      points_(points) {}

  std::size_t points() const noexcept { return points_; }

private:
  std::size_t points_;
};

} // namespace wtsim
