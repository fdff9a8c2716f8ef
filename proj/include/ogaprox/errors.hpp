#pragma once

#include <stdexcept>
#include <string>

namespace ogaprox {

struct IndeterminateValue : std::runtime_error {
  explicit IndeterminateValue(const std::string& what) : std::runtime_error(what) {}
};

struct OracleDomainError : std::runtime_error {
  explicit OracleDomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ConstraintViolated : std::runtime_error {
  explicit ConstraintViolated(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteIterate : std::runtime_error {
  explicit NonFiniteIterate(const std::string& what) : std::runtime_error(what) {}
};

struct MissingSaddle : std::runtime_error {
  explicit MissingSaddle(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

struct EpsilonOutOfRange : std::runtime_error {
  explicit EpsilonOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ogaprox
