#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace areavolt {

enum class Errc {
  // topology and frames
  DuplicateId,
  DanglingEndpoint,
  NotACorridorLine,
  InvalidTopology,
  MissingMeasurement,
  NonFiniteValue,
  // power flow
  InvalidNetwork,
  NonConvergence,
  SingularJacobian,
  BaseCaseInfeasible,
  // reduction and indices
  DegenerateVoltageDifference,
  MissingAdmittance,
  ZeroCorridorAdmittance,
  ZeroCurrent,
  ZeroLoadVoltage,
  ZeroLoadImpedance,
  // ingestion
  MalformedRow,
  NonMonotoneTimestamp,
  TopologyMismatch,
  ParseError,
  IoError,
  InvalidArgument,
  AssertionFailure,
};

std::string_view to_string(Errc code) noexcept;

/// Base exception for every failure raised by the library. `code()` is the
/// stable, testable part; the message carries the offending identifier.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(int iterations, double mismatch);

  int iterations() const noexcept { return iterations_; }
  double mismatch() const noexcept { return mismatch_; }

 private:
  int iterations_;
  double mismatch_;
};

class MalformedRowError : public Error {
 public:
  MalformedRowError(std::size_t line, std::size_t column, const std::string& detail);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace areavolt
