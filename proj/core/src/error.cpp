#include "areavolt/error.hpp"

#include <cstdio>

namespace areavolt {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::DanglingEndpoint: return "DanglingEndpoint";
    case Errc::NotACorridorLine: return "NotACorridorLine";
    case Errc::InvalidTopology: return "InvalidTopology";
    case Errc::MissingMeasurement: return "MissingMeasurement";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::InvalidNetwork: return "InvalidNetwork";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::SingularJacobian: return "SingularJacobian";
    case Errc::BaseCaseInfeasible: return "BaseCaseInfeasible";
    case Errc::DegenerateVoltageDifference: return "DegenerateVoltageDifference";
    case Errc::MissingAdmittance: return "MissingAdmittance";
    case Errc::ZeroCorridorAdmittance: return "ZeroCorridorAdmittance";
    case Errc::ZeroCurrent: return "ZeroCurrent";
    case Errc::ZeroLoadVoltage: return "ZeroLoadVoltage";
    case Errc::ZeroLoadImpedance: return "ZeroLoadImpedance";
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case Errc::TopologyMismatch: return "TopologyMismatch";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::AssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

namespace {

std::string describe_nonconvergence(int iterations, double mismatch) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d iterations, max mismatch %.3e pu", iterations, mismatch);
  return buf;
}

}  // namespace

NonConvergenceError::NonConvergenceError(int iterations, double mismatch)
    : Error(Errc::NonConvergence, describe_nonconvergence(iterations, mismatch)),
      iterations_(iterations),
      mismatch_(mismatch) {}

MalformedRowError::MalformedRowError(std::size_t line, std::size_t column, const std::string& detail)
    : Error(Errc::MalformedRow,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + detail),
      line_(line),
      column_(column) {}

}  // namespace areavolt
