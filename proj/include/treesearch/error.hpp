#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treesearch {

enum class Errc {
  NotATree,
  NonPositiveCost,
  VertexNotInCandidate,
  NotConnected,
  MissingVertex,
  DuplicateVertex,
  QueryOutsideCandidate,
  ComponentMismatch,
  UnknownVertex,
  StateLimitExceeded,
  InvalidSize,
  NoHeavyVertex,
  NoNeighborQueried,
  NotAPath,
  BranchOccupied,
  ParseError,
  InvalidParameters,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotATree: return "NotATree";
    case Errc::NonPositiveCost: return "NonPositiveCost";
    case Errc::VertexNotInCandidate: return "VertexNotInCandidate";
    case Errc::NotConnected: return "NotConnected";
    case Errc::MissingVertex: return "MissingVertex";
    case Errc::DuplicateVertex: return "DuplicateVertex";
    case Errc::QueryOutsideCandidate: return "QueryOutsideCandidate";
    case Errc::ComponentMismatch: return "ComponentMismatch";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::StateLimitExceeded: return "StateLimitExceeded";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::NoHeavyVertex: return "NoHeavyVertex";
    case Errc::NoNeighborQueried: return "NoNeighborQueried";
    case Errc::NotAPath: return "NotAPath";
    case Errc::BranchOccupied: return "BranchOccupied";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidParameters: return "InvalidParameters";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` tells callers which
/// contract was broken and `vertex()` names the offending vertex when there is one.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<int> vertex = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), vertex_(vertex) {}

  Errc code() const noexcept { return code_; }
  std::optional<int> vertex() const noexcept { return vertex_; }

 private:
  Errc code_;
  std::optional<int> vertex_;
};

}  // namespace treesearch
