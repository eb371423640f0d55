#include "lawson/error.hpp"

namespace lawson {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::DegenerateGeodesic: return "degenerate-geodesic";
    case ErrorCode::InvalidTetrahedron: return "invalid-tetrahedron";
    case ErrorCode::UnsupportedParameters: return "unsupported-parameters";
    case ErrorCode::InvalidIndex: return "invalid-index";
    case ErrorCode::CapExceeded: return "non-finite-or-cap";
    case ErrorCode::NotAnAction: return "not-an-action";
    case ErrorCode::LineSearchFailure: return "line-search-failure";
    case ErrorCode::GraphicalityViolation: return "graphicality-violation";
    case ErrorCode::Topology: return "topology";
    case ErrorCode::InvalidMesh: return "invalid-mesh";
    case ErrorCode::WeldFailure: return "weld-failure";
    case ErrorCode::ProbeMiss: return "probe-miss";
    case ErrorCode::CutError: return "cut-error";
    case ErrorCode::Usage: return "usage";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace lawson
