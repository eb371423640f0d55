#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lawson {

enum class ErrorCode {
  InvalidInput,
  DegenerateGeodesic,
  InvalidTetrahedron,
  UnsupportedParameters,
  InvalidIndex,
  CapExceeded,
  NotAnAction,
  LineSearchFailure,
  GraphicalityViolation,
  Topology,
  InvalidMesh,
  WeldFailure,
  ProbeMiss,
  CutError,
  Usage,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lawson
