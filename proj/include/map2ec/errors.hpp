#pragma once

#include <stdexcept>
#include <string>

namespace map2ec {

enum class Err {
  // graph / instance validation
  SelfLoop,
  ZeroEdgesNotMatching,
  NotTwoEdgeConnected,
  OverlappingParts,
  UnknownEdgeId,
  NotTwoEdgeCover,
  // exact oracle
  TooLarge,
  WeightMismatch,
  // matching
  CapacityExceedsDegree,
  // two-edge cover / canonicalization
  InfeasibleDemand,
  ExchangeNotFound,
  // credit machinery
  InvariantViolated,
  NoPseudoEar,
  CreditDeficit,
  // special configuration / glue
  PathNotFound,
  CaseExhausted,
  NoObstruction,
  // reduce
  VariantUndecidable,
  PatchEdgeNotFound,
  NotStructured,
  // harness
  GenerationFailed,
  ParseError,
  Internal,
};

const char* err_name(Err e);

class MapError : public std::runtime_error {
 public:
  MapError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw MapError(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace map2ec
