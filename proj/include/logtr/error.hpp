#pragma once

#include <stdexcept>
#include <string>

namespace logtr {

enum class Err {
  TagMismatch,
  DivisionByZeroSeries,
  TruncationExhausted,
  InvalidValuation,
  NotInvertible,
  NonSquareLeading,
  OutOfRange,
  ResidueObstruction,
  NonSimpleRamification,
  DySingularAtRamification,
  SharedZeroLoci,
  IrrationalRamification,
  VitalAtLogCutConflict,
  RamificationAtInfinity,
  UnsupportedLocalModel,
  EvaluationAtPole,
  CollisionOfSpecialPoints,
  DeformationBreaksStructure,
  InconclusiveFD,
  TauUnsupported,
  ParseError,
  Unsupported,
  Internal,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
  Error(Err kind, std::string msg)
      : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}
  Err kind() const { return kind_; }

private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace logtr
