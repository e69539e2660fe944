#pragma once

#include <stdexcept>
#include <string>

namespace qb {

enum class Errc {
  DivisionByZero,
  NonTerminatingOrder,
  StarMismatch,
  RewriteBudgetExceeded,
  UnknownSubalgebra,
  NoHopfStructure,
  DimensionMismatch,
  GradeOverflow,
  MissingDelta,
  NotAConnection,
  NotHorizontal,
  NotIntertwiner,
  RepresentationMismatch,
  NotUnitary,
  NotCovariant,
  CentralityViolated,
  NotDifferentialMorphism,
  NotTrivialBundle,
  UnknownExample,
  UnknownQuantity,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

const char* errc_name(Errc code);

}  // namespace qb
