// Error taxonomy for the numeric pipeline.
#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

class Error : public std::runtime_error {
  public:
    Error(std::string op, const std::string& what)
        : std::runtime_error(op + ": " + what), op_(std::move(op)) {}
    const std::string& op() const { return op_; }

  private:
    std::string op_;
};

#define FINSLER_ERROR_TYPE(Name)                                          \
    class Name : public Error {                                           \
      public:                                                             \
        Name(const std::string& op, const std::string& what) : Error(op, what) {} \
    }

FINSLER_ERROR_TYPE(DomainViolation);
FINSLER_ERROR_TYPE(NonPositiveDefinite);
FINSLER_ERROR_TYPE(SingularMetric);
FINSLER_ERROR_TYPE(NoConvergence);
FINSLER_ERROR_TYPE(NoiseFloorExceeded);
FINSLER_ERROR_TYPE(QuadratureDivergence);
FINSLER_ERROR_TYPE(CrossCheckFailure);
FINSLER_ERROR_TYPE(StepFailure);
FINSLER_ERROR_TYPE(NotReached);
FINSLER_ERROR_TYPE(FitIllConditioned);
FINSLER_ERROR_TYPE(GridTooCoarse);
FINSLER_ERROR_TYPE(InsufficientDirections);
FINSLER_ERROR_TYPE(NotConverging);
FINSLER_ERROR_TYPE(NotHarmonic);
FINSLER_ERROR_TYPE(BetaTooLong);
FINSLER_ERROR_TYPE(StencilOutOfDomain);
FINSLER_ERROR_TYPE(PoleAtConjugate);
FINSLER_ERROR_TYPE(ParseError);

#undef FINSLER_ERROR_TYPE

// Geodesic left the chart; carries the exit arc length.
class DomainExit : public Error {
  public:
    DomainExit(const std::string& op, double exit_length)
        : Error(op, "geodesic exited chart domain at arc length " + std::to_string(exit_length)),
          exit_length_(exit_length) {}
    double exit_length() const { return exit_length_; }

  private:
    double exit_length_;
};

}  // namespace finsler
