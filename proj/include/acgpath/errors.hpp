#pragma once

#include <stdexcept>
#include <string>

namespace acg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Graph construction and evaluation.
struct NegativeCost : Error { using Error::Error; };
struct BadEndpoint : Error { using Error::Error; };
struct ResourceArityMismatch : Error { using Error::Error; };

// LP model misuse and numerics.
struct UnknownColumn : Error { using Error::Error; };
struct BadCoefficient : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };

// Search preconditions.
struct EmptyAtomicSet : Error { using Error::Error; };
struct ArcNotEligible : Error { using Error::Error; };

// Exhaustive oracle and compact relaxation guards.
struct TooLarge : Error { using Error::Error; };
struct CyclicGraph : Error { using Error::Error; };

// Instance generation and IO.
struct WalkTooShort : Error { using Error::Error; };
struct BaseInfeasible : Error { using Error::Error; };
struct GenerationFailure : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace acg
