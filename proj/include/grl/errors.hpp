#pragma once

#include <stdexcept>
#include <string>

namespace grl {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conditioning prefix has measure zero.
struct ConditioningOnNull : Error {
    using Error::Error;
};

// Operation needs exact evaluation but the environment only has lower bounds.
struct ExactUnavailable : Error {
    using Error::Error;
};

// Solomonoff normalization hit a prefix with positive normalized mass whose
// one-step sum is zero.
struct NormalizationSingular : Error {
    using Error::Error;
};

// No refinement budget k <= k_max certifies the divisor's lower bound > 0.
struct DivisorNotSeparated : Error {
    using Error::Error;
};

// Mixture members disagree on action or percept alphabets.
struct AlphabetMismatch : Error {
    using Error::Error;
};

// The bounded existential search inside an environment exceeded its declared
// budget without deciding.
struct SearchBudgetExceeded : Error {
    using Error::Error;
};

// Enclosures could not separate or equate action values within the budget.
struct UnresolvableTie : Error {
    using Error::Error;
};

// Enclosures could not reach the required width within the budget.
struct BudgetExhausted : Error {
    using Error::Error;
};

// Malformed or inconsistent spec file / run configuration.
struct SpecError : Error {
    using Error::Error;
};

}  // namespace grl
