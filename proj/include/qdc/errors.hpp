#pragma once

#include <stdexcept>
#include <string>

namespace qdc {

/// Caller passed an argument outside an operation's domain.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested problem size exceeds the dense-storage budget.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// A value violated an internal contract (non-Hermitian operator,
/// non-normalized state, negative density-matrix eigenvalue, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Invalid sweep configuration; the message names the offending field.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical backend reported failure.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qdc
