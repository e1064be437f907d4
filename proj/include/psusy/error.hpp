#pragma once

#include <stdexcept>
#include <string>

namespace psusy {

enum class ErrorKind {
    invalid_order,
    invalid_dimension,
    truncation_insufficient,
    degenerate_profile,
    degenerate_basis,
    no_real_solution,
    precondition,
    dimension_mismatch,
    not_positive_semidefinite,
    profile_format,
    out_of_range,
};

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Thrown when the boson truncation cannot hold a coherent vector to the requested tail tolerance.
class TruncationError : public Error {
public:
    TruncationError(int n_max, int required_n_max, double tail)
        : Error(ErrorKind::truncation_insufficient,
                "truncation n_max=" + std::to_string(n_max) + " leaves tail " + std::to_string(tail) +
                    "; need n_max >= " + std::to_string(required_n_max)),
          required_n_max_(required_n_max) {}

    int required_n_max() const noexcept { return required_n_max_; }

private:
    int required_n_max_;
};

} // namespace psusy
