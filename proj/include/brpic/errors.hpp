#pragma once

#include <stdexcept>
#include <string>

namespace brpic {

// Malformed input: wrong shapes, non-automorphisms, bad group data.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input is well formed but outside the domain of the operation.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration or construction would exceed a size bound.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotInvertible : DomainError {
    using DomainError::DomainError;
};

}  // namespace brpic
