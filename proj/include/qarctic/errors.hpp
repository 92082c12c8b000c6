#pragma once

#include <stdexcept>
#include <string>

namespace qarctic {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SingularPoint : DomainError {
    using DomainError::DomainError;
};

struct UnsupportedConfiguration : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qarctic
