#pragma once

#include <stdexcept>
#include <string>

namespace riskfold {

// Bad invocation: unusable arguments, missing prior-stage artifacts. CLI exit code 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad data: malformed rows, codes outside the schema, inconsistent inputs. CLI exit code 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller broke a documented precondition (e.g. decomposing a non-chordal graph).
struct ContractError : std::logic_error {
    explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

// A swap plan no longer matches the table it is applied to.
struct ConflictError : std::runtime_error {
    explicit ConflictError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative routine failed to reach its tolerance within its iteration cap.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace riskfold
