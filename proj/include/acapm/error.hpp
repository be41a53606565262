#pragma once

#include <stdexcept>
#include <string>

namespace acapm {

/// Broad failure category. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
    usage = 1,       ///< invalid arguments or configuration
    data = 2,        ///< unreadable or invalid input data
    estimation = 3,  ///< degenerate variance, singular design, non-convergence
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class EstimationError : public Error {
public:
    explicit EstimationError(const std::string& what)
        : Error(ErrorKind::estimation, what) {}
};

/// A regressor (or censored market component) with zero sample variance.
class DegenerateVarianceError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

/// Rank-deficient least-squares design.
class SingularDesignError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

/// An iterative special-function evaluation hit its iteration cap.
class NonConvergenceError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

}  // namespace acapm
