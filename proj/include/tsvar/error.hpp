#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsvar {

/// Base class for every data or numeric failure raised by the library.
/// The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input data (bad dates, range violations, missing cells).
class DataError : public Error {
public:
    using Error::Error;
};

/// Design matrix is rank deficient; `column()` is the first collinear column.
class SingularDesignError : public Error {
public:
    SingularDesignError(std::size_t column, const std::string& what)
        : Error(what), column_(column) {}

    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// Cholesky pivot was not strictly positive.
class NotPositiveDefiniteError : public Error {
public:
    NotPositiveDefiniteError(std::size_t pivot, const std::string& what)
        : Error(what), pivot_(pivot) {}

    [[nodiscard]] std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Persisted document could not be read back (schema version or field corruption).
class ModelFormatError : public Error {
public:
    using Error::Error;
};

class VersionError : public ModelFormatError {
public:
    using ModelFormatError::ModelFormatError;
};

}  // namespace tsvar
