#pragma once

#include <stdexcept>
#include <string>

namespace hypertrend {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation requested at or beyond the finite-time singularity guard.
class NearSingularity : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

class InvalidSeries : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

/// The reciprocal values are not decreasing, so no (a, k) with k > 0 fits.
class NotHyperbolic : public Error {
public:
    using Error::Error;
};

class MissingObservation : public Error {
public:
    using Error::Error;
};

// Data-ingest errors.

class DataError : public Error {
public:
    using Error::Error;
};

class ParseError : public DataError {
public:
    ParseError(std::size_t row, std::size_t column, const std::string& what)
        : DataError("line " + std::to_string(row + 1) + ", column " + std::to_string(column + 1) + ": " + what),
          row_(row),
          column_(column) {}

    /// Zero-based position of the offending cell.
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class DuplicateYear : public DataError {
public:
    using DataError::DataError;
};

class DuplicateEntity : public DataError {
public:
    using DataError::DataError;
};

class UnknownEntity : public DataError {
public:
    using DataError::DataError;
};

class EmptyResult : public DataError {
public:
    using DataError::DataError;
};

class FileError : public DataError {
public:
    using DataError::DataError;
};

class PresetError : public DataError {
public:
    using DataError::DataError;
};

} // namespace hypertrend
