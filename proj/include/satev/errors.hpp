#pragma once

#include <stdexcept>
#include <string>

namespace satev {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised for inputs that parse but violate a schema or domain rule.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Raised when a file or stream cannot be read or written at all.
class IoError : public Error {
public:
    using Error::Error;
};

// Raised when an iterative numerical routine fails to converge.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class DerivedAxisAttribute : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DuplicateCandidateId : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyCandidateSet : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnsupportedFormat : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class UnreadableDocument : public IoError {
public:
    using IoError::IoError;
};

class OutOfRange : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class MissingItemRating : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyGroup : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class AllZeroWeights : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonFiniteInput : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class TooFewGroups : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidDf : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InconsistentFamily : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class LayoutMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace satev
