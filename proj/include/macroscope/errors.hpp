#pragma once

#include <stdexcept>
#include <string>

namespace macroscope {

// Error taxonomy. The CLI maps these onto process exit codes:
//   ValidationError (and subclasses)  -> 1
//   IoError                           -> 2
//   NumericError                      -> 3
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// Malformed input with a known location (byte offset or line/column).
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Structurally valid input the toolkit deliberately does not handle
// (e.g. PGM maxval outside {255, 65535}).
class UnsupportedFormat : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Input ended before the declared payload was complete.
class TruncatedData : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InvalidParameter : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ImageTooSmall : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IoError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace macroscope
