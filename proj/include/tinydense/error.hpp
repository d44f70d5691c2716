#pragma once

#include <stdexcept>
#include <string>

namespace tinydense {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes disagree (vector lengths, matrix dimensions, batch width).
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Malformed input text: model documents, CSV rows, flag values.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A model document parsed but describes an inconsistent network.
class ValidationError : public Error {
public:
    using Error::Error;
};

class UnknownModelError : public Error {
public:
    using Error::Error;
};

class UnknownActivationError : public ParseError {
public:
    using ParseError::ParseError;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace tinydense
