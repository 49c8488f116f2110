#pragma once

#include <stdexcept>
#include <string>

namespace k3lat {

// Base of every error raised by the library. The CLI maps subclasses to exit
// codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's contract.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class DegenerateEmbedding : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class NotPrime : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// A modulus failed the admissibility predicate of the glue extension.
class InadmissibleModulus : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class Unrepresentable : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Machine-word fast paths refuse to wrap around.
class Overflow : public Error {
public:
    using Error::Error;
};

// Exhaustive finite-group searches are capped.
class SizeLimit : public Error {
public:
    using Error::Error;
};

class ScanCeiling : public Error {
public:
    using Error::Error;
};

// An invariant that should hold by construction did not.
class InternalConsistency : public Error {
public:
    using Error::Error;
};

} // namespace k3lat
