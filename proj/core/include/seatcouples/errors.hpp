#pragma once

#include <stdexcept>
#include <string>

namespace seatcouples {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: bad modulus, wrong difference count, non-unit difference,
/// or a malformed instance/partition document.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The operation requires the other parity of N.
class WrongParity : public Error {
public:
    using Error::Error;
};

/// Instance exceeds a configured exhaustive-search bound.
class TooLarge : public Error {
public:
    using Error::Error;
};

/// A documented precondition was broken by the caller.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// A should-be-impossible state: contradicts an invariant the algorithms are
/// entitled to rely on. Always a bug; the message carries a reproduction dump.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace seatcouples
