#ifndef BLOCKFIEDLER_ERRORS_HPP
#define BLOCKFIEDLER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blockfiedler {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph input: self-loop, duplicate edge, bad label, bad weight, parse failure.
class InvalidGraph : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (disconnected input, no cut vertex, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical method hit its iteration cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Factorization found a non-positive pivot.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// A computed result failed its own consistency check, or the sign pattern of a
/// Fiedler vector matched neither case of the dichotomy.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace blockfiedler

#endif  // BLOCKFIEDLER_ERRORS_HPP
