#pragma once

#include <stdexcept>
#include <string>

namespace altafini {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the shape of the input was not met (sizes, vertex ids, time indices).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two independent computations of the same quantity disagreed. Never expected to fire.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

}  // namespace altafini
