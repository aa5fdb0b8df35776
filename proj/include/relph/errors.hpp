#pragma once

#include <stdexcept>
#include <string>

namespace relph {

/// Base type for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInputError : Error {
    using Error::Error;
};

/// A required species subcloud is empty; the message names the species.
struct EmptySubcloudError : Error {
    using Error::Error;
};

struct GeometryError : Error {
    using Error::Error;
};

/// A witness species produced no witnesses at all (mu_max == 0).
struct ZeroWitnessError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace relph
