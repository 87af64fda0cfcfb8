#pragma once

#include <stdexcept>
#include <string>

namespace superalg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowError : Error {
    using Error::Error;
};

struct CapExceeded : Error {
    using Error::Error;
};

struct DegreeMismatch : Error {
    using Error::Error;
};

struct ParityPatternError : Error {
    using Error::Error;
};

struct NonInvertible : Error {
    using Error::Error;
};

struct CoincidentPoints : Error {
    using Error::Error;
};

struct UsageError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace superalg
