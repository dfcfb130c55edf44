#ifndef KNNREG_ERROR_HPP
#define KNNREG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace knnreg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed argument: length mismatch, empty input, k out of range.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A CSV cell, header or file could not be interpreted.
class ParseError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Metric, backend and column kinds do not go together.
class IncompatibleMetric : public Error {
public:
    using Error::Error;
};

/// Column layout of two datasets differs.
class SchemaMismatch : public Error {
public:
    using Error::Error;
};

/// R^2 requested on a constant truth vector (SST = 0).
class UndefinedRSquared : public Error {
public:
    UndefinedRSquared() : Error("r_squared is undefined: total sum of squares is zero (constant truth)") {}
};

/// Density requested at a point whose k-th neighbour distance is zero.
class ZeroRadiusDensity : public Error {
public:
    ZeroRadiusDensity() : Error("density is undefined: distance to the k-th neighbour is zero") {}
};

} // namespace knnreg

#endif
