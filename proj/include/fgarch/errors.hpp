#pragma once

#include <stdexcept>
#include <string>

namespace fgarch {

/// Grids or dimensions of two operands do not match.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested more components than the data supports.
class RankError : public std::invalid_argument {
public:
    RankError(const std::string& what, int attainable)
        : std::invalid_argument(what), attainable_(attainable) {}
    int attainable() const { return attainable_; }

private:
    int attainable_;
};

/// Invalid argument value (out of range, inconsistent options).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input data (bad prices, inconsistent records).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be parsed; carries row/column location when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix required to be invertible is numerically singular.
class SingularError : public std::runtime_error {
public:
    explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

/// The optimizer failed to converge from every start.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant was violated (indicates a bug, not bad input).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace fgarch
