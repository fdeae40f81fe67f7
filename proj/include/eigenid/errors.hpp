#pragma once

#include <stdexcept>
#include <string>

namespace eigenid {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    NotHermitian(const std::string& what, double max_deviation)
        : Error(what), max_deviation_(max_deviation) {}
    double max_deviation() const { return max_deviation_; }

private:
    double max_deviation_;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class DimensionTooSmall : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class CardinalityMismatch : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class InterlacingViolation : public Error {
public:
    using Error::Error;
};

class DegenerateEigenvalue : public Error {
public:
    using Error::Error;
};

class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

class SingularShift : public Error {
public:
    using Error::Error;
};

class IllConditioned : public Error {
public:
    using Error::Error;
};

class ProbeTooCloseToPole : public Error {
public:
    using Error::Error;
};

class FileParseError : public Error {
public:
    using Error::Error;
};

} // namespace eigenid
