#pragma once

#include <stdexcept>
#include <string>

namespace revham {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two exact values from incompatible coefficient rings were combined
/// (for example surds with different radicands).
class RingMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class OriginNotSingular : public Error {
public:
    using Error::Error;
};

class NotReversible : public Error {
public:
    using Error::Error;
};

class DegenerateJacobian : public Error {
public:
    using Error::Error;
};

/// Numerical integration left the finite range.
class Divergence : public Error {
public:
    Divergence(const std::string& what, long step) : Error(what + " at step " + std::to_string(step)), step_(step) {}

    long step() const noexcept { return step_; }

private:
    long step_;
};

} // namespace revham
