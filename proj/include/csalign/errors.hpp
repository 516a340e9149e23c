#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace csalign {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A mathematical function was queried outside of its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The query is not defined for the given kernel / domain combination.
class UnsupportedQuery : public Error {
public:
    using Error::Error;
};

/// Inconsistent shapes (dimension mismatch, empty flock, ...).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Not enough samples to evaluate a trajectory functional.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Sample values unusable for the requested fit.
class DataError : public Error {
public:
    using Error::Error;
};

/// Malformed or self-inconsistent scenario configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Two agents sit on the same point while the kernel is singular there.
namespace detail {

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace detail

class CollisionError : public Error {
public:
    CollisionError(std::size_t i, std::size_t j, double t)
        : Error("collision of agents " + std::to_string(i) + " and " + std::to_string(j) +
                " at t=" + detail::num(t)),
          i_(i), j_(j), t_(t) {}

    std::size_t first() const noexcept { return i_; }
    std::size_t second() const noexcept { return j_; }
    double time() const noexcept { return t_; }

private:
    std::size_t i_, j_;
    double t_;
};

/// The step controller could not find an admissible step above the underflow limit.
class StiffnessError : public Error {
public:
    StiffnessError(std::size_t i, std::size_t j, double t, double dt, double separation)
        : Error("step size underflow (dt=" + detail::num(dt) + ") at t=" + detail::num(t) +
                ", closest pair " + std::to_string(i) + "," + std::to_string(j) +
                " at separation " + detail::num(separation)),
          i_(i), j_(j), t_(t), dt_(dt), sep_(separation) {}

    std::size_t first() const noexcept { return i_; }
    std::size_t second() const noexcept { return j_; }
    double time() const noexcept { return t_; }
    double dt() const noexcept { return dt_; }
    double separation() const noexcept { return sep_; }

private:
    std::size_t i_, j_;
    double t_, dt_, sep_;
};

}  // namespace csalign
