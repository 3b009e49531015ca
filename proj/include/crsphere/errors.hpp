#ifndef CRSPHERE_ERRORS_HPP
#define CRSPHERE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crs {

/// Violated precondition on user-supplied data (bad input, non-unit divisor,
/// singular Jacobian, ...). Maps to CLI exit status 1.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public DomainError {
public:
    DivisionByZero() : DomainError("division by zero") {}
};

class NotSolvable : public DomainError {
public:
    using DomainError::DomainError;
};

class LeviDegenerate : public DomainError {
public:
    LeviDegenerate() : DomainError("Levi degenerate: delta vanishes at the origin") {}
};

class ParseError : public DomainError {
public:
    ParseError(const std::string& what, std::size_t position)
        : DomainError(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Two independent computation routes disagreed. Always an implementation
/// bug, never a mathematical outcome. Maps to CLI exit status 2.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace crs

#endif // CRSPHERE_ERRORS_HPP
