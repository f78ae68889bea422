#pragma once

#include <stdexcept>
#include <string>

namespace cabdl {

// Failure categories. Each one maps to a distinct process exit code in the
// command-line driver.
enum class ErrorKind {
    usage,        // bad arguments, field mismatch, missing inputs
    domain,       // mathematically undefined operation (inverse of zero, ...)
    validation,   // curve rejected by validate_curve
    rank,         // relation matrix rank below the factor base size
    order,        // product of invariant factors outside (h-, h+)
    budget,       // search budget or resource ceiling exhausted
    integrity,    // internal consistency check failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string const & what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Thrown by Hensel lifting when the root is not simple.
class RamifiedPlace : public Error {
public:
    explicit RamifiedPlace(std::string const & what)
        : Error(ErrorKind::domain, what) {}
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const & what)
{
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, char const * what)
{
    if (!cond)
        throw Error(kind, what);
}

int exit_code(ErrorKind kind) noexcept;
char const * to_string(ErrorKind kind) noexcept;

}  // namespace cabdl
