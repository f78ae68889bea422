#include "cabdl/error.hpp"

namespace cabdl {

int exit_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::usage:
        return 2;
    case ErrorKind::validation:
        return 3;
    case ErrorKind::rank:
        return 4;
    case ErrorKind::order:
        return 5;
    case ErrorKind::budget:
        return 6;
    case ErrorKind::domain:
    case ErrorKind::integrity:
        return 7;
    }
    return 7;
}

char const * to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::usage:
        return "usage";
    case ErrorKind::domain:
        return "domain";
    case ErrorKind::validation:
        return "validation";
    case ErrorKind::rank:
        return "rank-failure";
    case ErrorKind::order:
        return "order-failure";
    case ErrorKind::budget:
        return "budget-exhausted";
    case ErrorKind::integrity:
        return "integrity";
    }
    return "unknown";
}

}  // namespace cabdl
