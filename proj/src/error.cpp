#include "katz/error.hpp"

namespace katz {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Malformed: return "malformed input";
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::IrrationalRoot: return "irrational root";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::OutOfScope: return "out of scope";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Contradiction: return "contradiction";
    case ErrorKind::Internal: return "internal error";
    }
    return "error";
}

} // namespace katz
