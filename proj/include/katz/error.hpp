#ifndef KATZ_ERROR_HPP
#define KATZ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace katz {

enum class ErrorKind {
    Malformed,      // bad input text or JSON
    DivisionByZero,
    IrrationalRoot,
    Precondition,   // operation applied outside its domain
    OutOfScope,     // slope > 1 content and similar
    Unsupported,
    Contradiction,  // structural impossibility found during a replay
    Internal
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& msg)
        : std::runtime_error(msg), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

} // namespace katz

#endif
