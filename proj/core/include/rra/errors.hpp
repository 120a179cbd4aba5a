#ifndef RRA_ERRORS_HPP_
#define RRA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rra {

enum class ErrorKind {
    JunctionMismatch,
    InvalidSemipath,
    UnknownLabel,
    OddPosition,
    SyntaxError,
    AlphabetMismatch,
    NotComplete,
    InconsistentInput,
    Inconsistent,
    TermOutsideClosure,
    RegisterOutOfRange,
    LabelClash,
    NotCanonical,
    ShortSemipath,
    VariableDisciplineViolation,
    ResourceExceeded,
    BadInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace rra

#endif
