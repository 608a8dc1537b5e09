#ifndef TROPCRIT_ERRORS_HPP
#define TROPCRIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tropcrit {

// Error classes map one-to-one onto CLI exit codes (see exit_code()).
enum class ErrorKind {
    validation,      // malformed input, schema violations, parse errors
    resource,        // Groebner step budget exhausted
    degenerate,      // random data vector was non-generic after all retries
    precondition,    // mathematical precondition violated (not on hyperplane, ML degree != 1, ...)
    numerical,       // singular Jacobian, no convergence, truncation too short
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what)
      , kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error(ErrorKind::validation, w) {}
};

struct ResourceError : Error {
    explicit ResourceError(const std::string& w) : Error(ErrorKind::resource, w) {}
};

struct DegenerateSample : Error {
    explicit DegenerateSample(const std::string& w) : Error(ErrorKind::degenerate, w) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& w) : Error(ErrorKind::precondition, w) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

inline int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::validation: return 2;
    case ErrorKind::resource: return 3;
    case ErrorKind::degenerate: return 4;
    case ErrorKind::precondition: return 5;
    case ErrorKind::numerical: return 6;
    }
    return 1;
}

} // namespace tropcrit

#endif
