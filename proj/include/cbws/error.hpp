#pragma once

#include <stdexcept>
#include <string>

namespace cbws {

// One exception type for the whole library; the code tells callers (and the
// CLI exit-code logic) what went wrong without a taxonomy of classes.
class Error : public std::runtime_error {
public:
    enum class Code {
        ContextMismatch,   // operands live over different field contexts
        Domain,            // argument outside the operation's domain
        Precondition,      // documented hypothesis violated
        Capacity,          // exact computation would exceed hard limits
        Parse,             // malformed input text
        InvalidPoint,      // all-zero homogeneous coordinates
        InvalidCenter,     // projection center on the target hyperplane
        NotReduced,        // projection image would collapse two points
        InvalidCone,       // apex on the cone's hyperplane
        InsufficientField, // random search exhausted; field too small
        SearchBudget,      // exact search beyond configured budget
        Undecided,         // no oracle could decide; never a silent answer
        InternalInvariant, // "cannot happen" per a proved statement
        TheoremViolation,  // a published-theorem assertion failed on an instance
        IdentityViolation, // an exact identity check failed
        NonPolynomial,     // interpolation inconsistent with held-out data
        Usage,             // CLI misuse
    };

    Error(Code code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Code code() const { return code_; }

    const char* code_name() const {
        switch (code_) {
        case Code::ContextMismatch: return "context-mismatch";
        case Code::Domain: return "domain";
        case Code::Precondition: return "precondition";
        case Code::Capacity: return "capacity";
        case Code::Parse: return "parse";
        case Code::InvalidPoint: return "invalid-point";
        case Code::InvalidCenter: return "invalid-center";
        case Code::NotReduced: return "projection-not-reduced";
        case Code::InvalidCone: return "invalid-cone";
        case Code::InsufficientField: return "insufficient-field";
        case Code::SearchBudget: return "search-budget";
        case Code::Undecided: return "undecided";
        case Code::InternalInvariant: return "internal-invariant";
        case Code::TheoremViolation: return "theorem-violation";
        case Code::IdentityViolation: return "identity-violation";
        case Code::NonPolynomial: return "non-polynomial";
        case Code::Usage: return "usage";
        }
        return "unknown";
    }

private:
    Code code_;
};

[[noreturn]] inline void fail(Error::Code code, const std::string& message) {
    throw Error(code, message);
}

} // namespace cbws
