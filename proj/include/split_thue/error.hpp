#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace split_thue {

enum class ErrorKind {
    PrecisionExhausted,
    ZeroArgument,
    DivisionByZero,
    InconsistentModel,
    HypothesisViolated,
    UndecidableComparison,
    AnchorSignFailure,
    BoundViolated,
    EqualModulusRatioDegenerate,
    NotAUnit,
    RoundingAmbiguous,
    InvalidHeight,
    NoCrossingFound,
    Precondition,
    ConfigParse,
    Unsupported,
};

inline std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::PrecisionExhausted: return "precision-exhausted";
        case ErrorKind::ZeroArgument: return "zero-argument";
        case ErrorKind::DivisionByZero: return "division-by-zero";
        case ErrorKind::InconsistentModel: return "inconsistent-model";
        case ErrorKind::HypothesisViolated: return "hypothesis-violated";
        case ErrorKind::UndecidableComparison: return "undecidable-comparison";
        case ErrorKind::AnchorSignFailure: return "anchor-sign-failure";
        case ErrorKind::BoundViolated: return "bound-violated";
        case ErrorKind::EqualModulusRatioDegenerate: return "equal-modulus-ratio-degenerate";
        case ErrorKind::NotAUnit: return "not-a-unit";
        case ErrorKind::RoundingAmbiguous: return "rounding-ambiguous";
        case ErrorKind::InvalidHeight: return "invalid-height";
        case ErrorKind::NoCrossingFound: return "no-crossing-found";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::ConfigParse: return "config-parse";
        case ErrorKind::Unsupported: return "unsupported";
    }
    return "unknown";
}

/// Every failure in the library is reported through this type; `kind()` is
/// stable and is what the CLI maps to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Precision settings shared by every certified computation.
struct PrecisionBudget {
    long working_bits = 256;
    int max_refinements = 20;

    void validate() const {
        if (working_bits < 64)
            throw Error(ErrorKind::Precondition, "working_bits must be >= 64");
        if (max_refinements < 1)
            throw Error(ErrorKind::Precondition, "max_refinements must be positive");
    }
};

}  // namespace split_thue
