#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padyn {

enum class errc {
    not_prime,
    not_irreducible,
    not_eisenstein,
    precision_too_small,
    precision_too_large,
    ring_mismatch,
    not_a_unit,
    not_divisible,
    precision_exceeded,
    precision_exhausted,
    all_coefficients_small,
    level_too_large,
    classification_mismatch,
    precondition_level,
    level_cap_too_small,
    degenerate_map,
    root_of_unity_suspected,
    hypothesis_violated,
    invalid_input,
};

constexpr std::string_view to_string(errc c) noexcept
{
    switch (c) {
    case errc::not_prime: return "NotPrime";
    case errc::not_irreducible: return "NotIrreducible";
    case errc::not_eisenstein: return "NotEisenstein";
    case errc::precision_too_small: return "PrecisionTooSmall";
    case errc::precision_too_large: return "PrecisionTooLarge";
    case errc::ring_mismatch: return "RingMismatch";
    case errc::not_a_unit: return "NotAUnit";
    case errc::not_divisible: return "NotDivisible";
    case errc::precision_exceeded: return "PrecisionExceeded";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::all_coefficients_small: return "AllCoefficientsSmall";
    case errc::level_too_large: return "LevelTooLarge";
    case errc::classification_mismatch: return "ClassificationMismatch";
    case errc::precondition_level: return "PreconditionLevel";
    case errc::level_cap_too_small: return "LevelCapTooSmall";
    case errc::degenerate_map: return "DegenerateMap";
    case errc::root_of_unity_suspected: return "RootOfUnitySuspected";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::invalid_input: return "InvalidInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace padyn
