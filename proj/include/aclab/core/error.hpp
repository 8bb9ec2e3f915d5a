#pragma once

#include <stdexcept>
#include <string>

namespace aclab {

enum class ErrorCode {
    inadmissible_structure,  // "structure out of admissible range"
    invalid_j,               // J^2 != -1 or J + J_st singular
    domain_margin,           // point too close to the domain boundary
    frame_singular,
    nijenhuis_obstruction,   // "Nijenhuis obstruction nonzero"
    not_standard_on_axis,
    jacobian_singular,
    radius_too_large,        // Picard map fails to contract
    left_domain,             // "solution left structure domain"
    norm_precondition,
    singular_locus,
    out_of_range,
    constant_too_small,
    empty_range,
    not_subharmonic,
    domain_too_narrow,
    atom_at_origin,
    unresolvable_radius,
    invalid_schedule,
    invalid_argument,
    normalization_unmet,
    parse_error,
    schema_error,
    io_error,
};

/// Domain error carrying a machine-readable code.
class LabError : public std::runtime_error {
public:
    LabError(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw LabError(code, message); }

}  // namespace aclab
