#pragma once

#include <stdexcept>
#include <string>

namespace birkhoff {

enum class ErrorKind {
    invalid_argument,
    dimension_mismatch,
    cap_exceeded,        // derivative order or enumeration guard
    guard_exceeded,      // lattice ball / panel budget too large
    nonconvergence,      // quadrature did not reach tolerance
    singular,            // closed form evaluated on its singular set
    imaginary_residue,   // real-valued observable lost conjugate symmetry
    too_few_points,
    degenerate,
    parse,
    io,
};

const char* to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type; the CLI maps the kind
// onto an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
    case ErrorKind::guard_exceeded: return "guard_exceeded";
    case ErrorKind::nonconvergence: return "nonconvergence";
    case ErrorKind::singular: return "singular";
    case ErrorKind::imaginary_residue: return "imaginary_residue";
    case ErrorKind::too_few_points: return "too_few_points";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

}  // namespace birkhoff
