#pragma once

#include <stdexcept>
#include <string>

namespace dmf {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact division had a nonzero remainder.
struct InexactDivision : Error {
  explicit InexactDivision(const std::string& msg) : Error(msg) {}
};

// Division by the zero element / zero polynomial / zero series.
struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

// Series inversion requires an invertible leading coefficient.
struct NotInvertible : Error {
  explicit NotInvertible(const std::string& msg) : Error(msg) {}
};

// Mixed-variable series arithmetic (u vs u0 vs u_tau).
struct VariableMismatch : Error {
  explicit VariableMismatch(const std::string& msg) : Error(msg) {}
};

// substitute(f, g) needs val(g) >= 1 and g nonzero.
struct IllegalSubstitution : Error {
  explicit IllegalSubstitution(const std::string& msg) : Error(msg) {}
};

// Weight/type pair violates k = 2l (mod q-1) or l out of range.
struct TypeWeightMismatch : Error {
  explicit TypeWeightMismatch(const std::string& msg) : Error(msg) {}
};

// Structurally invalid request (bad field parameters, negative degree, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A cusp-order request met a series that vanishes at working precision.
struct AllZeroAtPrecision : Error {
  explicit AllZeroAtPrecision(const std::string& msg) : Error(msg) {}
};

// A verification window came out empty; the caller must raise i_max or prec.
struct WindowEmpty : Error {
  explicit WindowEmpty(const std::string& msg) : Error(msg) {}
};

}  // namespace dmf
