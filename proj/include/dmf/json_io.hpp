#pragma once

#include "dmf/basis.hpp"
#include "dmf/verify.hpp"

#include "json.hpp"

namespace dmf {

// Insertion-ordered JSON keeps every serialization byte-stable.
using Json = nlohmann::ordered_json;

// {"p": ..., "r": ..., "modulus": [c0, ..., cr]} (constant term first).
Json field_to_json(const Field& F);
Field field_from_json(const Json& j);

// {"lo": ..., "coeffs": [[...], ...]} — one length-r digit array per
// T-exponent, ascending from lo.  The zero polynomial has empty coeffs.
Json to_json(const Field& F, const TPoly& a);
TPoly tpoly_from_json(const Field& F, const Json& j);

// {"var": "u"|"u0"|"u_tau", "val": ..., "prec": ..., "coeffs": [TPoly...]}.
// Exponents at or beyond the "known forever" sentinel serialize as null.
Json to_json(const Field& F, const USeries& s);
USeries useries_from_json(const Field& F, const Json& j);

// [{"dT": e1, "dW": e2, "ET": e3, "coeff": TPoly}, ...] in term order.
Json to_json(const Field& F, const GenExpr& a);
GenExpr genexpr_from_json(const Field& F, const Json& j);

// {"k","l","r","i","F","C","expr","series"}; the Fricke-stable variant adds
// "parity_case" and "d_plus".
Json to_json(const Field& F, const BasisElement& e);
BasisElement basis_element_from_json(const Field& F, const Json& j);
Json to_json(const Field& F, const PlusBasisElement& e);
PlusBasisElement plus_element_from_json(const Field& F, const Json& j);

// {"name","pass","window","mismatch","note"}; window is null for checks
// without an exponent range, "u_tau" is null for one-variable windows.
Json to_json(const Report& r);

}  // namespace dmf
