#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmf/fq.hpp"

namespace dmf {

// Laurent polynomial in T over F_q: c[i] is the coefficient of T^{lo+i}.
// Canonical form: zero is represented by an empty c (and lo = 0); otherwise
// c.front() and c.back() are nonzero.
struct TPoly {
  int64_t lo = 0;
  std::vector<FqElem> c;

  bool is_zero() const { return c.empty(); }
  int64_t low() const { return lo; }
  int64_t high() const { return lo + static_cast<int64_t>(c.size()) - 1; }

  friend bool operator==(const TPoly&, const TPoly&) = default;
};

TPoly tp_zero();
TPoly tp_const(const Field& F, int64_t n);
TPoly tp_from(const Field& F, const FqElem& a);
// scale * T^exp
TPoly tp_T(const Field& F, int64_t exp = 1, int64_t scale = 1);
TPoly tp_monomial(const Field& F, const FqElem& a, int64_t exp);

FqElem tp_coeff(const TPoly& a, int64_t exp);

TPoly add(const Field& F, const TPoly& a, const TPoly& b);
TPoly sub(const Field& F, const TPoly& a, const TPoly& b);
TPoly neg(const Field& F, const TPoly& a);
TPoly mul(const Field& F, const TPoly& a, const TPoly& b);
TPoly scale(const Field& F, const TPoly& a, const FqElem& s);
TPoly shift(const TPoly& a, int64_t k);  // a * T^k
TPoly pow(const Field& F, const TPoly& a, int64_t n);  // n >= 0

// Exact Laurent division; throws InexactDivision if b does not divide a,
// DivisionByZero if b is zero.
TPoly exact_div(const Field& F, const TPoly& a, const TPoly& b);

// True when all exponents are >= 0, i.e. the value lies in A = F_q[T].
bool is_in_A(const TPoly& a);

// All monic polynomials of degree exactly d, lexicographic (leading
// coefficients first, constant term varying fastest). With
// skip_T_multiples, polynomials with zero constant term are omitted.
std::vector<TPoly> monic_polys(const Field& F, int d, bool skip_T_multiples);

// Stable byte key for memoization maps.
std::string tp_key(const TPoly& a, int r);

// Human-readable text, T-ascending, balanced signs for prime-field
// constants: e.g. "1 + 2*T - T^3".
std::string render(const Field& F, const TPoly& a);

}  // namespace dmf
