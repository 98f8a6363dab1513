#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmf/tpoly.hpp"

namespace dmf {

// Expansion variable of a series: u at infinity, u0 at the cusp 0, u_tau for
// the second variable of bivariate identities.
enum class Var : uint8_t { U, U0, UTau };

std::string var_name(Var v);

// Exponents at and above this sentinel are treated as "known forever";
// constants and exact Laurent polynomials carry it.
inline constexpr int64_t kPrecInf = int64_t(1) << 60;

// Truncated Laurent series over F_q[T, T^-1]: coefficients for exponents in
// [val, prec) are exact, everything at prec and above is unknown.
//   nonzero: c.front() != 0 and (finite prec) c.size() == prec - val
//   zero:    c empty and val == prec
struct USeries {
  Var var = Var::U;
  int64_t val = 0;
  int64_t prec = 0;
  std::vector<TPoly> c;

  bool is_zero() const { return c.empty(); }
  // Coefficient of u^e for e < prec (exact); throws DomainError above prec.
  const TPoly& coeff(int64_t e) const;

  friend bool operator==(const USeries&, const USeries&) = default;
};

USeries us_zero(Var v, int64_t prec);
USeries us_monomial(const Field& F, Var v, const TPoly& coeff, int64_t exp,
                    int64_t prec = kPrecInf);
USeries us_one(const Field& F, Var v, int64_t prec = kPrecInf);

// Restrict to exponents < new_prec (no-op if new_prec >= prec).
USeries truncate(const USeries& a, int64_t new_prec);
USeries rename(const USeries& a, Var v);

USeries add(const Field& F, const USeries& a, const USeries& b);
USeries sub(const Field& F, const USeries& a, const USeries& b);
USeries neg(const Field& F, const USeries& a);
USeries mul(const Field& F, const USeries& a, const USeries& b);
USeries scale(const Field& F, const USeries& a, const TPoly& s);
USeries shift_exp(const USeries& a, int64_t k);  // * u^k

// Per-coefficient exact division by a scalar; throws InexactDivision.
USeries scalar_exact_div(const Field& F, const USeries& a, const TPoly& s);

// Series inverse; requires a nonzero leading coefficient that is invertible
// in F_q[T, T^-1], i.e. a monomial c*T^e. Result precision is
// prec(a) - 2*val(a).
USeries invert(const Field& F, const USeries& a);

// Integer powers, negative through invert.
USeries pow(const Field& F, const USeries& a, int64_t n);

// Theta = -u^2 d/du: sends a_n u^n to (-n mod p) a_n u^{n+1}.
USeries theta(const Field& F, const USeries& a);

// f(g) for val(g) >= 1, g nonzero. The result lives in g's variable.
USeries substitute(const Field& F, const USeries& f, const USeries& g);

// First exponent below min(prec) where the two series differ, if any.
// Exponents below either val count as zero coefficients.
std::optional<int64_t> first_mismatch(const USeries& a, const USeries& b);

// Text form, e.g. "u^-2 + T + O(u^2)".
std::string render(const Field& F, const USeries& a);

}  // namespace dmf
