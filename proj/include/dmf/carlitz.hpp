#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dmf/tpoly.hpp"
#include "dmf/useries.hpp"

namespace dmf {

// F_q-linear ("twisted") polynomial: c[i] multiplies X^{q^i}. Composition is
// the non-commutative product with the Frobenius acting on the right factor.
struct TwistedPoly {
  std::vector<TPoly> c;

  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }

  friend bool operator==(const TwistedPoly&, const TwistedPoly&) = default;
};

// a^{q^i}: coefficients of a lie in F_q and are fixed; T^e maps to T^{e q^i}.
TPoly frobenius(const Field& F, const TPoly& a, int i);

// b o c as F_q-linear maps: (b o c)_k = sum_{i+j=k} b_i * c_j^{q^i}.
TwistedPoly tw_compose(const Field& F, const TwistedPoly& b,
                       const TwistedPoly& c);

// The Carlitz module action rho_a and the expansions u_a of the functions
// 1 / rho_a(1/u). Caches rho_{T^i} and every requested u_a.
class Carlitz {
 public:
  explicit Carlitz(const Field& F);

  const Field& field() const { return F_; }

  // rho_{T^i}; rho_T = T X + X^q.
  const TwistedPoly& rho_T_power(int i);

  // rho_a for a in A = F_q[T], F_q[T]-linearly extended from rho_T.
  TwistedPoly rho(const TPoly& a);

  // u_a = u^{q^d} / (sum_i c_i u^{q^d - q^i}) for monic a of degree d,
  // where rho_a = sum_i c_i X^{q^i}; val(u_a) = q^d.
  const USeries& u_of(const TPoly& a, int64_t prec);

 private:
  Field F_;
  std::vector<TwistedPoly> pows_;
  std::unordered_map<std::string, USeries> memo_;
};

}  // namespace dmf
