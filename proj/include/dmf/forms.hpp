#pragma once

#include "dmf/carlitz.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace dmf {

// The distinguished level-T forms, expanded at the infinite cusp to a common
// u-adic precision.  dT and dW are the weight-(q-1) pair separating the two
// cusps (dT vanishes only at infinity, dW only at zero), ET is the weight-2
// type-1 form satisfying ET^(q-1) = dW*dT, and jT, jTp are the weight-zero
// uniformizers for the level-T group and its Fricke extension.
struct Generators {
  int64_t prec = 0;  // u-adic precision the table was computed at
  USeries E;         // sum of a*u(az) over monic a
  USeries ETz;       // T*E(Tz): the same sum restricted to multiples of T
  USeries ET;        // E - T*E(Tz)
  USeries g1;        // 1 - (T^q - T) * sum of u(az)^(q-1) over monic a
  USeries g1Tz;      // companion with the sum restricted to multiples of T
  USeries dT;        // (g1(Tz) - g1) / (T^q - T)
  USeries dW;        // (T^q g1(Tz) - T g1) / (T^q - T)
  USeries jT;        // dW / dT
  USeries jTp;       // (dW - T^m dT)^2 / ET^(q-1),  m = (q-1)/2
};

// Shared computation context: a field, its Carlitz action, and a cache of
// generator tables keyed by precision.  Not internally synchronized; use one
// Workspace per thread.
class Workspace {
 public:
  explicit Workspace(const Field& F) : F_(F), carlitz_(F) {}
  const Field& field() const { return F_; }
  Carlitz& carlitz() { return carlitz_; }

  // Generator table at exactly the requested precision (memoized).
  const Generators& generators(int64_t prec);

 private:
  Field F_;
  Carlitz carlitz_;
  std::map<int64_t, Generators> gens_;
};

// Exact symbolic combination of generator monomials dT^e1 * dW^e2 * ET^e3
// with coefficients in F_q[T, T^-1].  Exponents range over all integers;
// negative powers are realized through series inversion on evaluation.
struct GenExpr {
  std::map<std::array<int64_t, 3>, TPoly> terms;
  bool is_zero() const { return terms.empty(); }
  bool operator==(const GenExpr&) const = default;
};

GenExpr ge_zero();
GenExpr ge_const(const Field& F, const TPoly& c);
GenExpr ge_monomial(const Field& F, const TPoly& coeff, int64_t e_dT,
                    int64_t e_dW, int64_t e_ET);

GenExpr add(const Field& F, const GenExpr& a, const GenExpr& b);
GenExpr sub(const Field& F, const GenExpr& a, const GenExpr& b);
GenExpr neg(const Field& F, const GenExpr& a);
GenExpr mul(const Field& F, const GenExpr& a, const GenExpr& b);
GenExpr scale(const Field& F, const GenExpr& a, const TPoly& c);
// n < 0 requires a single term whose coefficient is a unit monomial.
GenExpr pow(const Field& F, const GenExpr& a, int64_t n);

// Image under the Fricke involution: dT -> -T^(-m) dW, dW -> -T^m dT,
// ET -> -ET, extended multiplicatively and linearly.  An involution.
GenExpr wT_image(const Field& F, const GenExpr& a);

// (weight, type) of a homogeneous expression: every term must share
// weight (q-1)(e1+e2) + 2*e3 and type e3 mod (q-1).  Throws DomainError
// for the zero or an inhomogeneous expression.
std::pair<int64_t, int64_t> weight_type(const Field& F, const GenExpr& a);

// Evaluate by substituting the generator series at the given precision.
USeries genexpr_to_series(Workspace& W, const GenExpr& a, int64_t prec);

// (ord_inf, ord_0): valuations of the series of a and of its Fricke image.
// The expression must be homogeneous; throws AllZeroAtPrecision if either
// evaluation vanishes identically at the working precision.
std::pair<int64_t, int64_t> cusp_orders(Workspace& W, const GenExpr& a,
                                        int64_t prec);

std::string render(const Field& F, const GenExpr& a);

// Weight-type bookkeeping for the canonical bases.
struct FormParams {
  int64_t k = 0;  // weight
  int64_t l = 0;  // type lift, 0 <= l <= q-2
  int64_t r = 0;  // (k - 2l)/(q-1)
};

// Validates the range of l and the congruence k = 2l mod (q-1);
// throws TypeWeightMismatch otherwise.
FormParams form_params(const Field& F, int64_t k, int64_t l);
int64_t r_of(const Field& F, int64_t k, int64_t l);
// Leading-exponent parameter of the Fricke-invariant space: (r+1)/2 for odd
// r; r/2 for even r with odd l; r/2 + 1 for even r with even l.
int64_t d_plus_of(const Field& F, int64_t k, int64_t l);

// Weight-raising derivations.  prec bounds the Eisenstein factors used.
//   partial_k(f)    = theta(f) + k*E*f
//   partial_plus(f) = theta(f) + (k/2)*(E + T*E(Tz))*f
USeries partial_k(Workspace& W, const USeries& f, int64_t k, int64_t prec);
USeries partial_plus(Workspace& W, const USeries& f, int64_t k, int64_t prec);

}  // namespace dmf
