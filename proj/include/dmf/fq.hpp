#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dmf/errors.hpp"

namespace dmf {

// Element of F_q = F_p[x]/(m(x)), q = p^r, stored as coordinates in the
// power basis 1, x, ..., x^{r-1}. The coordinate count and all arithmetic
// come from the owning Field; elements of different fields must not be mixed.
struct FqElem {
  static constexpr int kMaxDeg = 6;
  std::array<uint16_t, kMaxDeg> c{};

  friend bool operator==(const FqElem&, const FqElem&) = default;
};

// Runtime description of F_q with q = p^r, p an odd prime, r >= 1.
// For r > 1 the modulus is a monic irreducible polynomial of degree r over
// F_p; if none is supplied, the lexicographically first one is chosen
// (coefficients compared from x^{r-1} down to the constant term).
class Field {
 public:
  static Field make(int64_t p, int r = 1);
  static Field make(int64_t p, int r, const std::vector<int64_t>& modulus);

  int64_t p() const { return p_; }
  int r() const { return r_; }
  int64_t q() const { return q_; }
  // Monic modulus, length r+1, constant term first. For r = 1 this is {0, 1}
  // (the polynomial x), meaning F_q = F_p itself.
  const std::vector<uint16_t>& modulus() const { return mod_; }

  FqElem zero() const { return FqElem{}; }
  FqElem one() const { return from_int(1); }
  FqElem from_int(int64_t n) const;
  bool is_zero(const FqElem& a) const;
  bool is_one(const FqElem& a) const { return a == one(); }

  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem inv(const FqElem& a) const;  // throws DivisionByZero on 0
  FqElem pow(const FqElem& a, int64_t e) const;

  // Enumeration order: the element with coordinates (c_0, ..., c_{r-1}) has
  // index c_0 + c_1 p + ... + c_{r-1} p^{r-1}; indices run over [0, q).
  FqElem element(int64_t index) const;
  int64_t index_of(const FqElem& a) const;
  std::vector<FqElem> elements() const;

  // Human-readable form: prime-field constants are rendered balanced
  // (residues above p/2 print as negatives); extension elements print as
  // polynomials in "w", the class of x.
  std::string render(const FqElem& a) const;

 private:
  Field() = default;

  int64_t p_ = 0;
  int r_ = 0;
  int64_t q_ = 0;
  std::vector<uint16_t> mod_;

  void reduce_mul(const FqElem& a, const FqElem& b, FqElem& out) const;
};

}  // namespace dmf
