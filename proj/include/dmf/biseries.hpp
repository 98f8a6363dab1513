#pragma once

#include "dmf/useries.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

namespace dmf {

// Truncated series in two cusp variables u and u_tau, with coefficients in
// F_q[T, T^-1].  Knowledge lives on the rectangle [vu, pu) x [vt, pt):
// every stored term sits inside it, absent cells inside it are exact zeros,
// and nothing is claimed at or beyond either precision.  The u_tau-precision
// is one number for the whole object, matching how the tau-expansions that
// feed it are uniformly truncated.
//
// There is deliberately no inverse here: every identity with a denominator
// is cross-multiplied before it reaches this type.
struct BiSeries {
  std::map<std::pair<int64_t, int64_t>, TPoly> c;  // (eu, et) -> coefficient
  int64_t pu = 0, pt = 0;  // exclusive per-variable precision
  int64_t vu = 0, vt = 0;  // least stored exponent per variable (or the prec)

  // Coefficient of u^eu * u_tau^et; zero for absent cells inside the
  // rectangle, DomainError at or beyond either precision.
  const TPoly& coeff(int64_t eu, int64_t et) const;
};

// Normalizing constructor: drops zero terms and terms outside the precision
// rectangle, recomputes vu/vt from what survives, clamps precisions.
BiSeries bi_make(std::map<std::pair<int64_t, int64_t>, TPoly> c, int64_t pu,
                 int64_t pt);

// Embeddings of a one-variable series: as a function of u (exactly known in
// u_tau) and as a function of u_tau (exactly known in u).
BiSeries bi_u(const USeries& s);
BiSeries bi_tau(const USeries& s);

BiSeries add(const Field& F, const BiSeries& a, const BiSeries& b);
BiSeries sub(const Field& F, const BiSeries& a, const BiSeries& b);
BiSeries mul(const Field& F, const BiSeries& a, const BiSeries& b);

// Exchange the roles of u and u_tau.
BiSeries swap_vars(const BiSeries& a);

// Rectangle on which two objects are simultaneously exact and comparable.
struct BiWindow {
  int64_t lou = 0, hiu = 0, lot = 0, hit = 0;
  bool empty() const { return hiu <= lou || hit <= lot; }
};

BiWindow common_window(const BiSeries& a, const BiSeries& b);

struct BiMismatch {
  int64_t eu = 0, et = 0;
  TPoly lhs, rhs;
};

// First cell of the common window (row-major in eu, then et) where the two
// sides disagree, if any.
std::optional<BiMismatch> first_mismatch(const BiSeries& a, const BiSeries& b);

}  // namespace dmf
