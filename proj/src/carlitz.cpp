#include "dmf/carlitz.hpp"

#include <algorithm>

#include "dmf/errors.hpp"

namespace dmf {

namespace {

TwistedPoly tw_trim(TwistedPoly t) {
  while (!t.c.empty() && t.c.back().is_zero()) t.c.pop_back();
  return t;
}

}  // namespace

TPoly frobenius(const Field& F, const TPoly& a, int i) {
  if (i == 0 || a.is_zero()) return a;
  int64_t qi = 1;
  for (int k = 0; k < i; ++k) qi *= F.q();
  TPoly out;
  out.lo = a.lo * qi;
  out.c.assign((size_t)((a.high() - a.lo) * qi + 1), FqElem{});
  for (size_t j = 0; j < a.c.size(); ++j)
    out.c[j * (size_t)qi] = a.c[j];
  return out;
}

TwistedPoly tw_compose(const Field& F, const TwistedPoly& b,
                       const TwistedPoly& c) {
  if (b.is_zero() || c.is_zero()) return {};
  TwistedPoly out;
  out.c.assign(b.c.size() + c.c.size() - 1, TPoly{});
  for (size_t i = 0; i < b.c.size(); ++i) {
    if (b.c[i].is_zero()) continue;
    for (size_t j = 0; j < c.c.size(); ++j) {
      if (c.c[j].is_zero()) continue;
      out.c[i + j] = add(F, out.c[i + j],
                         mul(F, b.c[i], frobenius(F, c.c[j], (int)i)));
    }
  }
  return tw_trim(std::move(out));
}

Carlitz::Carlitz(const Field& F) : F_(F) {
  pows_.push_back(TwistedPoly{{tp_const(F_, 1)}});  // rho_1 = X
}

const TwistedPoly& Carlitz::rho_T_power(int i) {
  if (i < 0) throw DomainError("negative Carlitz power");
  TwistedPoly rho_T{{tp_T(F_), tp_const(F_, 1)}};
  while ((int)pows_.size() <= i)
    pows_.push_back(tw_compose(F_, rho_T, pows_.back()));
  return pows_[(size_t)i];
}

TwistedPoly Carlitz::rho(const TPoly& a) {
  if (a.is_zero() || !is_in_A(a))
    throw DomainError("rho_a is defined for a in F_q[T] only");
  TwistedPoly out;
  for (int64_t e = a.lo; e <= a.high(); ++e) {
    FqElem d = tp_coeff(a, e);
    if (F_.is_zero(d)) continue;
    const TwistedPoly& pe = rho_T_power((int)e);
    if (out.c.size() < pe.c.size()) out.c.resize(pe.c.size());
    for (size_t k = 0; k < pe.c.size(); ++k)
      out.c[k] = add(F_, out.c[k], scale(F_, pe.c[k], d));
  }
  return tw_trim(std::move(out));
}

const USeries& Carlitz::u_of(const TPoly& a, int64_t prec) {
  std::string key = tp_key(a, F_.r()) + "@" + std::to_string(prec);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  if (a.is_zero() || !is_in_A(a) || !F_.is_one(tp_coeff(a, a.high())))
    throw DomainError("u_a requires a monic polynomial in F_q[T]");
  TwistedPoly rh = rho(a);
  int d = rh.deg();
  int64_t qd = 1;
  for (int k = 0; k < d; ++k) qd *= F_.q();
  // Denominator sum_i c_i u^{q^d - q^i}, a power series with constant term 1.
  int64_t rel = std::max<int64_t>(prec - qd, 1);
  USeries den = us_zero(Var::U, rel);
  int64_t qi = 1;
  for (size_t i = 0; i < rh.c.size(); ++i, qi *= F_.q())
    if (!rh.c[i].is_zero())
      den = add(F_, den, us_monomial(F_, Var::U, rh.c[i], qd - qi, rel));
  USeries ua = truncate(shift_exp(invert(F_, den), qd), prec);
  return memo_.emplace(std::move(key), std::move(ua)).first->second;
}

}  // namespace dmf
