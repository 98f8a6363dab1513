#include "dmf/useries.hpp"

#include <algorithm>
#include <utility>

#include "dmf/errors.hpp"

namespace dmf {

namespace {

const TPoly kZeroPoly{};

int64_t clamp_prec(int64_t p) { return std::min(p, kPrecInf); }

// Restore the class invariant from raw parts: strip leading zeros (advancing
// val), collapse to the canonical zero on empty, and size the vector to
// prec - val (finite prec) or strip trailing zeros (infinite prec).
USeries normalize(Var var, int64_t val, int64_t prec, std::vector<TPoly> c) {
  prec = clamp_prec(prec);
  size_t lead = 0;
  while (lead < c.size() && c[lead].is_zero()) ++lead;
  if (lead > 0) {
    c.erase(c.begin(), c.begin() + (int64_t)lead);
    val += (int64_t)lead;
  }
  if (prec >= kPrecInf) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.empty()) return USeries{var, kPrecInf, kPrecInf, {}};
    return USeries{var, val, kPrecInf, std::move(c)};
  }
  if (c.empty() || val >= prec) return USeries{var, prec, prec, {}};
  c.resize((size_t)(prec - val));
  return USeries{var, val, prec, std::move(c)};
}

void check_same_var(const USeries& a, const USeries& b) {
  if (a.var != b.var)
    throw VariableMismatch("series in " + var_name(a.var) + " and " +
                           var_name(b.var) + " cannot be combined");
}

}  // namespace

std::string var_name(Var v) {
  switch (v) {
    case Var::U: return "u";
    case Var::U0: return "u0";
    case Var::UTau: return "u_tau";
  }
  return "?";
}

const TPoly& USeries::coeff(int64_t e) const {
  if (e >= prec)
    throw DomainError("coefficient of " + var_name(var) + "^" +
                      std::to_string(e) + " is beyond precision " +
                      std::to_string(prec));
  if (e < val || e >= val + (int64_t)c.size()) return kZeroPoly;
  return c[(size_t)(e - val)];
}

USeries us_zero(Var v, int64_t prec) {
  prec = clamp_prec(prec);
  return USeries{v, prec, prec, {}};
}

USeries us_monomial(const Field& F, Var v, const TPoly& coeff, int64_t exp,
                    int64_t prec) {
  (void)F;
  std::vector<TPoly> c;
  if (!coeff.is_zero()) c.push_back(coeff);
  return normalize(v, exp, prec, std::move(c));
}

USeries us_one(const Field& F, Var v, int64_t prec) {
  return us_monomial(F, v, tp_const(F, 1), 0, prec);
}

USeries truncate(const USeries& a, int64_t new_prec) {
  if (new_prec >= a.prec) return a;
  std::vector<TPoly> c;
  if (new_prec > a.val) {
    int64_t len = std::min<int64_t>(new_prec - a.val, (int64_t)a.c.size());
    c.assign(a.c.begin(), a.c.begin() + len);
  }
  return normalize(a.var, a.val, new_prec, std::move(c));
}

USeries rename(const USeries& a, Var v) {
  USeries r = a;
  r.var = v;
  return r;
}

USeries add(const Field& F, const USeries& a, const USeries& b) {
  check_same_var(a, b);
  int64_t prec = std::min(a.prec, b.prec);
  if (a.is_zero() && b.is_zero()) return us_zero(a.var, prec);
  int64_t val = std::min(a.is_zero() ? prec : a.val, b.is_zero() ? prec : b.val);
  if (val >= prec) return us_zero(a.var, prec);
  int64_t hi = prec;
  if (hi >= kPrecInf) {
    // Both inputs are known everywhere; the sum's support is finite.
    hi = val;
    if (!a.is_zero()) hi = std::max(hi, a.val + (int64_t)a.c.size());
    if (!b.is_zero()) hi = std::max(hi, b.val + (int64_t)b.c.size());
  }
  std::vector<TPoly> c((size_t)(hi - val));
  for (size_t i = 0; i < a.c.size(); ++i) {
    int64_t e = a.val + (int64_t)i;
    if (e >= hi) break;
    c[(size_t)(e - val)] = a.c[i];
  }
  for (size_t i = 0; i < b.c.size(); ++i) {
    int64_t e = b.val + (int64_t)i;
    if (e >= hi) break;
    c[(size_t)(e - val)] = add(F, c[(size_t)(e - val)], b.c[i]);
  }
  return normalize(a.var, val, prec, std::move(c));
}

USeries neg(const Field& F, const USeries& a) {
  USeries r = a;
  for (auto& t : r.c) t = neg(F, t);
  return r;
}

USeries sub(const Field& F, const USeries& a, const USeries& b) {
  return add(F, a, neg(F, b));
}

USeries mul(const Field& F, const USeries& a, const USeries& b) {
  check_same_var(a, b);
  // Zero series act through their precision: O(u^m) * (c u^v + O(u^n)) is
  // O(u^{m+v}); a zero of infinite precision absorbs the product entirely.
  int64_t va = a.is_zero() ? a.prec : a.val;
  int64_t vb = b.is_zero() ? b.prec : b.val;
  int64_t prec = clamp_prec(std::min(a.prec + vb, b.prec + va));
  if (a.is_zero() || b.is_zero()) return us_zero(a.var, prec);
  int64_t val = a.val + b.val;
  if (val >= prec) return us_zero(a.var, prec);
  int64_t hi = prec;
  if (hi >= kPrecInf) hi = val + (int64_t)(a.c.size() + b.c.size()) - 1;
  std::vector<TPoly> c((size_t)(hi - val));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    int64_t ea = a.val + (int64_t)i;
    if (ea + b.val >= hi) break;
    size_t jmax = std::min(b.c.size(), (size_t)(hi - ea - b.val));
    for (size_t j = 0; j < jmax; ++j) {
      if (b.c[j].is_zero()) continue;
      size_t k = (size_t)(ea + b.val + (int64_t)j - val);
      c[k] = add(F, c[k], mul(F, a.c[i], b.c[j]));
    }
  }
  return normalize(a.var, val, prec, std::move(c));
}

USeries scale(const Field& F, const USeries& a, const TPoly& s) {
  if (s.is_zero() || a.is_zero()) return us_zero(a.var, a.prec);
  std::vector<TPoly> c(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = mul(F, a.c[i], s);
  return normalize(a.var, a.val, a.prec, std::move(c));
}

USeries shift_exp(const USeries& a, int64_t k) {
  if (a.prec >= kPrecInf) {
    USeries r = a;
    if (!r.is_zero()) r.val += k;
    return r;
  }
  USeries r = a;
  r.val += k;
  r.prec += k;
  return r;
}

USeries scalar_exact_div(const Field& F, const USeries& a, const TPoly& s) {
  if (s.is_zero()) throw DivisionByZero("series divided by the zero scalar");
  std::vector<TPoly> c(a.c.size());
  for (size_t i = 0; i < a.c.size(); ++i)
    c[i] = a.c[i].is_zero() ? TPoly{} : exact_div(F, a.c[i], s);
  return normalize(a.var, a.val, a.prec, std::move(c));
}

USeries invert(const Field& F, const USeries& a) {
  if (a.is_zero()) throw NotInvertible("cannot invert the zero series");
  const TPoly& lead = a.c.front();
  if (lead.c.size() != 1)
    throw NotInvertible(
        "leading coefficient " + render(F, lead) +
        " is not a unit of F_q[T, T^-1] (must be a single T-monomial)");
  TPoly lead_inv = tp_monomial(F, F.inv(lead.c[0]), -lead.lo);
  if (a.c.size() == 1) {
    // Exact monomial: exact inverse, precision carries over relative to val.
    int64_t prec = a.prec >= kPrecInf ? kPrecInf : a.prec - 2 * a.val;
    return us_monomial(F, a.var, lead_inv, -a.val, prec);
  }
  if (a.prec >= kPrecInf)
    throw DomainError("inverse of a non-monomial needs finite precision");
  // b = lead_inv * u^{-val} * sum_k (-r)^k where a = lead*u^val*(1 + r).
  int64_t n = a.prec - a.val;  // relative precision
  std::vector<TPoly> b((size_t)n);
  b[0] = lead_inv;
  for (int64_t k = 1; k < n; ++k) {
    // b_k = -lead_inv * sum_{j=1..k} a_{val+j} * b_{k-j}
    TPoly acc;
    for (int64_t j = 1; j <= k; ++j) {
      const TPoly& aj = a.c[(size_t)j];
      if (aj.is_zero() || b[(size_t)(k - j)].is_zero()) continue;
      acc = add(F, acc, mul(F, aj, b[(size_t)(k - j)]));
    }
    if (!acc.is_zero()) b[(size_t)k] = neg(F, mul(F, lead_inv, acc));
  }
  return normalize(a.var, -a.val, a.prec - 2 * a.val, std::move(b));
}

USeries pow(const Field& F, const USeries& a, int64_t n) {
  if (n == 0) return us_one(F, a.var);
  if (n < 0) return pow(F, invert(F, a), -n);
  USeries r = a;
  for (int64_t i = 1; i < n; ++i) r = mul(F, r, a);
  return r;
}

USeries theta(const Field& F, const USeries& a) {
  int64_t prec = a.prec >= kPrecInf ? kPrecInf : a.prec + 1;
  std::vector<TPoly> c(a.c.size());
  int64_t p = F.p();
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    int64_t e = a.val + (int64_t)i;
    int64_t m = ((-e) % p + p) % p;
    if (m == 0) continue;
    c[i] = scale(F, a.c[i], F.from_int(m));
  }
  return normalize(a.var, a.val + 1, prec, std::move(c));
}

USeries substitute(const Field& F, const USeries& f, const USeries& g) {
  if (g.is_zero())
    throw IllegalSubstitution("substituting the zero series");
  if (g.val < 1)
    throw IllegalSubstitution("substituted series has valuation " +
                              std::to_string(g.val) + " < 1");
  if (f.is_zero()) {
    int64_t prec = f.prec >= kPrecInf ? kPrecInf
                                      : clamp_prec(f.prec * g.val);
    return us_zero(g.var, prec);
  }
  // Write f = u^{val} * h with h a power series; evaluate h at g by Horner,
  // then multiply by g^{val}. Seeding the accumulator with a bare zero lets
  // the min-rules grow the precision by val(g) per step, so the unknown tail
  // of f contributes exactly O(g^{prec(f)}) and the tails of g cap the
  // result on their own.
  USeries acc = us_zero(g.var, f.prec >= kPrecInf ? kPrecInf : 0);
  for (size_t i = f.c.size(); i-- > 0;) {
    acc = mul(F, acc, g);
    if (!f.c[i].is_zero())
      acc = add(F, acc, us_monomial(F, g.var, f.c[i], 0));
  }
  return mul(F, acc, pow(F, g, f.val));
}

std::optional<int64_t> first_mismatch(const USeries& a, const USeries& b) {
  int64_t prec = std::min(a.prec, b.prec);
  int64_t lo = std::min(a.is_zero() ? prec : a.val, b.is_zero() ? prec : b.val);
  int64_t hi = prec;
  if (hi >= kPrecInf) {
    // Both sides exactly known: only the stored supports can disagree.
    hi = lo;
    if (!a.is_zero()) hi = std::max(hi, a.val + (int64_t)a.c.size());
    if (!b.is_zero()) hi = std::max(hi, b.val + (int64_t)b.c.size());
  }
  for (int64_t e = lo; e < hi; ++e)
    if (!(a.coeff(e) == b.coeff(e))) return e;
  return std::nullopt;
}

std::string render(const Field& F, const USeries& a) {
  std::string out;
  const std::string uname = var_name(a.var);
  auto upow = [&](int64_t e) -> std::string {
    if (e == 0) return "";
    if (e == 1) return uname;
    return uname + "^" + std::to_string(e);
  };
  for (size_t i = 0; i < a.c.size(); ++i) {
    const TPoly& t = a.c[i];
    if (t.is_zero()) continue;
    int64_t e = a.val + (int64_t)i;
    bool negative = false;
    std::string mag;
    if (t.c.size() == 1) {
      // Single T-monomial: pull the balanced sign out front.
      std::string body = render(F, t);
      if (!body.empty() && body[0] == '-') {
        negative = true;
        body = body.substr(1);
      }
      mag = body;
    } else {
      mag = "(" + render(F, t) + ")";
    }
    std::string up = upow(e);
    std::string term;
    if (up.empty()) {
      term = mag;
    } else if (mag == "1") {
      term = up;
    } else {
      term = mag + "*" + up;
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  if (a.prec < kPrecInf) {
    std::string tail = "O(" + uname + "^" + std::to_string(a.prec) + ")";
    out = out.empty() ? tail : out + " + " + tail;
  } else if (out.empty()) {
    out = "0";
  }
  return out;
}

}  // namespace dmf
