#include "dmf/tpoly.hpp"

#include <algorithm>

namespace dmf {
namespace {

TPoly normalize(int64_t lo, std::vector<FqElem> v, const Field& F) {
  size_t b = 0, e = v.size();
  while (b < e && F.is_zero(v[b])) ++b;
  while (e > b && F.is_zero(v[e - 1])) --e;
  TPoly r;
  if (b == e) return r;
  r.lo = lo + static_cast<int64_t>(b);
  r.c.assign(v.begin() + b, v.begin() + e);
  return r;
}

}  // namespace

TPoly tp_zero() { return TPoly{}; }

TPoly tp_const(const Field& F, int64_t n) { return tp_from(F, F.from_int(n)); }

TPoly tp_from(const Field& F, const FqElem& a) {
  TPoly r;
  if (!F.is_zero(a)) r.c = {a};
  return r;
}

TPoly tp_T(const Field& F, int64_t exp, int64_t scale) {
  return tp_monomial(F, F.from_int(scale), exp);
}

TPoly tp_monomial(const Field& F, const FqElem& a, int64_t exp) {
  TPoly r;
  if (!F.is_zero(a)) {
    r.lo = exp;
    r.c = {a};
  }
  return r;
}

FqElem tp_coeff(const TPoly& a, int64_t exp) {
  if (a.is_zero() || exp < a.lo || exp > a.high()) return FqElem{};
  return a.c[static_cast<size_t>(exp - a.lo)];
}

TPoly add(const Field& F, const TPoly& a, const TPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int64_t lo = std::min(a.lo, b.lo);
  int64_t hi = std::max(a.high(), b.high());
  std::vector<FqElem> v(static_cast<size_t>(hi - lo + 1));
  for (size_t i = 0; i < a.c.size(); ++i) v[static_cast<size_t>(a.lo - lo) + i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) {
    size_t j = static_cast<size_t>(b.lo - lo) + i;
    v[j] = F.add(v[j], b.c[i]);
  }
  return normalize(lo, std::move(v), F);
}

TPoly neg(const Field& F, const TPoly& a) {
  TPoly r = a;
  for (auto& x : r.c) x = F.neg(x);
  return r;
}

TPoly sub(const Field& F, const TPoly& a, const TPoly& b) { return add(F, a, neg(F, b)); }

TPoly mul(const Field& F, const TPoly& a, const TPoly& b) {
  if (a.is_zero() || b.is_zero()) return TPoly{};
  const size_t la = a.c.size(), lb = b.c.size();
  std::vector<FqElem> v(la + lb - 1);
  if (F.r() == 1) {
    // Lazy reduction: products of residues fit comfortably in 64 bits.
    std::vector<uint64_t> acc(la + lb - 1, 0);
    for (size_t i = 0; i < la; ++i) {
      uint64_t ai = a.c[i].c[0];
      if (!ai) continue;
      for (size_t j = 0; j < lb; ++j) acc[i + j] += ai * b.c[j].c[0];
    }
    int64_t p = F.p();
    for (size_t k = 0; k < acc.size(); ++k)
      v[k].c[0] = static_cast<uint16_t>(acc[k] % static_cast<uint64_t>(p));
  } else {
    for (size_t i = 0; i < la; ++i) {
      if (F.is_zero(a.c[i])) continue;
      for (size_t j = 0; j < lb; ++j) {
        if (F.is_zero(b.c[j])) continue;
        v[i + j] = F.add(v[i + j], F.mul(a.c[i], b.c[j]));
      }
    }
  }
  return normalize(a.lo + b.lo, std::move(v), F);
}

TPoly scale(const Field& F, const TPoly& a, const FqElem& s) {
  if (F.is_zero(s) || a.is_zero()) return TPoly{};
  TPoly r = a;
  for (auto& x : r.c) x = F.mul(x, s);
  return r;
}

TPoly shift(const TPoly& a, int64_t k) {
  TPoly r = a;
  if (!r.is_zero()) r.lo += k;
  return r;
}

TPoly pow(const Field& F, const TPoly& a, int64_t n) {
  if (n < 0) throw DomainError("negative TPoly power");
  TPoly r = tp_const(F, 1);
  for (int64_t i = 0; i < n; ++i) r = mul(F, r, a);
  return r;
}

TPoly exact_div(const Field& F, const TPoly& a, const TPoly& b) {
  if (b.is_zero()) throw DivisionByZero("TPoly division by zero");
  if (a.is_zero()) return TPoly{};
  // Long division from the top; the Laurent shift is b.lo - a.lo.
  std::vector<FqElem> rem = a.c;
  const int64_t db = static_cast<int64_t>(b.c.size()) - 1;
  FqElem lead_inv = F.inv(b.c.back());
  int64_t steps = static_cast<int64_t>(rem.size()) - db;
  if (steps <= 0) throw InexactDivision("TPoly division with nonzero remainder");
  std::vector<FqElem> quot(static_cast<size_t>(steps));
  for (int64_t k = steps - 1; k >= 0; --k) {
    FqElem c = rem[static_cast<size_t>(k + db)];
    if (F.is_zero(c)) continue;
    c = F.mul(c, lead_inv);
    quot[static_cast<size_t>(k)] = c;
    for (int64_t i = 0; i <= db; ++i) {
      size_t idx = static_cast<size_t>(k + i);
      rem[idx] = F.sub(rem[idx], F.mul(c, b.c[static_cast<size_t>(i)]));
    }
  }
  for (const auto& x : rem)
    if (!F.is_zero(x)) throw InexactDivision("TPoly division with nonzero remainder");
  return normalize(a.lo - b.lo, std::move(quot), F);
}

bool is_in_A(const TPoly& a) { return a.is_zero() || a.lo >= 0; }

std::vector<TPoly> monic_polys(const Field& F, int d, bool skip_T_multiples) {
  if (d < 0) throw DomainError("negative degree");
  std::vector<TPoly> out;
  if (d == 0) {
    out.push_back(tp_const(F, 1));
    return out;
  }
  int64_t count = 1;
  for (int i = 0; i < d; ++i) count *= F.q();
  for (int64_t idx = 0; idx < count; ++idx) {
    std::vector<FqElem> v(static_cast<size_t>(d + 1));
    v[static_cast<size_t>(d)] = F.one();
    int64_t t = idx;
    // Lexicographic: a_{d-1} is the most significant digit.
    for (int i = 0; i < d; ++i) {
      v[static_cast<size_t>(i)] = F.element(t % F.q());
      t /= F.q();
    }
    if (skip_T_multiples && F.is_zero(v[0])) continue;
    out.push_back(normalize(0, std::move(v), F));
  }
  return out;
}

std::string tp_key(const TPoly& a, int r) {
  std::string s;
  s.reserve(8 + a.c.size() * static_cast<size_t>(r) * 2);
  auto push64 = [&s](int64_t x) {
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
  };
  push64(a.lo);
  for (const auto& e : a.c)
    for (int i = 0; i < r; ++i) {
      s.push_back(static_cast<char>(e.c[i] & 0xff));
      s.push_back(static_cast<char>(e.c[i] >> 8));
    }
  return s;
}

namespace {

bool render_is_negative(const Field& F, const FqElem& a) {
  for (int i = 1; i < F.r(); ++i)
    if (a.c[i]) return false;
  return a.c[0] > F.p() / 2;
}

std::string render_magnitude(const Field& F, const FqElem& a, int64_t texp) {
  // |a| * T^texp with the sign handled by the caller for prime-field a.
  bool ext = false;
  for (int i = 1; i < F.r(); ++i)
    if (a.c[i]) ext = true;
  std::string cs;
  bool unit = false;
  if (ext) {
    cs = F.render(a);
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
  } else {
    int64_t c = a.c[0];
    if (c > F.p() / 2) c -= F.p();
    int64_t m = c < 0 ? -c : c;
    unit = (m == 1);
    if (!unit) cs = std::to_string(m);
  }
  std::string ts;
  if (texp == 1) ts = "T";
  else if (texp != 0) ts = "T^" + std::to_string(texp);
  if (ts.empty()) return unit ? "1" : cs;
  if (unit || cs.empty()) return ts;
  return cs + "*" + ts;
}

}  // namespace

std::string render(const Field& F, const TPoly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (int64_t e = a.lo; e <= a.high(); ++e) {
    FqElem c = tp_coeff(a, e);
    if (F.is_zero(c)) continue;
    bool negative = render_is_negative(F, c);
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    s += render_magnitude(F, negative ? F.neg(c) : c, e);
  }
  return s;
}

}  // namespace dmf
