#include "dmf/forms.hpp"

#include "dmf/errors.hpp"

#include <sstream>

namespace dmf {

namespace {

// Every generator lies in A[[u]]; a coefficient outside A means the
// construction itself is broken, so fail loudly rather than propagate.
void require_integral(const USeries& s, const char* what) {
  for (const TPoly& c : s.c) {
    if (!c.is_zero() && !is_in_A(c))
      throw Error(std::string("internal: ") + what +
                  " acquired a coefficient outside F_q[T]");
  }
}

Generators build_generators(const Field& F, Carlitz& C, int64_t prec) {
  if (prec < 1) throw DomainError("generator precision must be >= 1");
  const int64_t q = F.q();
  Generators G;
  G.prec = prec;

  // Accumulate the monic sums degree by degree; a term u(az) has valuation
  // q^deg(a), so degrees with q^d >= prec contribute nothing visible.
  USeries S_all = us_zero(Var::U, prec);  // sum of u(az)^(q-1)
  USeries S_div = us_zero(Var::U, prec);  // ... over multiples of T only
  USeries E = us_zero(Var::U, prec);      // sum of a*u(az)
  USeries ETz = us_zero(Var::U, prec);    // ... over multiples of T only
  for (int64_t d = 0, qd = 1; qd < prec; ++d, qd *= q) {
    for (const TPoly& a : monic_polys(F, (int)d, false)) {
      const USeries& ua = C.u_of(a, prec);
      USeries uq = pow(F, ua, q - 1);
      USeries aua = scale(F, ua, a);
      S_all = add(F, S_all, uq);
      E = add(F, E, aua);
      if (a.low() >= 1) {  // T divides a
        S_div = add(F, S_div, uq);
        ETz = add(F, ETz, aua);
      }
    }
  }

  TPoly TqT = sub(F, tp_T(F, q), tp_T(F));  // T^q - T
  G.E = E;
  G.ETz = ETz;
  G.ET = sub(F, E, ETz);
  G.g1 = sub(F, us_one(F, Var::U), scale(F, S_all, TqT));
  G.g1Tz = sub(F, us_one(F, Var::U), scale(F, S_div, TqT));
  G.dT = scalar_exact_div(F, sub(F, G.g1Tz, G.g1), TqT);
  G.dW = scalar_exact_div(
      F, sub(F, scale(F, G.g1Tz, tp_T(F, q)), scale(F, G.g1, tp_T(F))), TqT);
  G.jT = mul(F, G.dW, invert(F, G.dT));
  USeries wseed = sub(F, G.dW, scale(F, G.dT, tp_T(F, (q - 1) / 2)));
  G.jTp = mul(F, mul(F, wseed, wseed), invert(F, pow(F, G.ET, q - 1)));

  require_integral(G.E, "E");
  require_integral(G.ETz, "T*E(Tz)");
  require_integral(G.ET, "ET");
  require_integral(G.g1, "g1");
  require_integral(G.g1Tz, "g1(Tz)");
  require_integral(G.dT, "dT");
  require_integral(G.dW, "dW");
  return G;
}

void drop_zero_terms(GenExpr& e) {
  for (auto it = e.terms.begin(); it != e.terms.end();) {
    if (it->second.is_zero())
      it = e.terms.erase(it);
    else
      ++it;
  }
}

}  // namespace

const Generators& Workspace::generators(int64_t prec) {
  auto it = gens_.find(prec);
  if (it == gens_.end())
    it = gens_.emplace(prec, build_generators(F_, carlitz_, prec)).first;
  return it->second;
}

GenExpr ge_zero() { return {}; }

GenExpr ge_const(const Field& F, const TPoly& c) {
  return ge_monomial(F, c, 0, 0, 0);
}

GenExpr ge_monomial(const Field& F, const TPoly& coeff, int64_t e_dT,
                    int64_t e_dW, int64_t e_ET) {
  (void)F;
  GenExpr e;
  if (!coeff.is_zero()) e.terms[{e_dT, e_dW, e_ET}] = coeff;
  return e;
}

GenExpr add(const Field& F, const GenExpr& a, const GenExpr& b) {
  GenExpr out = a;
  for (const auto& [key, c] : b.terms) {
    auto it = out.terms.find(key);
    if (it == out.terms.end())
      out.terms.emplace(key, c);
    else
      it->second = add(F, it->second, c);
  }
  drop_zero_terms(out);
  return out;
}

GenExpr sub(const Field& F, const GenExpr& a, const GenExpr& b) {
  return add(F, a, neg(F, b));
}

GenExpr neg(const Field& F, const GenExpr& a) {
  GenExpr out = a;
  for (auto& [key, c] : out.terms) c = neg(F, c);
  return out;
}

GenExpr mul(const Field& F, const GenExpr& a, const GenExpr& b) {
  GenExpr out;
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      std::array<int64_t, 3> key = {ka[0] + kb[0], ka[1] + kb[1],
                                    ka[2] + kb[2]};
      TPoly prod = mul(F, ca, cb);
      auto it = out.terms.find(key);
      if (it == out.terms.end())
        out.terms.emplace(key, prod);
      else
        it->second = add(F, it->second, prod);
    }
  drop_zero_terms(out);
  return out;
}

GenExpr scale(const Field& F, const GenExpr& a, const TPoly& c) {
  GenExpr out;
  for (const auto& [key, t] : a.terms) {
    TPoly prod = mul(F, t, c);
    if (!prod.is_zero()) out.terms.emplace(key, prod);
  }
  return out;
}

GenExpr pow(const Field& F, const GenExpr& a, int64_t n) {
  if (n == 0) return ge_const(F, tp_const(F, 1));
  if (n < 0) {
    // Only a single generator monomial with a unit coefficient c*T^e has an
    // exact inverse in this representation.
    if (a.terms.size() != 1)
      throw DomainError("negative power of a non-monomial expression");
    const auto& [key, c] = *a.terms.begin();
    if (c.low() != c.high())
      throw DomainError(
          "negative power needs a unit (single-term) coefficient");
    FqElem lead = tp_coeff(c, c.low());
    TPoly cinv = tp_monomial(F, F.inv(lead), -c.low());
    GenExpr base;
    base.terms[{-key[0], -key[1], -key[2]}] = cinv;
    return pow(F, base, -n);
  }
  GenExpr acc = ge_const(F, tp_const(F, 1));
  GenExpr base = a;
  int64_t m = n;
  while (m > 0) {
    if (m & 1) acc = mul(F, acc, base);
    base = mul(F, base, base);
    m >>= 1;
  }
  return acc;
}

GenExpr wT_image(const Field& F, const GenExpr& a) {
  const int64_t m = (F.q() - 1) / 2;
  GenExpr out;
  for (const auto& [key, c] : a.terms) {
    std::array<int64_t, 3> img = {key[1], key[0], key[2]};
    TPoly t = shift(c, m * (key[1] - key[0]));
    if ((key[0] + key[1] + key[2]) % 2 != 0) t = neg(F, t);
    auto it = out.terms.find(img);
    if (it == out.terms.end())
      out.terms.emplace(img, t);
    else
      it->second = add(F, it->second, t);
  }
  drop_zero_terms(out);
  return out;
}

std::pair<int64_t, int64_t> weight_type(const Field& F, const GenExpr& a) {
  if (a.is_zero())
    throw DomainError("weight/type of the zero expression is undefined");
  const int64_t q = F.q();
  bool first = true;
  int64_t k = 0, l = 0;
  for (const auto& [key, c] : a.terms) {
    (void)c;
    int64_t kt = (q - 1) * (key[0] + key[1]) + 2 * key[2];
    int64_t lt = ((key[2] % (q - 1)) + (q - 1)) % (q - 1);
    if (first) {
      k = kt;
      l = lt;
      first = false;
    } else if (kt != k || lt != l) {
      throw DomainError("expression is not weight/type homogeneous");
    }
  }
  return {k, l};
}

USeries genexpr_to_series(Workspace& W, const GenExpr& a, int64_t prec) {
  const Field& F = W.field();
  if (a.is_zero()) return us_zero(Var::U, kPrecInf);
  const Generators& G = W.generators(prec);
  USeries acc = us_zero(Var::U, kPrecInf);
  for (const auto& [key, c] : a.terms) {
    USeries t = us_monomial(F, Var::U, c, 0);
    if (key[0] != 0) t = mul(F, t, pow(F, G.dT, key[0]));
    if (key[1] != 0) t = mul(F, t, pow(F, G.dW, key[1]));
    if (key[2] != 0) t = mul(F, t, pow(F, G.ET, key[2]));
    acc = add(F, acc, t);
  }
  return acc;
}

std::pair<int64_t, int64_t> cusp_orders(Workspace& W, const GenExpr& a,
                                        int64_t prec) {
  const Field& F = W.field();
  weight_type(F, a);  // enforces homogeneity (and rejects zero)
  USeries at_inf = genexpr_to_series(W, a, prec);
  if (at_inf.is_zero())
    throw AllZeroAtPrecision(
        "series vanishes at working precision; raise prec");
  USeries at_zero = genexpr_to_series(W, wT_image(F, a), prec);
  if (at_zero.is_zero())
    throw AllZeroAtPrecision(
        "Fricke image vanishes at working precision; raise prec");
  return {at_inf.val, at_zero.val};
}

std::string render(const Field& F, const GenExpr& a) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : a.terms) {
    std::string cs = render(F, c);
    bool negative = !cs.empty() && cs[0] == '-' && cs.find(" - ") == std::string::npos &&
                    cs.find(" + ") == std::string::npos;
    std::string mag = negative ? cs.substr(1) : cs;
    bool composite = mag.find(" + ") != std::string::npos ||
                     mag.find(" - ") != std::string::npos;

    std::string gens;
    const char* names[3] = {"dT", "dW", "ET"};
    for (int i = 0; i < 3; ++i) {
      if (key[i] == 0) continue;
      if (!gens.empty()) gens += "*";
      gens += names[i];
      if (key[i] != 1) gens += "^" + std::to_string(key[i]);
    }

    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    if (gens.empty()) {
      out << (composite ? "(" + mag + ")" : mag);
    } else if (mag == "1") {
      out << gens;
    } else {
      out << (composite ? "(" + mag + ")" : mag) << "*" << gens;
    }
  }
  return out.str();
}

FormParams form_params(const Field& F, int64_t k, int64_t l) {
  const int64_t q = F.q();
  if (l < 0 || l > q - 2)
    throw TypeWeightMismatch("type lift l must satisfy 0 <= l <= q-2");
  int64_t num = k - 2 * l;
  if (((num % (q - 1)) + (q - 1)) % (q - 1) != 0)
    throw TypeWeightMismatch("weight/type requires k = 2l (mod q-1)");
  return FormParams{k, l, num / (q - 1)};
}

int64_t r_of(const Field& F, int64_t k, int64_t l) {
  return form_params(F, k, l).r;
}

int64_t d_plus_of(const Field& F, int64_t k, int64_t l) {
  FormParams P = form_params(F, k, l);
  int64_t r = P.r;
  if (r % 2 != 0) return (r + 1) / 2;  // exact: r odd => r+1 even
  if (l % 2 != 0) return r / 2;
  return r / 2 + 1;
}

USeries partial_k(Workspace& W, const USeries& f, int64_t k, int64_t prec) {
  const Field& F = W.field();
  const Generators& G = W.generators(prec);
  USeries kEf = scale(F, mul(F, G.E, f), tp_const(F, k));
  return add(F, theta(F, f), kEf);
}

USeries partial_plus(Workspace& W, const USeries& f, int64_t k, int64_t prec) {
  const Field& F = W.field();
  const Generators& G = W.generators(prec);
  FqElem half_k = F.mul(F.from_int(k), F.inv(F.from_int(2)));
  USeries e_sum = add(F, G.E, G.ETz);
  USeries term = scale(F, mul(F, e_sum, f), tp_from(F, half_k));
  return add(F, theta(F, f), term);
}

}  // namespace dmf
