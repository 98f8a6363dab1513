#include "dmf/basis.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "dmf/errors.hpp"

namespace dmf {

namespace {

void require_integral(const USeries& s, const char* what) {
  for (const TPoly& c : s.c)
    if (!is_in_A(c))
      throw Error(std::string("internal: ") + what +
                  " acquired a coefficient outside F_q[T]");
}

// Working precision for a family: the user's floor, raised so that the last
// element still exposes its whole gap window.  The first bound is exact for
// r >= 0; the second keeps negative-r seeds (built through inversion, which
// costs 2|val| of precision) safe as well.
int64_t working_prec(int64_t q, int64_t r, int64_t l, int64_t i_max,
                     int64_t user) {
  int64_t wp = (q - 1) * (r + i_max + 2) + l + 1;
  wp = std::max(wp, (q - 1) * (i_max + 2) + q);
  return std::max(user, wp);
}

// One triangular family is determined by its seed, the degree-lowering
// multiplier (jT or jTp), and the exponent layout: element i leads at
// lead0 - i*(q-1) and its tail starts at gap.
struct FamilyLayout {
  USeries seed_series;
  GenExpr seed_expr;
  const USeries* mult_series = nullptr;
  GenExpr mult_expr;
  int64_t lead0 = 0;
  int64_t gap = 0;
};

struct RawElement {
  int64_t i = 0;
  std::vector<TPoly> F;
  GenExpr expr;
  USeries series;
};

std::vector<RawElement> build_family(const Field& F, const FamilyLayout& L,
                                     int64_t i_max, EliminationOrder order) {
  const int64_t step = F.q() - 1;
  std::vector<RawElement> els;
  els.reserve(static_cast<size_t>(i_max) + 1);
  els.push_back({0, {tp_const(F, 1)}, L.seed_expr, L.seed_series});

  for (int64_t i = 1; i <= i_max; ++i) {
    const RawElement& prev = els.back();
    USeries cur = mul(F, *L.mult_series, prev.series);
    GenExpr ex = mul(F, L.mult_expr, prev.expr);
    std::vector<TPoly> poly(static_cast<size_t>(i) + 1, tp_zero());
    for (size_t j = 0; j < prev.F.size(); ++j) poly[j + 1] = prev.F[j];

    std::vector<int64_t> ds(static_cast<size_t>(i));
    std::iota(ds.begin(), ds.end(), int64_t{1});
    if (order == EliminationOrder::HighFirst)
      std::reverse(ds.begin(), ds.end());

    for (int64_t d : ds) {
      // clear the coefficient sitting at the leading exponent of els[i-d]
      const int64_t e = L.lead0 - (i - d) * step;
      TPoly cd = cur.coeff(e);
      if (cd.is_zero()) continue;
      if (!is_in_A(cd))
        throw Error("internal: elimination coefficient outside F_q[T]");
      const RawElement& lower = els[static_cast<size_t>(i - d)];
      cur = sub(F, cur, scale(F, lower.series, cd));
      ex = sub(F, ex, scale(F, lower.expr, cd));
      for (size_t j = 0; j < lower.F.size(); ++j)
        poly[j] = sub(F, poly[j], mul(F, cd, lower.F[j]));
    }
    els.push_back({i, std::move(poly), std::move(ex), std::move(cur)});
  }

  // The triangular shape and integrality are theorems; verify rather than
  // trust the loop above.
  for (const RawElement& el : els) {
    const int64_t lead = L.lead0 - el.i * step;
    if (el.series.prec < L.gap + 1)
      throw Error("internal: basis element lost the precision for its window");
    if (el.series.is_zero() || el.series.val != lead ||
        !(el.series.coeff(lead) == tp_const(F, 1)))
      throw Error("internal: basis element not monic at its leading exponent");
    for (int64_t e = lead + 1; e < L.gap; ++e)
      if (!el.series.coeff(e).is_zero())
        throw Error("internal: basis element has a term inside its gap");
    require_integral(el.series, "basis element");
    for (const TPoly& c : el.F)
      if (!is_in_A(c))
        throw Error("internal: basis polynomial coefficient outside F_q[T]");
    if (!(el.F.back() == tp_const(F, 1)))
      throw Error("internal: basis polynomial not monic");
  }
  return els;
}

// base^n at full available precision, negative n through inversion
USeries signed_pow(const Field& F, const USeries& base, int64_t n) {
  return n >= 0 ? pow(F, base, n) : pow(F, invert(F, base), -n);
}

FamilyLayout level_layout(Workspace& W, const FormParams& P, int64_t wp) {
  const Field& F = W.field();
  const Generators& G = W.generators(wp);
  FamilyLayout L;
  L.seed_series = us_one(F, Var::U);
  if (P.r != 0) L.seed_series = mul(F, L.seed_series, signed_pow(F, G.dT, P.r));
  if (P.l != 0) L.seed_series = mul(F, L.seed_series, pow(F, G.ET, P.l));
  L.seed_expr = ge_monomial(F, tp_const(F, 1), P.r, 0, P.l);
  L.mult_series = &G.jT;
  L.mult_expr = ge_monomial(F, tp_const(F, 1), -1, 1, 0);
  L.lead0 = (F.q() - 1) * P.r + P.l;
  L.gap = (F.q() - 1) * (P.r + 1) + P.l;
  return L;
}

FamilyLayout plus_layout(Workspace& W, const FormParams& P, int64_t d_plus,
                         ParityCase pc, int64_t wp) {
  const Field& F = W.field();
  const Generators& G = W.generators(wp);
  const int64_t q = F.q();
  const int64_t m = (q - 1) / 2;
  const int64_t s = (d_plus - 1) * (q - 1) + P.l;

  USeries ets = us_one(F, Var::U);
  GenExpr ets_e = ge_const(F, tp_const(F, 1));
  if (s != 0) {
    ets = signed_pow(F, G.ET, s);
    ets_e = ge_monomial(F, tp_const(F, 1), 0, 0, s);
  }

  USeries head = us_one(F, Var::U);
  GenExpr head_e = ge_const(F, tp_const(F, 1));
  switch (pc) {
    case ParityCase::ROdd: {
      // dW - (-1)^l T^m dT
      const TPoly t = tp_T(F, m, (P.l % 2 == 0) ? -1 : 1);
      head = add(F, G.dW, scale(F, G.dT, t));
      head_e = add(F, ge_monomial(F, tp_const(F, 1), 0, 1, 0),
                   ge_monomial(F, t, 1, 0, 0));
      break;
    }
    case ParityCase::REvenLOdd: {
      // dW^2 - T^(q-1) dT^2
      head = sub(F, pow(F, G.dW, 2),
                 scale(F, pow(F, G.dT, 2), tp_T(F, q - 1)));
      head_e = sub(F, ge_monomial(F, tp_const(F, 1), 0, 2, 0),
                   ge_monomial(F, tp_T(F, q - 1), 2, 0, 0));
      break;
    }
    case ParityCase::REvenLEven:
      break;  // the power of ET alone
  }

  FamilyLayout L;
  L.seed_series = mul(F, head, ets);
  L.seed_expr = mul(F, head_e, ets_e);
  L.mult_series = &G.jTp;
  // jTp = (dW - T^m dT)^2 * ET^(1-q)
  const GenExpr w = sub(F, ge_monomial(F, tp_const(F, 1), 0, 1, 0),
                        ge_monomial(F, tp_T(F, m), 1, 0, 0));
  L.mult_expr = mul(F, pow(F, w, 2), ge_monomial(F, tp_const(F, 1), 0, 0, 1 - q));
  L.lead0 = (q - 1) * (d_plus - 1) + P.l;
  L.gap = (q - 1) * d_plus + P.l;
  return L;
}

}  // namespace

const char* parity_case_name(ParityCase c) {
  switch (c) {
    case ParityCase::ROdd:
      return "r_odd";
    case ParityCase::REvenLOdd:
      return "r_even_l_odd";
    case ParityCase::REvenLEven:
      return "r_even_l_even";
  }
  return "?";
}

std::vector<BasisElement> canonical_basis(Workspace& W, int64_t k, int64_t l,
                                          int64_t i_max, int64_t prec,
                                          EliminationOrder order) {
  const Field& F = W.field();
  if (i_max < 0) throw DomainError("i_max must be >= 0");
  const FormParams P = form_params(F, k, l);
  const int64_t wp = working_prec(F.q(), P.r, P.l, i_max, prec);
  const FamilyLayout L = level_layout(W, P, wp);
  std::vector<RawElement> raw = build_family(F, L, i_max, order);

  std::vector<BasisElement> out;
  out.reserve(raw.size());
  for (RawElement& el : raw) {
    TPoly C = el.F.front();
    out.push_back({P, el.i, std::move(el.F), std::move(C), std::move(el.expr),
                   std::move(el.series)});
  }
  return out;
}

std::vector<PlusBasisElement> canonical_basis_plus(Workspace& W, int64_t k,
                                                   int64_t l, int64_t i_max,
                                                   int64_t prec,
                                                   EliminationOrder order) {
  const Field& F = W.field();
  if (i_max < 0) throw DomainError("i_max must be >= 0");
  const FormParams P = form_params(F, k, l);
  const int64_t d_plus = d_plus_of(F, k, l);
  const ParityCase pc = (P.r % 2 != 0)   ? ParityCase::ROdd
                        : (P.l % 2 != 0) ? ParityCase::REvenLOdd
                                         : ParityCase::REvenLEven;
  const int64_t wp = working_prec(F.q(), P.r, P.l, i_max, prec);
  const FamilyLayout L = plus_layout(W, P, d_plus, pc, wp);
  std::vector<RawElement> raw = build_family(F, L, i_max, order);

  std::vector<PlusBasisElement> out;
  out.reserve(raw.size());
  for (RawElement& el : raw) {
    TPoly C = el.F.front();
    out.push_back({P, pc, d_plus, el.i, std::move(el.F), std::move(C),
                   std::move(el.expr), std::move(el.series)});
  }
  return out;
}

PlusHolomorphicBasis plus_holomorphic_basis(Workspace& W, int64_t k,
                                            int64_t l) {
  const Field& F = W.field();
  if (k < 0)
    throw DomainError("holomorphic basis needs weight k >= 0");
  const FormParams P = form_params(F, k, l);
  const int64_t q = F.q();
  const int64_t m = (q - 1) / 2;
  const int64_t r = P.r;

  PlusHolomorphicBasis out;
  out.dim = d_plus_of(F, k, l);
  for (int64_t i = 0; 2 * i <= r - 1; ++i) {
    // dW^(r-i) dT^i ET^l + (-1)^(l+r) T^(m(r-2i)) dW^i dT^(r-i) ET^l:
    // swapping the dT/dW exponents is exactly the Fricke involution here,
    // so the pair sum is fixed by it.
    GenExpr e = ge_monomial(F, tp_const(F, 1), i, r - i, l);
    const TPoly t = tp_T(F, m * (r - 2 * i), ((l + r) % 2 != 0) ? -1 : 1);
    e = add(F, e, ge_monomial(F, t, r - i, i, l));
    out.elements.push_back(std::move(e));
  }
  if (r >= 0 && r % 2 == 0 && l % 2 == 0)
    out.elements.push_back(
        ge_monomial(F, tp_const(F, 1), r / 2, r / 2, l));

  if (static_cast<int64_t>(out.elements.size()) != out.dim)
    throw Error("internal: holomorphic basis size disagrees with dimension");
  return out;
}

}  // namespace dmf
