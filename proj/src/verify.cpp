#include "dmf/verify.hpp"

#include "dmf/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

namespace dmf {

namespace {

int64_t eff_val(const USeries& s) { return s.is_zero() ? s.prec : s.val; }

// Compare two one-variable series on their common window [min val, min prec).
Report series_report(const Field& F, std::string name, const USeries& lhs,
                     const USeries& rhs, std::string note = "") {
  Report r;
  r.name = std::move(name);
  r.note = std::move(note);
  r.window.lou = std::min(eff_val(lhs), eff_val(rhs));
  r.window.hiu = std::max(r.window.lou, std::min(lhs.prec, rhs.prec));
  auto mm = first_mismatch(lhs, rhs);
  r.pass = !mm.has_value();
  if (mm)
    r.mismatch = ReportMismatch{*mm, 0, render(F, lhs.coeff(*mm)),
                                render(F, rhs.coeff(*mm))};
  return r;
}

// Pass iff the series is identically zero below its precision.
Report zero_report(const Field& F, std::string name, const USeries& s,
                   int64_t lo_hint, std::string note = "") {
  Report r;
  r.name = std::move(name);
  r.note = std::move(note);
  r.window.lou = std::min(lo_hint, eff_val(s));
  r.window.hiu = std::max(r.window.lou, s.prec);
  r.pass = s.is_zero();
  if (!r.pass)
    r.mismatch = ReportMismatch{s.val, 0, render(F, s.coeff(s.val)), "0"};
  return r;
}

Report bi_report(const Field& F, std::string name, const BiSeries& lhs,
                 const BiSeries& rhs, std::string note = "") {
  Report r;
  r.name = std::move(name);
  r.note = std::move(note);
  BiWindow w = common_window(lhs, rhs);
  if (w.empty())
    throw WindowEmpty(r.name + ": no overlapping exponents to compare; "
                      "raise i_max or the precision");
  r.window = ReportWindow{w.lou, w.hiu, w.lot, w.hit, true};
  auto mm = first_mismatch(lhs, rhs);
  r.pass = !mm.has_value();
  if (mm)
    r.mismatch = ReportMismatch{mm->eu, mm->et, render(F, mm->lhs),
                                render(F, mm->rhs)};
  return r;
}

// Pass/fail determined by the caller; no exponent window attached.
Report predicate_report(std::string name, bool pass, std::string note) {
  Report r;
  r.name = std::move(name);
  r.pass = pass;
  r.note = std::move(note);
  return r;
}

USeries monomial_sum(const Field& F, const std::vector<TPoly>& coeffs,
                     int64_t e0, int64_t step, int64_t prec) {
  USeries s = us_zero(Var::U, prec);
  for (size_t i = 0; i < coeffs.size(); ++i)
    s = add(F, s, us_monomial(F, Var::U, coeffs[i],
                              e0 + step * static_cast<int64_t>(i), prec));
  return s;
}

std::string kl_name(const char* group, int64_t k, int64_t l) {
  std::ostringstream os;
  os << group << "(k=" << k << ",l=" << l << ")";
  return os.str();
}

std::string kl_i_name(const char* group, int64_t k, int64_t l, int64_t I) {
  std::ostringstream os;
  os << group << "(k=" << k << ",l=" << l << ",I=" << I << ")";
  return os.str();
}

// Weight/type pairs exercised by the family-level checks.  The same shapes
// exist for every q; at q = 5 one "large r with nonzero type" pair is added.
std::vector<std::pair<int64_t, int64_t>> family_list(const Field& F) {
  const int64_t q = F.q();
  std::vector<std::pair<int64_t, int64_t>> fams = {
      {0, 0}, {2 * (q - 1), 0}, {q + 1, 1}, {2, 1}, {-(q - 1), 0}};
  if (q == 5) fams.emplace_back(8, 2);
  return fams;
}

std::vector<std::pair<int64_t, int64_t>> bivariate_list(const Field& F) {
  const int64_t q = F.q();
  return {{0, 0}, {2 * (q - 1), 0}, {q + 1, 1}};
}

bool divisible(int64_t n, int64_t p) { return ((n % p) + p) % p == 0; }

}  // namespace

std::string render(const Report& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
  if (r.window.hiu > r.window.lou) {
    os << "  u[" << r.window.lou << "," << r.window.hiu << ")";
    if (r.window.bivariate)
      os << " x u_tau[" << r.window.lot << "," << r.window.hit << ")";
  }
  if (r.mismatch) {
    os << "  mismatch at u^" << r.mismatch->eu;
    if (r.window.bivariate) os << " u_tau^" << r.mismatch->et;
    os << ": " << r.mismatch->lhs << " != " << r.mismatch->rhs;
  }
  if (!r.note.empty()) os << "  [" << r.note << "]";
  return os.str();
}

std::vector<Report> check_theta_closed_forms(const Field& F, int64_t prec) {
  Workspace W(F);
  const int64_t q = F.q();
  const Generators& G = W.generators(prec);
  std::vector<Report> out;

  out.push_back(series_report(F, "theta_closed_forms/theta_jT_equals_neg_ET_jT",
                              theta(F, G.jT), neg(F, mul(F, G.ET, G.jT))));
  out.push_back(series_report(
      F, "theta_closed_forms/theta_jT_dT2_equals_neg_ET_pow_q",
      mul(F, theta(F, G.jT), pow(F, G.dT, 2)), neg(F, pow(F, G.ET, q))));
  USeries head2 = sub(F, pow(F, G.dW, 2),
                      scale(F, pow(F, G.dT, 2), tp_T(F, q - 1)));
  out.push_back(series_report(
      F, "theta_closed_forms/theta_jTplus_ET_pow_q_minus_2",
      mul(F, theta(F, G.jTp), pow(F, G.ET, q - 2)), neg(F, head2),
      "theta(jTplus) * ET^(q-2) = -(dW^2 - T^(q-1) dT^2)"));

  // The two stated values of the weight-2 kernel at the cusp 0, both checked
  // against its definitional expansion -u - sum C_i u^((q-1)i+1), where the
  // C_i are the constant terms of the weight-0 family.
  const int64_t I = (prec - 1 + (q - 2)) / (q - 1);
  auto els = canonical_basis(W, 0, 0, I, prec);
  std::vector<TPoly> cs;
  cs.reserve(els.size());
  for (const auto& el : els) cs.push_back(el.C);
  USeries S = monomial_sum(F, cs, 1, q - 1, prec);
  out.push_back(series_report(
      F, "theta_closed_forms/kernel_series_equals_neg_ET", neg(F, S),
      neg(F, truncate(G.ET, prec)),
      "-u - sum C_i u^((q-1)i+1) equals -ET"));
  out.push_back(series_report(
      F, "theta_closed_forms/kernel_series_denominator_route",
      mul(F, mul(F, neg(F, S), G.jT), pow(F, G.dT, 2)),
      neg(F, pow(F, G.ET, q)),
      "same series times jT*dT^2 equals -ET^q"));
  return out;
}

std::vector<Report> check_partial_identities(const Field& F, int64_t prec) {
  Workspace W(F);
  const int64_t q = F.q();
  const int64_t m = (q - 1) / 2;
  const Generators& G = W.generators(prec);
  std::vector<Report> out;

  out.push_back(zero_report(F, "partial_identities/partial_dT_vanishes",
                            partial_k(W, G.dT, q - 1, prec), G.dT.val,
                            "weight-(q-1) derivation kills dT"));
  out.push_back(series_report(F, "partial_identities/partial_dW",
                              partial_k(W, G.dW, q - 1, prec),
                              neg(F, mul(F, G.dW, G.ET)),
                              "partial_(q-1) dW = -dW*ET"));
  out.push_back(zero_report(
      F, "partial_identities/partial_plus_ET_pow_q_minus_1_vanishes",
      partial_plus(W, pow(F, G.ET, q - 1), 2 * (q - 1), prec), q - 1,
      "Fricke-side derivation kills ET^(q-1)"));
  USeries head = sub(F, G.dW, scale(F, G.dT, tp_T(F, m)));
  USeries coh = add(F, G.dW, scale(F, G.dT, tp_T(F, m)));
  TPoly neg_half = tp_from(F, F.neg(F.inv(F.from_int(2))));
  out.push_back(series_report(
      F, "partial_identities/partial_plus_head",
      partial_plus(W, head, q - 1, prec),
      scale(F, mul(F, coh, G.ET), neg_half),
      "partial_plus (dW - T^m dT) = -(1/2)(dW + T^m dT)*ET"));

  // Product rule on random generator monomial pairs.
  std::mt19937_64 rng(20260817);
  auto rnd_expr = [&](int64_t& k_out) {
    int64_t a = static_cast<int64_t>(rng() % 3);
    int64_t b = static_cast<int64_t>(rng() % 3);
    int64_t c = static_cast<int64_t>(rng() % 3);
    GenExpr g = ge_monomial(F, tp_const(F, 1), a, b, c);
    k_out = weight_type(F, g).first;
    return g;
  };
  Report lz;
  lz.name = "partial_identities/product_rule_random_pairs";
  lz.pass = true;
  int64_t lo = 0, hi = kPrecInf;
  const int kPairs = 20;
  for (int t = 0; t < kPairs && lz.pass; ++t) {
    int64_t kf = 0, kg = 0;
    GenExpr fe = rnd_expr(kf), ge = rnd_expr(kg);
    USeries fs = genexpr_to_series(W, fe, prec);
    USeries gs = genexpr_to_series(W, ge, prec);
    USeries lhs = partial_plus(W, mul(F, fs, gs), kf + kg, prec);
    USeries rhs = add(F, mul(F, fs, partial_plus(W, gs, kg, prec)),
                      mul(F, gs, partial_plus(W, fs, kf, prec)));
    lo = std::min(lo, std::min(eff_val(lhs), eff_val(rhs)));
    hi = std::min(hi, std::min(lhs.prec, rhs.prec));
    if (auto mm = first_mismatch(lhs, rhs)) {
      lz.pass = false;
      lz.mismatch = ReportMismatch{*mm, 0, render(F, lhs.coeff(*mm)),
                                   render(F, rhs.coeff(*mm))};
      lz.note = "pair " + std::to_string(t) + ": f=" + render(F, fe) +
                ", g=" + render(F, ge);
    }
  }
  lz.window.lou = lo;
  lz.window.hiu = std::max(lo, hi);
  if (lz.pass)
    lz.note = std::to_string(kPairs) +
              " random monomial pairs obey the product rule";
  out.push_back(std::move(lz));
  return out;
}

std::vector<Report> check_theta_divisor_formula(const Field& F, int64_t prec) {
  Workspace W(F);
  const Generators& G = W.generators(prec);
  std::vector<Report> out;

  auto one_form = [&](std::string name, const GenExpr& f, std::string what) {
    auto [k, l] = weight_type(F, f);
    (void)l;
    auto [oi, o0] = cusp_orders(W, f, prec);
    USeries fs = genexpr_to_series(W, f, prec);
    USeries lhs = theta(F, fs);
    USeries rhs = add(F, scale(F, mul(F, G.E, fs), tp_from(F, F.from_int(-k))),
                      scale(F, mul(F, G.ET, fs), tp_from(F, F.from_int(o0))));
    std::ostringstream note;
    note << what << ": k=" << k << ", ord_inf=" << oi << ", ord_0=" << o0
         << ", multipliers mod p";
    return series_report(F, std::move(name), lhs, rhs, note.str());
  };

  out.push_back(one_form("theta_divisor/dT",
                         ge_monomial(F, tp_const(F, 1), 1, 0, 0),
                         "theta(dT) = E*dT"));
  out.push_back(one_form("theta_divisor/dW",
                         ge_monomial(F, tp_const(F, 1), 0, 1, 0),
                         "theta(dW) = (E - ET)*dW"));
  out.push_back(one_form("theta_divisor/ET",
                         ge_monomial(F, tp_const(F, 1), 0, 0, 1),
                         "theta(ET) = -2E*ET + ET^2"));

  std::mt19937_64 rng(97 + F.q());
  for (int t = 1; t <= 3; ++t) {
    int64_t a = 0, b = 0, c = 0;
    do {
      a = static_cast<int64_t>(rng() % 4);
      b = static_cast<int64_t>(rng() % 4);
      c = static_cast<int64_t>(rng() % 3);
    } while (a + b > 3 || (a == 0 && b == 0 && c == 0));
    GenExpr f = ge_monomial(F, tp_const(F, 1), a, b, c);
    out.push_back(one_form("theta_divisor/random_monomial_" +
                               std::to_string(t),
                           f, render(F, f)));
  }
  return out;
}

std::vector<GenExpr> valence_battery(const Field& F) {
  std::vector<GenExpr> out;
  for (int64_t a = 0; a <= 3; ++a)
    for (int64_t b = 0; a + b <= 3; ++b)
      for (int64_t c = 0; c <= 2; ++c)
        out.push_back(ge_monomial(F, tp_const(F, 1), a, b, c));
  return out;
}

std::vector<Report> check_valence(const Field& F,
                                  const std::vector<GenExpr>& known_forms,
                                  int64_t prec) {
  Workspace W(F);
  const int64_t p = F.p();
  std::vector<Report> out;

  {
    int64_t bad = 0;
    std::string first_bad;
    for (const auto& f : known_forms) {
      auto [k, l] = weight_type(F, f);
      (void)l;
      auto [oi, o0] = cusp_orders(W, f, prec);
      if (!divisible(oi + o0 - k, p) && bad++ == 0) first_bad = render(F, f);
    }
    std::ostringstream note;
    note << known_forms.size()
         << " forms with no zeros away from the cusps: ord_inf + ord_0 = k "
            "(mod p)";
    if (bad) note << "; " << bad << " violations, first: " << first_bad;
    out.push_back(predicate_report("valence/level_battery", bad == 0,
                                   note.str()));
  }

  {
    // g = f * (f|W_T) is Fricke-fixed of weight 2k; the one-cusp version of
    // the count reads ord_inf(g) = k (mod p).
    int64_t bad = 0;
    std::string first_bad;
    for (const auto& f : known_forms) {
      GenExpr g = mul(F, f, wT_image(F, f));
      if (g.is_zero()) continue;
      auto [kg, lg] = weight_type(F, g);
      (void)lg;
      int64_t og = cusp_orders(W, g, prec).first;
      if (!divisible(og - kg / 2, p) && bad++ == 0) first_bad = render(F, f);
    }
    std::ostringstream note;
    note << known_forms.size()
         << " products f*(f|W_T): ord_inf = k/2 (mod p); interior and "
            "elliptic orders vanish for these";
    if (bad) note << "; " << bad << " violations, first: " << first_bad;
    out.push_back(predicate_report("valence/fricke_battery", bad == 0,
                                   note.str()));
  }
  return out;
}

namespace {

Report carlitz_constants_report(const Field& F, int64_t i_hi) {
  Workspace W(F);
  const int64_t q = F.q();
  auto els = canonical_basis(W, 0, 0, i_hi, (q - 1) * i_hi + 2);
  Report r;
  r.name = "carlitz_constants/partial_sums";
  r.pass = els[0].C == tp_const(F, 1);
  r.window.lou = 1;
  r.window.hiu = (q - 1) * i_hi + 2;
  for (int64_t i = 1; i <= i_hi && r.pass; ++i) {
    const int64_t e = (q - 1) * i + 1;
    TPoly sum = tp_zero();
    for (int d = 1; ; ++d) {
      int64_t qd = 1;
      for (int j = 0; j < d; ++j) qd *= q;
      if (qd > e) break;
      for (const TPoly& a : monic_polys(F, d, /*skip_T_multiples=*/true))
        sum = add(F, sum, mul(F, a, W.carlitz().u_of(a, e + 1).coeff(e)));
    }
    if (sum != els[i].C) {
      r.pass = false;
      r.mismatch = ReportMismatch{e, 0, render(F, els[i].C), render(F, sum)};
      r.note = "family constant vs Carlitz sum at i=" + std::to_string(i);
    }
  }
  if (r.pass)
    r.note = "constants of the weight-0 family match the sums of a*u_a "
             "coefficients for i=1.." + std::to_string(i_hi) + ", C_0 = 1";
  return r;
}

Report triangular_report(const Field& F, Workspace& W, int64_t k, int64_t l,
                         int64_t i_max, int64_t prec, bool plus) {
  const int64_t q = F.q();
  Report r;
  r.name = kl_name(plus ? "basis_triangular_plus" : "basis_triangular", k, l);
  r.pass = true;
  auto fail = [&](const std::string& why) {
    if (r.pass) {
      r.pass = false;
      r.note = why;
    }
  };

  auto check_el = [&](int64_t i, const std::vector<TPoly>& Fpoly,
                      const TPoly& C, const GenExpr& expr,
                      const USeries& series, int64_t lead, int64_t gap) {
    std::string tag = " (i=" + std::to_string(i) + ")";
    if (series.is_zero() || series.val != lead)
      return fail("leading exponent is not the triangular one" + tag);
    if (series.coeff(lead) != tp_const(F, 1))
      return fail("leading coefficient is not 1" + tag);
    for (int64_t e = lead + 1; e < gap; ++e)
      if (!series.coeff(e).is_zero())
        return fail("nonzero coefficient inside the gap window" + tag);
    if (static_cast<int64_t>(Fpoly.size()) != i + 1 ||
        Fpoly.back() != tp_const(F, 1))
      return fail("F is not monic of degree i" + tag);
    for (const TPoly& t : Fpoly)
      if (!is_in_A(t)) return fail("F has a coefficient outside F_q[T]" + tag);
    if (C != Fpoly.front()) return fail("constant term differs from F(0)" + tag);
    auto wt = weight_type(F, expr);
    if (wt.first != k || wt.second != ((l % (q - 1)) + (q - 1)) % (q - 1))
      return fail("expression has the wrong weight or type" + tag);
  };

  if (!plus) {
    auto els = canonical_basis(W, k, l, i_max, prec);
    const int64_t rr = els[0].params.r;
    const int64_t gap = (q - 1) * (rr + 1) + l;
    for (const auto& el : els)
      check_el(el.i, el.F, el.C, el.expr, el.series,
               (q - 1) * (rr - el.i) + l, gap);
    if (r.pass)
      r.note = "elements 0.." + std::to_string(i_max) +
               ": triangular, monic, coefficients in F_q[T]";
    r.window.lou = (q - 1) * (rr - i_max) + l;
    r.window.hiu = std::max(r.window.lou, gap);
  } else {
    auto els = canonical_basis_plus(W, k, l, i_max, prec);
    const int64_t dp = els[0].d_plus;
    const int64_t gap = (q - 1) * dp + l;
    for (const auto& el : els)
      check_el(el.i, el.F, el.C, el.expr, el.series,
               (q - 1) * (dp - 1 - el.i) + l, gap);
    if (r.pass)
      r.note = std::string("seed case ") +
               parity_case_name(els[0].parity_case) + "; elements 0.." +
               std::to_string(i_max) +
               ": triangular, monic, coefficients in F_q[T]";
    r.window.lou = (q - 1) * (dp - 1 - i_max) + l;
    r.window.hiu = std::max(r.window.lou, gap);
  }
  return r;
}

Report f01_report(const Field& F, Workspace& W, int64_t prec) {
  auto els = canonical_basis(W, 0, 0, 1, prec);
  const Generators& G = W.generators(prec);
  USeries want =
      sub(F, G.jT, us_monomial(F, Var::U, tp_T(F, 1), 0, G.jT.prec));
  Report r = series_report(F, "basis_triangular/f01_literal",
                           els[1].series, want,
                           "first weight-0 element equals jT - T");
  bool fok = els[1].F.size() == 2 && els[1].F[0] == tp_T(F, 1, -1) &&
             els[1].F[1] == tp_const(F, 1);
  if (!fok) {
    r.pass = false;
    if (r.note.empty()) r.note = "";
    r.note += "; F(x) != x - T";
  }
  return r;
}

Report plus_space_report(const Field& F, int64_t prec) {
  Workspace W(F);
  const int64_t q = F.q();
  Report r;
  r.name = "plus_space/holomorphic_spans";
  r.pass = true;
  // One evaluation precision covers every leading exponent in range.
  const int64_t evp = 8 * (q - 1) + q;
  int64_t spaces = 0, forms = 0;
  for (int64_t k = 0; k <= 8 * (q - 1); ++k) {
    for (int64_t l = 0; l <= q - 2; ++l) {
      if (((k - 2 * l) % (q - 1) + (q - 1)) % (q - 1) != 0) continue;
      auto B = plus_holomorphic_basis(W, k, l);
      ++spaces;
      if (B.dim != d_plus_of(F, k, l) ||
          static_cast<int64_t>(B.elements.size()) != B.dim) {
        r.pass = false;
        r.note = "element count disagrees with the dimension at k=" +
                 std::to_string(k) + ", l=" + std::to_string(l);
        break;
      }
      for (int64_t i = 0; i < B.dim; ++i) {
        const GenExpr& g = B.elements[i];
        ++forms;
        const int64_t lead = i * (q - 1) + l;
        USeries s = genexpr_to_series(W, g, evp);
        auto wt = weight_type(F, g);
        bool ok = wT_image(F, g) == g && wt.first == k && wt.second == l &&
                  !s.is_zero() && s.val == lead &&
                  s.coeff(lead) == tp_const(F, 1);
        if (!ok) {
          r.pass = false;
          r.note = "element " + std::to_string(i) + " at k=" +
                   std::to_string(k) + ", l=" + std::to_string(l) +
                   " fails Fricke-fixedness or its leading term";
          break;
        }
      }
      if (!r.pass) break;
    }
    if (!r.pass) break;
  }
  if (r.pass) {
    std::ostringstream note;
    note << spaces << " spaces with k <= " << 8 * (q - 1) << ", " << forms
         << " spanning forms: Fricke-fixed, expected dimension, leading "
            "terms u^(i(q-1)+l)";
    r.note = note.str();
  }
  (void)prec;
  return r;
}

}  // namespace

namespace {

// Rows of the two-variable sum: member i's tau-expansion against u^(e0 + i*step).
BiSeries family_sum(const Field& F, int64_t e0, int64_t step, int64_t pu,
                    const std::vector<const USeries*>& rows) {
  std::map<std::pair<int64_t, int64_t>, TPoly> cs;
  int64_t ptau = kPrecInf;
  for (size_t i = 0; i < rows.size(); ++i) {
    const USeries& s = *rows[i];
    ptau = std::min(ptau, s.prec);
    const int64_t eu = e0 + step * static_cast<int64_t>(i);
    for (int64_t j = 0; j < static_cast<int64_t>(s.c.size()); ++j)
      if (!s.c[j].is_zero()) cs[{eu, s.val + j}] = s.c[j];
  }
  (void)F;
  return bi_make(std::move(cs), pu, ptau);
}

// Constant-term identity: sum C_i u^((q-1)(-r+i)+1-l) = dT^(-r) ET^(1-l).
Report genfun_constant_report(const Field& F, Workspace& W, int64_t k,
                              int64_t l, int64_t i_max, int64_t prec_u) {
  const int64_t q = F.q();
  const Generators& Gu = W.generators(prec_u);
  auto els = canonical_basis(W, k, l, i_max, prec_u);
  const int64_t r = els[0].params.r;
  const int64_t eI1 = (q - 1) * (-r + i_max + 1) + 1 - l;
  std::vector<TPoly> cs;
  cs.reserve(els.size());
  for (const auto& el : els) cs.push_back(el.C);
  const int64_t low = (q - 1) * (-r) + 1 - l;
  USeries S = monomial_sum(F, cs, low, q - 1, eI1);
  USeries R = mul(F, pow(F, Gu.dT, -r), pow(F, Gu.ET, 1 - l));
  if (std::min(eI1, R.prec) <= low)
    throw WindowEmpty("genfun_constant: raise i_max or prec_u");
  return series_report(F, kl_name("genfun_constant", k, l), S, R,
                       k == 0 && l == 0
                           ? "right side is ET itself"
                           : "right side is dT^(-r) * ET^(1-l)");
}

// Two-variable identity, cross-multiplied:
//   Sum * (jT(z) - jT(tau)) * dT(z)^2 * f0(z) = ET(z)^q * f0(tau),
// where Sum collects the tau-expansions of the family against powers of u.
Report genfun_bivariate_report(const Field& F, Workspace& W, int64_t k,
                               int64_t l, int64_t i_max, int64_t prec_u,
                               int64_t prec_tau) {
  const int64_t q = F.q();
  const Generators& Gu = W.generators(prec_u);
  const Generators& Gt = W.generators(prec_tau);
  auto els = canonical_basis(W, k, l, i_max, prec_tau);
  const int64_t r = els[0].params.r;
  const int64_t eI1 = (q - 1) * (-r + i_max + 1) + 1 - l;
  const USeries& f0 = els[0].series;
  std::vector<const USeries*> rows;
  rows.reserve(els.size());
  for (const auto& el : els) rows.push_back(&el.series);
  BiSeries Sum = family_sum(F, (q - 1) * (-r) + 1 - l, q - 1, eI1, rows);
  BiSeries M = mul(F, sub(F, bi_u(Gu.jT), bi_tau(Gt.jT)),
                   bi_u(mul(F, pow(F, Gu.dT, 2), f0)));
  BiSeries LHS = mul(F, Sum, M);
  BiSeries RHS = mul(F, bi_u(pow(F, Gu.ET, q)), bi_tau(f0));
  return bi_report(F, kl_i_name("genfun_bivariate", k, l, i_max), LHS, RHS);
}

// Fricke-stable analogue with jTplus and ET^(q-2):
//   SumP * (jTp(z) - jTp(tau)) * ET(z)^(q-2) * f0(z)
//     = (dW(z)^2 - T^(q-1) dT(z)^2) * f0(tau).
Report genfun_bivariate_plus_report(const Field& F, Workspace& W, int64_t k,
                                    int64_t l, int64_t i_max, int64_t prec_u,
                                    int64_t prec_tau) {
  const int64_t q = F.q();
  const Generators& Gu = W.generators(prec_u);
  const Generators& Gt = W.generators(prec_tau);
  auto els = canonical_basis_plus(W, k, l, i_max, prec_tau);
  const int64_t dp = els[0].d_plus;
  const int64_t eI1 = (q - 1) * (-(dp - 1) + i_max + 1) + 1 - l;
  const USeries& f0 = els[0].series;
  std::vector<const USeries*> rows;
  rows.reserve(els.size());
  for (const auto& el : els) rows.push_back(&el.series);
  BiSeries Sum =
      family_sum(F, (q - 1) * (-(dp - 1)) + 1 - l, q - 1, eI1, rows);
  BiSeries M = mul(F, sub(F, bi_u(Gu.jTp), bi_tau(Gt.jTp)),
                   bi_u(mul(F, pow(F, Gu.ET, q - 2), f0)));
  BiSeries LHS = mul(F, Sum, M);
  USeries head2 = sub(F, pow(F, Gu.dW, 2),
                      scale(F, pow(F, Gu.dT, 2), tp_T(F, q - 1)));
  BiSeries RHS = mul(F, bi_u(head2), bi_tau(f0));
  return bi_report(F, kl_i_name("genfun_bivariate_plus", k, l, i_max), LHS,
                   RHS);
}

}  // namespace

std::vector<Report> check_generating_functions(const Field& F, int64_t k,
                                               int64_t l, int64_t i_max,
                                               int64_t prec_u,
                                               int64_t prec_tau) {
  if (i_max < 0) throw DomainError("check_generating_functions: i_max < 0");
  Workspace W(F);
  return {genfun_constant_report(F, W, k, l, i_max, prec_u),
          genfun_bivariate_report(F, W, k, l, i_max, prec_u, prec_tau),
          genfun_bivariate_plus_report(F, W, k, l, i_max, prec_u, prec_tau)};
}

const std::vector<std::string>& verify_group_names() {
  static const std::vector<std::string> names = {
      "generators",        "structural",      "theta_closed_forms",
      "partial_identities", "theta_divisor",  "valence",
      "carlitz_constants", "basis_triangular", "genfun_constant",
      "genfun_bivariate",  "plus_space",      "genfun_bivariate_plus"};
  return names;
}

namespace {

std::vector<Report> generators_group(const Field& F, int64_t prec) {
  Workspace W(F);
  const int64_t q = F.q();
  const int64_t m = (q - 1) / 2;
  const Generators& G = W.generators(prec);
  std::vector<Report> out;
  auto lead = [&](std::string name, const USeries& s,
                  std::vector<std::pair<int64_t, TPoly>> terms, int64_t upto,
                  std::string note) {
    USeries ref = us_zero(s.var, upto);
    for (auto& [e, t] : terms)
      ref = add(F, ref, us_monomial(F, s.var, t, e, upto));
    out.push_back(series_report(F, std::move(name), truncate(s, upto), ref,
                                std::move(note)));
  };
  TPoly one = tp_const(F, 1);
  lead("generators/E_leading", G.E,
       {{1, one}, {(q - 1) * (q - 1) + 1, one}}, (q - 1) * (q - 1) + 2,
       "E = u + u^((q-1)^2+1) + ...");
  lead("generators/ET_leading", G.ET, {{1, one}, {q, tp_T(F, 1, -1)}}, q + 1,
       "ET = u - T u^q + ...");
  lead("generators/dT_leading", G.dT,
       {{q - 1, one}, {q * (q - 1), tp_const(F, -1)}}, q * (q - 1) + 1,
       "dT = u^(q-1) - u^(q(q-1)) + ...");
  lead("generators/dW_leading", G.dW,
       {{0, one}, {q - 1, tp_T(F, 1)}, {q * (q - 1), tp_T(F, q, -1)}},
       q * (q - 1) + 1, "dW = 1 + T u^(q-1) - T^q u^(q(q-1)) + ...");
  lead("generators/jT_leading", G.jT, {{1 - q, one}, {0, tp_T(F, 1)}}, q - 1,
       "jT = u^(1-q) + T + ...");
  TPoly c0 = sub(F, scale(F, sub(F, tp_T(F, 1), tp_T(F, m)),
                          F.from_int(2)),
                 tp_T(F, 1));
  lead("generators/jTplus_constant_term", G.jTp, {{1 - q, one}, {0, c0}}, 1,
       "jTplus = u^(1-q) + (2(T - T^((q-1)/2)) - T) + ...");
  return out;
}

std::vector<Report> structural_group(const Field& F, int64_t prec) {
  Workspace W(F);
  const int64_t q = F.q();
  const int64_t m = (q - 1) / 2;
  const Generators& G = W.generators(prec);
  std::vector<Report> out;
  out.push_back(series_report(F,
                              "structural/ET_pow_q_minus_1_equals_dW_dT",
                              pow(F, G.ET, q - 1), mul(F, G.dW, G.dT)));
  out.push_back(series_report(F, "structural/jT_dT_equals_dW",
                              mul(F, G.jT, G.dT), G.dW));
  USeries head = sub(F, G.dW, scale(F, G.dT, tp_T(F, m)));
  out.push_back(series_report(
      F, "structural/jTplus_ET_pow_q_minus_1_equals_head_squared",
      mul(F, G.jTp, pow(F, G.ET, q - 1)), pow(F, head, 2),
      "jTplus * ET^(q-1) = (dW - T^m dT)^2"));
  out.push_back(series_report(F, "structural/g1_equals_dW_minus_Tq_dT", G.g1,
                              sub(F, G.dW, scale(F, G.dT, tp_T(F, q)))));
  out.push_back(series_report(F, "structural/g1Tz_equals_dW_minus_T_dT",
                              G.g1Tz,
                              sub(F, G.dW, scale(F, G.dT, tp_T(F, 1)))));
  USeries uT = W.carlitz().u_of(tp_T(F, 1), prec);
  out.push_back(series_report(F, "structural/ETz_equals_T_E_of_Tz", G.ETz,
                              scale(F, substitute(F, G.E, uT), tp_T(F, 1)),
                              "series substitution u -> u_T"));
  return out;
}

std::vector<Report> basis_triangular_group(const Field& F, int64_t prec) {
  Workspace W(F);
  std::vector<Report> out;
  for (auto [k, l] : family_list(F)) {
    out.push_back(triangular_report(F, W, k, l, 8, prec, /*plus=*/false));
    out.push_back(triangular_report(F, W, k, l, 8, prec, /*plus=*/true));
  }
  out.push_back(f01_report(F, W, prec));
  return out;
}

template <typename Fn>
std::vector<Report> per_family(const Field& F, Fn&& fn) {
  std::vector<Report> out;
  for (auto [k, l] : family_list(F)) out.push_back(fn(k, l));
  return out;
}

}  // namespace

std::vector<Report> run_verify(const Field& F, const VerifyOptions& opt) {
  for (const auto& name : opt.only)
    if (std::find(verify_group_names().begin(), verify_group_names().end(),
                  name) == verify_group_names().end())
      throw DomainError("unknown check group: " + name);
  auto want = [&](const char* n) {
    return opt.only.empty() ||
           std::find(opt.only.begin(), opt.only.end(), n) != opt.only.end();
  };
  const int64_t prec = opt.prec;
  const int64_t I = opt.i_max;

  struct Group {
    const char* name;
    std::function<std::vector<Report>()> fn;
  };
  std::vector<Group> groups;
  if (want("generators"))
    groups.push_back({"generators", [&F, prec] {
      return generators_group(F, prec);
    }});
  if (want("structural"))
    groups.push_back({"structural", [&F, prec] {
      return structural_group(F, prec);
    }});
  if (want("theta_closed_forms"))
    groups.push_back({"theta_closed_forms", [&F, prec] {
      return check_theta_closed_forms(F, prec);
    }});
  if (want("partial_identities"))
    groups.push_back({"partial_identities", [&F, prec] {
      return check_partial_identities(F, prec);
    }});
  if (want("theta_divisor"))
    groups.push_back({"theta_divisor", [&F, prec] {
      return check_theta_divisor_formula(F, prec);
    }});
  if (want("valence"))
    groups.push_back({"valence", [&F, prec] {
      return check_valence(F, valence_battery(F), prec);
    }});
  if (want("carlitz_constants"))
    groups.push_back({"carlitz_constants", [&F] {
      return std::vector<Report>{carlitz_constants_report(F, 6)};
    }});
  if (want("basis_triangular"))
    groups.push_back({"basis_triangular", [&F, prec] {
      return basis_triangular_group(F, prec);
    }});
  if (want("genfun_constant"))
    groups.push_back({"genfun_constant", [&F, I, prec] {
      Workspace W(F);
      return per_family(F, [&](int64_t k, int64_t l) {
        return genfun_constant_report(F, W, k, l, I, prec);
      });
    }});
  if (want("genfun_bivariate"))
    groups.push_back({"genfun_bivariate", [&F, I, prec] {
      Workspace W(F);
      std::vector<Report> out;
      for (auto [k, l] : bivariate_list(F))
        out.push_back(genfun_bivariate_report(F, W, k, l, I, prec, prec));
      return out;
    }});
  if (want("plus_space"))
    groups.push_back({"plus_space", [&F, prec] {
      return std::vector<Report>{plus_space_report(F, prec)};
    }});
  if (want("genfun_bivariate_plus"))
    groups.push_back({"genfun_bivariate_plus", [&F, I, prec] {
      Workspace W(F);
      const int64_t q = F.q();
      return std::vector<Report>{genfun_bivariate_plus_report(
          F, W, 2 * (q - 1), 0, I, prec, prec)};
    }});

  std::vector<std::vector<Report>> slots(groups.size());
  std::vector<std::exception_ptr> errs(groups.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t g; (g = next.fetch_add(1)) < groups.size();) {
      try {
        slots[g] = groups[g].fn();
      } catch (...) {
        errs[g] = std::current_exception();
      }
    }
  };
  int jobs = std::max(1, std::min<int>(opt.jobs,
                                       static_cast<int>(groups.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);

  std::vector<Report> out;
  for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
  return out;
}

}  // namespace dmf
