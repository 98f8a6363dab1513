#include "dmf/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dmf {
namespace {

Json exp_to_json(int64_t e) {
  if (e >= kPrecInf) return Json(nullptr);
  return Json(e);
}

int64_t exp_from_json(const Json& j) {
  if (j.is_null()) return kPrecInf;
  return j.get<int64_t>();
}

Json fq_to_json(const Field& F, const FqElem& a) {
  Json out = Json::array();
  for (int i = 0; i < F.r(); ++i) out.push_back(int64_t(a.c[size_t(i)]));
  return out;
}

FqElem fq_from_json(const Field& F, const Json& j) {
  if (!j.is_array() || int(j.size()) != F.r())
    throw DomainError("field element needs exactly r digits");
  FqElem a;
  for (int i = 0; i < F.r(); ++i) {
    int64_t d = j[size_t(i)].get<int64_t>();
    if (d < 0 || d >= F.p()) throw DomainError("field digit out of range");
    a.c[size_t(i)] = uint16_t(d);
  }
  return a;
}

Var var_from_name(const std::string& n) {
  if (n == var_name(Var::U)) return Var::U;
  if (n == var_name(Var::U0)) return Var::U0;
  if (n == var_name(Var::UTau)) return Var::UTau;
  throw DomainError("unknown series variable: " + n);
}

ParityCase parity_from_name(const std::string& n) {
  for (ParityCase c : {ParityCase::ROdd, ParityCase::REvenLOdd,
                       ParityCase::REvenLEven})
    if (n == parity_case_name(c)) return c;
  throw DomainError("unknown parity case: " + n);
}

}  // namespace

Json field_to_json(const Field& F) {
  Json out;
  out["p"] = F.p();
  out["r"] = F.r();
  Json mod = Json::array();
  for (uint16_t d : F.modulus()) mod.push_back(int64_t(d));
  out["modulus"] = mod;
  return out;
}

Field field_from_json(const Json& j) {
  int64_t p = j.at("p").get<int64_t>();
  int r = j.at("r").get<int>();
  if (!j.contains("modulus") || j["modulus"].is_null()) return Field::make(p, r);
  std::vector<int64_t> mod;
  for (const Json& d : j["modulus"]) mod.push_back(d.get<int64_t>());
  return Field::make(p, r, mod);
}

Json to_json(const Field& F, const TPoly& a) {
  Json out;
  out["lo"] = a.lo;
  Json cs = Json::array();
  for (const FqElem& d : a.c) cs.push_back(fq_to_json(F, d));
  out["coeffs"] = cs;
  return out;
}

TPoly tpoly_from_json(const Field& F, const Json& j) {
  int64_t lo = j.at("lo").get<int64_t>();
  TPoly out = tp_zero();
  const Json& cs = j.at("coeffs");
  for (size_t i = 0; i < cs.size(); ++i) {
    FqElem d = fq_from_json(F, cs[i]);
    if (!F.is_zero(d))
      out = add(F, out, tp_monomial(F, d, lo + int64_t(i)));
  }
  return out;
}

Json to_json(const Field& F, const USeries& s) {
  Json out;
  out["var"] = var_name(s.var);
  out["val"] = exp_to_json(s.val);
  out["prec"] = exp_to_json(s.prec);
  Json cs = Json::array();
  for (const TPoly& a : s.c) cs.push_back(to_json(F, a));
  out["coeffs"] = cs;
  return out;
}

USeries useries_from_json(const Field& F, const Json& j) {
  Var v = var_from_name(j.at("var").get<std::string>());
  int64_t val = exp_from_json(j.at("val"));
  int64_t prec = exp_from_json(j.at("prec"));
  const Json& cs = j.at("coeffs");
  USeries out = us_zero(v, prec);
  for (size_t i = 0; i < cs.size(); ++i) {
    TPoly a = tpoly_from_json(F, cs[i]);
    if (!a.is_zero())
      out = add(F, out, us_monomial(F, v, a, val + int64_t(i), prec));
  }
  return out;
}

Json to_json(const Field& F, const GenExpr& a) {
  Json out = Json::array();
  for (const auto& [mono, coeff] : a.terms) {
    Json term;
    term["dT"] = mono[0];
    term["dW"] = mono[1];
    term["ET"] = mono[2];
    term["coeff"] = to_json(F, coeff);
    out.push_back(term);
  }
  return out;
}

GenExpr genexpr_from_json(const Field& F, const Json& j) {
  GenExpr out = ge_zero();
  for (const Json& term : j) {
    TPoly c = tpoly_from_json(F, term.at("coeff"));
    out = add(F, out,
              ge_monomial(F, c, term.at("dT").get<int64_t>(),
                          term.at("dW").get<int64_t>(),
                          term.at("ET").get<int64_t>()));
  }
  return out;
}

namespace {

Json element_core(const Field& F, const FormParams& p, int64_t i,
                  const std::vector<TPoly>& Fcoeffs, const TPoly& C,
                  const GenExpr& expr, const USeries& series) {
  Json out;
  out["k"] = p.k;
  out["l"] = p.l;
  out["r"] = p.r;
  out["i"] = i;
  Json fc = Json::array();
  for (const TPoly& a : Fcoeffs) fc.push_back(to_json(F, a));
  out["F"] = fc;
  out["C"] = to_json(F, C);
  out["expr"] = to_json(F, expr);
  out["series"] = to_json(F, series);
  return out;
}

}  // namespace

Json to_json(const Field& F, const BasisElement& e) {
  return element_core(F, e.params, e.i, e.F, e.C, e.expr, e.series);
}

BasisElement basis_element_from_json(const Field& F, const Json& j) {
  BasisElement e;
  e.params = form_params(F, j.at("k").get<int64_t>(), j.at("l").get<int64_t>());
  e.i = j.at("i").get<int64_t>();
  for (const Json& a : j.at("F")) e.F.push_back(tpoly_from_json(F, a));
  e.C = tpoly_from_json(F, j.at("C"));
  e.expr = genexpr_from_json(F, j.at("expr"));
  e.series = useries_from_json(F, j.at("series"));
  return e;
}

Json to_json(const Field& F, const PlusBasisElement& e) {
  Json out = element_core(F, e.params, e.i, e.F, e.C, e.expr, e.series);
  // Insert the Fricke-specific keys right after the shared weight data.
  Json ordered;
  ordered["k"] = out["k"];
  ordered["l"] = out["l"];
  ordered["r"] = out["r"];
  ordered["parity_case"] = parity_case_name(e.parity_case);
  ordered["d_plus"] = e.d_plus;
  ordered["i"] = out["i"];
  ordered["F"] = out["F"];
  ordered["C"] = out["C"];
  ordered["expr"] = out["expr"];
  ordered["series"] = out["series"];
  return ordered;
}

PlusBasisElement plus_element_from_json(const Field& F, const Json& j) {
  PlusBasisElement e;
  e.params = form_params(F, j.at("k").get<int64_t>(), j.at("l").get<int64_t>());
  e.parity_case = parity_from_name(j.at("parity_case").get<std::string>());
  e.d_plus = j.at("d_plus").get<int64_t>();
  e.i = j.at("i").get<int64_t>();
  for (const Json& a : j.at("F")) e.F.push_back(tpoly_from_json(F, a));
  e.C = tpoly_from_json(F, j.at("C"));
  e.expr = genexpr_from_json(F, j.at("expr"));
  e.series = useries_from_json(F, j.at("series"));
  return e;
}

Json to_json(const Report& r) {
  Json out;
  out["name"] = r.name;
  out["pass"] = r.pass;
  if (!r.window.bivariate && r.window.hiu <= r.window.lou) {
    out["window"] = nullptr;
  } else {
    Json w;
    w["u"] = Json::array({r.window.lou, r.window.hiu});
    if (r.window.bivariate)
      w["u_tau"] = Json::array({r.window.lot, r.window.hit});
    else
      w["u_tau"] = nullptr;
    out["window"] = w;
  }
  if (r.mismatch) {
    Json m;
    m["u_exp"] = r.mismatch->eu;
    m["u_tau_exp"] = r.window.bivariate ? Json(r.mismatch->et) : Json(nullptr);
    m["lhs"] = r.mismatch->lhs;
    m["rhs"] = r.mismatch->rhs;
    out["mismatch"] = m;
  } else {
    out["mismatch"] = nullptr;
  }
  out["note"] = r.note;
  return out;
}

}  // namespace dmf
