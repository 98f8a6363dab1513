// Command-line front end: print generator expansions, canonical bases, and
// theta images, or run the verification suite, as text or JSON.
//
// Exit status: 0 on success (and when every verification check passes),
// 1 when a verification check fails, 2 for usage or parameter errors.

#include "dmf/basis.hpp"
#include "dmf/errors.hpp"
#include "dmf/json_io.hpp"
#include "dmf/verify.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using namespace dmf;

const USeries& named_form(const Generators& G, const std::string& name) {
  static const std::map<std::string, USeries Generators::*> table = {
      {"E", &Generators::E},         {"ETz", &Generators::ETz},
      {"ET", &Generators::ET},       {"g1", &Generators::g1},
      {"g1Tz", &Generators::g1Tz},   {"deltaT", &Generators::dT},
      {"deltaW", &Generators::dW},   {"jT", &Generators::jT},
      {"jTplus", &Generators::jTp}};
  auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [n, _] : table) known += (known.empty() ? "" : ", ") + n;
    throw DomainError("unknown form '" + name + "' (known: " + known + ")");
  }
  return G.*(it->second);
}

// F(x) with descending powers, multi-term coefficients parenthesized,
// e.g. "x^2 + (T^2 + 1)*x - T".
std::string poly_in_x(const Field& F, const std::vector<TPoly>& cs) {
  std::vector<std::string> terms;
  for (int64_t j = int64_t(cs.size()) - 1; j >= 0; --j) {
    const TPoly& c = cs[size_t(j)];
    if (c.is_zero()) continue;
    std::string xp = j == 0 ? "" : (j == 1 ? "x" : "x^" + std::to_string(j));
    std::string cr = render(F, c);
    std::string term;
    if (xp.empty())
      term = cr;
    else if (cr == "1")
      term = xp;
    else if (cr == "-1")
      term = "-" + xp;
    else if (cr.find(' ') != std::string::npos)
      term = "(" + cr + ")*" + xp;
    else
      term = cr + "*" + xp;
    terms.push_back(term);
  }
  if (terms.empty()) return "0";
  std::string out = terms.front();
  for (size_t t = 1; t < terms.size(); ++t) {
    if (terms[t][0] == '-')
      out += " - " + terms[t].substr(1);
    else
      out += " + " + terms[t];
  }
  return out;
}

std::string key_eq(const char* k, int64_t v) {
  return std::string(k) + "=" + std::to_string(v);
}

struct Options {
  int64_t p = 3;
  int r = 1;
  std::vector<int64_t> modulus;
  bool json = false;
  std::string out_path;
};

void emit(const Options& opt, const std::string& payload) {
  if (opt.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(opt.out_path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file: " + opt.out_path);
  f << payload;
}

Field make_field(const Options& opt) {
  if (opt.modulus.empty()) return Field::make(opt.p, opt.r);
  return Field::make(opt.p, opt.r, opt.modulus);
}

int run_form(const Options& opt, const std::string& name, int64_t prec,
             bool apply_theta) {
  Field F = make_field(opt);
  Workspace W(F);
  USeries s = named_form(W.generators(prec), name);
  if (apply_theta) s = theta(F, s);
  std::string payload;
  if (opt.json) {
    Json j;
    j["field"] = field_to_json(F);
    j["command"] = apply_theta ? "theta" : "form";
    j["name"] = name;
    j["prec"] = prec;
    j["series"] = to_json(F, s);
    payload = j.dump(2) + "\n";
  } else {
    payload = render(F, s) + "\n";
  }
  emit(opt, payload);
  return 0;
}

int run_basis(const Options& opt, int64_t k, int64_t l, int64_t i_max,
              int64_t prec, bool plus) {
  Field F = make_field(opt);
  Workspace W(F);
  std::string payload;
  if (plus) {
    std::vector<PlusBasisElement> els =
        canonical_basis_plus(W, k, l, i_max, prec);
    if (opt.json) {
      Json j;
      j["field"] = field_to_json(F);
      j["command"] = "basis";
      j["k"] = k;
      j["l"] = l;
      j["imax"] = i_max;
      j["prec"] = prec;
      j["plus"] = true;
      Json arr = Json::array();
      for (const auto& e : els) arr.push_back(to_json(F, e));
      j["elements"] = arr;
      payload = j.dump(2) + "\n";
    } else {
      payload = "canonical basis (Fricke-stable)  " + key_eq("k", k) + " " +
                key_eq("l", l) + " " + key_eq("r", els.front().params.r) +
                "  case=" + parity_case_name(els.front().parity_case) + " " +
                key_eq("d_plus", els.front().d_plus) + "  " +
                key_eq("i_max", i_max) + " " + key_eq("prec", prec) + "\n";
      for (const auto& e : els) {
        payload += "[i=" + std::to_string(e.i) + "]\n";
        payload += "  F      = " + poly_in_x(F, e.F) + "\n";
        payload += "  C      = " + render(F, e.C) + "\n";
        payload += "  expr   = " + render(F, e.expr) + "\n";
        payload += "  series = " + render(F, e.series) + "\n";
      }
    }
  } else {
    std::vector<BasisElement> els = canonical_basis(W, k, l, i_max, prec);
    if (opt.json) {
      Json j;
      j["field"] = field_to_json(F);
      j["command"] = "basis";
      j["k"] = k;
      j["l"] = l;
      j["imax"] = i_max;
      j["prec"] = prec;
      j["plus"] = false;
      Json arr = Json::array();
      for (const auto& e : els) arr.push_back(to_json(F, e));
      j["elements"] = arr;
      payload = j.dump(2) + "\n";
    } else {
      payload = "canonical basis  " + key_eq("k", k) + " " + key_eq("l", l) +
                " " + key_eq("r", els.front().params.r) + "  " +
                key_eq("i_max", i_max) + " " + key_eq("prec", prec) + "\n";
      for (const auto& e : els) {
        payload += "[i=" + std::to_string(e.i) + "]\n";
        payload += "  F      = " + poly_in_x(F, e.F) + "\n";
        payload += "  C      = " + render(F, e.C) + "\n";
        payload += "  expr   = " + render(F, e.expr) + "\n";
        payload += "  series = " + render(F, e.series) + "\n";
      }
    }
  }
  emit(opt, payload);
  return 0;
}

int run_verify_cmd(const Options& opt, const VerifyOptions& vopt) {
  Field F = make_field(opt);
  std::vector<Report> reps = run_verify(F, vopt);
  int64_t passed = 0;
  for (const auto& r : reps) passed += r.pass ? 1 : 0;
  bool all = passed == int64_t(reps.size());
  std::string payload;
  if (opt.json) {
    Json j;
    j["field"] = field_to_json(F);
    j["command"] = "verify";
    j["prec"] = vopt.prec;
    j["imax"] = vopt.i_max;
    j["only"] = vopt.only;
    Json arr = Json::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
    j["reports"] = arr;
    j["passed"] = passed;
    j["total"] = int64_t(reps.size());
    j["pass"] = all;
    payload = j.dump(2) + "\n";
  } else {
    for (const auto& r : reps) payload += render(r) + "\n";
    payload += (all ? "passed " : "FAILED: passed ") +
               std::to_string(passed) + "/" + std::to_string(reps.size()) +
               " checks\n";
  }
  emit(opt, payload);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Canonical bases, theta images, and identity checks for "
      "Drinfeld modular forms of level T over F_q[T]"};
  app.require_subcommand(1);
  // Global flags are accepted on either side of the subcommand.
  app.fallthrough();

  Options opt;
  app.add_option("--p", opt.p, "field characteristic, an odd prime")
      ->capture_default_str();
  app.add_option("--r", opt.r, "extension degree, q = p^r")
      ->capture_default_str();
  app.add_option("--modulus", opt.modulus,
                 "modulus of F_q over F_p, constant term first "
                 "(default: lexicographically first irreducible)");
  app.add_flag("--json", opt.json, "emit JSON instead of text");
  app.add_option("--out", opt.out_path, "write output to this file");

  std::string form_name;
  int64_t form_prec = 20;
  CLI::App* form = app.add_subcommand(
      "form", "print the u-expansion of a named form");
  form->add_option("name", form_name,
                   "E, ETz, ET, g1, g1Tz, deltaT, deltaW, jT, or jTplus")
      ->required();
  form->add_option("--prec", form_prec, "u-adic precision")
      ->capture_default_str();

  std::string theta_name;
  int64_t theta_prec = 20;
  CLI::App* th = app.add_subcommand(
      "theta", "print the theta image of a named form");
  th->add_option("name", theta_name,
                 "E, ETz, ET, g1, g1Tz, deltaT, deltaW, jT, or jTplus")
      ->required();
  th->add_option("--prec", theta_prec, "u-adic precision")
      ->capture_default_str();

  int64_t bk = 0, bl = 0, bimax = 4, bprec = 40;
  bool bplus = false;
  CLI::App* basis = app.add_subcommand(
      "basis", "print the canonical triangular basis for weight k, type l");
  basis->add_option("--k", bk, "weight")->required();
  basis->add_option("--l", bl, "type lift, 0 <= l <= q-2")
      ->capture_default_str();
  basis->add_option("--imax", bimax, "largest element index")
      ->capture_default_str();
  basis->add_option("--prec", bprec, "u-adic precision floor")
      ->capture_default_str();
  basis->add_flag("--plus", bplus, "Fricke-stable family");

  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand(
      "verify", "check the series identities and report pass/fail");
  verify->add_option("--prec", vopt.prec, "u-adic working precision")
      ->capture_default_str();
  verify->add_option("--imax", vopt.i_max,
                     "generating-function truncation index")
      ->capture_default_str();
  verify->add_option("--only", vopt.only,
                     "run only these named groups (repeatable)");
  verify->add_option("--jobs", vopt.jobs,
                     "worker threads; output is identical for any value")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (form->parsed()) return run_form(opt, form_name, form_prec, false);
    if (th->parsed()) return run_form(opt, theta_name, theta_prec, true);
    if (basis->parsed()) return run_basis(opt, bk, bl, bimax, bprec, bplus);
    return run_verify_cmd(opt, vopt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
