#pragma once

#include "dmf/basis.hpp"
#include "dmf/biseries.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dmf {

// Exponent rectangle a check actually covered: [lou, hiu) in u and, for
// bivariate checks, [lot, hit) in u_tau.  A pass claims equality only here.
struct ReportWindow {
  int64_t lou = 0, hiu = 0;
  int64_t lot = 0, hit = 0;
  bool bivariate = false;
};

// First differing cell of a failed check, with both coefficients rendered.
struct ReportMismatch {
  int64_t eu = 0;
  int64_t et = 0;  // 0 for univariate checks
  std::string lhs, rhs;
};

struct Report {
  std::string name;
  bool pass = false;
  ReportWindow window;
  std::optional<ReportMismatch> mismatch;
  std::string note;
};

// One line of text: "[PASS]/[FAIL] name  u[..,..) ... note".
std::string render(const Report& r);

// --- identity batteries ------------------------------------------------
// Each builds its own Workspace from the field, so distinct checks can run
// on distinct threads.  Failure is a Report, not an exception; exceptions
// signal unusable parameters (e.g. WindowEmpty) or internal errors.

// Theta images of the two uniformizers in closed form, and both stated
// values of the weight-2 kernel at the cusp 0.
std::vector<Report> check_theta_closed_forms(const Field& F, int64_t prec);

// The weight-raising derivations: the two classical images, the two
// Fricke-side images, and the product rule on random pairs.
std::vector<Report> check_partial_identities(const Field& F, int64_t prec);

// The theta/divisor formula on forms whose full divisor is known and has no
// zeros in the interior: theta(f) = -k*E*f + ord_0(f)*ET*f with integer
// multipliers taken mod p.
std::vector<Report> check_theta_divisor_formula(const Field& F, int64_t prec);

// Generating functions of one weight/type family: the constant-term identity
// (univariate), and the two-variable identity for the level-T and
// Fricke-stable families, cross-multiplied.  prec_u bounds the u-side
// series, prec_tau the tau-expansions of the family members.
// Throws WindowEmpty when (i_max, prec) leave nothing checkable.
std::vector<Report> check_generating_functions(const Field& F, int64_t k,
                                               int64_t l, int64_t i_max,
                                               int64_t prec_u,
                                               int64_t prec_tau);

// Valence congruences over F_p for forms with no interior zeros, in both the
// level-T version (both cusps) and the Fricke version (single cusp, applied
// to f * (f|W_T), which is always Fricke-fixed).
std::vector<Report> check_valence(const Field& F,
                                  const std::vector<GenExpr>& known_forms,
                                  int64_t prec);

// All generator monomials dT^a dW^b ET^c with a+b <= 3, c <= 2 — the stock
// of known-divisor forms the valence checks run on.
std::vector<GenExpr> valence_battery(const Field& F);

// --- suite driver --------------------------------------------------------

struct VerifyOptions {
  int64_t prec = 40;
  int64_t i_max = 4;
  std::vector<std::string> only;  // group names; empty = everything
  int jobs = 1;                   // worker threads across groups
};

// Names accepted by VerifyOptions::only, in the order the suite reports.
const std::vector<std::string>& verify_group_names();

// Runs the selected groups and returns every Report in a fixed order that
// does not depend on the number of worker threads.  Unknown group names
// throw DomainError.
std::vector<Report> run_verify(const Field& F, const VerifyOptions& opt);

}  // namespace dmf
