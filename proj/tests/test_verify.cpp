#include "doctest.h"

#include "dmf/basis.hpp"
#include "dmf/biseries.hpp"
#include "dmf/errors.hpp"
#include "dmf/verify.hpp"

#include <map>
#include <string>
#include <vector>

using namespace dmf;

namespace {

std::string joined(const std::vector<Report>& reps) {
  std::string out;
  for (const auto& r : reps) out += render(r) + "\n";
  return out;
}

struct Win {
  int64_t lou, hiu, lot, hit;
};

// The report's window must cover the reference rectangle; the report itself
// vouches for equality on everything it covers.
void check_window_covers(const Report& r, const Win& w) {
  CHECK(r.pass);
  CHECK(r.window.bivariate);
  CHECK(r.window.lou <= w.lou);
  CHECK(r.window.hiu >= w.hiu);
  CHECK(r.window.lot <= w.lot);
  CHECK(r.window.hit >= w.hit);
}

}  // namespace

TEST_CASE("full suite passes at q = 3 and q = 5") {
  for (int64_t p : {3, 5}) {
    Field F = Field::make(p);
    VerifyOptions opt;
    opt.prec = 40;
    opt.i_max = 4;
    auto reps = run_verify(F, opt);
    CHECK(reps.size() > 30);
    for (const auto& r : reps) {
      CHECK_MESSAGE(r.pass, "q=", p, " ", render(r));
    }
    // Reports arrive grouped, in the declared group order.
    size_t gi = 0;
    const auto& names = verify_group_names();
    for (const auto& r : reps) {
      while (gi < names.size() &&
             r.name.compare(0, names[gi].size(), names[gi]) != 0)
        ++gi;
      REQUIRE_MESSAGE(gi < names.size(), "out-of-order report: ", r.name);
    }
  }
}

TEST_CASE("suite output is identical across thread counts and reruns") {
  Field F = Field::make(3);
  VerifyOptions opt;
  opt.prec = 36;
  opt.i_max = 3;
  opt.jobs = 1;
  std::string a = joined(run_verify(F, opt));
  opt.jobs = 4;
  std::string b = joined(run_verify(F, opt));
  opt.jobs = 13;
  std::string c = joined(run_verify(F, opt));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(!a.empty());
}

TEST_CASE("group filter selects exactly the named group") {
  Field F = Field::make(3);
  VerifyOptions opt;
  opt.prec = 30;
  opt.only = {"structural"};
  auto reps = run_verify(F, opt);
  CHECK(reps.size() == 6);
  for (const auto& r : reps) {
    CHECK(r.name.substr(0, 11) == "structural/");
    CHECK(r.pass);
  }
  opt.only = {"no_such_group"};
  CHECK_THROWS_AS(run_verify(F, opt), DomainError);
}

TEST_CASE("two-variable windows cover the reference rectangles at q = 3") {
  Field F = Field::make(3);
  // Reference rectangles come from an independent implementation run at the
  // same precision; exact leading coefficients there pin the same identity.
  auto reps44 = check_generating_functions(F, 0, 0, 4, 46, 46);
  check_window_covers(reps44[1], Win{3, 13, 0, 28});
  auto reps47 = check_generating_functions(F, 0, 0, 7, 46, 46);
  check_window_covers(reps47[1], Win{3, 19, 0, 22});

  auto repsA = check_generating_functions(F, 4, 0, 4, 46, 46);
  check_window_covers(repsA[1], Win{3, 13, 4, 38});
  check_window_covers(repsA[2], Win{0, 10, 2, 37});
  auto repsB = check_generating_functions(F, 4, 0, 7, 46, 46);
  check_window_covers(repsB[1], Win{3, 19, 4, 32});
  check_window_covers(repsB[2], Win{0, 16, 2, 31});

  auto repsC = check_generating_functions(F, 4, 1, 4, 46, 46);
  check_window_covers(repsC[1], Win{3, 13, 3, 37});
  auto repsD = check_generating_functions(F, 4, 1, 7, 46, 46);
  check_window_covers(repsD[1], Win{3, 19, 3, 31});

  // The univariate constant-term identity rides along in every call.
  CHECK(reps44[0].pass);
  CHECK(repsA[0].pass);
  CHECK(repsC[0].pass);

  // At i_max = 7 the two-variable windows reach at least 16 x 15.
  CHECK(repsB[1].window.hiu - repsB[1].window.lou >= 16);
  CHECK(repsB[1].window.hit - repsB[1].window.lot >= 15);
  CHECK(repsB[2].window.hiu - repsB[2].window.lou >= 16);
  CHECK(repsB[2].window.hit - repsB[2].window.lot >= 15);
}

TEST_CASE("two-variable windows cover the reference rectangle at q = 5") {
  Field F = Field::make(5);
  auto reps = check_generating_functions(F, 0, 0, 4, 46, 46);
  check_window_covers(reps[1], Win{5, 25, 0, 10});
}

TEST_CASE("weight-0 kernel sum is antisymmetric under swapping the cusps") {
  Field F = Field::make(3);
  Workspace W(F);
  const int64_t q = F.q();
  const int64_t prec = 40, I = 6;
  const Generators& G = W.generators(prec);
  auto els = canonical_basis(W, 0, 0, I, prec);

  std::map<std::pair<int64_t, int64_t>, TPoly> cs;
  int64_t ptau = kPrecInf;
  for (const auto& el : els) {
    ptau = std::min(ptau, el.series.prec);
    const int64_t eu = (q - 1) * el.i + 1;
    for (int64_t j = 0; j < static_cast<int64_t>(el.series.c.size()); ++j)
      if (!el.series.c[j].is_zero()) cs[{eu, el.series.val + j}] = el.series.c[j];
  }
  const int64_t eI1 = (q - 1) * (I + 1) + 1;
  BiSeries Sum = bi_make(std::move(cs), eI1, ptau);

  // (jT(z) - jT(tau)) * (Sum + Sum with the variables exchanged)
  //   = ET(z) jT(z) - ET(tau) jT(tau),
  // because multiplying the one-sided identity through by the jT-difference
  // leaves ET^q / dT^2 = ET * jT.
  BiSeries D = sub(F, bi_u(G.jT), bi_tau(G.jT));
  BiSeries P = mul(F, D, add(F, Sum, swap_vars(Sum)));
  USeries ETjT = mul(F, G.ET, G.jT);
  BiSeries R = sub(F, bi_u(ETjT), bi_tau(ETjT));

  BiWindow w = common_window(P, R);
  REQUIRE(!w.empty());
  CHECK(!first_mismatch(P, R).has_value());

  // Literal antisymmetry of the product on the central square.
  int64_t lo = std::max(w.lou, w.lot), hi = std::min(w.hiu, w.hit);
  REQUIRE(hi - lo >= 8);
  for (int64_t eu = lo; eu < hi; ++eu)
    for (int64_t et = lo; et < hi; ++et)
      CHECK(P.coeff(eu, et) == neg(F, P.coeff(et, eu)));
}

TEST_CASE("a starved window raises the dedicated error") {
  Field F = Field::make(3);
  CHECK_THROWS_AS(check_generating_functions(F, 4, 1, 0, 4, 4), WindowEmpty);
  CHECK_THROWS_AS(check_generating_functions(F, 0, 0, -1, 40, 40),
                  DomainError);
}

TEST_CASE("valence checks notice a form with zeros away from the cusps") {
  Field F = Field::make(3);
  // dW - T^q dT vanishes somewhere in the interior, so the two-cusp count
  // cannot balance: ord_inf + ord_0 = 0 while k = q - 1 is nonzero mod p.
  GenExpr g1 = sub(F, ge_monomial(F, tp_const(F, 1), 0, 1, 0),
                   ge_monomial(F, tp_T(F, F.q()), 1, 0, 0));
  auto reps = check_valence(F, {g1}, 30);
  REQUIRE(reps.size() == 2);
  CHECK(!reps[0].pass);
  CHECK(reps[0].note.find("violation") != std::string::npos);
  // Its Fricke product misses the balance for the same reason.
  CHECK(!reps[1].pass);

  // The stock battery passes both counts.
  auto ok = check_valence(F, valence_battery(F), 30);
  CHECK(ok[0].pass);
  CHECK(ok[1].pass);
  CHECK(valence_battery(F).size() == 30);
}

TEST_CASE("report rendering carries verdict, window, and first mismatch") {
  Report r;
  r.name = "demo/check";
  r.pass = false;
  r.window = ReportWindow{-2, 14, 0, 0, false};
  r.mismatch = ReportMismatch{5, 0, "T + 1", "T"};
  r.note = "example";
  std::string s = render(r);
  CHECK(s.find("[FAIL] demo/check") == 0);
  CHECK(s.find("u[-2,14)") != std::string::npos);
  CHECK(s.find("mismatch at u^5") != std::string::npos);
  CHECK(s.find("T + 1 != T") != std::string::npos);
  CHECK(s.find("[example]") != std::string::npos);

  r.pass = true;
  r.mismatch.reset();
  r.window.bivariate = true;
  r.window.lot = 1;
  r.window.hit = 9;
  std::string t = render(r);
  CHECK(t.find("[PASS] demo/check") == 0);
  CHECK(t.find("u[-2,14) x u_tau[1,9)") != std::string::npos);
}
