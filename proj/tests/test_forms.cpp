#include "doctest.h"

#include "dmf/errors.hpp"
#include "dmf/forms.hpp"

#include <random>
#include <vector>

using namespace dmf;

namespace {

struct FrozenRow {
  int64_t e;                                        // u-exponent
  std::vector<std::pair<int64_t, int64_t>> terms;   // (T-exponent, digit)
};

TPoly row_poly(const Field& F, const std::vector<std::pair<int64_t, int64_t>>& terms) {
  TPoly out = tp_zero();
  for (auto [te, digit] : terms)
    out = add(F, out, tp_monomial(F, F.from_int(digit), te));
  return out;
}

// Exact comparison of every coefficient below `upto` against a frozen table;
// exponents absent from the table must vanish.
void check_table(const Field& F, const USeries& s, int64_t expected_val,
                 int64_t upto, const std::vector<FrozenRow>& rows) {
  REQUIRE(s.prec >= upto);
  CHECK(s.val == expected_val);
  size_t next = 0;
  for (int64_t e = s.val; e < upto; ++e) {
    TPoly expected = tp_zero();
    if (next < rows.size() && rows[next].e == e)
      expected = row_poly(F, rows[next++].terms);
    CHECK_MESSAGE(s.coeff(e) == expected, "exponent ", e);
  }
  CHECK(next == rows.size());
}

GenExpr random_expr(const Field& F, std::mt19937& rng, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int64_t> expdist(-3, 3);
  std::uniform_int_distribution<int64_t> tdist(-2, 2);
  std::uniform_int_distribution<int> cdist(1, (int)F.q() - 1);
  GenExpr e = ge_zero();
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    TPoly c = tp_monomial(F, F.element(cdist(rng)), tdist(rng));
    e = add(F, e, ge_monomial(F, c, expdist(rng), expdist(rng), expdist(rng)));
  }
  return e;
}

}  // namespace

TEST_CASE("generator tables match their expansions at q = 3") {
  Field F = Field::make(3);
  Workspace W(F);
  const Generators& G = W.generators(46);

  check_table(F, G.E, 1, 14,
              {{1, {{0, 1}}}, {5, {{0, 1}}}, {9, {{0, 1}}},
               {11, {{1, 1}, {3, 2}}}, {13, {{0, 1}}}});
  check_table(F, G.ET, 1, 14,
              {{1, {{0, 1}}}, {3, {{1, 2}}}, {5, {{0, 1}, {2, 1}}},
               {7, {{3, 2}}}, {9, {{0, 1}, {4, 1}}},
               {11, {{1, 1}, {3, 2}, {5, 2}}}, {13, {{0, 1}, {6, 1}}}});
  check_table(F, G.g1, 0, 14, {{0, {{0, 1}}}, {2, {{1, 1}, {3, 2}}}});
  check_table(F, G.dT, 2, 14,
              {{2, {{0, 1}}}, {6, {{0, 2}}}, {8, {{1, 2}}}, {12, {{3, 1}}}});
  check_table(F, G.dW, 0, 14,
              {{0, {{0, 1}}}, {2, {{1, 1}}}, {6, {{3, 2}}}, {8, {{4, 2}}},
               {12, {{6, 1}}}});
  check_table(F, G.jT, -2, 14,
              {{-2, {{0, 1}}}, {0, {{1, 1}}}, {2, {{0, 1}}},
               {4, {{1, 2}, {3, 2}}}, {6, {{0, 1}, {2, 1}, {4, 2}}},
               {8, {{3, 1}}}, {10, {{4, 2}, {6, 1}}},
               {12, {{1, 1}, {3, 1}, {5, 1}, {7, 1}}}});
  check_table(F, G.jTp, -2, 14,
              {{-2, {{0, 1}}}, {0, {{1, 2}}}, {2, {{0, 1}, {2, 1}}},
               {4, {{1, 2}, {3, 1}}}, {6, {{0, 1}}}, {8, {{3, 1}}},
               {10, {{4, 2}, {6, 1}}},
               {12, {{1, 1}, {3, 1}, {5, 1}, {7, 1}}}});

  CHECK(G.E.prec == 46);
  CHECK(G.dT.prec == 46);
  CHECK(G.jT.prec == 46 - 2 * 2);
  CHECK(G.jTp.prec == 46 - 3);
}

TEST_CASE("generator tables match their expansions at q = 5") {
  Field F = Field::make(5);
  Workspace W(F);
  const Generators& G = W.generators(46);

  check_table(F, G.E, 1, 42,
              {{1, {{0, 1}}}, {17, {{0, 1}}}, {33, {{0, 1}}},
               {37, {{1, 1}, {5, 4}}}});
  check_table(F, G.ET, 1, 42,
              {{1, {{0, 1}}}, {5, {{1, 4}}}, {9, {{2, 1}}}, {13, {{3, 4}}},
               {17, {{0, 1}, {4, 1}}}, {21, {{5, 4}}}, {25, {{6, 1}}},
               {29, {{7, 4}}}, {33, {{0, 1}, {8, 1}}},
               {37, {{1, 1}, {5, 4}, {9, 4}}}, {41, {{10, 1}}}});
  check_table(F, G.g1, 0, 42, {{0, {{0, 1}}}, {4, {{1, 1}, {5, 4}}}});
  check_table(F, G.dT, 4, 42,
              {{4, {{0, 1}}}, {20, {{0, 4}}}, {24, {{1, 4}}}, {40, {{5, 1}}}});
  check_table(F, G.dW, 0, 42,
              {{0, {{0, 1}}}, {4, {{1, 1}}}, {20, {{5, 4}}}, {24, {{6, 4}}},
               {40, {{10, 1}}}});
  check_table(F, G.jT, -4, 38,
              {{-4, {{0, 1}}}, {0, {{1, 1}}}, {12, {{0, 1}}},
               {16, {{1, 2}, {5, 4}}}, {20, {{2, 1}, {6, 4}}},
               {28, {{0, 1}}}, {32, {{1, 3}, {5, 3}}},
               {36, {{2, 3}, {6, 1}, {10, 1}}}});
  check_table(F, G.jTp, -4, 41,
              {{-4, {{0, 1}}}, {0, {{1, 1}, {2, 3}}}, {4, {{4, 1}}},
               {8, {{5, 4}}}, {12, {{0, 1}, {6, 1}}},
               {16, {{1, 2}, {5, 4}, {7, 4}}},
               {20, {{2, 1}, {4, 4}, {6, 4}, {8, 1}}}, {28, {{0, 1}}},
               {32, {{1, 3}, {5, 3}}}, {36, {{2, 3}, {6, 1}, {10, 1}}},
               {40, {{3, 1}, {7, 3}, {11, 1}}}});
}

TEST_CASE("leading expansions take the documented shape at q = 3 and q = 5") {
  for (int q : {3, 5}) {
    Field F = Field::make(q);
    Workspace W(F);
    const Generators& G = W.generators(3 * q * (q - 1));
    CAPTURE(q);

    // E = u + u^((q-1)^2+1) + nothing in between
    CHECK(G.E.val == 1);
    CHECK(G.E.coeff(1) == tp_const(F, 1));
    CHECK(G.E.coeff((q - 1) * (q - 1) + 1) == tp_const(F, 1));
    for (int64_t e = 2; e <= (q - 1) * (q - 1); ++e)
      CHECK(G.E.coeff(e).is_zero());

    // ET = u - T u^q + ...
    CHECK(G.ET.coeff(1) == tp_const(F, 1));
    CHECK(G.ET.coeff(q) == tp_T(F, 1, -1));

    // dT = u^(q-1) - u^(q(q-1)), nothing in between
    CHECK(G.dT.val == q - 1);
    CHECK(G.dT.coeff(q - 1) == tp_const(F, 1));
    CHECK(G.dT.coeff(q * (q - 1)) == tp_const(F, -1));
    for (int64_t e = q; e < q * (q - 1); ++e) CHECK(G.dT.coeff(e).is_zero());

    // dW = 1 + T u^(q-1) - T^q u^(q(q-1)), nothing in between
    CHECK(G.dW.val == 0);
    CHECK(G.dW.coeff(0) == tp_const(F, 1));
    CHECK(G.dW.coeff(q - 1) == tp_T(F));
    CHECK(G.dW.coeff(q * (q - 1)) == tp_T(F, q, -1));
    for (int64_t e = 1; e < q - 1; ++e) CHECK(G.dW.coeff(e).is_zero());
    for (int64_t e = q; e < q * (q - 1); ++e) CHECK(G.dW.coeff(e).is_zero());

    // jT = u^(1-q) + T + O(u^(q-1)) with an empty gap
    CHECK(G.jT.val == 1 - q);
    CHECK(G.jT.coeff(1 - q) == tp_const(F, 1));
    CHECK(G.jT.coeff(0) == tp_T(F));
    for (int64_t e = 2 - q; e < 0; ++e) CHECK(G.jT.coeff(e).is_zero());

    // jTp = u^(1-q) + (2(T - T^m) - T) + O(u^(q-1)), m = (q-1)/2
    int64_t m = (q - 1) / 2;
    TPoly cst = sub(F, sub(F, tp_T(F, 1, 2), tp_T(F, m, 2)), tp_T(F));
    CHECK(G.jTp.val == 1 - q);
    CHECK(G.jTp.coeff(1 - q) == tp_const(F, 1));
    CHECK(G.jTp.coeff(0) == cst);
    for (int64_t e = 2 - q; e < 0; ++e) CHECK(G.jTp.coeff(e).is_zero());
  }
}

TEST_CASE("structural identities among the generators") {
  for (int q : {3, 5}) {
    Field F = Field::make(q);
    Workspace W(F);
    const Generators& G = W.generators(46);
    CAPTURE(q);

    // ET^(q-1) = dW * dT
    CHECK(!first_mismatch(pow(F, G.ET, q - 1), mul(F, G.dW, G.dT)).has_value());

    // g1 = dW - T^q dT  and  g1(Tz) = dW - T dT
    CHECK(!first_mismatch(G.g1, sub(F, G.dW, scale(F, G.dT, tp_T(F, q))))
               .has_value());
    CHECK(!first_mismatch(G.g1Tz, sub(F, G.dW, scale(F, G.dT, tp_T(F))))
               .has_value());

    // The T-multiples slice of the Eisenstein sum is T*E(Tz): recompute the
    // right-hand side through composition with u(Tz).
    const USeries& uT = W.carlitz().u_of(tp_T(F), 46);
    USeries route2 = scale(F, substitute(F, G.E, uT), tp_T(F));
    CHECK(!first_mismatch(G.ETz, route2).has_value());

    // All non-inverted generators have coefficients in A.
    for (const USeries* s : {&G.E, &G.ETz, &G.ET, &G.g1, &G.g1Tz, &G.dT, &G.dW})
      for (const TPoly& c : s->c) CHECK((c.is_zero() || is_in_A(c)));
  }
}

TEST_CASE("generator tables are consistent across precisions") {
  Field F = Field::make(3);
  Workspace W(F);
  const Generators& lo = W.generators(10);
  const Generators& hi = W.generators(46);
  CHECK(!first_mismatch(lo.E, hi.E).has_value());
  CHECK(!first_mismatch(lo.dT, hi.dT).has_value());
  CHECK(!first_mismatch(lo.jT, hi.jT).has_value());
  CHECK(lo.E.prec == 10);
  // Memoization returns the identical table object.
  CHECK(&W.generators(10) == &lo);
}

TEST_CASE("symbolic generator expressions evaluate to the generator series") {
  Field F = Field::make(3);
  Workspace W(F);
  const Generators& G = W.generators(40);

  GenExpr one = ge_const(F, tp_const(F, 1));
  GenExpr jt = ge_monomial(F, tp_const(F, 1), -1, 1, 0);  // dW/dT
  CHECK(!first_mismatch(genexpr_to_series(W, jt, 40), G.jT).has_value());

  // (dW - T^m dT)^2 * ET^(1-q)
  GenExpr wseed = sub(F, ge_monomial(F, tp_const(F, 1), 0, 1, 0),
                      ge_monomial(F, tp_T(F, 1), 1, 0, 0));
  GenExpr jtp = mul(F, mul(F, wseed, wseed),
                    ge_monomial(F, tp_const(F, 1), 0, 0, 1 - 3));
  CHECK(!first_mismatch(genexpr_to_series(W, jtp, 40), G.jTp).has_value());

  // ET^(q-1) - dW dT is exactly zero.
  GenExpr zero_expr = sub(F, ge_monomial(F, tp_const(F, 1), 0, 0, 2),
                          ge_monomial(F, tp_const(F, 1), 1, 1, 0));
  CHECK(genexpr_to_series(W, zero_expr, 40).is_zero());

  // jT - T has the shape u^(1-q) + O(u^(q-1)): zero constant term.
  GenExpr f01 = sub(F, jt, ge_const(F, tp_T(F)));
  USeries s01 = genexpr_to_series(W, f01, 40);
  CHECK(s01.val == -2);
  CHECK(s01.coeff(0).is_zero());
  CHECK(s01.coeff(-1).is_zero());

  CHECK(genexpr_to_series(W, ge_zero(), 40).is_zero());
  CHECK(!first_mismatch(genexpr_to_series(W, one, 40), us_one(F, Var::U))
             .has_value());

  // Negative powers of non-monomials are rejected; of unit monomials allowed.
  CHECK_THROWS_AS(pow(F, wseed, -1), DomainError);
  GenExpr et_inv = pow(F, ge_monomial(F, tp_T(F, 2), 0, 0, 1), -2);
  REQUIRE(et_inv.terms.size() == 1);
  CHECK(et_inv.terms.begin()->first == std::array<int64_t, 3>{0, 0, -2});
  CHECK(et_inv.terms.begin()->second == tp_T(F, -4));
}

TEST_CASE("the Fricke involution acts by the generator substitution rules") {
  Field F = Field::make(3);
  const int64_t m = 1;  // (q-1)/2

  GenExpr dt = ge_monomial(F, tp_const(F, 1), 1, 0, 0);
  GenExpr dw = ge_monomial(F, tp_const(F, 1), 0, 1, 0);
  GenExpr et = ge_monomial(F, tp_const(F, 1), 0, 0, 1);

  CHECK(wT_image(F, dt) == ge_monomial(F, tp_T(F, -m, -1), 0, 1, 0));
  CHECK(wT_image(F, dw) == ge_monomial(F, tp_T(F, m, -1), 1, 0, 0));
  CHECK(wT_image(F, et) == ge_monomial(F, tp_const(F, -1), 0, 0, 1));

  // ET^(q-1) is fixed; jT maps to T^(q-1) * dT/dW.
  GenExpr etq1 = pow(F, et, 2);
  CHECK(wT_image(F, etq1) == etq1);
  GenExpr jt = ge_monomial(F, tp_const(F, 1), -1, 1, 0);
  CHECK(wT_image(F, jt) == ge_monomial(F, tp_T(F, 2), 1, -1, 0));

  std::mt19937 rng(20260817);
  for (int trial = 0; trial < 60; ++trial) {
    GenExpr a = random_expr(F, rng, 4);
    GenExpr b = random_expr(F, rng, 3);
    CHECK(wT_image(F, wT_image(F, a)) == a);
    CHECK(wT_image(F, mul(F, a, b)) == mul(F, wT_image(F, a), wT_image(F, b)));
  }

  // Series-level consistency: the image of jT evaluates to T^(q-1)/jT.
  Workspace W(F);
  USeries img = genexpr_to_series(W, wT_image(F, jt), 30);
  USeries expect = scale(F, invert(F, W.generators(30).jT), tp_T(F, 2));
  CHECK(!first_mismatch(img, expect).has_value());
}

TEST_CASE("weight and type of homogeneous expressions") {
  Field F = Field::make(5);
  GenExpr dt = ge_monomial(F, tp_const(F, 1), 1, 0, 0);
  GenExpr dw = ge_monomial(F, tp_const(F, 1), 0, 1, 0);
  GenExpr et = ge_monomial(F, tp_const(F, 1), 0, 0, 1);

  CHECK(weight_type(F, dt) == std::pair<int64_t, int64_t>{4, 0});
  CHECK(weight_type(F, dw) == std::pair<int64_t, int64_t>{4, 0});
  CHECK(weight_type(F, et) == std::pair<int64_t, int64_t>{2, 1});
  CHECK(weight_type(F, add(F, dt, dw)) == std::pair<int64_t, int64_t>{4, 0});

  GenExpr jt = ge_monomial(F, tp_const(F, 1), -1, 1, 0);
  CHECK(weight_type(F, jt) == std::pair<int64_t, int64_t>{0, 0});
  GenExpr jtp_tail = ge_monomial(F, tp_const(F, 1), 2, 0, 1 - 5);
  CHECK(weight_type(F, jtp_tail) == std::pair<int64_t, int64_t>{0, 0});

  CHECK_THROWS_AS(weight_type(F, add(F, dt, et)), DomainError);
  CHECK_THROWS_AS(weight_type(F, ge_zero()), DomainError);
}

TEST_CASE("cusp orders through the Fricke image") {
  Field F = Field::make(3);
  Workspace W(F);
  GenExpr dt = ge_monomial(F, tp_const(F, 1), 1, 0, 0);
  GenExpr dw = ge_monomial(F, tp_const(F, 1), 0, 1, 0);
  GenExpr et = ge_monomial(F, tp_const(F, 1), 0, 0, 1);

  CHECK(cusp_orders(W, dt, 30) == std::pair<int64_t, int64_t>{2, 0});
  CHECK(cusp_orders(W, dw, 30) == std::pair<int64_t, int64_t>{0, 2});
  CHECK(cusp_orders(W, et, 30) == std::pair<int64_t, int64_t>{1, 1});

  GenExpr mixed = mul(F, pow(F, dt, 2), mul(F, dw, pow(F, et, 3)));
  CHECK(cusp_orders(W, mixed, 30) == std::pair<int64_t, int64_t>{7, 5});

  GenExpr zero_expr = sub(F, pow(F, et, 2), mul(F, dt, dw));
  CHECK_THROWS_AS(cusp_orders(W, zero_expr, 30), AllZeroAtPrecision);
}

TEST_CASE("weight-raising derivations satisfy their closed identities") {
  for (int q : {3, 5}) {
    Field F = Field::make(q);
    Workspace W(F);
    const Generators& G = W.generators(40);
    const int64_t m = (q - 1) / 2;
    CAPTURE(q);

    CHECK(partial_k(W, G.dT, q - 1, 40).is_zero());
    CHECK(!first_mismatch(partial_k(W, G.dW, q - 1, 40),
                          neg(F, mul(F, G.dW, G.ET)))
               .has_value());
    CHECK(partial_plus(W, pow(F, G.ET, q - 1), 2 * (q - 1), 40).is_zero());

    USeries wseed = sub(F, G.dW, scale(F, G.dT, tp_T(F, m)));
    USeries lhs = partial_plus(W, wseed, q - 1, 40);
    TPoly neg_half = tp_from(F, F.neg(F.inv(F.from_int(2))));
    USeries rhs = scale(
        F, mul(F, add(F, G.dW, scale(F, G.dT, tp_T(F, m))), G.ET), neg_half);
    CHECK(!first_mismatch(lhs, rhs).has_value());
  }
}

TEST_CASE("weight/type parameter validation") {
  Field F3 = Field::make(3);
  Field F5 = Field::make(5);

  CHECK(form_params(F3, 4, 0).r == 2);
  CHECK(form_params(F3, 4, 1).r == 1);
  CHECK(form_params(F3, 0, 0).r == 0);
  CHECK(form_params(F3, -2, 0).r == -1);
  CHECK(form_params(F3, 2, 1).r == 0);
  CHECK(form_params(F5, 8, 2).r == 1);

  CHECK_THROWS_AS(form_params(F5, 6, 2), TypeWeightMismatch);
  CHECK_THROWS_AS(form_params(F3, 3, 0), TypeWeightMismatch);
  CHECK_THROWS_AS(form_params(F3, 4, 2), TypeWeightMismatch);  // l > q-2
  CHECK_THROWS_AS(form_params(F3, 4, -1), TypeWeightMismatch);

  CHECK(r_of(F3, 4, 0) == 2);
  CHECK(d_plus_of(F3, 4, 0) == 2);   // r even, l even
  CHECK(d_plus_of(F3, 4, 1) == 1);   // r odd
  CHECK(d_plus_of(F3, 0, 0) == 1);
  CHECK(d_plus_of(F3, 2, 1) == 0);   // r = 0 even, l odd
  CHECK(d_plus_of(F3, -2, 0) == 0);  // r = -1 odd
  CHECK(d_plus_of(F5, 8, 2) == 1);
}

TEST_CASE("symbolic expressions render readably") {
  Field F = Field::make(3);
  GenExpr jt = ge_monomial(F, tp_const(F, 1), -1, 1, 0);
  CHECK(render(F, jt) == "dT^-1*dW");
  GenExpr f01 = sub(F, jt, ge_const(F, tp_T(F)));
  CHECK(render(F, f01) == "dT^-1*dW - T");
  GenExpr w = sub(F, ge_monomial(F, tp_const(F, 1), 0, 1, 0),
                  ge_monomial(F, tp_T(F), 1, 0, 0));
  CHECK(render(F, w) == "dW - T*dT");
  CHECK(render(F, ge_zero()) == "0");
  GenExpr c = ge_const(F, add(F, tp_T(F), tp_const(F, 1)));
  CHECK(render(F, mul(F, c, w)) == "(1 + T)*dW + (-T - T^2)*dT");
}
