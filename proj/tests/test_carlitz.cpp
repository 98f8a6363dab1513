#include "doctest.h"

#include "dmf/carlitz.hpp"
#include "dmf/errors.hpp"

#include <vector>

using namespace dmf;

namespace {

// Component-wise sum of twisted polynomials (additive group structure).
TwistedPoly tw_add(const Field& F, const TwistedPoly& a, const TwistedPoly& b) {
  TwistedPoly out;
  out.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < out.c.size(); ++i) {
    TPoly x = i < a.c.size() ? a.c[i] : tp_zero();
    TPoly y = i < b.c.size() ? b.c[i] : tp_zero();
    out.c[i] = add(F, x, y);
  }
  while (!out.c.empty() && out.c.back().is_zero()) out.c.pop_back();
  return out;
}

// rho_a(1/u) as an exact Laurent series: sum of c_i * u^(-q^i).
USeries rho_at_u_inverse(const Field& F, const TwistedPoly& rho_a) {
  USeries s = us_zero(Var::U, kPrecInf);
  int64_t qi = 1;
  for (const TPoly& ci : rho_a.c) {
    if (!ci.is_zero()) {
      for (int64_t e = ci.low(); e <= ci.high(); ++e) {
        FqElem c = tp_coeff(ci, e);
        if (!F.is_zero(c)) {
          s = add(F, s, us_monomial(F, Var::U, tp_monomial(F, c, e), -qi));
        }
      }
    }
    qi *= F.q();
  }
  return s;
}

}  // namespace

TEST_CASE("the T-action is TX + X^q and extends multiplicatively") {
  Field F = Field::make(3);
  Carlitz C(F);

  TwistedPoly rT = C.rho(tp_T(F));
  REQUIRE(rT.c.size() == 2);
  CHECK(rT.c[0] == tp_T(F));
  CHECK(rT.c[1] == tp_const(F, 1));

  TwistedPoly r1 = C.rho(tp_const(F, 1));
  REQUIRE(r1.c.size() == 1);
  CHECK(r1.c[0] == tp_const(F, 1));

  // T^2 acts by T^2 X + (T^3 + T) X^3 + X^9.
  TwistedPoly rT2 = C.rho(mul(F, tp_T(F), tp_T(F)));
  REQUIRE(rT2.c.size() == 3);
  CHECK(rT2.c[0] == tp_T(F, 2));
  CHECK(rT2.c[1] == add(F, tp_T(F, 3), tp_T(F)));
  CHECK(rT2.c[2] == tp_const(F, 1));
}

TEST_CASE("the action is a ring homomorphism on F_q[T]") {
  Field F = Field::make(3);
  Carlitz C(F);

  // Collect every nonzero polynomial of degree <= 2 over F_3.
  std::vector<TPoly> all;
  for (int c0 = 0; c0 < 3; ++c0)
    for (int c1 = 0; c1 < 3; ++c1)
      for (int c2 = 0; c2 < 3; ++c2) {
        TPoly a = tp_const(F, c0);
        a = add(F, a, tp_T(F, 1, c1));
        a = add(F, a, tp_T(F, 2, c2));
        if (!a.is_zero()) all.push_back(a);
      }
  REQUIRE(all.size() == 26);

  SUBCASE("additive on every pair") {
    for (const TPoly& a : all)
      for (const TPoly& b : all) {
        TPoly s = add(F, a, b);
        if (s.is_zero()) continue;
        CHECK(C.rho(s) == tw_add(F, C.rho(a), C.rho(b)));
      }
  }

  SUBCASE("multiplicative on every monic pair, both orders") {
    std::vector<TPoly> monic;
    monic.push_back(tp_const(F, 1));
    for (int d = 1; d <= 2; ++d)
      for (const TPoly& a : monic_polys(F, d, false)) monic.push_back(a);
    REQUIRE(monic.size() == 13);
    for (const TPoly& a : monic)
      for (const TPoly& b : monic) {
        TwistedPoly composed = tw_compose(F, C.rho(a), C.rho(b));
        CHECK(C.rho(mul(F, a, b)) == composed);
        CHECK(composed == tw_compose(F, C.rho(b), C.rho(a)));
      }
  }

  SUBCASE("leading and constant coefficients") {
    for (const TPoly& a : all) {
      TwistedPoly ra = C.rho(a);
      CHECK(ra.c.front() == a);
      CHECK((int64_t)ra.c.size() == a.high() + 1);
    }
  }
}

TEST_CASE("extension-field scalars commute through the twist") {
  Field F = Field::make(3, 2);  // F_9
  Carlitz C(F);
  FqElem w = F.element(3);  // the generator adjoined to F_3
  TPoly a = add(F, tp_monomial(F, w, 1), tp_const(F, 1));  // wT + 1
  TPoly b = tp_T(F, 2);                                    // T^2
  TwistedPoly ab = tw_compose(F, C.rho(a), C.rho(b));
  TwistedPoly ba = tw_compose(F, C.rho(b), C.rho(a));
  CHECK(ab == ba);
  CHECK(C.rho(mul(F, a, b)) == ab);
}

TEST_CASE("u-expansion of u(az) for small monic a") {
  Field F = Field::make(3);
  Carlitz C(F);

  SUBCASE("a = 1 is the identity substitution") {
    const USeries& u1 = C.u_of(tp_const(F, 1), 9);
    CHECK(u1.val == 1);
    CHECK(u1.prec == 9);
    CHECK(u1.coeff(1) == tp_const(F, 1));
    for (int64_t e = 2; e < 9; ++e) CHECK(u1.coeff(e).is_zero());
  }

  SUBCASE("a = T") {
    const USeries& uT = C.u_of(tp_T(F), 9);
    CHECK(uT.val == 3);
    CHECK(uT.prec == 9);
    CHECK(uT.coeff(3) == tp_const(F, 1));
    CHECK(uT.coeff(5) == neg(F, tp_T(F)));
    CHECK(uT.coeff(7) == tp_T(F, 2));
    CHECK(uT.coeff(4).is_zero());
    CHECK(uT.coeff(6).is_zero());
    CHECK(uT.coeff(8).is_zero());
  }

  SUBCASE("a = T + 1") {
    TPoly a = add(F, tp_T(F), tp_const(F, 1));
    const USeries& ua = C.u_of(a, 7);
    CHECK(ua.val == 3);
    CHECK(ua.prec == 7);
    CHECK(ua.coeff(3) == tp_const(F, 1));
    CHECK(ua.coeff(5) == neg(F, a));
    CHECK(ua.coeff(4).is_zero());
    CHECK(ua.coeff(6).is_zero());
  }
}

TEST_CASE("u(az) inverts the a-action on 1/u") {
  // u_a = 1 / rho_a(1/u), so u_a * rho_a(1/u) = 1 at available precision,
  // and invert(u_a) agrees with the exact Laurent expansion of rho_a(1/u).
  struct CaseDef {
    int p, r;
    std::vector<std::vector<int>> coeffs;  // polynomial digits, ascending
  };
  for (int q : {3, 5, 9}) {
    Field F = q == 9 ? Field::make(3, 2) : Field::make(q);
    Carlitz C(F);
    std::vector<TPoly> as;
    as.push_back(tp_T(F));
    as.push_back(add(F, tp_T(F), tp_const(F, 1)));
    as.push_back(tp_T(F, 2));
    as.push_back(add(F, tp_T(F, 2), add(F, tp_T(F), tp_const(F, 1))));
    as.push_back(add(F, tp_T(F, 3), add(F, tp_T(F, 1, 2), tp_const(F, 1))));
    for (const TPoly& a : as) {
      int64_t d = a.high();
      int64_t qd = 1;
      for (int64_t i = 0; i < d; ++i) qd *= F.q();
      int64_t prec = 3 * qd + 5;
      const USeries& ua = C.u_of(a, prec);
      CHECK(ua.val == qd);
      CHECK(ua.coeff(qd) == tp_const(F, 1));
      for (size_t i = 0; i < ua.c.size(); ++i) CHECK(is_in_A(ua.c[i]));

      USeries laurent = rho_at_u_inverse(F, C.rho(a));
      USeries prod = mul(F, ua, laurent);
      CHECK(prod.coeff(0) == tp_const(F, 1));
      CHECK(!first_mismatch(prod, us_one(F, Var::U)).has_value());
      CHECK(!first_mismatch(invert(F, ua), laurent).has_value());
    }
  }
}

TEST_CASE("u(az) results are memoized per polynomial and precision") {
  Field F = Field::make(3);
  Carlitz C(F);
  const USeries& a1 = C.u_of(tp_T(F), 9);
  const USeries& a2 = C.u_of(tp_T(F), 9);
  CHECK(&a1 == &a2);
  const USeries& b = C.u_of(tp_T(F), 11);
  CHECK(b.prec == 11);
  CHECK(a1.prec == 9);
}

TEST_CASE("inputs outside the monic polynomial ring are rejected") {
  Field F = Field::make(3);
  Carlitz C(F);
  CHECK_THROWS_AS(C.rho(tp_zero()), DomainError);
  CHECK_THROWS_AS(C.rho(tp_T(F, -1)), DomainError);            // Laurent tail
  CHECK_THROWS_AS(C.u_of(tp_T(F, 1, 2), 9), DomainError);      // not monic
  CHECK_THROWS_AS(C.u_of(tp_T(F, -1), 9), DomainError);        // not in A
  CHECK_THROWS_AS(C.u_of(tp_zero(), 9), DomainError);
}
