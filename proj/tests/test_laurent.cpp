// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include <boost/math/constants/constants.hpp>

#include "riley/error.hpp"
#include "riley/laurent.hpp"
#include "riley/realpoly.hpp"
#include "riley/riley.hpp"

using namespace riley;

namespace {

BivarPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> te(-4, 4), ud(0, 3), c(-9, 9), n(1, 6);
  BivarPoly p;
  for (int i = n(rng); i > 0; --i) p.add_term(te(rng), ud(rng), c(rng));
  return p;
}

const BivarPoly T = BivarPoly::t(), Ti = BivarPoly::t_inv(), U = BivarPoly::u();

}  // namespace

TEST_SUITE("laurent") {
  TEST_CASE("base matrices") {
    const auto& bm = base_matrices();
    CHECK(bm.C.det() == BivarPoly::constant(1));
    CHECK(bm.D.det() == BivarPoly::constant(1));
    BivarPoly s = t_minus_t_inv();
    CHECK(bm.X.det() == U - s * s);
    CHECK((bm.X * bm.C - bm.D * bm.X).is_zero());
    CHECK((bm.X * bm.D - bm.C * bm.X).is_zero());
    CHECK(bm.C * bm.C_inv == Mat2::identity());
    CHECK(bm.D * bm.D_inv == Mat2::identity());
    CHECK(power_of_C(3) == bm.C * bm.C * bm.C);
    CHECK(power_of_C(-2) == bm.C_inv * bm.C_inv);
    CHECK(power_of_C(0) == Mat2::identity());
  }

  TEST_CASE("W for the trefoil") {
    Mat2 w = word_matrix(validate_knot(3, 1));
    CHECK(w.a == T * T - U);
    CHECK(w.b == Ti);
    CHECK(w.c == -(U * Ti));
    CHECK(w.d == Ti * Ti);
    CHECK(entries(validate_knot(3, 1))->A == T * T - U);
  }

  TEST_CASE("entry identities for K(11, 3)") {
    auto k = validate_knot(11, 3);
    auto e = entries(k);
    CHECK(e->Cc == -(U * e->B));
    CHECK(e->A * e->Dd + U * e->B * e->B == BivarPoly::constant(1));
    CHECK(e->A * e->Dd - e->B * e->Cc == BivarPoly::constant(1));
    CHECK(entries(validate_knot(5, 3))->A.u_degree() == 2);
    CHECK(entries(k).get() == entries(k).get());
  }

  TEST_CASE("balanced splitting and u = 0 triangularity for p <= 13") {
    for (const auto& k : all_knots_up_to(13)) {
      CHECK(word_matrix(k) == word_matrix_balanced(k));
      CHECK(word_matrix(k, true) == word_matrix_balanced(k, true));
      auto e = entries(k);
      CHECK(e->Cc.substitute_u(BivarPoly()).is_zero());
      CHECK(e->Cc + U * e->B == BivarPoly());
      CHECK(e->A.max_t_exp() <= k.p() - 1);
      CHECK(e->A.min_t_exp() >= -(k.p() - 1));
    }
  }

  TEST_CASE("ring axioms on random triples") {
    std::mt19937 rng(20240611);
    for (int i = 0; i < 200; ++i) {
      BivarPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == BivarPoly());
    }
  }

  TEST_CASE("substitution, inversion and derivatives") {
    BivarPoly p = T * T * U + Ti * U * U + BivarPoly::constant(3);
    CHECK(p.substitute_u(T) == T * T * T + T + BivarPoly::constant(3));
    CHECK(p.invert_t() == Ti * Ti * U + T * U * U + BivarPoly::constant(3));
    CHECK(p.d_du() == T * T + BivarPoly::monomial(-1, 1, 2));
    CHECK(p.t_d_dt() == BivarPoly::monomial(2, 1, 2) - Ti * U * U);
    CHECK(p.d_dt() == BivarPoly::monomial(1, 1, 2) - Ti * Ti * U * U);
    UPoly at1 = p.at_unit_t(1), atm1 = p.at_unit_t(-1);
    CHECK(at1 == UPoly::monomial(2) + UPoly::monomial(1) + UPoly::constant(3));
    CHECK(atm1 == -UPoly::monomial(2) + UPoly::monomial(1) + UPoly::constant(3));
    CHECK(UPoly::monomial(3, 2).derivative() == UPoly::monomial(2, 6));
    CHECK(UPoly::monomial(2, 1).evaluate(Integer(-3)) == 9);
  }

  TEST_CASE("canonical text round trip") {
    BivarPoly p = Ti * Ti + BivarPoly::monomial(1, 2, -7);
    CHECK(p.to_string() == "t^-2*u^0:1 t^1*u^2:-7");
    CHECK(BivarPoly::parse(p.to_string()) == p);
    CHECK(BivarPoly().to_string() == "0");
    CHECK(BivarPoly::parse("0").is_zero());
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
      BivarPoly q = random_poly(rng);
      CHECK(BivarPoly::parse(q.to_string()) == q);
    }
    for (const char* bad : {"t^1", "t^1*u^0:", "t^1*u^-1:3", "x", "t^1*u^0:1  t^2*u^0:1",
                            "t^2*u^0:1 t^1*u^0:1", "t^1*u^0:0"}) {
      CHECK_THROWS_AS(BivarPoly::parse(bad), Error);
    }
  }

  TEST_CASE("real evaluation") {
    PrecisionScope scope(50);
    BivarPoly P = riley_system(validate_knot(3, 1))->P;
    CHECK(eval_real(P, Real(2), Real(0)).value == Real("3.25"));
    BivarPoly P11 = riley_system(validate_knot(11, 3))->P;
    for (const char* ts : {"1.3", "2", "7.25"}) {
      Real t(ts), s = t - 1 / t;
      Evaluation e = eval_real(P11, t, s * s);
      CHECK(abs(e.value - 1) <= e.error_bound);
      CHECK(e.error_bound < Real("1e-35"));
    }
    CHECK(eval_real(BivarPoly(), Real(2), Real(5)).value == 0);
    CHECK_THROWS_AS(eval_real(P, Real(0), Real(1)), Error);
  }

  TEST_CASE("unit-circle evaluation") {
    PrecisionScope scope(50);
    const Real pi = boost::math::constants::pi<Real>();
    BivarPoly P = riley_system(validate_knot(3, 1))->P;
    for (const char* us : {"0", "-1.5", "2"}) {
      Real theta = pi / 5, u(us);
      auto [re, im] = eval_unit_circle(P, theta, u);
      CHECK(abs(re - (2 * cos(2 * theta) - 1 - u)) < Real("1e-45"));
      CHECK(abs(im) < Real("1e-45"));
    }
    auto [re, im] = eval_unit_circle(P, pi / 2, Real(0));
    CHECK(abs(re + 3) < Real("1e-45"));
    CHECK(abs(im) < Real("1e-45"));
    BivarPoly P11 = riley_system(validate_knot(11, 3))->P;
    auto [re11, im11] = eval_unit_circle(P11, Real("0.7"), Real("0.3"));
    (void)re11;
    CHECK(abs(im11) < Real("1e-40"));
  }

  TEST_CASE("precision scope restores the default") {
    unsigned before = current_digits();
    {
      PrecisionScope s(120);
      CHECK(current_digits() == 120);
    }
    CHECK(current_digits() == before);
    CHECK(format_real(Real("1.5"), 5) == "1.50000e+00");
    CHECK_THROWS_AS(parse_real("abc"), Error);
  }
}
