// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include <boost/math/constants/constants.hpp>
#include <json.hpp>

#include "fixtures.hpp"
#include "riley/certify.hpp"

using namespace riley;
using fixtures::code_of;

namespace {

Real value(const Rational& r) { return Real(r.numerator()) / r.denominator(); }

}  // namespace

TEST_SUITE("certify") {
  TEST_CASE("Khoi classification, real t") {
    PrecisionScope scope(50);
    CHECK(classify_khoi(Real(2), Real("-0.01")) == KhoiClass::real_hyperbolic);
    CHECK(classify_khoi(Real("-3"), Real(5)) == KhoiClass::real_hyperbolic);
    CHECK(classify_khoi(Real(-1), Real(5)) == KhoiClass::t_minus_one);
    CHECK(code_of([] { classify_khoi(Real(1), Real(0)); }) == ErrorCode::Inadmissible);
    CHECK(code_of([] { classify_khoi(Real(0), Real(0)); }) == ErrorCode::Inadmissible);
  }

  TEST_CASE("Khoi classification, unit circle") {
    PrecisionScope scope(50);
    const Real pi = boost::math::constants::pi<Real>();
    CHECK(code_of([&] { classify_khoi_unit_circle(pi / 2, Real(-1)); }) == ErrorCode::Inadmissible);
    CHECK(classify_khoi_unit_circle(pi / 2, Real("-4.5")) == KhoiClass::unit_circle_elliptic);
    CHECK(classify_khoi_unit_circle(pi / 3, Real("0.1")) == KhoiClass::unit_circle_elliptic);
    CHECK(code_of([&] { classify_khoi_unit_circle(pi / 3, Real(0)); }) == ErrorCode::Inadmissible);
    Real theta("0.8");
    Real edge = -4 * sin(theta) * sin(theta);
    CHECK(code_of([&] { classify_khoi_unit_circle(theta, edge); }) == ErrorCode::Inadmissible);
    CHECK(classify_khoi_unit_circle(pi, Real(3)) == KhoiClass::t_minus_one);
    CHECK(code_of([&] { classify_khoi_unit_circle(Real(0), Real(3)); }) == ErrorCode::Inadmissible);
    CHECK(code_of([&] { classify_khoi_unit_circle(Real(4), Real(3)); }) == ErrorCode::InvalidArgument);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> th(0.01, 3.13), ud(-5, 3);
    for (int i = 0; i < 500; ++i) {
      Real t(th(rng)), u(ud(rng));
      Real e = -4 * sin(t) * sin(t);
      bool admissible = u > 0 || u < e;
      if (admissible)
        CHECK(classify_khoi_unit_circle(t, u) == KhoiClass::unit_circle_elliptic);
      else
        CHECK(code_of([&] { classify_khoi_unit_circle(t, u); }) == ErrorCode::Inadmissible);
    }
  }

  TEST_CASE("slope domain rejections") {
    PrecisionScope scope(50);
    CHECK(code_of([] { check_slope_domain(Real(1), Real("0.3")); }) == ErrorCode::Inadmissible);
    Real t("1.7"), s = t - 1 / t;
    CHECK(code_of([&] { check_slope_domain(t, s * s); }) == ErrorCode::Inadmissible);
    CHECK(code_of([&] { check_slope_domain(Real(-2), Real(0)); }) == ErrorCode::Inadmissible);
    check_slope_domain(t, Real(0));
  }

  TEST_CASE("inverse-integer membership") {
    CHECK(contains_inverse_integer(Real(-4), Real(0)));
    CHECK(contains_inverse_integer(Real("0.26"), Real("0.4")));   // 1/3
    CHECK_FALSE(contains_inverse_integer(Real("0.34"), Real("0.49")));
    CHECK_FALSE(contains_inverse_integer(Real("1.1"), Real(8)));
    CHECK(contains_inverse_integer(Real("0.9"), Real(8)));
    CHECK(contains_inverse_integer(Real("-0.6"), Real("-0.4")));  // -1/2
    CHECK_FALSE(contains_inverse_integer(Real(0), Real(0)));
  }

  TEST_CASE("certificates on K(11, 3)") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    Branch phi = fixtures::phi_branch(ns);
    Branch psi = fixtures::psi_branch(ns);
    CertifyConfig cfg = CertifyConfig::for_digits(50);
    CHECK(cfg.tol == doctest::Approx(1e-30));
    CHECK(cfg.recheck_tol == doctest::Approx(1e-60));

    CurvePoint one = solve_slope(phi, ns, Rational(1));
    SlopeCertificate c = make_certificate(ns, one, Rational(1), &phi, cfg);
    CHECK(c.lifting.family_contains_inverse_integer_slope);
    CHECK(c.lifting.peripheral_hyperbolic);
    CHECK(c.lifting.family_continuous);
    CHECK(c.khoi_class == KhoiClass::real_hyperbolic);
    CHECK(c.recheck_digits == 100);
    Revalidation rv = verify_certificate_json(certificate_json(c));
    CHECK(rv.ok);
    CHECK(rv.residual_P <= Real("1e-60"));

    SlopeCertificate z = make_certificate(ns, seed_psi(ns), Rational(0), &psi, cfg);
    CHECK(z.lifting.peripheral_hyperbolic);

    SlopeCertificate bare = make_certificate(ns, one, Rational(1), nullptr, cfg);
    CHECK_FALSE(bare.lifting.family_continuous);
    CHECK_FALSE(bare.branch.has_value());

    CurvePoint stale = one;
    stale.u += Real("1e-20");
    CHECK(code_of([&] { make_certificate(ns, stale, Rational(1), &phi, cfg); }) ==
          ErrorCode::RecheckFailed);
    CHECK(code_of([&] { make_certificate(ns, one, Rational(2), &phi, cfg); }) ==
          ErrorCode::RecheckFailed);
  }

  TEST_CASE("certificate JSON verification") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    Branch psi = fixtures::psi_branch(ns);
    CurvePoint p = solve_slope(psi, ns, Rational(-5, 2));
    std::string text = certificate_json(make_certificate(ns, p, Rational(-5, 2), &psi,
                                                         CertifyConfig::for_digits(50)));
    auto j = nlohmann::json::parse(text);
    CHECK(j["slope"]["num"] == -5);
    CHECK(j["slope"]["den"] == 2);
    CHECK(j["point"]["t"].is_string());
    CHECK(j["meta"]["tolerances"]["recheck"] == "1e-60");
    CHECK(j["khoi_class"] == "real_hyperbolic");

    auto tampered = j;
    std::string t = tampered["point"]["t"];
    t[10] = t[10] == '1' ? '2' : '1';
    tampered["point"]["t"] = t;
    CHECK(code_of([&] { verify_certificate_json(tampered.dump()); }) == ErrorCode::RecheckFailed);
    auto wrong_class = j;
    wrong_class["khoi_class"] = "t_minus_one";
    CHECK(code_of([&] { verify_certificate_json(wrong_class.dump()); }) == ErrorCode::RecheckFailed);
    CHECK(code_of([&] { verify_certificate_json("{"); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { verify_certificate_json("{}"); }) == ErrorCode::ParseError);
    auto zero_den = j;
    zero_den["slope"]["den"] = 0;
    CHECK(code_of([&] { verify_certificate_json(zero_den.dump()); }) == ErrorCode::ParseError);
  }

  TEST_CASE("rational peripheral identity") {
    PrecisionScope scope(50);
    CHECK(rational_peripheral_check(Real("2.5"), 7, 1) == 0);
    CHECK(rational_peripheral_check(Real("2.5"), -4, 1) == 0);
    CHECK(rational_peripheral_check(Real(2), 3, 2) <= Real("1e-40"));
    CHECK(code_of([] { rational_peripheral_check(Real(2), 4, 2); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { rational_peripheral_check(Real(2), 3, 0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { rational_peripheral_check(Real("0.5"), 3, 2); }) == ErrorCode::InvalidArgument);

    NumericSystem ns(riley_system(validate_knot(11, 3)));
    Branch psi = fixtures::psi_branch(ns);
    CurvePoint p = solve_slope(psi, ns, Rational(-3, 2));
    CHECK(peripheral_commutator(ns, p.t, p.u, -3, 2) <= Real("1e-25"));
    CHECK(peripheral_commutator(ns, p.t, p.u, 5, 3) <= Real("1e-25"));
    // Off the curve the commutator is visibly nonzero.
    CHECK(peripheral_commutator(ns, p.t, p.u + Real("0.01"), 5, 3) > Real("1e-6"));
  }

  TEST_CASE("interval reports") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    std::vector<Rational> samples;
    for (const char* s : {"-3.9", "-2", "-1", "-1/2", "1/3", "1", "1/1", "5/2", "7", "7.9"})
      samples.push_back(parse_rational(s));
    IntervalReport r = standard_report(ns, samples, TraceConfig::for_digits(50),
                                       CertifyConfig::for_digits(50));
    CHECK(r.certificates.size() == samples.size());
    CHECK(r.lo.value == "-4");
    CHECK(r.hi.value == "8");
    CHECK(r.lo.open);
    CHECK(r.hi.open);
    CHECK(r.lo.asymptotic);
    CHECK(r.hi.asymptotic);
    CHECK(r.irreducibility_basis == "non_torus_two_bridge");
    for (std::size_t i = 0; i < samples.size(); ++i) CHECK(r.certificates[i].slope == samples[i]);
    CHECK(report_json(r) == report_json(r));

    IntervalReport z = standard_report(ns, {Rational(0)}, TraceConfig::for_digits(50),
                                       CertifyConfig::for_digits(50));
    CHECK(z.zero_slope_note);
    CHECK(z.certificates.empty());

    NumericSystem tre(riley_system(validate_knot(3, 1)));
    CHECK(code_of([&] {
            standard_report(tre, {Rational(1)}, TraceConfig::for_digits(50), CertifyConfig::for_digits(50));
          }) == ErrorCode::TorusKnot);
    CHECK(code_of([&] {
            interval_report(tre, {}, {Rational(1)}, CertifyConfig::for_digits(50));
          }) == ErrorCode::TorusKnot);
    CHECK(code_of([&] {
            standard_report(ns, {Rational(8)}, TraceConfig::for_digits(50), CertifyConfig::for_digits(50));
          }) == ErrorCode::OutOfRange);
  }

  TEST_CASE("a truncated trace does not claim asymptotic endpoints") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    TraceConfig cfg = TraceConfig::for_digits(50);
    cfg.max_steps = 15;
    auto branches = standard_branches(ns, cfg);
    IntervalReport r = interval_report(ns, branches, {Rational(-1, 2)}, CertifyConfig::for_digits(50));
    CHECK_FALSE(r.lo.asymptotic);
    CHECK_FALSE(r.lo.open);
    CHECK_FALSE(r.hi.asymptotic);
  }

  TEST_CASE("transfer") {
    auto c = transfer_interval(1, Rational(-4), Rational(8));
    CHECK(c.lo == Rational(-4));
    CHECK(c.hi == Rational(8));
    auto c3 = transfer_interval(3, Rational(-4), Rational(8));
    CHECK(c3.lo == Rational(-12));
    CHECK(c3.hi == Rational(24));
    auto cm = transfer_interval(-1, Rational(-4), Rational(8));
    CHECK(cm.lo == Rational(-8));
    CHECK(cm.hi == Rational(4));
    CHECK(code_of([] { transfer_interval(-2, Rational(-4), Rational(8)); }) == ErrorCode::EvenD);
    CHECK(code_of([] { transfer_interval(0, Rational(-4), Rational(8)); }) == ErrorCode::EvenD);
    CHECK(code_of([] { transfer_interval(1, Rational(8), Rational(-4)); }) == ErrorCode::InvalidArgument);
    CHECK(transfer_slope(Rational(7, 2), 3) == Rational(7, 6));
    CHECK(transfer_slope(Rational(7, 2), -3) == Rational(-7, 6));

    WangFamilySpec spec{{{3, 1, 2}}, {1, 1}, {1, 1, 1}};
    auto f = transfer_interval(spec, Rational(-4), Rational(8));
    CHECK(f.d == 1);
    REQUIRE(f.knot.has_value());
    CHECK(f.fraction->entries.size() == 11);
    auto z = transfer_interval(WangFamilySpec{{{3, 1, 2}}, {0, 0}, {1, -1, 1}}, Rational(-4), Rational(8));
    CHECK(z.d == 3);
    CHECK_FALSE(z.fraction.has_value());
    CHECK(z.lo == Rational(-12));
    auto j = nlohmann::json::parse(transfer_json(z));
    CHECK(j["transferred_interval"]["lo"] == "-12");
    CHECK(j["slope_map"] == "p/q -> p/(3q)");
  }

  TEST_CASE("certificate slopes round-trip exactly") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    Branch phi = fixtures::phi_branch(ns);
    Rational r(5, 2);
    SlopeCertificate c = make_certificate(ns, solve_slope(phi, ns, r), r, &phi,
                                          CertifyConfig::for_digits(50));
    PrecisionScope fine(100);
    NumericSystem ns2(riley_system(validate_knot(11, 3)));
    Real s = slope_of_point(ns2, parse_real(c.t), parse_real(c.u));
    CHECK(abs(s - value(r)) < Real("1e-60"));
  }
}
