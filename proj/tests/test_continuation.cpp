// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"

using namespace riley;
using fixtures::code_of;

TEST_SUITE("continuation") {
  TEST_CASE("seeds") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    CurvePoint s = seed_psi(ns);
    CHECK(abs(s.t - fixtures::t_min_closed_form()) < Real("1e-45"));
    CHECK(s.u == 0);
    REQUIRE(s.slope);
    CHECK(abs(*s.slope) < Real("1e-40"));
    CHECK(seeds_u_zero(ns).size() == 1);
    auto gap = seeds_gap_one(ns);
    REQUIRE(gap.size() == 1);
    CHECK(abs(gap[0].t - Real("1.5977179965809695153")) < Real("1e-18"));

    NumericSystem tre(riley_system(validate_knot(3, 1)));
    CHECK(code_of([&] { seed_psi(tre); }) == ErrorCode::NoRealSeed);
    NumericSystem fig(riley_system(validate_knot(5, 3)));
    CurvePoint f = seed_psi(fig);
    CHECK(abs(f.t - (1 + sqrt(Real(5))) / 2) < Real("1e-45"));
  }

  TEST_CASE("psi branch stays in its strip with a negative guard") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    Branch b = fixtures::psi_branch(ns, Band::none());
    CHECK(b.points.size() > 20);
    CHECK(b.stop == StopReason::parameter_bound);
    for (const auto& p : b.points) {
      CHECK(fixtures::in_psi_strip(p.t, p.u));
      CHECK(p.residual <= Real("1e-30"));
      CHECK(p.dPdu < 0);
    }
    Real t_min = fixtures::t_min_closed_form();
    for (const char* ts : {"0", "0.01", "0.5", "2", "10", "100"}) {
      Real t = t_min + Real(ts);
      CHECK(ns.P_value(t, Real(0)) <= Real("1e-45"));
      CHECK(ns.P_value(t, -1 / (t * t * t * t)) > 0);
    }
  }

  TEST_CASE("phi branch stays in its strip") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    Branch b = fixtures::phi_branch(ns, Band::none());
    CHECK(b.points.size() > 20);
    int sign = b.points.front().dPdt < 0 ? -1 : 1;
    for (const auto& p : b.points) {
      CHECK(fixtures::in_phi_strip(p.t, p.u));
      CHECK((p.dPdt < 0 ? -1 : 1) == sign);
    }
  }

  TEST_CASE("trace spans") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    TraceConfig cfg = TraceConfig::for_digits(50);
    cfg.t_max = 50;
    Branch psi = trace_branch(ns, seed_psi(ns), cfg, Parameterization::by_t, Direction::increasing);
    SlopeSpan s = slope_span(psi);
    CHECK(s.inf < Real("-3.99"));
    CHECK(abs(s.sup) < Real("1e-30"));
    CHECK(s.monotonic);

    cfg = TraceConfig::for_digits(50);
    cfg.u_max = 1e4;
    Branch phi = trace_branch(ns, seed_psi(ns), cfg, Parameterization::by_u, Direction::increasing);
    SlopeSpan f = slope_span(phi);
    CHECK(f.sup > Real("7.9"));
    CHECK(f.inf <= Real("1e-30"));
  }

  TEST_CASE("zero-length trace and single-point span") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    TraceConfig cfg = TraceConfig::for_digits(50);
    cfg.max_steps = 0;
    Branch b = trace_branch(ns, seed_psi(ns), cfg, Parameterization::by_t, Direction::increasing);
    CHECK(b.points.size() == 1);
    CHECK(b.stop == StopReason::max_steps);
    SlopeSpan s = slope_span(b);
    CHECK(s.inf == s.sup);
    CHECK(s.monotonic);
  }

  TEST_CASE("solve_slope") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    Branch psi = fixtures::psi_branch(ns);
    for (Rational r : {Rational(-1), Rational(-39, 10), Rational(-1, 7)}) {
      CurvePoint p = solve_slope(psi, ns, r);
      Real target = Real(r.numerator()) / r.denominator();
      CHECK(abs(*p.slope - target) <= Real("1e-30"));
      CHECK(p.residual <= Real("1e-30"));
      CHECK(abs(slope_residual(ns, p.t, p.u, r)) <= Real("1e-30"));
    }
    CurvePoint zero = solve_slope(psi, ns, Rational(0));
    CHECK(abs(zero.t - fixtures::t_min_closed_form()) < Real("1e-30"));
    CHECK(abs(zero.u) < Real("1e-30"));
    CHECK(code_of([&] { solve_slope(psi, ns, Rational(-4)); }) == ErrorCode::OutOfRange);
    CHECK(code_of([&] { solve_slope(psi, ns, Rational(1)); }) == ErrorCode::OutOfRange);
  }

  TEST_CASE("halving the step keeps certified slopes") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    TraceConfig cfg = TraceConfig::for_digits(50);
    cfg.adapt = false;
    cfg.relative_step = false;
    cfg.step = 0.02;
    cfg.t_max = 3;
    Branch coarse = trace_branch(ns, seed_psi(ns), cfg, Parameterization::by_t, Direction::increasing);
    cfg.step = 0.01;
    cfg.max_step = 0.01;
    Branch fine = trace_branch(ns, seed_psi(ns), cfg, Parameterization::by_t, Direction::increasing);
    REQUIRE(fine.points.size() >= 2 * coarse.points.size() - 2);
    std::size_t matched = 0;
    for (std::size_t i = 0; i < coarse.points.size(); ++i) {
      const auto& a = coarse.points[i];
      const auto& b = fine.points[2 * i];
      if (abs(a.t - b.t) > Real("1e-40")) continue;
      ++matched;
      CHECK(abs(*a.slope - *b.slope) < Real("1e-29"));
    }
    CHECK(matched + 1 >= coarse.points.size());
  }

  TEST_CASE("guard and seed checks") {
    PrecisionScope scope(50);
    NumericSystem fig(riley_system(validate_knot(5, 3)));
    TraceConfig cfg = TraceConfig::for_digits(50);
    CHECK(code_of([&] {
            trace_branch(fig, seed_psi(fig), cfg, Parameterization::by_t, Direction::increasing);
          }) == ErrorCode::GuardDegenerate);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    CurvePoint off = make_point(ns, Real(2), Real(0));
    CHECK(code_of([&] {
            trace_branch(ns, off, cfg, Parameterization::by_t, Direction::increasing);
          }) == ErrorCode::InvalidArgument);
    cfg.band = Band::box(2, 3, -1, 1);
    CHECK(code_of([&] {
            trace_branch(ns, seed_psi(ns), cfg, Parameterization::by_t, Direction::increasing);
          }) == ErrorCode::InvalidArgument);
    TraceConfig bad;
    bad.shrink = 1.5;
    CHECK(code_of([&] { bad.validate(); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("standard branches for the figure-eight reach +-4") {
    PrecisionScope scope(50);
    NumericSystem fig(riley_system(validate_knot(5, 3)));
    auto branches = standard_branches(fig, TraceConfig::for_digits(50));
    REQUIRE(branches.size() == 2);
    Real lo(0), hi(0);
    for (const auto& b : branches) {
      SlopeSpan s = slope_span(b);
      lo = std::min(lo, s.inf);
      hi = std::max(hi, s.sup);
    }
    CHECK(lo < Real("-3.99"));
    CHECK(lo > -4);
    CHECK(hi > Real("3.99"));
    CHECK(hi < 4);
  }

  TEST_CASE("grid scan") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    ScanRect rect;
    rect.nt = 8;
    rect.nu = 30;
    auto pts = scan_seeds(ns, rect);
    CHECK_FALSE(pts.empty());
    for (const auto& p : pts) CHECK(p.residual <= Real("1e-30"));
    rect.nt = 0;
    CHECK(code_of([&] { scan_seeds(ns, rect); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("CSV export") {
    PrecisionScope scope(50);
    NumericSystem ns(riley_system(validate_knot(11, 3)));
    Branch b = fixtures::psi_branch(ns);
    std::string csv = branch_csv(b);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,u,residual,slope,dPdu,dPdt");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == b.points.size());
    CHECK(branch_csv(b) == csv);
  }
}
