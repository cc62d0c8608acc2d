// SPDX-License-Identifier: Apache-2.0

// Predictor-corrector tracing of real branches of {P(t, u) = 0} and location
// of points with a prescribed surgery slope.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riley/rational.hpp"
#include "riley/riley.hpp"

namespace riley {

struct CurvePoint {
  Real t, u;
  Real residual;  // |P(t, u)|
  std::optional<Real> slope;
  Real dPdu, dPdt;
};

/// Evaluates every CurvePoint field at (t, u).
CurvePoint make_point(const NumericSystem& ns, const Real& t, const Real& u);

enum class Parameterization { by_t, by_u };
enum class Direction { increasing, decreasing };

std::string_view to_string(Parameterization p);
std::string_view to_string(Direction d);

/// Region a traced branch must stay inside. The two strips are the
/// containment regions of the two K(11, 3) branches through (t_min, 0):
///   psi: -t^-4 < u <= 0
///   phi: (sqrt(u) + sqrt(u + 4)) / 2 < t < (sqrt(u + 1) + sqrt(u + 5)) / 2, u >= 0
struct Band {
  enum class Kind { none, box, psi_strip, phi_strip };
  Kind kind = Kind::none;
  double t_lo = 0, t_hi = 0, u_lo = 0, u_hi = 0;

  static Band none() { return {}; }
  static Band psi() { return {Kind::psi_strip}; }
  static Band phi() { return {Kind::phi_strip}; }
  static Band box(double t_lo, double t_hi, double u_lo, double u_hi) {
    return {Kind::box, t_lo, t_hi, u_lo, u_hi};
  }

  bool contains(const Real& t, const Real& u) const;
  std::string describe() const;
};

struct TraceConfig {
  double step = 0.02;  // initial step, relative to max(1, |parameter|)
  double min_step = 1e-14;
  double max_step = 0.2;
  double growth = 1.5;  // applied after an easy corrector solve
  double shrink = 0.5;  // in (0, 1)
  bool adapt = true;
  // Steps scale with max(1, |parameter|); disable for evenly spaced traces.
  bool relative_step = true;
  double tol_residual = 1e-30;
  double tol_newton = 1e-40;
  int max_newton = 30;
  long max_steps = 100000;
  double guard_floor = 1e-20;
  double t_max = 1e3;
  double u_max = 1e6;     // bound on |u|
  double t_margin = 1e-6; // traces stop at t <= 1 + t_margin
  Band band;

  /// Tolerances scaled to the working precision: residual 10^(-0.6 digits),
  /// Newton 10^(-0.8 digits). 50 digits gives 1e-30 and 1e-40.
  static TraceConfig for_digits(unsigned digits);
  void validate() const;
};

enum class StopReason {
  max_steps,
  parameter_bound,
  band_exit,
  guard_degenerate,
  corrector_diverged,
  step_underflow,
  precision_limit,
};

std::string_view to_string(StopReason r);

struct Branch {
  std::vector<CurvePoint> points;  // points[0] is the seed
  Parameterization parameterization = Parameterization::by_t;
  Direction direction = Direction::increasing;
  Band band;
  CurvePoint seed;
  /// Smallest |guard derivative| over accepted points; the guard is dP/du
  /// for by_t and dP/dt for by_u.
  Real guard_min_abs;
  int guard_sign = 0;
  StopReason stop = StopReason::max_steps;
  unsigned digits = kDefaultDigits;
  double tol_residual = 0;
  /// Largest accepted parameter step (absolute).
  Real max_param_step;

  const Real& parameter(const CurvePoint& p) const {
    return parameterization == Parameterization::by_t ? p.t : p.u;
  }
};

/// Largest real root t > 1 of P(t, 0), isolated exactly and refined to the
/// working precision. Throws NoRealSeed.
CurvePoint seed_psi(const NumericSystem& ns);

/// Points (t, 0) for every real root t > 1 of P(t, 0).
std::vector<CurvePoint> seeds_u_zero(const NumericSystem& ns);
/// Points (t, (t - t^-1)^2 - 1) for every real root t > 1 of P(t, (t - t^-1)^2 - 1).
std::vector<CurvePoint> seeds_gap_one(const NumericSystem& ns);

struct ScanRect {
  double t_lo = 1.05, t_hi = 5, u_lo = -2, u_hi = 10;
  int nt = 20, nu = 40;
};

/// Coarse sign-change scan along vertical lines t = const; each bracket is
/// refined in u to a curve point.
std::vector<CurvePoint> scan_seeds(const NumericSystem& ns, const ScanRect& rect);

/// Throws GuardDegenerate when the guard vanishes at the seed and
/// InvalidArgument when the seed is off the curve or outside the band.
/// Ends of the trace (folds, band exits, bounds) are reported in Branch::stop.
Branch trace_branch(const NumericSystem& ns, const CurvePoint& seed, const TraceConfig& cfg,
                    Parameterization param, Direction dir);

struct SlopeSpan {
  Real inf, sup;
  bool monotonic = true;
};

SlopeSpan slope_span(const Branch& branch);

/// Point on the branch whose slope equals r, found by bisection on the
/// branch parameter and polished by Newton on (P, slope residual).
/// Throws OutOfRange when r lies outside the observed slope span.
CurvePoint solve_slope(const Branch& branch, const NumericSystem& ns, const Rational& r);

/// Newton on the pair (P = 0, slope_residual = 0) from (t, u).
/// Throws CorrectorDiverged when the tolerance is not met.
CurvePoint polish_slope_point(const NumericSystem& ns, const Real& t, const Real& u,
                              const Real& r, double tol, int max_iter = 60);

/// The four traces from the primary seed (both parameterizations, both
/// directions), skipping those whose guard vanishes at the seed or that do
/// not leave the seed.
std::vector<Branch> standard_branches(const NumericSystem& ns, const TraceConfig& cfg);

/// CSV with header t,u,residual,slope,dPdu,dPdt.
std::string branch_csv(const Branch& branch);

}  // namespace riley
