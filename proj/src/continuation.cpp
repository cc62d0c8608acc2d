// SPDX-License-Identifier: Apache-2.0

#include "riley/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "riley/error.hpp"

namespace riley {

CurvePoint make_point(const NumericSystem& ns, const Real& t, const Real& u) {
  CurvePoint p{t, u, abs(ns.P_value(t, u)), std::nullopt, ns.dP_du(t, u), ns.dP_dt(t, u)};
  try {
    p.slope = slope_of_point(ns, t, u);
  } catch (const Error&) {
    // No real slope at this point (t = 1 or nonpositive slope argument).
  }
  return p;
}

std::string_view to_string(Parameterization p) {
  return p == Parameterization::by_t ? "by_t" : "by_u";
}

std::string_view to_string(Direction d) {
  return d == Direction::increasing ? "increasing" : "decreasing";
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::max_steps: return "max_steps";
    case StopReason::parameter_bound: return "parameter_bound";
    case StopReason::band_exit: return "band_exit";
    case StopReason::guard_degenerate: return "guard_degenerate";
    case StopReason::corrector_diverged: return "corrector_diverged";
    case StopReason::step_underflow: return "step_underflow";
    case StopReason::precision_limit: return "precision_limit";
  }
  return "unknown";
}

bool Band::contains(const Real& t, const Real& u) const {
  switch (kind) {
    case Kind::none:
      return true;
    case Kind::box:
      return t >= t_lo && t <= t_hi && u >= u_lo && u <= u_hi;
    case Kind::psi_strip: {
      if (t <= 0) return false;
      Real t2 = t * t;
      return u > -1 / (t2 * t2) && u <= 0;
    }
    case Kind::phi_strip: {
      if (u < 0) return false;
      Real lo = (sqrt(u) + sqrt(u + 4)) / 2;
      Real hi = (sqrt(u + 1) + sqrt(u + 5)) / 2;
      return lo < t && t < hi;
    }
  }
  return false;
}

std::string Band::describe() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::psi_strip: return "psi: -t^-4 < u <= 0";
    case Kind::phi_strip:
      return "phi: (sqrt(u)+sqrt(u+4))/2 < t < (sqrt(u+1)+sqrt(u+5))/2, u >= 0";
    case Kind::box: {
      std::ostringstream os;
      os << "box: " << t_lo << " <= t <= " << t_hi << ", " << u_lo << " <= u <= " << u_hi;
      return os.str();
    }
  }
  return "unknown";
}

TraceConfig TraceConfig::for_digits(unsigned digits) {
  TraceConfig cfg;
  cfg.tol_residual = std::pow(10.0, -0.6 * digits);
  cfg.tol_newton = std::pow(10.0, -0.8 * digits);
  return cfg;
}

void TraceConfig::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(step > 0) || !(min_step > 0) || !(max_step >= step)) fail("trace steps must be positive with max_step >= step");
  if (!(shrink > 0 && shrink < 1)) fail("step shrink factor must lie in (0, 1)");
  if (!(growth >= 1)) fail("step growth factor must be >= 1");
  if (!(tol_residual > 0) || !(tol_newton > 0)) fail("tolerances must be positive");
  if (max_newton < 1 || max_steps < 0) fail("iteration limits must be positive");
  if (!(guard_floor > 0)) fail("guard floor must be positive");
  if (!(t_max > 1) || !(u_max > 0) || !(t_margin > 0)) fail("trace bounds must be positive");
}

namespace {

Real guard_of(const NumericSystem& ns, Parameterization param, const Real& t, const Real& u) {
  return param == Parameterization::by_t ? ns.dP_du(t, u) : ns.dP_dt(t, u);
}

struct Corrected {
  Real dep;
  int iterations = 0;
};

// Newton in the dependent variable with the parameter held fixed.
std::optional<Corrected> correct(const NumericSystem& ns, Parameterization param,
                                 const Real& s, Real dep, const TraceConfig& cfg) {
  for (int it = 1; it <= cfg.max_newton; ++it) {
    const Real& t = param == Parameterization::by_t ? s : dep;
    const Real& u = param == Parameterization::by_t ? dep : s;
    Real g = guard_of(ns, param, t, u);
    if (g == 0) return std::nullopt;
    Real delta = ns.P_value(t, u) / g;
    dep -= delta;
    if (!isfinite(dep)) return std::nullopt;
    if (abs(delta) <= cfg.tol_newton * std::max(Real(1), Real(abs(dep)))) return Corrected{dep, it};
  }
  return std::nullopt;
}

int sign_of(const Real& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

Branch trace_branch(const NumericSystem& ns, const CurvePoint& seed_in, const TraceConfig& cfg,
                    Parameterization param, Direction dir) {
  cfg.validate();
  const bool by_t = param == Parameterization::by_t;
  const Real tol(cfg.tol_residual);

  CurvePoint seed = make_point(ns, seed_in.t, seed_in.u);
  Evaluation ev = ns.P(seed.t, seed.u);
  if (abs(ev.value) > tol)
    throw Error(ErrorCode::InvalidArgument, "trace seed is not on the curve P = 0");
  if (!cfg.band.contains(seed.t, seed.u))
    throw Error(ErrorCode::InvalidArgument, "trace seed lies outside the band " + cfg.band.describe());
  Real guard = by_t ? seed.dPdu : seed.dPdt;
  if (abs(guard) < Real(cfg.guard_floor))
    throw Error(ErrorCode::GuardDegenerate,
                std::string("guard derivative ") + (by_t ? "dP/du" : "dP/dt") +
                    " vanishes at the seed (possible fold)");

  Branch b;
  b.parameterization = param;
  b.direction = dir;
  b.band = cfg.band;
  b.seed = seed;
  b.points.push_back(seed);
  b.guard_min_abs = abs(guard);
  b.guard_sign = sign_of(guard);
  b.digits = ns.digits();
  b.tol_residual = cfg.tol_residual;
  b.max_param_step = Real(0);

  const int sgn = dir == Direction::increasing ? 1 : -1;
  const Real s_hi = by_t ? Real(cfg.t_max) : Real(cfg.u_max);
  const Real s_lo = by_t ? Real(1 + cfg.t_margin) : Real(-cfg.u_max);
  const Real t_floor(1 + cfg.t_margin), t_ceiling(cfg.t_max);

  Real s = by_t ? seed.t : seed.u;
  Real dep = by_t ? seed.u : seed.t;
  double h = cfg.step;
  StopReason last_failure = StopReason::step_underflow;
  long accepted = 0;
  b.stop = StopReason::max_steps;

  while (accepted < cfg.max_steps) {
    if ((sgn > 0 && s >= s_hi) || (sgn < 0 && s <= s_lo)) {
      b.stop = StopReason::parameter_bound;
      break;
    }
    const Real scale = cfg.relative_step ? std::max(Real(1), Real(abs(s))) : Real(1);
    Real s_new = s + sgn * Real(h) * scale;
    if (sgn > 0 && s_new > s_hi) s_new = s_hi;
    if (sgn < 0 && s_new < s_lo) s_new = s_lo;

    const Real& t0 = by_t ? s : dep;
    const Real& u0 = by_t ? dep : s;
    Real p_s = by_t ? ns.dP_dt(t0, u0) : ns.dP_du(t0, u0);
    Real p_dep = guard_of(ns, param, t0, u0);
    Real dep_pred = dep - (s_new - s) * p_s / p_dep;

    auto fail = [&](StopReason why) {
      last_failure = why;
      h *= cfg.shrink;
    };

    auto c = correct(ns, param, s_new, dep_pred, cfg);
    if (!c) {
      fail(StopReason::corrector_diverged);
    } else {
      const Real& t1 = by_t ? s_new : c->dep;
      const Real& u1 = by_t ? c->dep : s_new;
      if (!by_t && (t1 > t_ceiling || t1 <= t_floor)) {
        b.stop = StopReason::parameter_bound;
        break;
      }
      if (by_t && abs(u1) > Real(cfg.u_max)) {
        b.stop = StopReason::parameter_bound;
        break;
      }
      Evaluation e = ns.P(t1, u1);
      Real g1 = guard_of(ns, param, t1, u1);
      const Real predicted_move = abs(dep_pred - dep) + abs(s_new - s);
      if (e.error_bound > tol) {
        b.stop = StopReason::precision_limit;
        break;
      } else if (abs(e.value) > tol) {
        fail(StopReason::corrector_diverged);
      } else if (abs(c->dep - dep_pred) > predicted_move * Real(0.3)) {
        fail(StopReason::corrector_diverged);
      } else if (sign_of(g1) != b.guard_sign || abs(g1) < Real(cfg.guard_floor)) {
        fail(StopReason::guard_degenerate);
      } else if (!cfg.band.contains(t1, u1)) {
        fail(StopReason::band_exit);
      } else {
        CurvePoint pt = make_point(ns, t1, u1);
        b.guard_min_abs = std::min(b.guard_min_abs, Real(abs(g1)));
        b.max_param_step = std::max(b.max_param_step, Real(abs(s_new - s)));
        b.points.push_back(std::move(pt));
        s = s_new;
        dep = c->dep;
        ++accepted;
        if (cfg.adapt && c->iterations <= 4) h = std::min(h * cfg.growth, cfg.max_step);
        continue;
      }
    }
    if (h < cfg.min_step) {
      b.stop = last_failure;
      break;
    }
  }
  return b;
}

// ---------------------------------------------------------------- seeds

namespace {

// Roots t > 1 of a polynomial in t alone (u-degree 0).
std::vector<Real> roots_above_one(const BivarPoly& laurent_in_t, double margin) {
  if (laurent_in_t.is_zero() || laurent_in_t.u_degree() > 0)
    throw Error(ErrorCode::InvalidArgument, "expected a nonzero Laurent polynomial in t");
  const int shift = -laurent_in_t.min_t_exp();
  IntPoly dense(static_cast<std::size_t>(laurent_in_t.max_t_exp() + shift + 1), Integer(0));
  for (const auto& [e, up] : laurent_in_t.terms()) dense[static_cast<std::size_t>(e + shift)] = up.coeff(0);
  std::vector<Real> out;
  for (const Real& r : real_roots(dense))
    if (r > 1 + Real(margin)) out.push_back(r);
  return out;
}

}  // namespace

std::vector<CurvePoint> seeds_u_zero(const NumericSystem& ns) {
  std::vector<CurvePoint> out;
  for (const Real& t : roots_above_one(ns.system().P.substitute_u(BivarPoly()), 1e-12))
    out.push_back(make_point(ns, t, Real(0)));
  return out;
}

std::vector<CurvePoint> seeds_gap_one(const NumericSystem& ns) {
  const BivarPoly s = t_minus_t_inv();
  const BivarPoly g = s * s - BivarPoly::constant(1);
  std::vector<CurvePoint> out;
  for (const Real& t : roots_above_one(ns.system().P.substitute_u(g), 1e-12)) {
    Real st = t - 1 / t;
    out.push_back(make_point(ns, t, st * st - 1));
  }
  return out;
}

CurvePoint seed_psi(const NumericSystem& ns) {
  auto seeds = seeds_u_zero(ns);
  if (seeds.empty())
    throw Error(ErrorCode::NoRealSeed, "P(t, 0) has no real root t > 1");
  return seeds.back();
}

std::vector<CurvePoint> scan_seeds(const NumericSystem& ns, const ScanRect& rect) {
  if (rect.nt < 1 || rect.nu < 1 || !(rect.t_hi > rect.t_lo) || !(rect.u_hi > rect.u_lo))
    throw Error(ErrorCode::InvalidArgument, "degenerate scan rectangle");
  TraceConfig cfg = TraceConfig::for_digits(ns.digits());
  std::vector<CurvePoint> out;
  for (int i = 0; i <= rect.nt; ++i) {
    Real t = Real(rect.t_lo) + (Real(rect.t_hi) - Real(rect.t_lo)) * i / rect.nt;
    if (t == 1) continue;
    Real ua(rect.u_lo);
    Real pa = ns.P_value(t, ua);
    for (int j = 1; j <= rect.nu; ++j) {
      Real ub = Real(rect.u_lo) + (Real(rect.u_hi) - Real(rect.u_lo)) * j / rect.nu;
      Real pb = ns.P_value(t, ub);
      if (sign_of(pa) * sign_of(pb) < 0) {
        // Bisection to a coarse bracket, then Newton in u.
        Real lo = ua, hi = ub, plo = pa;
        for (int k = 0; k < 60; ++k) {
          Real mid = (lo + hi) / 2;
          Real pm = ns.P_value(t, mid);
          if (sign_of(pm) == sign_of(plo)) {
            lo = mid;
            plo = pm;
          } else {
            hi = mid;
          }
        }
        if (auto c = correct(ns, Parameterization::by_t, t, (lo + hi) / 2, cfg)) {
          CurvePoint pt = make_point(ns, t, c->dep);
          if (pt.residual <= Real(cfg.tol_residual)) out.push_back(std::move(pt));
        }
      }
      ua = ub;
      pa = pb;
    }
  }
  return out;
}

// ---------------------------------------------------------------- slopes

SlopeSpan slope_span(const Branch& branch) {
  SlopeSpan span;
  bool any = false;
  bool up = true, down = true;
  std::optional<Real> prev;
  for (const CurvePoint& p : branch.points) {
    if (!p.slope) continue;
    const Real& s = *p.slope;
    if (!any) {
      span.inf = span.sup = s;
      any = true;
    } else {
      span.inf = std::min(span.inf, s);
      span.sup = std::max(span.sup, s);
    }
    if (prev) {
      if (s < *prev) up = false;
      if (s > *prev) down = false;
    }
    prev = s;
  }
  if (!any) throw Error(ErrorCode::InvalidArgument, "branch has no points with a defined slope");
  span.monotonic = up || down;
  return span;
}

CurvePoint polish_slope_point(const NumericSystem& ns, const Real& t0, const Real& u0,
                              const Real& r, double tol, int max_iter) {
  Real t = t0, u = u0;
  const Real tol_r(tol);
  const Real tiny = unit_roundoff() * 1024;
  for (int it = 0; it < max_iter; ++it) {
    Real P = ns.P_value(t, u);
    Real S;
    std::pair<Real, Real> gradS;
    try {
      S = slope_residual(ns, t, u, r);
      gradS = slope_residual_gradient(ns, t, u, r);
    } catch (const Error& e) {
      throw Error(ErrorCode::CorrectorDiverged,
                  std::string("slope polish left the admissible region: ") + e.what());
    }
    Real Pt = ns.dP_dt(t, u), Pu = ns.dP_du(t, u);
    Real det = Pt * gradS.second - Pu * gradS.first;
    if (det == 0) throw Error(ErrorCode::CorrectorDiverged, "singular Jacobian in slope polish");
    Real dt = -(P * gradS.second - Pu * S) / det;
    Real du = -(Pt * S - gradS.first * P) / det;
    t += dt;
    u += du;
    if (abs(dt) <= tiny * std::max(Real(1), Real(abs(t))) &&
        abs(du) <= tiny * std::max(Real(1), Real(abs(u))))
      break;
  }
  CurvePoint pt = make_point(ns, t, u);
  Real S = slope_residual(ns, t, u, r);
  if (pt.residual > tol_r || abs(S) > tol_r)
    throw Error(ErrorCode::CorrectorDiverged, "slope polish did not reach the residual tolerance");
  return pt;
}

CurvePoint solve_slope(const Branch& branch, const NumericSystem& ns, const Rational& r) {
  const Real target = Real(r.numerator()) / Real(r.denominator());
  const Real tol(branch.tol_residual);
  SlopeSpan span = slope_span(branch);
  if (target < span.inf - tol || target > span.sup + tol)
    throw Error(ErrorCode::OutOfRange,
                "slope " + to_string(r) + " lies outside the traced span [" +
                    format_real(span.inf, 12) + ", " + format_real(span.sup, 12) + "]");

  const bool by_t = branch.parameterization == Parameterization::by_t;
  const auto& pts = branch.points;
  TraceConfig cfg = TraceConfig::for_digits(ns.digits());
  cfg.tol_residual = branch.tol_residual;

  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!pts[k].slope) continue;
    if (abs(*pts[k].slope - target) <= tol)
      return polish_slope_point(ns, pts[k].t, pts[k].u, target, branch.tol_residual);
    if (k + 1 >= pts.size() || !pts[k + 1].slope) continue;
    const Real da = *pts[k].slope - target, db = *pts[k + 1].slope - target;
    if (sign_of(da) * sign_of(db) > 0) continue;

    Real a = branch.parameter(pts[k]), bpar = branch.parameter(pts[k + 1]);
    Real dep_a = by_t ? pts[k].u : pts[k].t, dep_b = by_t ? pts[k + 1].u : pts[k + 1].t;
    int sa = sign_of(da);
    Real t_best = pts[k].t, u_best = pts[k].u;
    for (int it = 0; it < 200; ++it) {
      Real mid = (a + bpar) / 2;
      Real guess = (dep_a + dep_b) / 2;
      auto c = correct(ns, branch.parameterization, mid, guess, cfg);
      if (!c) throw Error(ErrorCode::CorrectorDiverged, "corrector failed during slope bisection");
      Real t = by_t ? mid : c->dep, u = by_t ? c->dep : mid;
      Real sm = slope_of_point(ns, t, u) - target;
      t_best = t;
      u_best = u;
      if (abs(sm) < Real(1e-20)) break;
      if (sign_of(sm) == sa) {
        a = mid;
        dep_a = c->dep;
      } else {
        bpar = mid;
        dep_b = c->dep;
      }
    }
    return polish_slope_point(ns, t_best, u_best, target, branch.tol_residual);
  }
  throw Error(ErrorCode::OutOfRange, "no traced segment brackets slope " + to_string(r));
}

std::vector<Branch> standard_branches(const NumericSystem& ns, const TraceConfig& cfg) {
  const CurvePoint seed = seed_psi(ns);
  std::vector<Branch> out;
  for (Parameterization p : {Parameterization::by_t, Parameterization::by_u}) {
    for (Direction d : {Direction::increasing, Direction::decreasing}) {
      try {
        Branch b = trace_branch(ns, seed, cfg, p, d);
        if (b.points.size() > 1) out.push_back(std::move(b));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GuardDegenerate) throw;
      }
    }
  }
  return out;
}

std::string branch_csv(const Branch& branch) {
  std::ostringstream os;
  os << "t,u,residual,slope,dPdu,dPdt\n";
  const unsigned d = branch.digits;
  for (const CurvePoint& p : branch.points) {
    os << format_real(p.t, d) << ',' << format_real(p.u, d) << ',' << format_real(p.residual, 6)
       << ',' << (p.slope ? format_real(*p.slope, d) : std::string()) << ','
       << format_real(p.dPdu, d) << ',' << format_real(p.dPdt, d) << '\n';
  }
  return os.str();
}

}  // namespace riley
