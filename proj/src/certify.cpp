// SPDX-License-Identifier: Apache-2.0

#include "riley/certify.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include <boost/math/constants/constants.hpp>
#include <json.hpp>

#include "riley/error.hpp"

namespace riley {

using nlohmann::json;

std::string_view to_string(KhoiClass c) {
  switch (c) {
    case KhoiClass::real_hyperbolic: return "real_hyperbolic";
    case KhoiClass::unit_circle_elliptic: return "unit_circle_elliptic";
    case KhoiClass::t_minus_one: return "t_minus_one";
  }
  return "unknown";
}

namespace {

KhoiClass parse_khoi(std::string_view s) {
  for (KhoiClass c : {KhoiClass::real_hyperbolic, KhoiClass::unit_circle_elliptic,
                      KhoiClass::t_minus_one})
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::ParseError, "unknown khoi_class '" + std::string(s) + "'");
}

Real rational_value(const Rational& r) { return Real(r.numerator()) / Real(r.denominator()); }

std::string tol_text(double tol) {
  std::ostringstream os;
  os << std::setprecision(6) << tol;
  return os.str();
}

}  // namespace

KhoiClass classify_khoi(const Real& t, const Real& u) {
  (void)u;
  if (t == 0) throw Error(ErrorCode::Inadmissible, "t = 0 is not a representation parameter");
  if (t == 1) throw Error(ErrorCode::Inadmissible, "t = 1 admits no solutions");
  if (t == -1) return KhoiClass::t_minus_one;
  return KhoiClass::real_hyperbolic;
}

KhoiClass classify_khoi_unit_circle(const Real& theta, const Real& u) {
  const Real pi = boost::math::constants::pi<Real>();
  if (theta < 0 || theta > pi)
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, pi]");
  if (theta == 0) throw Error(ErrorCode::Inadmissible, "t = 1 admits no solutions");
  if (theta == pi) return KhoiClass::t_minus_one;
  Real s = sin(theta);
  Real edge = -4 * s * s;
  if (u > 0 || u < edge) return KhoiClass::unit_circle_elliptic;
  throw Error(ErrorCode::Inadmissible,
              "unit-circle point with u in [-4 sin^2(theta), 0] is not conjugate into SL(2, R)");
}

void check_slope_domain(const Real& t, const Real& u) {
  if (t <= 0) throw Error(ErrorCode::Inadmissible, "slope equations need real t > 0");
  if (t == 1) throw Error(ErrorCode::Inadmissible, "t = 1 admits no solutions");
  if (on_gap_locus(t, u))
    throw Error(ErrorCode::Inadmissible, "u = (t - t^-1)^2 admits no solutions");
}

bool contains_inverse_integer(const Real& lo, const Real& hi) {
  auto positive = [](const Real& a, const Real& b) {
    if (b <= 0) return false;
    if (a <= 0) return true;
    if (a > 1) return false;
    Real n = floor(1 / a);
    return 1 / n <= b;
  };
  if (lo > hi) return false;
  return positive(lo, hi) || positive(Real(-hi), Real(-lo));
}

LiftingFlags lifting_flags(const Real& t, const Real& u, const Branch* branch) {
  (void)u;
  LiftingFlags f;
  f.peripheral_hyperbolic = abs(t + 1 / t) > 2;
  if (!branch || branch->points.size() < 2) return f;
  try {
    SlopeSpan span = slope_span(*branch);
    f.family_contains_inverse_integer_slope = contains_inverse_integer(span.inf, span.sup);
  } catch (const Error&) {
    return f;
  }
  const Real tol(branch->tol_residual);
  bool residuals_ok = std::all_of(branch->points.begin(), branch->points.end(),
                                  [&](const CurvePoint& p) { return p.residual <= tol; });
  f.family_continuous = residuals_ok && branch->guard_min_abs > 0 && branch->guard_sign != 0;
  return f;
}

CertifyConfig CertifyConfig::for_digits(unsigned digits) {
  CertifyConfig c;
  c.tol = std::pow(10.0, -0.6 * digits);
  c.recheck_tol = std::pow(10.0, -1.2 * digits);
  c.recheck_digits = 2 * digits;
  return c;
}

namespace {

BranchSummary summarize(const Branch& b) {
  return {std::string(to_string(b.parameterization)), std::string(to_string(b.direction)),
          std::string(to_string(b.stop)), b.points.size(), format_real(b.guard_min_abs, 6)};
}

}  // namespace

Revalidation revalidate(const TwoBridgeKnot& k, const Rational& slope, std::string_view t_text,
                        std::string_view u_text, unsigned digits, double tol) {
  PrecisionScope scope(digits);
  NumericSystem ns(riley_system(k));
  Real t = parse_real(t_text), u = parse_real(u_text);
  check_slope_domain(t, u);
  Revalidation r;
  r.residual_P = abs(ns.P_value(t, u));
  r.residual_slope = abs(slope_residual(ns, t, u, slope));
  r.ok = r.residual_P <= Real(tol) && r.residual_slope <= Real(tol);
  return r;
}

SlopeCertificate make_certificate(const NumericSystem& ns, const CurvePoint& point,
                                  const Rational& slope, const Branch* branch,
                                  const CertifyConfig& cfg) {
  check_slope_domain(point.t, point.u);
  const Real res_P = abs(ns.P_value(point.t, point.u));
  const Real res_s = abs(slope_residual(ns, point.t, point.u, slope));
  if (res_P > Real(cfg.tol) || res_s > Real(cfg.tol))
    throw Error(ErrorCode::RecheckFailed,
                "point fails the emission tolerance: |P| = " + format_real(res_P, 6) +
                    ", |slope residual| = " + format_real(res_s, 6));

  const unsigned rd = cfg.recheck_digits ? cfg.recheck_digits : 2 * ns.digits();
  std::string t_text, u_text;
  {
    PrecisionScope scope(rd);
    NumericSystem fine(ns.shared());
    CurvePoint q;
    try {
      q = polish_slope_point(fine, at_current_precision(point.t), at_current_precision(point.u),
                             rational_value(slope), cfg.recheck_tol);
    } catch (const Error& e) {
      throw Error(ErrorCode::RecheckFailed,
                  std::string("point does not hold at the recheck precision: ") + e.what());
    }
    t_text = format_real(q.t, rd);
    u_text = format_real(q.u, rd);
  }
  Revalidation rv = revalidate(ns.system().knot, slope, t_text, u_text, rd, cfg.recheck_tol);
  if (!rv.ok)
    throw Error(ErrorCode::RecheckFailed, "stored decimal point fails revalidation");

  SlopeCertificate c{ns.system().knot,
                     slope,
                     t_text,
                     u_text,
                     format_real(rv.residual_P, 6),
                     format_real(rv.residual_slope, 6),
                     classify_khoi(point.t, point.u),
                     lifting_flags(point.t, point.u, branch),
                     ns.digits(),
                     rd,
                     cfg.tol,
                     cfg.recheck_tol,
                     std::nullopt};
  if (branch) c.branch = summarize(*branch);
  return c;
}

// ---------------------------------------------------------------- peripheral

Mat2Real operator*(const Mat2Real& x, const Mat2Real& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

Mat2Real evaluate(const Mat2& m, const Real& t, const Real& u) {
  return {eval_real(m.a, t, u).value, eval_real(m.b, t, u).value, eval_real(m.c, t, u).value,
          eval_real(m.d, t, u).value};
}

Real max_entry_distance(const Mat2Real& x, const Mat2Real& y) {
  return std::max({Real(abs(x.a - y.a)), Real(abs(x.b - y.b)), Real(abs(x.c - y.c)),
                   Real(abs(x.d - y.d))});
}

Mat2Real rational_peripheral_matrix(const Real& t, long alpha, long beta) {
  if (!(t > 1)) throw Error(ErrorCode::InvalidArgument, "rational peripheral matrix needs t > 1");
  if (beta < 1) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  if (std::gcd(alpha, beta) != 1)
    throw Error(ErrorCode::InvalidArgument, "alpha and beta must be coprime");
  if (beta == 1) return evaluate(power_of_C(static_cast<int>(alpha)), t, Real(0));
  Real s = exp(Real(alpha) * log(t) / Real(beta));
  Real s_inv = 1 / s;
  return {s, (s - s_inv) / (t - 1 / t), Real(0), s_inv};
}

Real rational_peripheral_check(const Real& t, long alpha, long beta) {
  Mat2Real m = rational_peripheral_matrix(t, alpha, beta);
  Mat2Real power = m;
  for (long i = 1; i < beta; ++i) power = power * m;
  return max_entry_distance(power, evaluate(power_of_C(static_cast<int>(alpha)), t, Real(0)));
}

Real peripheral_commutator(const NumericSystem& ns, const Real& t, const Real& u, long alpha,
                           long beta) {
  const TwoBridgeKnot& k = ns.system().knot;
  Mat2Real w = evaluate(word_matrix(k, false), t, u);
  Mat2Real ws = evaluate(word_matrix(k, true), t, u);
  Mat2Real m = ws * w;
  Mat2Real c = rational_peripheral_matrix(t, alpha, beta);
  return max_entry_distance(c * m, m * c);
}

// ---------------------------------------------------------------- reports

namespace {

struct SpanInfo {
  std::size_t branch;
  SlopeSpan span;
};

// The end of `b` approaches an integer slope without reaching it: the trace
// stopped at a bound, the tail is strictly monotone toward the extreme and the
// extreme is within 1e-2 of that integer.
std::optional<long> asymptotic_limit(const Branch& b, const Real& extreme, bool lower) {
  if (b.stop != StopReason::parameter_bound && b.stop != StopReason::precision_limit)
    return std::nullopt;
  std::vector<Real> tail;
  for (auto it = b.points.rbegin(); it != b.points.rend() && tail.size() < 5; ++it)
    if (it->slope) tail.push_back(*it->slope);
  if (tail.size() < 5 || tail.front() != extreme) return std::nullopt;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (lower && !(tail[i - 1] < tail[i])) return std::nullopt;
    if (!lower && !(tail[i - 1] > tail[i])) return std::nullopt;
  }
  Real L = round(extreme);
  if (abs(extreme - L) > Real(1e-2)) return std::nullopt;
  if (lower ? !(extreme > L) : !(extreme < L)) return std::nullopt;
  return L.convert_to<long>();
}

}  // namespace

IntervalReport interval_report(const NumericSystem& ns, const std::vector<Branch>& branches,
                               const std::vector<Rational>& samples, const CertifyConfig& cfg) {
  const TwoBridgeKnot& k = ns.system().knot;
  if (k.is_torus())
    throw Error(ErrorCode::TorusKnot, "torus knots receive no left-orderability claims");

  std::vector<SpanInfo> spans;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    try {
      spans.push_back({i, slope_span(branches[i])});
    } catch (const Error&) {
    }
  }
  if (spans.empty()) throw Error(ErrorCode::OutOfRange, "no traced branch carries slopes");

  IntervalReport rep{k, {}, {}, {}, {}, "non_torus_two_bridge", false, {}, {}, ns.digits()};
  for (const Branch& b : branches) rep.branches.push_back(summarize(b));
  for (const SpanInfo& s : spans)
    rep.branch_spans.push_back("[" + format_real(s.span.inf, 12) + ", " +
                               format_real(s.span.sup, 12) + "]");

  // Claimed interval: connected union of spans grown from the first span.
  Real lo = spans.front().span.inf, hi = spans.front().span.sup;
  std::size_t lo_branch = spans.front().branch, hi_branch = lo_branch;
  for (bool grew = true; grew;) {
    grew = false;
    for (const SpanInfo& s : spans) {
      if (s.span.sup < lo || s.span.inf > hi) continue;
      if (s.span.inf < lo) {
        lo = s.span.inf;
        lo_branch = s.branch;
        grew = true;
      }
      if (s.span.sup > hi) {
        hi = s.span.sup;
        hi_branch = s.branch;
        grew = true;
      }
    }
  }
  auto endpoint = [&](const Real& v, std::size_t bi, bool lower) {
    IntervalEndpoint e;
    e.reached = format_real(v, 12);
    if (auto L = asymptotic_limit(branches[bi], v, lower)) {
      e.value = std::to_string(*L);
      e.open = true;
      e.asymptotic = true;
    } else {
      e.value = e.reached;
    }
    return e;
  };
  rep.lo = endpoint(lo, lo_branch, true);
  rep.hi = endpoint(hi, hi_branch, false);
  rep.zero_slope_note = lo <= 0 && 0 <= hi;

  for (const Rational& r : samples) {
    rep.samples.push_back(to_string(r));
    if (r.numerator() == 0) {
      rep.zero_slope_note = true;
      continue;
    }
    rep.certificates.push_back(certify_slope(ns, branches, r, cfg));
  }
  return rep;
}

SlopeCertificate certify_slope(const NumericSystem& ns, const std::vector<Branch>& branches,
                               const Rational& r, const CertifyConfig& cfg) {
  const Real target = rational_value(r);
  const Real tol(cfg.tol);
  std::string last_error = "no traced branch reaches slope " + to_string(r);
  for (const Branch& b : branches) {
    SlopeSpan span;
    try {
      span = slope_span(b);
    } catch (const Error&) {
      continue;
    }
    if (target < span.inf - tol || target > span.sup + tol) continue;
    try {
      CurvePoint pt = solve_slope(b, ns, r);
      return make_certificate(ns, pt, r, &b, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfRange && e.code() != ErrorCode::CorrectorDiverged &&
          e.code() != ErrorCode::RecheckFailed)
        throw;
      last_error = e.what();
    }
  }
  throw Error(ErrorCode::OutOfRange, last_error);
}

IntervalReport standard_report(const NumericSystem& ns, const std::vector<Rational>& samples,
                               const TraceConfig& trace, const CertifyConfig& cfg) {
  if (ns.system().knot.is_torus())
    throw Error(ErrorCode::TorusKnot, "torus knots receive no left-orderability claims");
  return interval_report(ns, standard_branches(ns, trace), samples, cfg);
}

// ---------------------------------------------------------------- transfer

TransferCertificate transfer_interval(int d, const Rational& lo, const Rational& hi) {
  if (d % 2 == 0)
    throw Error(ErrorCode::EvenD, "d = " + std::to_string(d) + " is even; family members need odd d");
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "source interval needs lo < hi");
  TransferCertificate c;
  c.d = d;
  c.source_lo = lo;
  c.source_hi = hi;
  if (d > 0) {
    c.lo = lo * d;
    c.hi = hi * d;
  } else {
    c.lo = hi * d;
    c.hi = lo * d;
  }
  return c;
}

TransferCertificate transfer_interval(const WangFamilySpec& family, const Rational& lo,
                                      const Rational& hi) {
  std::optional<ContinuedFraction> cf;
  int d = 0;
  try {
    auto [fraction, dd] = wang_family(family);
    cf = fraction;
    d = dd;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateEntry) throw;
    d = wang_d(family);
  }
  TransferCertificate c = transfer_interval(d, lo, hi);
  c.family = family;
  c.fraction = cf;
  if (cf) {
    try {
      c.knot = cf_to_pq(*cf);
    } catch (const Error&) {
      c.knot.reset();
    }
  }
  return c;
}

Rational transfer_slope(const Rational& r, int d) {
  if (d == 0) throw Error(ErrorCode::EvenD, "d = 0 is even");
  return r / Rational(d);
}

// ---------------------------------------------------------------- JSON

namespace {

json knot_json(const TwoBridgeKnot& k) { return {{"p", k.p()}, {"q", k.q()}}; }

json rational_json(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

json branch_json(const BranchSummary& b) {
  return {{"parameterization", b.parameterization}, {"direction", b.direction},
          {"stop", b.stop}, {"points", b.points}, {"guard_min", b.guard_min}};
}

json certificate_object(const SlopeCertificate& c) {
  const std::size_t n = c.branch ? c.branch->points : 0;
  json lifting = {
      {"peripheral_hyperbolic", c.lifting.peripheral_hyperbolic},
      {"family_contains_inverse_integer_slope", c.lifting.family_contains_inverse_integer_slope},
      {"family_continuous", c.lifting.family_continuous},
      {"universal_cover_claim", c.lifting.all()},
      {"basis", "hypotheses verified at " + std::to_string(n) +
                    " sampled points with IFT guard bounds"},
  };
  return {
      {"knot", knot_json(c.knot)},
      {"slope", rational_json(c.slope)},
      {"point", {{"t", c.t}, {"u", c.u}}},
      {"residuals", {{"P", c.residual_P}, {"slope", c.residual_slope}}},
      {"khoi_class", std::string(to_string(c.khoi_class))},
      {"lifting", lifting},
      {"meta",
       {{"precision_digits", c.digits},
        {"recheck_digits", c.recheck_digits},
        {"tolerances", {{"emit", tol_text(c.tol)}, {"recheck", tol_text(c.recheck_tol)}}},
        {"branch", c.branch ? branch_json(*c.branch) : json(nullptr)}}},
  };
}

json endpoint_json(const IntervalEndpoint& e) {
  return {{"value", e.value}, {"open", e.open}, {"asymptotic", e.asymptotic},
          {"reached", e.reached}};
}

json cf_json(const ContinuedFraction& cf) { return cf.entries; }

}  // namespace

std::string certificate_json(const SlopeCertificate& c) {
  return certificate_object(c).dump(2) + "\n";
}

std::string report_json(const IntervalReport& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_object(c));
  json branches = json::array();
  for (const auto& b : r.branches) branches.push_back(branch_json(b));
  json j = {
      {"knot", knot_json(r.knot)},
      {"samples", r.samples},
      {"certificates", certs},
      {"claimed_interval", {{"lo", endpoint_json(r.lo)}, {"hi", endpoint_json(r.hi)}}},
      {"irreducibility_basis", r.irreducibility_basis},
      {"zero_slope_note", r.zero_slope_note},
      {"branches", branches},
      {"branch_spans", r.branch_spans},
      {"meta", {{"precision_digits", r.digits}}},
  };
  return j.dump(2) + "\n";
}

std::string transfer_json(const TransferCertificate& t) {
  json j = {
      {"d", t.d},
      {"source_interval", {{"lo", to_string(t.source_lo)}, {"hi", to_string(t.source_hi)}}},
      {"transferred_interval", {{"lo", to_string(t.lo)}, {"hi", to_string(t.hi)}}},
      {"slope_map", "p/q -> p/(" + std::to_string(t.d) + "q)"},
  };
  if (t.family) {
    j["family"] = {{"base", cf_json(t.family->base)}, {"c", t.family->c}, {"eps", t.family->eps}};
  } else {
    j["family"] = nullptr;
  }
  j["fraction"] = t.fraction ? cf_json(*t.fraction) : json(nullptr);
  j["knot"] = t.knot ? knot_json(*t.knot) : json(nullptr);
  return j.dump(2) + "\n";
}

Revalidation verify_certificate_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    TwoBridgeKnot k = validate_knot(j.at("knot").at("p").get<long>(), j.at("knot").at("q").get<long>());
    Rational slope(j.at("slope").at("num").get<std::int64_t>(),
                   j.at("slope").at("den").get<std::int64_t>());
    const auto& meta = j.at("meta");
    unsigned digits = meta.at("recheck_digits").get<unsigned>();
    double tol = std::stod(meta.at("tolerances").at("recheck").get<std::string>());
    std::string t = j.at("point").at("t").get<std::string>();
    std::string u = j.at("point").at("u").get<std::string>();
    KhoiClass stated = parse_khoi(j.at("khoi_class").get<std::string>());
    Revalidation rv = revalidate(k, slope, t, u, digits, tol);
    if (!rv.ok) throw Error(ErrorCode::RecheckFailed, "certificate residuals exceed its tolerance");
    PrecisionScope scope(digits);
    if (classify_khoi(parse_real(t), parse_real(u)) != stated)
      throw Error(ErrorCode::RecheckFailed, "stated khoi_class does not match the point");
    return rv;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed certificate: ") + e.what());
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace riley
