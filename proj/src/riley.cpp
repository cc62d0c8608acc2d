// SPDX-License-Identifier: Apache-2.0

#include "riley/riley.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

#include "riley/error.hpp"

namespace riley {

RileySystem make_riley_system(const TwoBridgeKnot& k, const WordEntries& w) {
  RileySystem s{k, w.A, w.B, w.Cc, w.Dd, {}, sign_data(k).sigma};
  s.P = w.A - t_minus_t_inv() * w.B;
  return s;
}

std::shared_ptr<const RileySystem> riley_system(const TwoBridgeKnot& k) {
  static std::shared_mutex mutex;
  static std::map<std::pair<long, long>, std::shared_ptr<const RileySystem>> cache;
  const auto key = std::make_pair(k.p(), k.q());
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto sys = std::make_shared<const RileySystem>(make_riley_system(k, *entries(k)));
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(sys)).first->second;
}

NumericSystem::NumericSystem(std::shared_ptr<const RileySystem> sys)
    : sys_(std::move(sys)),
      digits_(current_digits()),
      P_(sys_->P),
      P_u_(sys_->P.d_du()),
      P_t_(sys_->P.d_dt()),
      B_(sys_->B),
      B_u_(sys_->B.d_du()),
      B_t_(sys_->B.d_dt()) {}

namespace {

void require_positive_t(const Real& t) {
  if (t <= 0) throw Error(ErrorCode::InvalidArgument, "slope equations need t > 0");
  if (t == 1) throw Error(ErrorCode::Inadmissible, "no solutions exist at t = 1");
}

// ((t - t^-1)^2 - u) B^2 together with its two factors.
struct SlopeFactors {
  Real gap;  // (t - t^-1)^2 - u
  Real b;
};

SlopeFactors slope_factors(const NumericSystem& ns, const Real& t, const Real& u) {
  require_positive_t(t);
  const Real s = t - 1 / t;
  SlopeFactors f{s * s - u, ns.B(t, u)};
  if (f.b == 0) throw Error(ErrorCode::ZeroB, "B vanishes at this point");
  if (f.gap <= 0 || on_gap_locus(t, u))
    throw Error(ErrorCode::NonPositiveArgument,
                "((t - t^-1)^2 - u) B^2 is not positive; no real slope exists here");
  return f;
}

}  // namespace

bool on_gap_locus(const Real& t, const Real& u) {
  const Real s = t - 1 / t;
  const Real y = s * s;
  const Real scale = std::max({Real(1), y, Real(abs(u))});
  return abs(y - u) <= 64 * unit_roundoff() * scale;
}

Real slope_residual(const NumericSystem& ns, const Real& t, const Real& u, const Real& r) {
  SlopeFactors f = slope_factors(ns, t, u);
  return (r - 2 * ns.sigma()) * log(t) + log(f.gap * f.b * f.b);
}

Real slope_residual(const NumericSystem& ns, const Real& t, const Real& u, const Rational& r) {
  Real rr = Real(r.numerator()) / Real(r.denominator());
  return slope_residual(ns, t, u, rr);
}

Real slope_of_point(const NumericSystem& ns, const Real& t, const Real& u) {
  SlopeFactors f = slope_factors(ns, t, u);
  return 2 * ns.sigma() - log(f.gap * f.b * f.b) / log(t);
}

std::pair<Real, Real> slope_residual_gradient(const NumericSystem& ns, const Real& t,
                                              const Real& u, const Real& r) {
  SlopeFactors f = slope_factors(ns, t, u);
  const Real s = t - 1 / t;
  Real d_t = (r - 2 * ns.sigma()) / t + 2 * s * (1 + 1 / (t * t)) / f.gap +
             2 * ns.dB_dt(t, u) / f.b;
  Real d_u = -1 / f.gap + 2 * ns.dB_du(t, u) / f.b;
  return {d_t, d_u};
}

MinusOneSystem minus_one_polys(const RileySystem& sys) {
  return {sys.A.at_unit_t(-1), sys.B.at_unit_t(-1), sys.Dd.at_unit_t(-1)};
}

MinusOneReport minus_one_system(const RileySystem& sys, const Rational& N) {
  if (N.numerator() % 2 == 0 || N.denominator() % 2 == 0)
    throw Error(ErrorCode::EvenSlopeComponent,
                "N = " + to_string(N) + " must have odd numerator and denominator");
  MinusOneReport rep;
  rep.polys = minus_one_polys(sys);
  rep.N = N;
  rep.second_equation = UPoly::monomial(1, -N.numerator()) * rep.polys.B_neg1 -
                        UPoly::constant(2 * N.denominator()) * rep.polys.D_neg1;
  IntPoly g = poly_gcd(to_dense(rep.polys.A_neg1), to_dense(rep.second_equation));
  rep.common_factor = from_dense(g);
  if (g.size() > 1) rep.common_roots = isolate_real_roots(g);
  return rep;
}

EllipticPolynomial elliptic_polynomial(const RileySystem& sys, const Real& theta) {
  EllipticPolynomial out;
  const int deg = sys.P.u_degree();
  out.coeffs.assign(static_cast<std::size_t>(std::max(deg + 1, 0)), Real(0));
  std::vector<Real> imag(out.coeffs.size(), Real(0));
  for (const auto& [e, up] : sys.P.terms()) {
    const Real angle = theta * e;
    const Real c = cos(angle), s = sin(angle);
    for (const auto& [k, coef] : up.coeffs()) {
      out.coeffs[k] += to_real(coef) * c;
      imag[k] += to_real(coef) * s;
    }
  }
  out.imag_residual = Real(0);
  for (const Real& v : imag) out.imag_residual = std::max(out.imag_residual, Real(abs(v)));
  return out;
}

IdentityReport check_identities(const TwoBridgeKnot& k) {
  IdentityReport rep;
  const SignData sd = sign_data(k);
  rep.palindrome = true;
  for (long i = 1; i < k.p(); ++i)
    if (sd.e(i) != sd.e(k.p() - i)) rep.palindrome = false;

  const auto w = entries(k);
  const BivarPoly u = BivarPoly::u();
  rep.c_equals_minus_ub = (w->Cc + u * w->B).is_zero();
  rep.det_one = (w->A * w->Dd - w->B * w->Cc) == BivarPoly::constant(1);

  const auto sys = riley_system(k);
  const BivarPoly s = t_minus_t_inv();
  rep.boundary_value_one = sys->P.substitute_u(s * s) == BivarPoly::constant(1);
  rep.t_symmetric = sys->P.invert_t() == sys->P;
  return rep;
}

std::vector<TwoBridgeKnot> all_knots_up_to(long max_p) {
  std::vector<TwoBridgeKnot> out;
  for (long p = 3; p <= max_p; p += 2)
    for (long q = -(p - 1); q < p; ++q)
      if (q % 2 != 0 && std::gcd(p, std::labs(q)) == 1) out.push_back(validate_knot(p, q));
  return out;
}

// ---------------------------------------------------------------- cache

std::string cache_text(const RileySystem& sys) {
  std::ostringstream os;
  os << "riley-cache " << kCacheVersion << '\n'
     << "knot " << sys.knot.p() << ' ' << sys.knot.q() << '\n'
     << "A " << sys.A.to_string() << '\n'
     << "B " << sys.B.to_string() << '\n'
     << "C " << sys.Cc.to_string() << '\n'
     << "D " << sys.Dd.to_string() << '\n'
     << "P " << sys.P.to_string() << '\n';
  return os.str();
}

RileySystem parse_cache_text(const TwoBridgeKnot& k, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto expect = [&](const std::string& prefix) {
    if (!std::getline(is, line) || line.rfind(prefix, 0) != 0)
      throw Error(ErrorCode::ParseError, "cache entry: expected '" + prefix + "'");
    return line.substr(prefix.size());
  };
  if (expect("riley-cache ") != std::to_string(kCacheVersion))
    throw Error(ErrorCode::ParseError, "cache entry: version mismatch");
  if (expect("knot ") != std::to_string(k.p()) + " " + std::to_string(k.q()))
    throw Error(ErrorCode::ParseError, "cache entry: knot mismatch");
  WordEntries w;
  w.A = BivarPoly::parse(expect("A "));
  w.B = BivarPoly::parse(expect("B "));
  w.Cc = BivarPoly::parse(expect("C "));
  w.Dd = BivarPoly::parse(expect("D "));
  BivarPoly P = BivarPoly::parse(expect("P "));
  RileySystem sys = make_riley_system(k, w);
  if (!(sys.P == P) || !(w.Cc + BivarPoly::u() * w.B).is_zero())
    throw Error(ErrorCode::ParseError, "cache entry: inconsistent polynomials");
  return sys;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const TwoBridgeKnot& k) {
  std::string q = k.q() < 0 ? "m" + std::to_string(-k.q()) : std::to_string(k.q());
  return dir / ("riley-v" + std::to_string(kCacheVersion) + "-" + std::to_string(k.p()) +
                "-" + q + ".txt");
}

std::shared_ptr<const RileySystem> load_or_build(const TwoBridgeKnot& k,
                                                 const std::filesystem::path& dir,
                                                 bool* hit) {
  const auto path = cache_path(dir, k);
  if (std::ifstream in(path); in) {
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      auto sys = std::make_shared<const RileySystem>(parse_cache_text(k, buf.str()));
      if (hit) *hit = true;
      return sys;
    } catch (const Error&) {
      // Stale or corrupt entry: rebuild below.
    }
  }
  if (hit) *hit = false;
  auto sys = riley_system(k);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write cache entry " + tmp);
    out << cache_text(*sys);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot install cache entry " + path.string());
  return sys;
}

}  // namespace riley
