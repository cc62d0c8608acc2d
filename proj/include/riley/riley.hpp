// SPDX-License-Identifier: Apache-2.0

// Riley polynomial and the surgery-slope equations built from the word
// matrix W of a 2-bridge knot.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "riley/knotspec.hpp"
#include "riley/laurent.hpp"
#include "riley/rational.hpp"
#include "riley/realpoly.hpp"
#include "riley/realroots.hpp"

namespace riley {

struct RileySystem {
  TwoBridgeKnot knot;
  BivarPoly A, B, Cc, Dd;
  /// P = A - (t - t^-1) B
  BivarPoly P;
  int sigma = 0;
};

/// Assembles the system from already computed entries of W.
RileySystem make_riley_system(const TwoBridgeKnot& k, const WordEntries& w);

/// Cached per knot; safe for concurrent readers.
std::shared_ptr<const RileySystem> riley_system(const TwoBridgeKnot& k);

/// Extended-precision evaluators for one RileySystem, compiled at the
/// precision current at construction.
class NumericSystem {
 public:
  explicit NumericSystem(std::shared_ptr<const RileySystem> sys);

  const RileySystem& system() const noexcept { return *sys_; }
  std::shared_ptr<const RileySystem> shared() const noexcept { return sys_; }
  unsigned digits() const noexcept { return digits_; }
  int sigma() const noexcept { return sys_->sigma; }

  Evaluation P(const Real& t, const Real& u) const { return P_.evaluate(t, u); }
  Real P_value(const Real& t, const Real& u) const { return P_(t, u); }
  Real dP_du(const Real& t, const Real& u) const { return P_u_(t, u); }
  Real dP_dt(const Real& t, const Real& u) const { return P_t_(t, u); }
  Real B(const Real& t, const Real& u) const { return B_(t, u); }
  Real dB_du(const Real& t, const Real& u) const { return B_u_(t, u); }
  Real dB_dt(const Real& t, const Real& u) const { return B_t_(t, u); }

 private:
  std::shared_ptr<const RileySystem> sys_;
  unsigned digits_;
  RealPoly P_, P_u_, P_t_, B_, B_u_, B_t_;
};

/// u = (t - t^-1)^2 up to a few units of rounding in (t - t^-1)^2.
bool on_gap_locus(const Real& t, const Real& u);

/// (r - 2 sigma) ln t + ln(((t - t^-1)^2 - u) B^2). Zero exactly when
/// t^(r - 2 sigma) ((t - t^-1)^2 - u) B^2 = 1.
/// Requires t > 0, t != 1; throws ZeroB or NonPositiveArgument.
Real slope_residual(const NumericSystem& ns, const Real& t, const Real& u, const Real& r);
Real slope_residual(const NumericSystem& ns, const Real& t, const Real& u, const Rational& r);

/// The unique r with slope_residual(t, u, r) = 0.
Real slope_of_point(const NumericSystem& ns, const Real& t, const Real& u);

/// Partial derivatives of slope_residual in t and u (r fixed).
std::pair<Real, Real> slope_residual_gradient(const NumericSystem& ns, const Real& t,
                                              const Real& u, const Real& r);

struct MinusOneSystem {
  UPoly A_neg1, B_neg1, D_neg1;
};

struct MinusOneReport {
  MinusOneSystem polys;
  Rational N;
  /// -num(N) u B(-1, u) - 2 den(N) D(-1, u)
  UPoly second_equation;
  /// Primitive gcd of A(-1, u) and the second equation.
  UPoly common_factor;
  std::vector<RootInterval> common_roots;
  bool solvable() const { return !common_roots.empty(); }
};

MinusOneSystem minus_one_polys(const RileySystem& sys);

/// Common real solutions u of A(-1, u) = 0 and -N u B(-1, u) = 2 D(-1, u).
/// N = r - 2 sigma must have odd numerator and denominator.
MinusOneReport minus_one_system(const RileySystem& sys, const Rational& N);

struct EllipticPolynomial {
  std::vector<Real> coeffs;  // real part of the coefficient of u^k
  Real imag_residual;        // max |imaginary part| over the coefficients
};

/// Coefficients of u -> P(e^{i theta}, u) for theta in (0, pi).
EllipticPolynomial elliptic_polynomial(const RileySystem& sys, const Real& theta);

struct IdentityReport {
  bool palindrome = false;        // e_i = e_{p-i}
  bool c_equals_minus_ub = false; // Cc = -u B
  bool det_one = false;           // A Dd - B Cc = 1
  bool boundary_value_one = false;// P(t, (t - t^-1)^2) = 1
  bool t_symmetric = false;       // P(t, u) = P(t^-1, u)
  bool all() const {
    return palindrome && c_equals_minus_ub && det_one && boundary_value_one && t_symmetric;
  }
};

IdentityReport check_identities(const TwoBridgeKnot& k);

/// Every valid K(p, q) with 3 <= p <= max_p.
std::vector<TwoBridgeKnot> all_knots_up_to(long max_p);

/// Bump when the canonical cache text changes.
inline constexpr int kCacheVersion = 1;

std::string cache_text(const RileySystem& sys);
RileySystem parse_cache_text(const TwoBridgeKnot& k, const std::string& text);
std::filesystem::path cache_path(const std::filesystem::path& dir, const TwoBridgeKnot& k);

/// Reads the system from `dir` when a valid entry exists, otherwise builds it
/// and writes the entry. `hit` reports which path was taken.
std::shared_ptr<const RileySystem> load_or_build(const TwoBridgeKnot& k,
                                                 const std::filesystem::path& dir,
                                                 bool* hit = nullptr);

}  // namespace riley
