// SPDX-License-Identifier: Apache-2.0

// Slope certificates, interval reports, rational peripheral checks and the
// transfer of slope intervals along Wang families.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riley/continuation.hpp"
#include "riley/knotspec.hpp"
#include "riley/rational.hpp"

namespace riley {

enum class KhoiClass { real_hyperbolic, unit_circle_elliptic, t_minus_one };

std::string_view to_string(KhoiClass c);

/// Real t. t = -1 is t_minus_one; t = 0 and t = 1 are rejected (Inadmissible).
KhoiClass classify_khoi(const Real& t, const Real& u);

/// t = e^{i theta} with theta in [0, pi]. theta = 0 (t = 1) is rejected and
/// theta = pi is t = -1. Otherwise
/// u > 0 or u < -4 sin^2(theta) is required; the closed band
/// [-4 sin^2(theta), 0] is rejected.
KhoiClass classify_khoi_unit_circle(const Real& theta, const Real& u);

/// Rejects t <= 0, t = 1 and the locus u = (t - t^-1)^2, on which the slope
/// equations have no solution. Throws Inadmissible.
void check_slope_domain(const Real& t, const Real& u);

struct LiftingFlags {
  bool peripheral_hyperbolic = false;               // |t + t^-1| > 2
  bool family_contains_inverse_integer_slope = false;
  bool family_continuous = false;
  bool all() const {
    return peripheral_hyperbolic && family_contains_inverse_integer_slope && family_continuous;
  }
};

/// True when [lo, hi] contains 1/n for some nonzero integer n.
bool contains_inverse_integer(const Real& lo, const Real& hi);

/// Flags for point (t, u) drawn from `branch`; without a branch the two
/// family flags are false.
LiftingFlags lifting_flags(const Real& t, const Real& u, const Branch* branch);

struct CertifyConfig {
  double tol = 1e-30;          // emission tolerance at the working precision
  double recheck_tol = 1e-60;  // tolerance at the recheck precision
  unsigned recheck_digits = 0; // 0 means twice the working precision

  /// Tolerances tied to the working precision: 10^(-0.6 d) and 10^(-1.2 d).
  static CertifyConfig for_digits(unsigned digits);
};

struct BranchSummary {
  std::string parameterization, direction, stop;
  std::size_t points = 0;
  std::string guard_min;
};

struct SlopeCertificate {
  TwoBridgeKnot knot;
  Rational slope;
  std::string t, u;              // decimal strings at the recheck precision
  std::string residual_P, residual_slope;  // measured at the recheck precision
  KhoiClass khoi_class;
  LiftingFlags lifting;
  unsigned digits = 0, recheck_digits = 0;
  double tol = 0, recheck_tol = 0;
  std::optional<BranchSummary> branch;
};

/// Checks both residuals at the working precision (RecheckFailed otherwise),
/// polishes the point at the recheck precision, stores it as decimal strings
/// and revalidates those strings. Throws Inadmissible for points outside the
/// slope domain.
SlopeCertificate make_certificate(const NumericSystem& ns, const CurvePoint& point,
                                  const Rational& slope, const Branch* branch,
                                  const CertifyConfig& cfg);

struct Revalidation {
  Real residual_P, residual_slope;
  bool ok = false;
};

/// Recomputes both residuals from decimal strings alone at `digits`.
Revalidation revalidate(const TwoBridgeKnot& k, const Rational& slope, std::string_view t,
                        std::string_view u, unsigned digits, double tol);

struct Mat2Real {
  Real a, b, c, d;
  friend Mat2Real operator*(const Mat2Real& x, const Mat2Real& y);
};

Mat2Real evaluate(const Mat2& m, const Real& t, const Real& u);
Real max_entry_distance(const Mat2Real& x, const Mat2Real& y);

/// C_{alpha/beta} for real t > 1: [[s, (s - s^-1)/(t - t^-1)], [0, s^-1]] with
/// s = t^{alpha/beta}. For beta = 1 the exact power C^alpha is used.
Mat2Real rational_peripheral_matrix(const Real& t, long alpha, long beta);

/// max-entry |C_{alpha/beta}^beta - C^alpha|. Requires t > 1, beta >= 1 and
/// gcd(alpha, beta) = 1.
Real rational_peripheral_check(const Real& t, long alpha, long beta);

/// max-entry |[C_{alpha/beta}, W*W]| at (t, u).
Real peripheral_commutator(const NumericSystem& ns, const Real& t, const Real& u, long alpha,
                           long beta);

struct IntervalEndpoint {
  std::string value;    // decimal or rational text
  bool open = false;
  bool asymptotic = false;
  std::string reached;  // most extreme slope observed on the traced branches
};

struct IntervalReport {
  TwoBridgeKnot knot;
  std::vector<std::string> samples;
  std::vector<SlopeCertificate> certificates;
  IntervalEndpoint lo, hi;
  std::string irreducibility_basis;
  bool zero_slope_note = false;
  std::vector<BranchSummary> branches;
  std::vector<std::string> branch_spans;
  unsigned digits = 0;
};

/// Certifies each sample slope on the first branch whose span contains it.
/// Slope 0 sets zero_slope_note instead of producing a certificate.
/// Throws TorusKnot for torus knots and OutOfRange for unreachable samples.
IntervalReport interval_report(const NumericSystem& ns, const std::vector<Branch>& branches,
                               const std::vector<Rational>& samples, const CertifyConfig& cfg);

/// Certificate for slope r from the first branch whose span reaches it.
/// Throws OutOfRange when no branch does.
SlopeCertificate certify_slope(const NumericSystem& ns, const std::vector<Branch>& branches,
                               const Rational& r, const CertifyConfig& cfg);

/// Torus check, standard_branches from the primary seed, then interval_report.
IntervalReport standard_report(const NumericSystem& ns, const std::vector<Rational>& samples,
                               const TraceConfig& trace, const CertifyConfig& cfg);

struct TransferCertificate {
  std::optional<WangFamilySpec> family;
  std::optional<ContinuedFraction> fraction;  // absent when a zero entry appears
  std::optional<TwoBridgeKnot> knot;  // when the family fraction is a knot
  int d = 0;
  Rational source_lo, source_hi;
  Rational lo, hi;
};

/// d > 0: (lo d, hi d). d < 0: (hi d, lo d). Throws EvenD for even d.
TransferCertificate transfer_interval(int d, const Rational& lo, const Rational& hi);
TransferCertificate transfer_interval(const WangFamilySpec& family, const Rational& lo,
                                      const Rational& hi);

/// p/q on the base knot maps to p/(d q) on the family member.
Rational transfer_slope(const Rational& r, int d);

std::string certificate_json(const SlopeCertificate& c);
std::string report_json(const IntervalReport& r);
std::string transfer_json(const TransferCertificate& t);

/// Parses certificate JSON and revalidates it at its recorded recheck
/// precision and tolerance. Throws ParseError or RecheckFailed.
Revalidation verify_certificate_json(std::string_view text);

}  // namespace riley
