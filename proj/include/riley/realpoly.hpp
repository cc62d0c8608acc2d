// SPDX-License-Identifier: Apache-2.0

// Extended-precision evaluation of exact Laurent polynomials.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "riley/laurent.hpp"

namespace riley {

using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 50;

/// Sets the working precision (decimal digits) for values created on this
/// thread until destruction. Values keep the precision they were created with.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

unsigned current_digits();

/// Parses a decimal string at the current precision.
Real parse_real(std::string_view text);
/// Exact integer rounded once to the current precision. Direct construction
/// from cpp_int loses bits for some multi-limb values.
Real to_real(const Integer& v);
/// Copy of v rounded to the current precision.
Real at_current_precision(const Real& v);
/// Scientific notation with `digits` significant digits.
std::string format_real(const Real& v, unsigned digits);
/// 2^(1 - precision in bits) at the current precision.
Real unit_roundoff();

struct Evaluation {
  Real value;
  /// Bound on the rounding error of `value`.
  Real error_bound;
};

/// A BivarPoly compiled to extended-precision coefficients at the precision
/// that was current when it was built.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(const BivarPoly& poly);

  Real operator()(const Real& t, const Real& u) const;
  Evaluation evaluate(const Real& t, const Real& u) const;
  /// P(e^{i theta}, u) as (real part, imaginary part).
  std::pair<Real, Real> evaluate_unit_circle(const Real& theta, const Real& u) const;

 private:
  struct Row {
    int t_min = 0;
    std::vector<Real> coeffs;  // coefficient of t^{t_min + i}
    std::vector<Real> abs_coeffs;
  };
  Real horner_row(const Row& row, const Real& t, const Real& t_inv) const;

  std::vector<Row> rows_;  // indexed by u-degree
  int t_span_ = 0;
};

/// Throws ZeroT when t == 0.
Evaluation eval_real(const BivarPoly& poly, const Real& t, const Real& u);
std::pair<Real, Real> eval_unit_circle(const BivarPoly& poly, const Real& theta, const Real& u);

}  // namespace riley
