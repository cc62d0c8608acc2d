// SPDX-License-Identifier: Apache-2.0

#include "riley/realpoly.hpp"

#include <algorithm>

#include "riley/error.hpp"

namespace riley {

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

unsigned current_digits() { return Real::default_precision(); }

Real parse_real(std::string_view text) {
  try {
    Real v(std::string{text});
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "not a decimal number: '" + std::string(text) + "'");
  }
}

Real to_real(const Integer& v) { return Real(v.str()); }

Real at_current_precision(const Real& v) { return Real(v, current_digits()); }

std::string format_real(const Real& v, unsigned digits) {
  return v.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

Real unit_roundoff() {
  Real one(1);
  long bits = static_cast<long>(mpfr_get_prec(one.backend().data()));
  return ldexp(one, static_cast<int>(1 - bits));
}

RealPoly::RealPoly(const BivarPoly& poly) {
  const int deg = poly.u_degree();
  if (deg < 0) return;
  rows_.resize(static_cast<std::size_t>(deg) + 1);
  std::vector<int> lo(rows_.size(), 0), hi(rows_.size(), 0);
  std::vector<bool> seen(rows_.size(), false);
  for (const auto& [e, up] : poly.terms()) {
    for (const auto& [k, c] : up.coeffs()) {
      if (!seen[k]) {
        lo[k] = hi[k] = e;
        seen[k] = true;
      }
      lo[k] = std::min(lo[k], e);
      hi[k] = std::max(hi[k], e);
    }
  }
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (!seen[k]) continue;
    rows_[k].t_min = lo[k];
    rows_[k].coeffs.assign(static_cast<std::size_t>(hi[k] - lo[k] + 1), Real(0));
    t_span_ = std::max(t_span_, hi[k] - lo[k]);
  }
  for (const auto& [e, up] : poly.terms())
    for (const auto& [k, c] : up.coeffs())
      rows_[k].coeffs[static_cast<std::size_t>(e - rows_[k].t_min)] = to_real(c);
  for (Row& r : rows_) {
    r.abs_coeffs.reserve(r.coeffs.size());
    for (const Real& c : r.coeffs) r.abs_coeffs.push_back(abs(c));
  }
}

Real RealPoly::horner_row(const Row& row, const Real& t, const Real& t_inv) const {
  if (row.coeffs.empty()) return Real(0);
  Real acc = row.coeffs.back();
  for (std::size_t i = row.coeffs.size() - 1; i-- > 0;) acc = acc * t + row.coeffs[i];
  if (row.t_min > 0) acc *= pow(t, row.t_min);
  if (row.t_min < 0) acc *= pow(t_inv, -row.t_min);
  return acc;
}

Real RealPoly::operator()(const Real& t, const Real& u) const {
  if (rows_.empty()) return Real(0);
  const Real t_inv = 1 / t;
  Real acc = horner_row(rows_.back(), t, t_inv);
  for (std::size_t k = rows_.size() - 1; k-- > 0;) acc = acc * u + horner_row(rows_[k], t, t_inv);
  return acc;
}

Evaluation RealPoly::evaluate(const Real& t, const Real& u) const {
  if (t == 0) throw Error(ErrorCode::ZeroT, "evaluation at t = 0");
  Evaluation out{(*this)(t, u), Real(0)};
  if (rows_.empty()) return out;
  // Same Horner scheme on |coefficients|, |t| and |u| bounds every
  // intermediate magnitude; the operation count bounds the error growth.
  const Real at = abs(t), au = abs(u), at_inv = 1 / at;
  auto abs_row = [&](const Row& row) {
    if (row.abs_coeffs.empty()) return Real(0);
    Real acc = row.abs_coeffs.back();
    for (std::size_t i = row.abs_coeffs.size() - 1; i-- > 0;) acc = acc * at + row.abs_coeffs[i];
    if (row.t_min > 0) acc *= pow(at, row.t_min);
    if (row.t_min < 0) acc *= pow(at_inv, -row.t_min);
    return acc;
  };
  Real mag = abs_row(rows_.back());
  for (std::size_t k = rows_.size() - 1; k-- > 0;) mag = mag * au + abs_row(rows_[k]);
  const int ops = 2 * (t_span_ + static_cast<int>(rows_.size())) + 8;
  out.error_bound = mag * unit_roundoff() * ops;
  return out;
}

std::pair<Real, Real> RealPoly::evaluate_unit_circle(const Real& theta, const Real& u) const {
  Real re(0), im(0);
  Real upow(1);
  for (const Row& row : rows_) {
    Real row_re(0), row_im(0);
    for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
      if (row.coeffs[i] == 0) continue;
      const Real angle = theta * (row.t_min + static_cast<int>(i));
      row_re += row.coeffs[i] * cos(angle);
      row_im += row.coeffs[i] * sin(angle);
    }
    re += row_re * upow;
    im += row_im * upow;
    upow *= u;
  }
  return {re, im};
}

Evaluation eval_real(const BivarPoly& poly, const Real& t, const Real& u) {
  if (t == 0) throw Error(ErrorCode::ZeroT, "evaluation at t = 0");
  return RealPoly(poly).evaluate(t, u);
}

std::pair<Real, Real> eval_unit_circle(const BivarPoly& poly, const Real& theta, const Real& u) {
  return RealPoly(poly).evaluate_unit_circle(theta, u);
}

}  // namespace riley
