// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "riley/continuation.hpp"
#include "riley/error.hpp"

namespace fixtures {

using namespace riley;

/// 1/2 (sqrt((sqrt 5 - 1)/2) + sqrt((sqrt 5 + 7)/2)) at the current precision.
inline Real t_min_closed_form() {
  Real r5 = sqrt(Real(5));
  return (sqrt((r5 - 1) / 2) + sqrt((r5 + 7) / 2)) / 2;
}

inline Branch psi_branch(const NumericSystem& ns, Band band = Band::psi()) {
  TraceConfig cfg = TraceConfig::for_digits(ns.digits());
  cfg.band = band;
  return trace_branch(ns, seed_psi(ns), cfg, Parameterization::by_t, Direction::increasing);
}

inline Branch phi_branch(const NumericSystem& ns, Band band = Band::phi()) {
  TraceConfig cfg = TraceConfig::for_digits(ns.digits());
  cfg.band = band;
  return trace_branch(ns, seed_psi(ns), cfg, Parameterization::by_u, Direction::increasing);
}

inline bool in_psi_strip(const Real& t, const Real& u) {
  Real t4 = t * t * t * t;
  return -1 / t4 < u && u <= 0;
}

inline bool in_phi_strip(const Real& t, const Real& u) {
  return u >= 0 && (sqrt(u) + sqrt(u + 4)) / 2 < t && t < (sqrt(u + 1) + sqrt(u + 5)) / 2;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an error");
}

}  // namespace fixtures
