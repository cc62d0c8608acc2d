// SPDX-License-Identifier: Apache-2.0

// Exact real-root isolation for univariate integer polynomials via Sturm
// sequences, with refinement to extended precision.

#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "riley/laurent.hpp"
#include "riley/realpoly.hpp"

namespace riley {

using Rat = boost::multiprecision::cpp_rational;

/// Dense integer polynomial, coefficient i multiplies x^i; no trailing zeros.
using IntPoly = std::vector<Integer>;

IntPoly to_dense(const UPoly& p);
UPoly from_dense(const IntPoly& p);

/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
IntPoly poly_gcd(IntPoly a, IntPoly b);
/// Exact quotient a / b; throws if b does not divide a.
IntPoly poly_exact_div(const IntPoly& a, const IntPoly& b);
IntPoly squarefree_part(const IntPoly& p);

/// Sign of p(x) for rational x.
int sign_at(const IntPoly& p, const Rat& x);

/// Half-open isolating interval (lo, hi]; lo == hi marks an exact rational root.
struct RootInterval {
  Rat lo;
  Rat hi;
  bool exact() const { return lo == hi; }
};

class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& squarefree);
  /// Number of distinct real roots in (a, b].
  int count(const Rat& a, const Rat& b) const;
  const std::vector<IntPoly>& polys() const noexcept { return seq_; }

 private:
  int variations(const Rat& x) const;
  std::vector<IntPoly> seq_;
};

/// Cauchy bound: every real root lies in (-bound, bound).
Rat root_bound(const IntPoly& p);

/// Isolating intervals of the distinct real roots, in increasing order.
std::vector<RootInterval> isolate_real_roots(const IntPoly& p);

/// Root inside `iv` to the current working precision.
Real refine_root(const IntPoly& p, const RootInterval& iv);

/// Sorted distinct real roots to the current working precision.
std::vector<Real> real_roots(const IntPoly& p);

}  // namespace riley
