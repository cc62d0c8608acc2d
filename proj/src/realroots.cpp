// SPDX-License-Identifier: Apache-2.0

#include "riley/realroots.hpp"

#include <algorithm>

#include "riley/error.hpp"

namespace riley {
namespace {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const Integer& c : p) g = gcd(g, c);
  return g;
}

IntPoly make_primitive(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  Integer g = content(p);
  if (p.back() < 0) g = -g;
  for (Integer& c : p) c /= g;
  return p;
}

// lc(b)^(deg a - deg b + 1) * a mod b
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const int db = degree(b);
  const Integer& lb = b.back();
  int steps = std::max(0, degree(a) - db + 1);
  while (degree(a) >= db && !a.empty()) {
    const Integer la = a.back();
    const int shift = degree(a) - db;
    for (Integer& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= la * b[static_cast<std::size_t>(i)];
    trim(a);
    --steps;
  }
  // Keep the multiplier exactly lc(b)^(deg a - deg b + 1).
  for (; steps > 0; --steps)
    for (Integer& c : a) c *= lb;
  return a;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

int sign_of(const Integer& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

IntPoly to_dense(const UPoly& p) {
  IntPoly d(static_cast<std::size_t>(p.degree() + 1), Integer(0));
  for (const auto& [k, c] : p.coeffs()) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative degree in polynomial");
    d[static_cast<std::size_t>(k)] = c;
  }
  return d;
}

UPoly from_dense(const IntPoly& p) {
  UPoly r;
  for (std::size_t i = 0; i < p.size(); ++i) r.add_term(static_cast<int>(i), p[i]);
  return r;
}

IntPoly poly_gcd(IntPoly a, IntPoly b) {
  a = make_primitive(std::move(a));
  b = make_primitive(std::move(b));
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = make_primitive(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

IntPoly poly_exact_div(const IntPoly& a_in, const IntPoly& b) {
  if (b.empty()) throw Error(ErrorCode::InvalidArgument, "division by the zero polynomial");
  IntPoly a = a_in;
  trim(a);
  if (degree(a) < degree(b)) {
    if (a.empty()) return {};
    throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
  }
  IntPoly q(static_cast<std::size_t>(degree(a) - degree(b) + 1), Integer(0));
  const int db = degree(b);
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    if (a.back() % b.back() != 0) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
    Integer f = a.back() / b.back();
    q[static_cast<std::size_t>(shift)] = f;
    for (int i = 0; i <= db; ++i) a[static_cast<std::size_t>(i + shift)] -= f * b[static_cast<std::size_t>(i)];
    trim(a);
  }
  if (!a.empty()) throw Error(ErrorCode::InvalidArgument, "inexact polynomial division");
  return q;
}

IntPoly squarefree_part(const IntPoly& p) {
  IntPoly pp = make_primitive(p);
  if (degree(pp) <= 0) return pp;
  IntPoly g = poly_gcd(pp, derivative(pp));
  return make_primitive(poly_exact_div(pp, g));
}

int sign_at(const IntPoly& p, const Rat& x) {
  if (p.empty()) return 0;
  // Homogenised Horner: sum c_k a^k b^(n-k), with b > 0.
  const Integer a = numerator(x), b = denominator(x);
  Integer acc = p.back();
  Integer bpow = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    bpow *= b;
    acc = acc * a + p[i] * bpow;
  }
  return sign_of(acc);
}

SturmSequence::SturmSequence(const IntPoly& squarefree) {
  IntPoly p0 = squarefree;
  trim(p0);
  if (p0.empty()) return;
  seq_.push_back(p0);
  IntPoly p1 = derivative(p0);
  if (p1.empty()) return;
  Integer g1 = content(p1);
  for (Integer& c : p1) c /= g1;
  seq_.push_back(std::move(p1));
  while (true) {
    const IntPoly& a = seq_[seq_.size() - 2];
    const IntPoly& b = seq_.back();
    IntPoly r = pseudo_remainder(a, b);
    if (r.empty()) break;
    // -rem(a, b) up to a positive factor.
    const int delta = degree(a) - degree(b) + 1;
    bool flip = !(b.back() < 0 && delta % 2 != 0);
    Integer g = content(r);
    for (Integer& c : r) c /= g;
    if (flip)
      for (Integer& c : r) c = -c;
    seq_.push_back(std::move(r));
  }
}

int SturmSequence::variations(const Rat& x) const {
  int count = 0, last = 0;
  for (const IntPoly& p : seq_) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmSequence::count(const Rat& a, const Rat& b) const {
  if (seq_.empty()) return 0;
  return variations(a) - variations(b);
}

Rat root_bound(const IntPoly& p_in) {
  IntPoly p = p_in;
  trim(p);
  if (p.size() <= 1) return Rat(1);
  Integer m = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, Integer(abs(p[i])));
  return Rat(1) + Rat(m, abs(p.back())) + 1;
}

std::vector<RootInterval> isolate_real_roots(const IntPoly& p) {
  IntPoly sf = squarefree_part(p);
  std::vector<RootInterval> out;
  if (degree(sf) <= 0) return out;
  SturmSequence sturm(sf);
  const Rat bound = root_bound(sf);

  struct Pending {
    Rat lo, hi;
    int n;
  };
  std::vector<Pending> stack{{-bound, bound, sturm.count(-bound, bound)}};
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    if (cur.n == 0) continue;
    if (cur.n == 1) {
      if (sign_at(sf, cur.hi) == 0)
        out.push_back({cur.hi, cur.hi});
      else
        out.push_back({cur.lo, cur.hi});
      continue;
    }
    Rat mid = (cur.lo + cur.hi) / 2;
    int left = sturm.count(cur.lo, mid);
    stack.push_back({mid, cur.hi, cur.n - left});
    stack.push_back({cur.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.hi < y.hi; });
  return out;
}

Real refine_root(const IntPoly& p, const RootInterval& iv_in) {
  if (iv_in.exact()) {
    return to_real(numerator(iv_in.lo)) / to_real(denominator(iv_in.lo));
  }
  IntPoly sf = squarefree_part(p);
  SturmSequence sturm(sf);
  RootInterval iv = iv_in;
  // Move lo off any neighbouring root so that sign bisection is valid.
  while (sign_at(sf, iv.lo) == 0) {
    Rat mid = (iv.lo + iv.hi) / 2;
    if (sturm.count(mid, iv.hi) == 1)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
  int s_lo = sign_at(sf, iv.lo);
  const Real eps = unit_roundoff();
  const Real ulp_scale = eps / 64;
  while (true) {
    Real lo = to_real(numerator(iv.lo)) / to_real(denominator(iv.lo));
    Real hi = to_real(numerator(iv.hi)) / to_real(denominator(iv.hi));
    Real scale = std::max(Real(1), Real(abs(hi)));
    if (hi - lo <= ulp_scale * scale) return (lo + hi) / 2;
    Rat mid = (iv.lo + iv.hi) / 2;
    int s = sign_at(sf, mid);
    if (s == 0) return to_real(numerator(mid)) / to_real(denominator(mid));
    if (s == s_lo)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
}

std::vector<Real> real_roots(const IntPoly& p) {
  std::vector<Real> out;
  for (const RootInterval& iv : isolate_real_roots(p)) out.push_back(refine_root(p, iv));
  return out;
}

}  // namespace riley
