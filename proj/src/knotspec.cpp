// SPDX-License-Identifier: Apache-2.0

#include "riley/knotspec.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

#include "riley/error.hpp"

namespace riley {
namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long mod_pos(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a modulo m (gcd(a, m) = 1 assumed).
long mod_inverse(long a, long m) {
  long old_r = mod_pos(a, m), r = m;
  long old_s = 1, s = 0;
  while (r != 0) {
    long quot = old_r / r;
    long tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  return mod_pos(old_s, m);
}

// Odd representative of the class of q modulo odd p, inside (-p, p).
long odd_representative(long q, long p) {
  if ((q % 2 != 0) && std::labs(q) < p) return q;
  long r = mod_pos(q, p);
  return (r % 2 == 0) ? r - p : r;
}

long checked_mul_add(long a, long b, long c) {
  long prod = 0, sum = 0;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(prod, c, &sum))
    throw Error(ErrorCode::InvalidArgument,
                "continued fraction value exceeds the supported integer range");
  return sum;
}

}  // namespace

TwoBridgeKnot validate_knot(long p, long q) {
  if (p <= 0 || p % 2 == 0 || q % 2 == 0 || std::labs(q) >= p ||
      std::gcd(p, std::labs(q)) != 1) {
    throw Error(ErrorCode::NotTwoBridge,
                "K(" + std::to_string(p) + ", " + std::to_string(q) +
                    ") is not a valid 2-bridge knot (need p odd > 0, q odd, "
                    "|q| < p, gcd(p, q) = 1)");
  }
  // The class of q is {+-q, +-q^{-1}} modulo p; torus knots are K(p, +-1).
  long inv = mod_inverse(q, p);
  bool torus = false;
  for (long cand : {q, -q, inv, -inv}) {
    if (mod_pos(cand, p) == 1 % p) torus = true;
  }
  return TwoBridgeKnot(p, q, torus);
}

TwoBridgeKnot mirror(const TwoBridgeKnot& k) { return validate_knot(k.p(), -k.q()); }

TwoBridgeKnot normalize(const TwoBridgeKnot& k) {
  const long p = k.p();
  long inv = mod_inverse(k.q(), p);
  long best = k.q();
  for (long cand : {k.q(), -k.q(), inv, -inv}) {
    long rep = odd_representative(mod_pos(cand, p), p);
    if (std::labs(rep) < std::labs(best) ||
        (std::labs(rep) == std::labs(best) && rep > best)) {
      best = rep;
    }
  }
  return validate_knot(p, best);
}

SignData sign_data(const TwoBridgeKnot& k) {
  SignData out;
  out.signs.reserve(static_cast<std::size_t>(k.p() - 1));
  for (long i = 1; i < k.p(); ++i) {
    long fl = floor_div(i * k.q(), k.p());
    int e = (mod_pos(fl, 2) == 0) ? 1 : -1;
    out.signs.push_back(e);
    out.sigma += e;
  }
  return out;
}

std::string RelatorWord::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) os << ' ';
    os << (letters[i].generator == Generator::x ? 'x' : 'y');
    if (letters[i].exponent != 1) os << '^' << letters[i].exponent;
  }
  return os.str();
}

std::pair<RelatorWord, RelatorWord> relator_words(const TwoBridgeKnot& k) {
  SignData sd = sign_data(k);
  RelatorWord w, ws;
  ws.starred = true;
  for (std::size_t i = 0; i < sd.signs.size(); ++i) {
    bool even_slot = (i % 2 == 0);  // e_1, e_3, ... sit on x in w
    w.letters.push_back({even_slot ? Generator::x : Generator::y, sd.signs[i]});
    ws.letters.push_back({even_slot ? Generator::y : Generator::x, sd.signs[i]});
  }
  return {w, ws};
}

TwoBridgeKnot cf_to_pq(const ContinuedFraction& cf) {
  if (cf.entries.empty())
    throw Error(ErrorCode::InvalidArgument, "empty continued fraction");
  for (long a : cf.entries)
    if (a == 0)
      throw Error(ErrorCode::DegenerateEntry, "continued fraction has a zero entry");

  // Evaluate from the tail: value = num / den.
  long num = cf.entries.back(), den = 1;
  for (auto it = cf.entries.rbegin() + 1; it != cf.entries.rend(); ++it) {
    if (num == 0)
      throw Error(ErrorCode::NotAKnot, "continued fraction passes through 1/0");
    long next = checked_mul_add(*it, num, den);
    den = num;
    num = next;
  }
  if (num == 0) throw Error(ErrorCode::NotAKnot, "continued fraction evaluates to 0");
  if (num < 0) {
    num = -num;
    den = -den;
  }
  long g = std::gcd(num, std::labs(den));
  num /= g;
  den /= g;
  if (num % 2 == 0 || num == 1) {
    throw Error(ErrorCode::NotAKnot,
                "continued fraction evaluates to p/q = " + std::to_string(num) +
                    "/" + std::to_string(den) + ", which is not a 2-bridge knot");
  }
  return validate_knot(num, odd_representative(den, num));
}

ContinuedFraction pq_to_cf(const TwoBridgeKnot& k) {
  ContinuedFraction cf;
  long a = k.p(), b = std::labs(k.q());
  while (b != 0) {
    cf.entries.push_back(a / b);
    long r = a % b;
    a = b;
    b = r;
  }
  if (k.q() < 0)
    for (long& e : cf.entries) e = -e;
  return cf;
}

DoubleTwist double_twist_to_pq(long k, long m) {
  if (k < 1 || m == 0 || m % 2 != 0)
    throw Error(ErrorCode::InvalidArgument,
                "double-twist C(k, m) needs k >= 1 and m even, nonzero");
  const long n = std::labs(m) / 2;
  long p = 0, q = 0;
  if (k % 2 != 0) {
    p = (m > 0) ? -1 + 2 * n * k : 1 + 2 * n * k;
    q = k;
  } else if (m > 0) {
    p = -1 + 2 * n * k;
    q = 1 - (2 * n - 1) * k;
  } else {
    p = 1 + 2 * n * k;
    q = -1 - (2 * n - 1) * k;
  }
  return DoubleTwist{validate_knot(p, q), k == 2 && n == 1};
}

int wang_d(const WangFamilySpec& spec) {
  int d = 0;
  for (std::size_t i = 0; i < spec.eps.size(); ++i) {
    d += (i % 2 == 0) ? spec.eps[i] : -spec.eps[i];
  }
  return d;
}

ContinuedFraction inverse_fraction(const ContinuedFraction& a) {
  ContinuedFraction out;
  for (auto it = a.entries.rbegin(); it != a.entries.rend(); ++it)
    out.entries.push_back(-*it);
  return out;
}

std::pair<ContinuedFraction, int> wang_family(const WangFamilySpec& spec) {
  if (spec.base.entries.empty())
    throw Error(ErrorCode::InvalidArgument, "empty base continued fraction");
  if (spec.eps.size() != spec.c.size() + 1 || spec.c.size() % 2 != 0)
    throw Error(ErrorCode::InvalidArgument,
                "family needs 2n twist parameters and 2n + 1 signs");
  for (int e : spec.eps)
    if (e != 1 && e != -1)
      throw Error(ErrorCode::InvalidArgument, "family signs must be +1 or -1");

  const ContinuedFraction inv = inverse_fraction(spec.base);
  ContinuedFraction out;
  for (std::size_t i = 0; i < spec.eps.size(); ++i) {
    const ContinuedFraction& block = (i % 2 == 0) ? spec.base : inv;
    for (long a : block.entries) out.entries.push_back(spec.eps[i] * a);
    if (i < spec.c.size()) out.entries.push_back(2 * spec.c[i]);
  }
  for (long a : out.entries)
    if (a == 0)
      throw Error(ErrorCode::DegenerateEntry,
                  "assembled continued fraction contains a zero entry");
  return {out, wang_d(spec)};
}

}  // namespace riley
