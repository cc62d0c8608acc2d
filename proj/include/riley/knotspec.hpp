// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace riley {

/// A 2-bridge knot K(p, q): p odd and positive, q odd, |q| < p, gcd(p, q) = 1.
/// The sign of q is kept; mirroring is a separate explicit operation.
class TwoBridgeKnot {
 public:
  long p() const noexcept { return p_; }
  long q() const noexcept { return q_; }
  bool is_torus() const noexcept { return is_torus_; }

  friend bool operator==(const TwoBridgeKnot&, const TwoBridgeKnot&) = default;

 private:
  friend TwoBridgeKnot validate_knot(long p, long q);
  TwoBridgeKnot(long p, long q, bool torus) : p_(p), q_(q), is_torus_(torus) {}

  long p_;
  long q_;
  bool is_torus_;
};

TwoBridgeKnot validate_knot(long p, long q);

/// K(p, -q).
TwoBridgeKnot mirror(const TwoBridgeKnot& k);

/// Odd representative of q modulo p in (-p, p) with the smallest |q| among
/// the class q ~ +-q^{+-1} (mod p); ties prefer positive q.
TwoBridgeKnot normalize(const TwoBridgeKnot& k);

struct SignData {
  std::vector<int> signs;  // signs[i - 1] holds e_i, 1 <= i <= p - 1
  int sigma = 0;

  int e(long i) const { return signs.at(static_cast<std::size_t>(i - 1)); }
};

SignData sign_data(const TwoBridgeKnot& k);

enum class Generator { x, y };

struct Letter {
  Generator generator;
  int exponent;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct RelatorWord {
  std::vector<Letter> letters;
  bool starred = false;

  /// Human-readable form such as "x y^-1 x^-1 y".
  std::string str() const;
};

/// (w, w*) with w = x^{e_1} y^{e_2} ... and w* = y^{e_1} x^{e_2} ...
std::pair<RelatorWord, RelatorWord> relator_words(const TwoBridgeKnot& k);

/// [a_1, ..., a_n] read as p/q = a_1 + 1/(a_2 + 1/(... + 1/a_n)).
struct ContinuedFraction {
  std::vector<long> entries;

  friend bool operator==(const ContinuedFraction&,
                         const ContinuedFraction&) = default;
};

/// Fraction p/q = value of the continued fraction, p > 0. An even q is
/// replaced by its odd representative modulo p.
TwoBridgeKnot cf_to_pq(const ContinuedFraction& cf);

/// Euclidean expansion of p/|q|, negated termwise when q < 0.
ContinuedFraction pq_to_cf(const TwoBridgeKnot& k);

struct DoubleTwist {
  TwoBridgeKnot knot;
  // C(2, +-2): the printed formula and the usual figure-eight naming
  // disagree for these two inputs.
  bool figure_eight_ambiguous = false;
};

/// Double-twist knot C(k, m) for k >= 1 and m even, nonzero.
DoubleTwist double_twist_to_pq(long k, long m);

struct WangFamilySpec {
  ContinuedFraction base;
  std::vector<long> c;   // 2n twist parameters
  std::vector<int> eps;  // 2n + 1 signs
};

/// eps_1 - eps_2 + eps_3 - ... ; odd whenever the spec is well formed.
int wang_d(const WangFamilySpec& spec);

/// [eps_1 a, 2c_1, eps_2 a^{-1}, 2c_2, ..., eps_{2n+1} a] together with d.
std::pair<ContinuedFraction, int> wang_family(const WangFamilySpec& spec);

/// [-a_n, ..., -a_1].
ContinuedFraction inverse_fraction(const ContinuedFraction& a);

}  // namespace riley
