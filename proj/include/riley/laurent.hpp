// SPDX-License-Identifier: Apache-2.0

// Exact arithmetic in Z[t, t^-1][u] and 2x2 matrices over that ring.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "riley/knotspec.hpp"

namespace riley {

using Integer = boost::multiprecision::cpp_int;

/// Polynomial in a single variable with integer coefficients; no stored zeros.
class UPoly {
 public:
  UPoly() = default;
  static UPoly constant(const Integer& c);
  static UPoly monomial(int degree, const Integer& c = 1);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }
  Integer coeff(int degree) const;
  const std::map<int, Integer>& coeffs() const noexcept { return coeffs_; }

  void add_term(int degree, const Integer& c);

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  friend bool operator==(const UPoly&, const UPoly&) = default;

  UPoly derivative() const;
  Integer evaluate(const Integer& x) const;

 private:
  std::map<int, Integer> coeffs_;
};

/// Element of Z[t, t^-1][u]: t-exponent -> coefficient polynomial in u.
class BivarPoly {
 public:
  BivarPoly() = default;
  static BivarPoly constant(const Integer& c);
  /// c * t^t_exp * u^u_deg
  static BivarPoly monomial(int t_exp, int u_deg, const Integer& c = 1);
  static BivarPoly t() { return monomial(1, 0); }
  static BivarPoly t_inv() { return monomial(-1, 0); }
  static BivarPoly u() { return monomial(0, 1); }

  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<int, UPoly>& terms() const noexcept { return terms_; }
  Integer coeff(int t_exp, int u_deg) const;
  /// Coefficient of t^t_exp as a polynomial in u.
  UPoly t_coeff(int t_exp) const;
  int min_t_exp() const;
  int max_t_exp() const;
  int u_degree() const;
  std::size_t term_count() const;

  void add_term(int t_exp, int u_deg, const Integer& c);

  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  BivarPoly& operator*=(const BivarPoly& o);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  BivarPoly operator-() const;
  friend bool operator==(const BivarPoly&, const BivarPoly&) = default;

  /// f(t, g(t, v)) where the variable of g takes the role of u.
  BivarPoly substitute_u(const BivarPoly& g) const;
  /// f(t^-1, u)
  BivarPoly invert_t() const;
  /// f(t0, u) for an integer t0 in {1, -1}.
  UPoly at_unit_t(int t0) const;
  BivarPoly d_du() const;
  /// t * df/dt
  BivarPoly t_d_dt() const;
  /// df/dt = t^-1 * (t df/dt)
  BivarPoly d_dt() const;

  /// Canonical text: terms sorted by (t-exponent, u-degree), separated by a
  /// single space, each written `t^E*u^K:C`. The zero polynomial is "0".
  std::string to_string() const;
  /// Inverse of to_string; anything not in canonical form is a ParseError.
  static BivarPoly parse(std::string_view text);

 private:
  std::map<int, UPoly> terms_;
};

/// t - t^-1
BivarPoly t_minus_t_inv();

struct Mat2 {
  BivarPoly a, b, c, d;

  static Mat2 identity();
  BivarPoly det() const;
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend Mat2 operator-(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2&, const Mat2&) = default;
  bool is_zero() const;
};

struct BaseMatrices {
  Mat2 C, D, X;
  Mat2 C_inv, D_inv;
};

/// C = [[t, 1], [0, t^-1]], D = [[t, 0], [-u, t^-1]],
/// X = [[t - t^-1, 1], [-u, t^-1 - t]] and the inverses of C and D.
const BaseMatrices& base_matrices();

/// C^n for any integer n (entries are Laurent polynomials in t).
Mat2 power_of_C(int n);

/// W = C^{e_1} D^{e_2} ... C^{e_{p-2}} D^{e_{p-1}}; with starred = true the
/// roles of C and D are swapped (W*). Left-to-right product.
Mat2 word_matrix(const TwoBridgeKnot& k, bool starred = false);

/// Same product as word_matrix, assembled by balanced binary splitting.
Mat2 word_matrix_balanced(const TwoBridgeKnot& k, bool starred = false);

struct WordEntries {
  BivarPoly A, B, Cc, Dd;
};

/// Entries of W, cached per knot. The cache is safe for concurrent readers.
std::shared_ptr<const WordEntries> entries(const TwoBridgeKnot& k);

}  // namespace riley
