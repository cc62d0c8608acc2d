// SPDX-License-Identifier: Apache-2.0

#include "riley/laurent.hpp"

#include <charconv>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <utility>
#include <vector>

#include "riley/error.hpp"

namespace riley {

// ---------------------------------------------------------------- UPoly

UPoly UPoly::constant(const Integer& c) { return monomial(0, c); }

UPoly UPoly::monomial(int degree, const Integer& c) {
  UPoly p;
  p.add_term(degree, c);
  return p;
}

Integer UPoly::coeff(int degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

void UPoly::add_term(int degree, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.try_emplace(degree, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

UPoly& UPoly::operator+=(const UPoly& o) {
  for (const auto& [k, c] : o.coeffs_) add_term(k, c);
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  for (const auto& [k, c] : o.coeffs_) add_term(k, -c);
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  UPoly r;
  for (const auto& [i, x] : a.coeffs_)
    for (const auto& [j, y] : b.coeffs_) r.add_term(i + j, x * y);
  return r;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

UPoly UPoly::derivative() const {
  UPoly r;
  for (const auto& [k, c] : coeffs_)
    if (k != 0) r.add_term(k - 1, c * k);
  return r;
}

Integer UPoly::evaluate(const Integer& x) const {
  Integer acc = 0;
  int prev = degree();
  if (prev < 0) return acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    for (int k = prev; k > it->first; --k) acc *= x;
    acc += it->second;
    prev = it->first;
  }
  for (int k = prev; k > 0; --k) acc *= x;
  return acc;
}

// ---------------------------------------------------------------- BivarPoly

BivarPoly BivarPoly::constant(const Integer& c) { return monomial(0, 0, c); }

BivarPoly BivarPoly::monomial(int t_exp, int u_deg, const Integer& c) {
  BivarPoly p;
  p.add_term(t_exp, u_deg, c);
  return p;
}

Integer BivarPoly::coeff(int t_exp, int u_deg) const {
  auto it = terms_.find(t_exp);
  return it == terms_.end() ? Integer(0) : it->second.coeff(u_deg);
}

UPoly BivarPoly::t_coeff(int t_exp) const {
  auto it = terms_.find(t_exp);
  return it == terms_.end() ? UPoly() : it->second;
}

int BivarPoly::min_t_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int BivarPoly::max_t_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

int BivarPoly::u_degree() const {
  int d = -1;
  for (const auto& [e, up] : terms_) d = std::max(d, up.degree());
  return d;
}

std::size_t BivarPoly::term_count() const {
  std::size_t n = 0;
  for (const auto& [e, up] : terms_) n += up.coeffs().size();
  return n;
}

void BivarPoly::add_term(int t_exp, int u_deg, const Integer& c) {
  if (c == 0) return;
  UPoly& slot = terms_[t_exp];
  slot.add_term(u_deg, c);
  if (slot.is_zero()) terms_.erase(t_exp);
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [e, up] : o.terms_) {
    UPoly& slot = terms_[e];
    slot += up;
    if (slot.is_zero()) terms_.erase(e);
  }
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  for (const auto& [e, up] : o.terms_) {
    UPoly& slot = terms_[e];
    slot -= up;
    if (slot.is_zero()) terms_.erase(e);
  }
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly r;
  for (const auto& [i, x] : a.terms_) {
    for (const auto& [j, y] : b.terms_) {
      UPoly& slot = r.terms_[i + j];
      slot += x * y;
      if (slot.is_zero()) r.terms_.erase(i + j);
    }
  }
  return r;
}

BivarPoly& BivarPoly::operator*=(const BivarPoly& o) { return *this = *this * o; }

BivarPoly BivarPoly::operator-() const {
  BivarPoly r;
  for (const auto& [e, up] : terms_) r.terms_.emplace(e, -up);
  return r;
}

BivarPoly BivarPoly::substitute_u(const BivarPoly& g) const {
  const int deg = u_degree();
  if (deg < 0) return {};
  // Horner in u with coefficients f_k(t).
  std::vector<BivarPoly> by_degree(static_cast<std::size_t>(deg) + 1);
  for (const auto& [e, up] : terms_)
    for (const auto& [k, c] : up.coeffs()) by_degree[k].add_term(e, 0, c);
  BivarPoly acc = by_degree[deg];
  for (int k = deg - 1; k >= 0; --k) acc = acc * g + by_degree[k];
  return acc;
}

BivarPoly BivarPoly::invert_t() const {
  BivarPoly r;
  for (const auto& [e, up] : terms_) r.terms_.emplace(-e, up);
  return r;
}

UPoly BivarPoly::at_unit_t(int t0) const {
  if (t0 != 1 && t0 != -1)
    throw Error(ErrorCode::InvalidArgument, "at_unit_t expects t0 = 1 or -1");
  UPoly r;
  for (const auto& [e, up] : terms_) {
    if (t0 == -1 && (e % 2 != 0))
      r -= up;
    else
      r += up;
  }
  return r;
}

BivarPoly BivarPoly::d_du() const {
  BivarPoly r;
  for (const auto& [e, up] : terms_) {
    UPoly d = up.derivative();
    if (!d.is_zero()) r.terms_.emplace(e, std::move(d));
  }
  return r;
}

BivarPoly BivarPoly::t_d_dt() const {
  BivarPoly r;
  for (const auto& [e, up] : terms_) {
    if (e == 0) continue;
    UPoly scaled;
    for (const auto& [k, c] : up.coeffs()) scaled.add_term(k, c * e);
    r.terms_.emplace(e, std::move(scaled));
  }
  return r;
}

BivarPoly BivarPoly::d_dt() const { return t_inv() * t_d_dt(); }

std::string BivarPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, up] : terms_) {
    for (const auto& [k, c] : up.coeffs()) {
      if (!first) os << ' ';
      first = false;
      os << "t^" << e << "*u^" << k << ':' << c;
    }
  }
  return os.str();
}

namespace {

int parse_small_int(std::string_view s, std::string_view token) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, "bad polynomial term '" + std::string(token) + "'");
  return v;
}

}  // namespace

BivarPoly BivarPoly::parse(std::string_view text) {
  // Canonical text only: single-space separated terms in increasing
  // (t, u) order with nonzero coefficients, or the single token "0".
  if (text == "0") return BivarPoly();
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty polynomial text");
  BivarPoly r;
  std::size_t pos = 0;
  std::optional<std::pair<int, int>> last;
  while (pos <= text.size()) {
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    pos = end + 1;
    if (tok.empty()) throw Error(ErrorCode::ParseError, "stray separator in polynomial text");
    if (tok.substr(0, 2) != "t^")
      throw Error(ErrorCode::ParseError, "bad polynomial term '" + std::string(tok) + "'");
    auto star = tok.find("*u^");
    auto colon = tok.find(':');
    if (star == std::string_view::npos || colon == std::string_view::npos || colon < star)
      throw Error(ErrorCode::ParseError, "bad polynomial term '" + std::string(tok) + "'");
    int e = parse_small_int(tok.substr(2, star - 2), tok);
    int k = parse_small_int(tok.substr(star + 3, colon - star - 3), tok);
    if (k < 0)
      throw Error(ErrorCode::ParseError, "negative u-degree in '" + std::string(tok) + "'");
    std::string_view cs = tok.substr(colon + 1);
    std::size_t digits_from = (!cs.empty() && cs[0] == '-') ? 1 : 0;
    if (cs.size() <= digits_from ||
        cs.find_first_not_of("0123456789", digits_from) != std::string_view::npos)
      throw Error(ErrorCode::ParseError, "bad coefficient in '" + std::string(tok) + "'");
    const Integer coeff{std::string(cs)};
    if (coeff == 0) throw Error(ErrorCode::ParseError, "zero coefficient in '" + std::string(tok) + "'");
    if (last && !(*last < std::pair{e, k}))
      throw Error(ErrorCode::ParseError, "terms out of order at '" + std::string(tok) + "'");
    last = std::pair{e, k};
    r.add_term(e, k, coeff);
  }
  return r;
}

BivarPoly t_minus_t_inv() { return BivarPoly::t() - BivarPoly::t_inv(); }

// ---------------------------------------------------------------- Mat2

Mat2 Mat2::identity() {
  return {BivarPoly::constant(1), {}, {}, BivarPoly::constant(1)};
}

BivarPoly Mat2::det() const { return a * d - b * c; }

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
  return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
}

bool Mat2::is_zero() const {
  return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
}

const BaseMatrices& base_matrices() {
  static const BaseMatrices m = [] {
    const BivarPoly t = BivarPoly::t(), ti = BivarPoly::t_inv(), u = BivarPoly::u();
    const BivarPoly one = BivarPoly::constant(1);
    BaseMatrices b;
    b.C = {t, one, {}, ti};
    b.D = {t, {}, -u, ti};
    b.X = {t - ti, one, -u, ti - t};
    b.C_inv = {ti, -one, {}, t};
    b.D_inv = {ti, {}, u, t};
    return b;
  }();
  return m;
}

Mat2 power_of_C(int n) {
  const BaseMatrices& bm = base_matrices();
  const Mat2& g = n >= 0 ? bm.C : bm.C_inv;
  Mat2 r = Mat2::identity();
  for (int i = 0; i < std::abs(n); ++i) r = r * g;
  return r;
}

namespace {

std::vector<const Mat2*> word_factors(const TwoBridgeKnot& k, bool starred) {
  const BaseMatrices& bm = base_matrices();
  const SignData sd = sign_data(k);
  std::vector<const Mat2*> out;
  out.reserve(sd.signs.size());
  for (std::size_t i = 0; i < sd.signs.size(); ++i) {
    bool c_slot = (i % 2 == 0) != starred;
    if (c_slot)
      out.push_back(sd.signs[i] > 0 ? &bm.C : &bm.C_inv);
    else
      out.push_back(sd.signs[i] > 0 ? &bm.D : &bm.D_inv);
  }
  return out;
}

Mat2 balanced_product(const std::vector<const Mat2*>& f, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return Mat2::identity();
  if (hi - lo == 1) return *f[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return balanced_product(f, lo, mid) * balanced_product(f, mid, hi);
}

}  // namespace

Mat2 word_matrix(const TwoBridgeKnot& k, bool starred) {
  Mat2 w = Mat2::identity();
  for (const Mat2* g : word_factors(k, starred)) w = w * *g;
  return w;
}

Mat2 word_matrix_balanced(const TwoBridgeKnot& k, bool starred) {
  auto f = word_factors(k, starred);
  return balanced_product(f, 0, f.size());
}

std::shared_ptr<const WordEntries> entries(const TwoBridgeKnot& k) {
  static std::shared_mutex mutex;
  static std::map<std::pair<long, long>, std::shared_ptr<const WordEntries>> cache;
  const auto key = std::make_pair(k.p(), k.q());
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Mat2 w = word_matrix(k);
  auto e = std::make_shared<const WordEntries>(
      WordEntries{std::move(w.a), std::move(w.b), std::move(w.c), std::move(w.d)});
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(e)).first->second;
}

}  // namespace riley
