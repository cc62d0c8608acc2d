// SPDX-License-Identifier: Apache-2.0

#include "riley/rational.hpp"

#include <charconv>
#include <limits>

#include "riley/error.hpp"

namespace riley {
namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::ParseError,
              "not a rational number: '" + std::string(text) + "'");
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) bad(whole);
  for (char ch : s)
    if (ch < '0' || ch > '9') bad(whole);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad(whole);
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || s.front() == '-' || s.front() == '+') bad(text);

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(s.substr(0, slash), text);
    std::int64_t den = parse_int(s.substr(slash + 1), text);
    if (den <= 0) bad(text);
    value = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) bad(text);
    if (fp.size() > 17) bad(text);
    std::int64_t whole = ip.empty() ? 0 : parse_int(ip, text);
    std::int64_t frac = fp.empty() ? 0 : parse_int(fp, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    if (whole > std::numeric_limits<std::int64_t>::max() / scale) bad(text);
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(parse_int(s, text));
  }
  return negative ? -value : value;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace riley
