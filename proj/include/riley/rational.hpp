// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace riley {

using Rational = boost::rational<std::int64_t>;

/// Accepts "5", "-7/2" and finite decimals such as "-3.9" (read exactly as
/// -39/10). Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& r);

}  // namespace riley
