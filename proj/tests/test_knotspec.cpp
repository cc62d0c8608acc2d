// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numeric>

#include "oracle.hpp"
#include "riley/error.hpp"
#include "riley/knotspec.hpp"
#include "riley/rational.hpp"

using namespace riley;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("knotspec") {
  TEST_CASE("validate_knot accepts 2-bridge parameters and detects torus knots") {
    auto k = validate_knot(11, 3);
    CHECK(k.p() == 11);
    CHECK(k.q() == 3);
    CHECK_FALSE(k.is_torus());
    CHECK(validate_knot(3, 1).is_torus());
    CHECK(validate_knot(5, -1).is_torus());
    CHECK(validate_knot(7, 1).is_torus());
    CHECK_FALSE(validate_knot(7, 3).is_torus());
    CHECK_FALSE(validate_knot(5, 3).is_torus());
    // 5^-1 = 2 mod 9, so K(9, 5) is not torus; K(9, 1) is.
    CHECK_FALSE(validate_knot(9, 5).is_torus());
    CHECK(validate_knot(9, 1).is_torus());
  }

  TEST_CASE("validate_knot rejects non 2-bridge parameters") {
    CHECK(code_of([] { validate_knot(4, 1); }) == ErrorCode::NotTwoBridge);
    CHECK(code_of([] { validate_knot(11, 2); }) == ErrorCode::NotTwoBridge);
    CHECK(code_of([] { validate_knot(9, 3); }) == ErrorCode::NotTwoBridge);
    CHECK(code_of([] { validate_knot(11, 11); }) == ErrorCode::NotTwoBridge);
    CHECK(code_of([] { validate_knot(11, -13); }) == ErrorCode::NotTwoBridge);
    CHECK(code_of([] { validate_knot(-11, 3); }) == ErrorCode::NotTwoBridge);
  }

  TEST_CASE("sign data matches the floor formula") {
    auto s = sign_data(validate_knot(11, 3));
    CHECK(s.signs == std::vector<int>{1, 1, 1, -1, -1, -1, -1, 1, 1, 1});
    CHECK(s.sigma == 2);
    auto t = sign_data(validate_knot(3, 1));
    CHECK(t.signs == std::vector<int>{1, 1});
    CHECK(t.sigma == 2);
    auto f = sign_data(validate_knot(5, 3));
    CHECK(f.signs == std::vector<int>{1, -1, -1, 1});
    CHECK(f.sigma == 0);
    CHECK(f.e(2) == -1);
  }

  TEST_CASE("signs agree with the residue oracle, are palindromic, sigma is even (p <= 99)") {
    for (long p = 3; p <= 99; p += 2) {
      for (long q = -(p - 1); q <= p - 1; ++q) {
        if (q % 2 == 0 || std::gcd(p, q) != 1) continue;
        auto s = sign_data(validate_knot(p, q));
        REQUIRE(s.signs == oracle::signs(p, q));
        for (long i = 1; i < p; ++i) CHECK(s.e(i) == s.e(p - i));
        CHECK(s.sigma % 2 == 0);
      }
    }
  }

  TEST_CASE("relator words") {
    auto [w, ws] = relator_words(validate_knot(3, 1));
    CHECK(w.str() == "x y");
    CHECK(ws.str() == "y x");
    CHECK(ws.starred);
    auto [w5, ws5] = relator_words(validate_knot(5, 3));
    CHECK(w5.str() == "x y^-1 x^-1 y");
    CHECK(ws5.str() == "y x^-1 y^-1 x");
    for (long p : {7L, 11L, 13L}) CHECK(relator_words(validate_knot(p, 3)).first.letters.size() == static_cast<std::size_t>(p - 1));
  }

  TEST_CASE("continued fractions") {
    CHECK(cf_to_pq({{3, 1, 2}}) == validate_knot(11, 3));
    CHECK(pq_to_cf(validate_knot(11, 3)) == ContinuedFraction{{3, 1, 2}});
    CHECK(pq_to_cf(cf_to_pq({{3, 1, 2}})) == ContinuedFraction{{3, 1, 2}});
    auto m = cf_to_pq({{-2, -1, -3}});
    CHECK(m.p() == 11);
    CHECK(m.q() == 7);  // 11 / -4, with -4 replaced by its odd representative
    CHECK(code_of([] { cf_to_pq({{2}}); }) == ErrorCode::NotAKnot);
    CHECK(code_of([] { cf_to_pq({{3, 0, 2}}); }) == ErrorCode::DegenerateEntry);
    for (long p = 3; p <= 41; p += 2) {
      for (long q = -(p - 2); q <= p - 2; q += 2) {
        if (std::gcd(p, q) != 1) continue;
        auto k = validate_knot(p, q);
        CHECK(cf_to_pq(pq_to_cf(k)) == k);
      }
    }
  }

  TEST_CASE("double-twist knots") {
    CHECK(double_twist_to_pq(3, 4).knot == validate_knot(11, 3));
    CHECK(double_twist_to_pq(3, -4).knot == validate_knot(13, 3));
    auto fig = double_twist_to_pq(2, 2);
    CHECK(fig.knot == validate_knot(3, -1));
    CHECK(fig.figure_eight_ambiguous);
    CHECK(double_twist_to_pq(2, -2).figure_eight_ambiguous);
    CHECK_FALSE(double_twist_to_pq(2, 4).figure_eight_ambiguous);
    CHECK(code_of([] { double_twist_to_pq(3, 3); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { double_twist_to_pq(0, 2); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("mirror and normalize") {
    CHECK(mirror(validate_knot(11, 3)) == validate_knot(11, -3));
    CHECK(normalize(validate_knot(11, 7)).p() == 11);
    auto n = normalize(validate_knot(11, 7));
    CHECK(std::abs(n.q()) <= 7);
  }

  TEST_CASE("Wang family") {
    WangFamilySpec spec{{{3, 1, 2}}, {1, 1}, {1, 1, 1}};
    auto [cf, d] = wang_family(spec);
    CHECK(cf.entries == std::vector<long>{3, 1, 2, 2, -2, -1, -3, 2, 3, 1, 2});
    CHECK(d == 1);
    CHECK(wang_d({{{3, 1, 2}}, {5, -2}, {1, -1, 1}}) == 3);
    CHECK(wang_d({{{3, 1, 2}}, {1, 1}, {-1, -1, -1}}) == -1);
    CHECK(inverse_fraction({{3, 1, 2}}).entries == std::vector<long>{-2, -1, -3});
    CHECK(code_of([] { wang_family({{{3, 1, 2}}, {0, 0}, {1, -1, 1}}); }) == ErrorCode::DegenerateEntry);
    CHECK(code_of([] { wang_family({{{3, 1, 2}}, {1}, {1, 1}}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { wang_family({{{3, 1, 2}}, {1, 1}, {1, 2, 1}}); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("rational parsing") {
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("-7/2") == Rational(-7, 2));
    CHECK(parse_rational("-3.9") == Rational(-39, 10));
    CHECK(parse_rational("7.9") == Rational(79, 10));
    CHECK(parse_rational("1/1") == Rational(1));
    CHECK(to_string(Rational(-39, 10)) == "-39/10");
    CHECK(to_string(Rational(4)) == "4");
    for (const char* bad : {"", "x", "1/0", "1/-2", "--1", "1.2.3", "1/+2", "0x10", "1e5"})
      CHECK_MESSAGE(code_of([&] { parse_rational(bad); }) == ErrorCode::ParseError, bad);
  }
}
