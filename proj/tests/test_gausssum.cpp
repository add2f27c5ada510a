#include <doctest.h>

#include "wrtk/gausssum.hpp"

using namespace wrtk;

TEST_CASE("trivial Gauss sums") {
  for (int n = 1; n <= 12; ++n) {
    const auto w = RootOfUnity::from_exponent(n, 1);
    CHECK(gauss_brute(0, 0, w) == CycElt::constant(n, n));
    for (long d = 1; d < n; ++d) CHECK(gauss_brute(0, d, w).is_zero());
  }
}

TEST_CASE("order verification rejects wrong claims") {
  CHECK_NOTHROW(RootOfUnity(CycElt::root_power(12, 2), 6));
  CHECK_THROWS_AS(RootOfUnity(CycElt::root_power(12, 2), 12), std::invalid_argument);
  CHECK_THROWS_AS(RootOfUnity(CycElt::root_power(12, 4), 6), std::invalid_argument);
  CHECK_THROWS_AS(RootOfUnity(CycElt::constant(12, 2), 1), std::invalid_argument);
  CHECK(RootOfUnity::from_exponent(40, 12).order() == 10);
}

TEST_CASE("reductions agree with brute force for every b, d and n <= 24") {
  for (int n = 1; n <= 24; ++n) {
    const auto w = RootOfUnity::from_exponent(n, 1);
    for (long b = 0; b < n; ++b)
      for (long d = 0; d < n; ++d) CHECK(gauss_reduce(b, d, w) == gauss_brute(b, d, w));
  }
}

TEST_CASE("reductions agree inside a larger conductor") {
  // xi = zeta_40^4 has order 10 inside Z[zeta_40].
  const auto w = RootOfUnity::from_exponent(40, 4);
  for (long b = -3; b < 13; ++b)
    for (long d = -3; d < 13; ++d) CHECK(gauss_reduce(b, d, w) == gauss_brute(b, d, w));
}

TEST_CASE("individual reduction rules") {
  const auto w12 = RootOfUnity::from_exponent(12, 1);
  // gcd(b, n) = 2 does not divide d = 3
  CHECK(gauss_brute(2, 3, w12).is_zero());
  // 4 | n and d odd
  CHECK(gauss_brute(1, 1, w12).is_zero());
  CHECK(gauss_brute(5, 7, w12).is_zero());
  // coprime split 6 = 2 * 3
  const auto w6 = RootOfUnity::from_exponent(6, 1);
  for (long b = 0; b < 6; ++b)
    for (long d = 0; d < 6; ++d)
      CHECK(gauss_brute(b, d, w6) == gauss_brute(3 * b, d, w6.power(3)) * gauss_brute(2 * b, d, w6.power(2)));
}

TEST_CASE("square values of G(b,0) by residue of n mod 4") {
  for (int n = 1; n <= 24; ++n) {
    const auto rep = check_gauss_squares(n);
    CHECK(rep.squares_ok);
    CHECK(rep.bb_associate_ok);
  }
  // For n = 2 mod 4 the square of G(b,b) equals 2n only up to a unit once n > 2.
  CHECK(check_gauss_squares(2).bb_exact);
  CHECK_FALSE(check_gauss_squares(6).bb_exact);
}

TEST_CASE("quadratic Gauss sum of order 5 squares to 5") {
  const auto w = RootOfUnity::from_exponent(5, 1);
  const CycElt g = gauss_brute(1, 0, w);
  CHECK(g * g == CycElt::constant(5, 5));
  const CycElt g2 = gauss_brute(2, 0, w);
  CHECK(g2 == -g);
}
