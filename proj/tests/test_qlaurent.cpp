#include <doctest.h>

#include <random>

#include "wrtk/qlaurent.hpp"
#include "wrtk/zqlaurent.hpp"

using namespace wrtk;

namespace {

QLaurent q(long e) { return QLaurent::q_power(4 * e); }

// Dense integer polynomial in q used as an independent long-division oracle.
std::vector<long> dense(const QLaurent& f) {
  std::vector<long> out;
  for (const auto& [e, c] : f.terms()) {
    REQUIRE(e % 4 == 0);
    REQUIRE(e >= 0);
    if (out.size() <= static_cast<std::size_t>(e / 4)) out.resize(static_cast<std::size_t>(e / 4) + 1);
    out[static_cast<std::size_t>(e / 4)] = c.get_si();
  }
  return out;
}

QLaurent random_poly(std::mt19937& rng, int terms, int span) {
  std::uniform_int_distribution<int> exp(-span, span), coef(-5, 5);
  QLaurent f;
  for (int i = 0; i < terms; ++i) f.add_term(exp(rng), coef(rng));
  return f;
}

}  // namespace

TEST_CASE("braces are antisymmetric and expand as expected") {
  CHECK(q_braces(0).is_zero());
  CHECK(q_braces(1) == QLaurent::q_power(2) - QLaurent::q_power(-2));
  CHECK(q_braces(2) == q(1) - q(-1));
  for (long n = -6; n <= 6; ++n) CHECK(q_braces(-n) == -q_braces(n));
}

TEST_CASE("quantum integer times brace one recovers the brace") {
  for (long n = -7; n <= 7; ++n) CHECK(q_int(n) * q_braces(1) == q_braces(n));
}

TEST_CASE("symmetric binomial small values and symmetry") {
  CHECK(q_bracket_binom(5, 0) == QLaurent(1L));
  CHECK(q_bracket_binom(2, 1) == QLaurent::q_power(2) + QLaurent::q_power(-2));
  CHECK(q_bracket_binom(3, 5).is_zero());
  CHECK(q_bracket_binom(3, -1).is_zero());
  for (long n = 0; n <= 12; ++n)
    for (long k = 0; k <= n; ++k) CHECK(q_bracket_binom(n, k) == q_bracket_binom(n, n - k));
}

TEST_CASE("round binomial matches bracket binomial up to a power of q") {
  for (long m = 0; m <= 12; ++m)
    for (long n = 0; n <= m; ++n) {
      const QLaurent round = q_round_binom(m, n);
      CHECK(round.in_integer_powers());
      CHECK(round == q_bracket_binom(m, n).shifted(2 * (m - n) * n));
    }
}

TEST_CASE("round binomial Pascal recursion") {
  // binomq(m,n) = binomq(m-1,n-1) + q^n binomq(m-1,n)
  for (long m = 1; m <= 12; ++m)
    for (long n = 1; n <= m; ++n)
      CHECK(q_round_binom(m, n) == q_round_binom(m - 1, n - 1) + q_round_binom(m - 1, n).shifted(4 * n));
}

TEST_CASE("round binomial edge values") {
  CHECK(q_round_binom(-3, 0) == QLaurent(1L));
  for (long n = 1; n <= 6; ++n) {
    QLaurent geom;
    for (long i = 0; i < n; ++i) geom += q(i);
    CHECK(q_round_binom(n, 1) == geom);
  }
  for (long k = 0; k <= 6; ++k) CHECK(q_round_binom(k, k + 1).is_zero());
  // negative top: (q^{-2};q)_2/(q;q)_2 = (1-q^-2)(1-q^-1)/((1-q)(1-q^2)) = q^{-3}
  CHECK(q_round_binom(-1, 2) == q(-3));
}

TEST_CASE("Pochhammer product agrees with the q-binomial expansion") {
  CHECK(pochhammer(3, 0) == ZQLaurent(QLaurent(1L)));
  ZQLaurent one_minus_z(QLaurent(1L));
  one_minus_z.add_term(1, QLaurent(-1L));
  CHECK(pochhammer(0, 1) == one_minus_z);
  for (long k = 0; k <= 8; ++k)
    for (long a = -4; a <= 4; ++a) CHECK(pochhammer(a, k) == pochhammer_newton(a, k));
}

TEST_CASE("z inversion is an involution and shifts compose") {
  const ZQLaurent f = pochhammer(-2, 5) * ZQLaurent::monomial(q(3), -2);
  CHECK(f.sigma().sigma() == f);
  CHECK(f.shift_z(2).shift_z(-2) == f);
  CHECK(pochhammer(0, 4).shift_z(3) == pochhammer(3, 4));
}

TEST_CASE("X_k small cases") {
  CHECK(X_poly(0) == QLaurent(1L));
  CHECK(X_poly(1) == QLaurent(1L) - q(1));
  CHECK(X_poly(3) == (QLaurent(1L) - q(2)) * (QLaurent(1L) - q(3)));
  for (long k = 0; k <= 8; ++k) CHECK(*exact_divide(q_pochhammer_const(1, k), q_pochhammer_const(1, k / 2)) == X_poly(k));
}

TEST_CASE("exact division successes and failures") {
  const QLaurent one_minus_q = QLaurent(1L) - q(1);
  CHECK(*exact_divide(QLaurent(1L) - q(2), one_minus_q) == QLaurent(1L) + q(1));
  CHECK_FALSE(exact_divide(one_minus_q, QLaurent(1L) - q(2)).has_value());
  CHECK_FALSE(exact_divide(QLaurent(1L), QLaurent(2L)).has_value());
  CHECK_THROWS_AS(exact_divide(one_minus_q, QLaurent()), std::domain_error);

  // X_3 / X_1 against a dense schoolbook division written here.
  const auto quo = exact_divide(X_poly(3), X_poly(1));
  REQUIRE(quo.has_value());
  std::vector<long> num = dense(X_poly(3)), den = dense(X_poly(1)), got(num.size() - den.size() + 1);
  for (std::size_t i = got.size(); i-- > 0;) {
    got[i] = num[i + den.size() - 1] / den.back();
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= got[i] * den[j];
  }
  for (long r : num) CHECK(r == 0);
  CHECK(dense(*quo) == got);
}

TEST_CASE("exact division inverts multiplication on random inputs") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const QLaurent f = random_poly(rng, 1 + trial % 20, 30);
    QLaurent g = random_poly(rng, 1 + (trial * 7) % 20, 30);
    if (g.is_zero()) g = QLaurent(1L);
    const auto quo = exact_divide(f * g, g);
    REQUIRE(quo.has_value());
    CHECK(*quo == f);
    const auto quo_q = exact_divide(to_rational(f * g), to_rational(g));
    REQUIRE(quo_q.has_value());
    CHECK(*to_integral(*quo_q) == f);
  }
}

TEST_CASE("text form round-trips") {
  const QLaurent f = q_bracket_binom(7, 3) * QLaurent(-3L) + QLaurent::q_power(-5);
  CHECK(parse_qlaurent(to_string(f)) == f);
  CHECK(to_string(QLaurent()) == "0");
  CHECK(parse_qlaurent("0").is_zero());
  CHECK(to_string(QLaurent(1L) - q(1)) == "1*q^(0/4) + -1*q^(4/4)");
  CHECK_THROWS_AS(parse_qlaurent("1*q^(3)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_qlaurent("x"), std::invalid_argument);
}
