#include <doctest.h>

#include <random>

#include "wrtk/errors.hpp"
#include "wrtk/linkpair.hpp"

using namespace wrtk;

namespace {

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), std::vector<long>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

long det(IntMatrix m) {
  // fraction-free elimination (Bareiss)
  const std::size_t n = m.size();
  long sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? 1 : sign * m[n - 1][n - 1];
}

bool is_square_mod(long a, long p) {
  a = ((a % p) + p) % p;
  for (long x = 0; x < p; ++x)
    if ((x * x) % p == a) return true;
  return false;
}

std::vector<LinkingPairing> pool() {
  std::vector<LinkingPairing> out;
  for (long d : {2, 3, 4, 5, 7, 8, 9}) {
    out.push_back(phi_diagonal({d}));
    out.push_back(phi_diagonal({-d}));
  }
  out.push_back(phi_diagonal({2, 2}));
  out.push_back(phi_diagonal({2, -2}));
  out.push_back(phi_diagonal({-2, -2}));
  out.push_back(phi_diagonal({4, 4}));
  out.push_back(phi_diagonal({4, -4}));
  out.push_back(phi_diagonal({3, 5}));
  out.push_back(phi_diagonal({-3, -5}));
  out.push_back(phi_diagonal({-1, 15}));
  out.push_back(phi_B({{2, 1}, {1, 8}}));
  out.push_back(phi_B({{0, 3}, {3, 2}}));
  out.push_back(E0(1));
  out.push_back(E0(2));
  out.push_back(block_sum(E0(1), phi_diagonal({2})));
  out.push_back(phi_diagonal({2, 2, 2}));
  out.push_back(phi_diagonal({-2, 2, 2}));
  return out;
}

}  // namespace

TEST_CASE("Smith normal form") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> entry(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    IntMatrix B(n, std::vector<long>(n));
    for (auto& row : B)
      for (auto& x : row) x = entry(rng);
    const SmithForm s = smith_normal_form(B);
    const IntMatrix D = multiply(multiply(s.U, B), s.V);
    long prod = 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) CHECK(D[i][j] == (i == j ? s.diagonal[i].get_si() : 0));
      CHECK(s.diagonal[i] >= 0);
      if (i + 1 < n && s.diagonal[i] != 0) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
      prod *= s.diagonal[i].get_si();
    }
    CHECK(std::abs(det(s.U)) == 1);
    CHECK(std::abs(det(s.V)) == 1);
    CHECK(std::abs(det(B)) == prod);
  }
}

TEST_CASE("phi_B examples") {
  const auto trivial = phi_B({{1}});
  CHECK(trivial.rank() == 0);
  CHECK(trivial.group_order() == 1);
  for (long b = 2; b <= 9; ++b) {
    const auto p = phi_B({{b}});
    CHECK(p.orders == std::vector<long>{b});
    CHECK(p.gram[0][0] == mpq_class(1, b));
    CHECK(phi_B({{-b}}).gram[0][0] == mpq_class(b - 1, b));
  }
  const auto d23 = phi_diagonal({2, 3});
  CHECK(d23.group_order() == 6);
  CHECK(is_isomorphic(d23, block_sum(phi_diagonal({2}), phi_diagonal({3}))));
  // x^t B^{-1} y on the original coordinates: e_1 has self-linking 1/2 and e_2 has 1/3
  const auto cyc = phi_B({{2, 0}, {0, 3}});
  CHECK(cyc.orders == std::vector<long>{6});
  // the generator (1,1) has self-linking 1/2 + 1/3 = 5/6, and 5 is not a square mod 6
  CHECK(is_isomorphic(cyc, LinkingPairing{{6}, {{mpq_class(5, 6)}}}));
  CHECK_FALSE(is_isomorphic(cyc, phi_B({{6}})));
  CHECK_THROWS_AS(phi_B({{1, 2}, {2, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(phi_B({{1, 2}, {3, 4}}), std::invalid_argument);
}

TEST_CASE("phi_B is a non-singular pairing of order |det B|") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> entry(-5, 5);
  int tested = 0;
  while (tested < 100) {
    const std::size_t n = 1 + tested % 3;
    IntMatrix B(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) B[i][j] = B[j][i] = entry(rng);
    const long d = det(B);
    if (d == 0 || std::abs(d) > 200) continue;
    ++tested;
    const auto p = phi_B(B);
    CHECK(p.group_order() == std::abs(d));
    CHECK_NOTHROW(p.validate());
    // permuting rows and columns together gives an isomorphic pairing
    IntMatrix P(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) P[i][j] = B[n - 1 - i][n - 1 - j];
    CHECK(is_isomorphic(p, phi_B(P)));
    // congruent matrices give isomorphic pairings
    IntMatrix E(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) E[i][i] = 1;
    if (n > 1) E[0][1] = entry(rng);
    IntMatrix Et(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) Et[i][j] = E[j][i];
    CHECK(is_isomorphic(p, phi_B(multiply(multiply(Et, B), E))));
  }
}

TEST_CASE("cyclic pairings of odd prime order follow the square classes") {
  for (long p : {3, 5, 7, 11, 13})
    for (long a = 1; a < p; ++a)
      for (long b = 1; b < p; ++b) {
        LinkingPairing x{{p}, {{mpq_class(a, p)}}}, y{{p}, {{mpq_class(b, p)}}};
        CHECK(is_isomorphic(x, y) == is_square_mod(a * b, p));
      }
  CHECK_FALSE(is_isomorphic(phi_diagonal({3}), phi_diagonal({-3})));
  CHECK(is_isomorphic(phi_diagonal({5}), phi_diagonal({-5})));
}

TEST_CASE("block sums") {
  const auto nu = phi_B({{2, 1}, {1, 8}});
  CHECK(is_isomorphic(block_sum(nu, phi_B({{1}})), nu));
  const auto two = block_sum(phi_diagonal({2}), phi_diagonal({2}));
  CHECK(two.orders == std::vector<long>{2, 2});
  // connected sum of lens spaces: the pairing of a diagonal union is the block sum
  CHECK(is_isomorphic(phi_diagonal({3, -4}), block_sum(phi_diagonal({3}), phi_diagonal({-4}))));
}

TEST_CASE("isomorphism is an equivalence relation on a pool") {
  const auto ps = pool();
  const std::size_t n = ps.size();
  std::vector<std::vector<bool>> iso(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto w = find_isomorphism(ps[i], ps[j]);
      iso[i][j] = w.has_value();
      if (w) CHECK(check_isomorphism(ps[i], ps[j], *w));
    }
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(iso[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(iso[i][j] == iso[j][i]);
      for (std::size_t k = 0; k < n; ++k)
        if (iso[i][j] && iso[j][k]) CHECK(iso[i][k]);
    }
  }
  // a few known classes inside the pool
  // on Z/2 the values 1/2 and -1/2 coincide
  CHECK(is_isomorphic(phi_diagonal({2, 2}), phi_diagonal({-2, -2})));
  // on Z/4 the unit squares are {1}, so the signs are visible
  CHECK_FALSE(is_isomorphic(phi_diagonal({4, 4}), phi_diagonal({-4, -4})));
  CHECK_FALSE(is_isomorphic(phi_diagonal({4}), phi_diagonal({-4})));
  // Z/15: the generators 5 and 3 self-link to 25/15 = 2/3 and 9/15 = 3/5
  CHECK(is_isomorphic(phi_diagonal({-1, 15}), LinkingPairing{{3, 5}, {{mpq_class(2, 3), 0}, {0, mpq_class(3, 5)}}}));
  CHECK_FALSE(is_isomorphic(phi_diagonal({-1, 15}), phi_diagonal({3, 5})));
  CHECK_FALSE(is_isomorphic(E0(1), phi_diagonal({2, 2})));
  CHECK_FALSE(is_isomorphic(E0(1), phi_diagonal({4})));
}

TEST_CASE("E0 absorbed by a cyclic summand") {
  for (int k : {1, 2, 3}) {
    const long d = 1L << k;
    const auto lhs = block_sum(E0(k), phi_diagonal({-d}));
    const auto rhs = phi_diagonal({-d, d, -d});
    const auto w = find_isomorphism(lhs, rhs);
    REQUIRE(w.has_value());
    CHECK(check_isomorphism(lhs, rhs, *w));
    // With two positive summands the identity holds only on Z/2, where 1/2 = -1/2.
    CHECK(is_isomorphic(lhs, phi_diagonal({-d, d, d})) == (k == 1));
    CHECK_FALSE(is_isomorphic(E0(k), phi_diagonal({d, d})));
    CHECK_FALSE(is_isomorphic(E0(k), phi_diagonal({d, -d})));
  }
  CHECK_NOTHROW(E0(2).validate());
}

TEST_CASE("stabilized diagonal") {
  CHECK(stabilized_diagonal({{3, -5}, {}}, 1) == std::vector<long>{3, -5});
  const auto one = stabilized_diagonal({{}, {1}}, 1);
  CHECK(one == std::vector<long>{-2, 2, -2});
  CHECK(is_isomorphic(phi_diagonal(one), phi_diagonal({-2, 2, 2})));
  CHECK(stabilized_diagonal({{3}, {1}}, 1) == std::vector<long>{3, -2, 2, -2});
  CHECK(stabilized_diagonal({{}, {2}}, 1) == std::vector<long>{-4, 4, -4});
  CHECK(stabilized_diagonal({{-3}, {1}}, 2) == std::vector<long>{-3, -3, -2, 2, -2, 2, -2});
  CHECK(stabilized_diagonal({{}, {1, 2}}, 1) == std::vector<long>{-2, 2, -2, -4, 4, -4});
  for (long b : stabilized_diagonal({{7, -9}, {1, 2}}, 1)) CHECK(is_prime_power_framing(b));
  CHECK_THROWS_AS(stabilized_diagonal({{6}, {}}, 1), std::invalid_argument);
  // the group outgrows the search bound: the list is still produced
  CHECK(stabilized_diagonal({{5}, {3}}, 2).size() == 2 + 5);
}

TEST_CASE("prime-type framings and enhancements") {
  for (long b : {0, 1, -1, 2, -4, 8, 9, -27, 13, 49}) CHECK(is_prime_power_framing(b));
  for (long b : {6, -10, 12, 36, 100}) CHECK_FALSE(is_prime_power_framing(b));
  const auto pres = enhanced_presentation({-2, 2, 2}, {0, 1, -1});
  CHECK(pres.framings == std::vector<long>{-2, 2, 2, 0, 1, -1});
  CHECK(pres.beta_zero() == 1);
  CHECK_THROWS_AS(enhanced_presentation({3}, {2}), std::invalid_argument);
}

TEST_CASE("validation and JSON") {
  LinkingPairing bad{{4}, {{mpq_class(1, 8)}}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  LinkingPairing singular{{4}, {{mpq_class(1, 2)}}};
  CHECK_FALSE(singular.is_nonsingular());
  CHECK_THROWS_AS(singular.validate(), std::invalid_argument);
  LinkingPairing asym{{2, 2}, {{mpq_class(1, 2), mpq_class(1, 2)}, {mpq_class(0), mpq_class(1, 2)}}};
  CHECK_THROWS_AS(asym.validate(), std::invalid_argument);

  const auto p = block_sum(E0(2), phi_diagonal({-3}));
  const auto back = pairing_from_json(pairing_to_json(p));
  CHECK(back.orders == p.orders);
  CHECK(back.gram == p.gram);
  CHECK_THROWS_AS(pairing_from_json(nlohmann::json::parse(R"({"orders":[4],"gram":[[[1,2]]]})")), SchemaError);
  CHECK_THROWS_AS(pairing_from_json(nlohmann::json::parse(R"({"orders":[4]})")), SchemaError);
  CHECK_THROWS_AS(find_isomorphism(phi_diagonal({1024}), phi_diagonal({1024})), std::length_error);
}
