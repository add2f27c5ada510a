#include "wrtk/gausssum.hpp"

#include <numeric>
#include <stdexcept>

namespace wrtk {

namespace {

long mod(long a, long n) {
  const long m = a % n;
  return m < 0 ? m + n : m;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Largest prime-power divisor p^e of n for the smallest prime p | n.
long leading_prime_power(long n) {
  const long p = prime_factors(n).front();
  long pe = 1;
  while (n % p == 0) {
    n /= p;
    pe *= p;
  }
  return pe;
}

}  // namespace

RootOfUnity::RootOfUnity(CycElt root, int order) : root_(std::move(root)), order_(order) {
  if (order_ < 1) throw std::invalid_argument("RootOfUnity: order must be positive");
  const CycElt one = CycElt::constant(root_.conductor(), 1);
  if (root_.pow(order_) != one) throw std::invalid_argument("RootOfUnity: element is not a root of unity of the claimed order");
  for (long p : prime_factors(order_))
    if (root_.pow(order_ / p) == one)
      throw std::invalid_argument("RootOfUnity: element has smaller order than claimed");
}

RootOfUnity RootOfUnity::from_exponent(int t, long e) {
  const long g = std::gcd(mod(e, t), static_cast<long>(t));
  return RootOfUnity(CycElt::root_power(t, e), static_cast<int>(t / g), true);
}

RootOfUnity RootOfUnity::power(long c) const {
  const long g = std::gcd(mod(c, order_), static_cast<long>(order_));
  return RootOfUnity(element_power(c), static_cast<int>(order_ / g), true);
}

CycElt RootOfUnity::element_power(long e) const { return root_.pow(mod(e, order_)); }

CycElt gauss_brute(long b, long d, const RootOfUnity& w) {
  const long n = w.order();
  std::vector<long> count(static_cast<std::size_t>(n), 0);
  for (long k = 0; k < n; ++k) ++count[static_cast<std::size_t>(mod(mod(b, n) * k % n * k + mod(d, n) * k, n))];
  CycElt out(w.root().conductor());
  CycElt power = CycElt::constant(w.root().conductor(), 1);
  for (long j = 0; j < n; ++j) {
    if (count[static_cast<std::size_t>(j)] != 0) out += power * mpq_class(count[static_cast<std::size_t>(j)]);
    power *= w.root();
  }
  return out;
}

CycElt gauss_reduce(long b, long d, const RootOfUnity& w) {
  const long n = w.order();
  const int t = w.root().conductor();
  if (n == 1) return CycElt::constant(t, 1);
  b = mod(b, n);
  d = mod(d, n);
  const long c = std::gcd(b, n);
  if (c > 1) {
    if (d % c != 0) return CycElt(t);
    return gauss_reduce(b / c, d / c, w.power(c)) * mpq_class(c);
  }
  if (n % 4 == 0 && d % 2 != 0) return CycElt(t);
  const long n1 = leading_prime_power(n);
  if (n1 == n) return gauss_brute(b, d, w);
  const long n2 = n / n1;
  return gauss_reduce(b * n1, d, w.power(n1)) * gauss_reduce(b * n2, d, w.power(n2));
}

CycElt gauss_sum(long b, long d, const RootSpec& spec) {
  return gauss_reduce(b, d, RootOfUnity::from_exponent(spec.t, 4 * spec.u));
}

GaussSquareReport check_gauss_squares(int n) {
  GaussSquareReport rep;
  rep.n = n;
  const auto w = RootOfUnity::from_exponent(n, 1);
  const CycElt target = CycElt::constant(n, n % 2 != 0 ? n : 2 * n);
  for (long b = 1; b < n || (n == 1 && b == 1); ++b) {
    if (std::gcd(b, static_cast<long>(n)) != 1) continue;
    const CycElt g = gauss_brute(b, 0, w);
    const CycElt sq = g * g;
    if (n % 4 == 2) {
      rep.squares_ok = rep.squares_ok && sq.is_zero();
      const CycElt h = gauss_brute(b, b, w);
      rep.bb_associate_ok = rep.bb_associate_ok && is_associate(h * h, target);
      rep.bb_exact = rep.bb_exact && h * h == target;
    } else {
      rep.squares_ok = rep.squares_ok && is_associate(sq, target);
    }
  }
  return rep;
}

}  // namespace wrtk
