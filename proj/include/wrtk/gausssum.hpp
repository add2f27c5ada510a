#pragma once

#include "wrtk/cyclo.hpp"

namespace wrtk {

/**
 * A root of unity together with its exact multiplicative order.  The
 * constructor verifies the order and throws std::invalid_argument when the
 * element is not a primitive root of the claimed order.
 */
class RootOfUnity {
 public:
  RootOfUnity(CycElt root, int order);
  /// zeta_t^e, whose order is t / gcd(e, t); no verification needed.
  static RootOfUnity from_exponent(int t, long e);

  const CycElt& root() const { return root_; }
  int order() const { return order_; }
  /// root^c, of order order/gcd(c, order).
  RootOfUnity power(long c) const;
  /// root^e for any integer e, reduced mod the order.
  CycElt element_power(long e) const;

 private:
  RootOfUnity(CycElt root, int order, bool /*trusted*/) : root_(std::move(root)), order_(order) {}
  CycElt root_;
  int order_;
};

/// G(b, d, w) = sum_{k=0}^{n-1} w^{b k^2 + d k}, n = ord(w), summed term by term.
CycElt gauss_brute(long b, long d, const RootOfUnity& w);

/**
 * The same sum by the standard reductions: pull out c = gcd(b, n) (the sum
 * vanishes unless c | d), vanish when 4 | n and d is odd, and split a
 * coprime factorization n = n1 n2 into G(b n1, d, w^{n1}) G(b n2, d, w^{n2}).
 * Prime-power cores with b a unit are summed directly.
 */
CycElt gauss_reduce(long b, long d, const RootOfUnity& w);

/// G(b, d, xi) for the xi of order r chosen by the RootSpec.
CycElt gauss_sum(long b, long d, const RootSpec& spec);

/// Outcome of the square-value checks for one order n.
struct GaussSquareReport {
  int n = 0;
  /// G(b,0)^2 ~ n, 0, 2n according to n odd, n = 2 mod 4, n = 0 mod 4, for every unit b.
  bool squares_ok = true;
  /// For n = 2 mod 4: G(b,b)^2 ~ 2n for every unit b (vacuously true otherwise).
  bool bb_associate_ok = true;
  /// For n = 2 mod 4: G(b,b)^2 equals 2n exactly for every unit b.
  bool bb_exact = true;
};
GaussSquareReport check_gauss_squares(int n);

}  // namespace wrtk
