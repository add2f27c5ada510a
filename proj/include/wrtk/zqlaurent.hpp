#pragma once

#include <map>

#include "wrtk/qlaurent.hpp"

namespace wrtk {

/**
 * Laurent polynomial in z with Z[q^{±1/4}] coefficients, the home of
 * Pochhammer symbols (q^a z;q)_k and of the ideals I_k.
 */
class ZQLaurent {
 public:
  using Terms = std::map<long, QLaurent>;

  ZQLaurent() = default;
  ZQLaurent(const QLaurent& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(0, c);
  }
  /// c * z^d
  static ZQLaurent monomial(const QLaurent& c, long z_exp);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  QLaurent coeff(long z_exp) const;
  void add_term(long z_exp, const QLaurent& c);

  /// The involution z -> z^{-1}.
  ZQLaurent sigma() const;
  /// Substitution z -> q^c z, c an integer power of q.
  ZQLaurent shift_z(long c) const;

  ZQLaurent& operator+=(const ZQLaurent& o);
  ZQLaurent& operator-=(const ZQLaurent& o);
  friend ZQLaurent operator+(ZQLaurent a, const ZQLaurent& b) { return a += b; }
  friend ZQLaurent operator-(ZQLaurent a, const ZQLaurent& b) { return a -= b; }
  friend ZQLaurent operator*(const ZQLaurent& a, const ZQLaurent& b);
  friend bool operator==(const ZQLaurent& a, const ZQLaurent& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

/// (q^a z;q)_m built as a product of linear factors.
ZQLaurent pochhammer(long a, long m);
/// (q^a z;q)_m from the q-binomial expansion sum_j (-1)^j binomq(m,j) q^{j(j-1)/2 + aj} z^j.
ZQLaurent pochhammer_newton(long a, long m);

}  // namespace wrtk
