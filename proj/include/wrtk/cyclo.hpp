#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "wrtk/qlaurent.hpp"

namespace wrtk {

/// Integer coefficients of the t-th cyclotomic polynomial, lowest degree first.
std::vector<mpz_class> cyclotomic_poly(int t);

/**
 * Element of Q(zeta_t) stored as numerators over a common positive
 * denominator, reduced modulo Phi_t (so there are exactly phi(t) slots).
 *
 * Because {1, zeta, ..., zeta^{phi(t)-1}} is an integral basis of the ring
 * of integers, is_integral() is exactly membership in Z[zeta_t].
 */
class CycElt {
 public:
  CycElt() : CycElt(1) {}
  /// Zero of Q(zeta_t).
  explicit CycElt(int t);

  static CycElt constant(int t, const mpq_class& c);
  /// zeta_t^e for any integer e.
  static CycElt root_power(int t, long e);
  /// sum_i sums[i] zeta_t^i / den with sums of length t (unreduced power sums).
  static CycElt from_power_sums(int t, const std::vector<mpz_class>& sums, const mpz_class& den = 1);
  /// Coefficient list c_0..c_{phi-1} of sum c_i zeta_t^i.
  static CycElt from_coeffs(int t, const std::vector<mpq_class>& coeffs);

  int conductor() const { return t_; }
  int degree() const { return static_cast<int>(num_.size()); }
  mpq_class coeff(int i) const;
  std::vector<mpq_class> coeffs() const;
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  bool is_zero() const;
  bool is_integral() const { return den_ == 1; }
  /// Rational value when the element lies in Q, nullopt otherwise.
  std::optional<mpq_class> as_rational() const;

  /// zeta -> zeta^{-1}; complex conjugation under every embedding.
  CycElt conj() const;
  /// The automorphism zeta -> zeta^a, gcd(a,t) = 1.
  CycElt galois(long a) const;
  /// Throws std::domain_error on zero.
  CycElt inverse() const;
  CycElt pow(long n) const;

  CycElt& operator+=(const CycElt& o);
  CycElt& operator-=(const CycElt& o);
  CycElt& operator*=(const CycElt& o);
  CycElt& operator*=(const mpq_class& s);
  friend CycElt operator+(CycElt a, const CycElt& b) { return a += b; }
  friend CycElt operator-(CycElt a, const CycElt& b) { return a -= b; }
  friend CycElt operator*(CycElt a, const CycElt& b) { return a *= b; }
  friend CycElt operator*(CycElt a, const mpq_class& s) { return a *= s; }
  friend CycElt operator*(const mpq_class& s, CycElt a) { return a *= s; }
  friend CycElt operator/(const CycElt& a, const CycElt& b) { return a * b.inverse(); }
  friend CycElt operator-(CycElt a);
  friend bool operator==(const CycElt& a, const CycElt& b) {
    return a.t_ == b.t_ && a.den_ == b.den_ && a.num_ == b.num_;
  }

 private:
  void normalize();
  int t_;
  std::vector<mpz_class> num_;
  mpz_class den_{1};
};

/// Image of zeta_s in Z[zeta_t] for s | t.
CycElt embed(const CycElt& x, int t);

/// Accumulates sum c_i zeta_t^{e_i} with exponents taken mod t; reduce() is done once at the end.
class PowerSumAccumulator {
 public:
  explicit PowerSumAccumulator(int t) : t_(t), sums_(static_cast<std::size_t>(t)) {}
  void add(long e, const mpz_class& c);
  /// Adds sum_e f_e zeta_t^{u*e + shift} for the quarter-exponent terms of f.
  void add_evaluated(const QLaurent& f, long u, long shift = 0);
  void add_shifted(const PowerSumAccumulator& o, long shift);
  CycElt reduce(const mpz_class& den = 1) const;
  int conductor() const { return t_; }

 private:
  int t_;
  std::vector<mpz_class> sums_;
};

/// y/x when it lies in Z[zeta_t], nullopt otherwise.  x must be non-zero.
std::optional<CycElt> divides(const CycElt& x, const CycElt& y);
/// x/y is a unit of Z[zeta_t].  Zero is associate only to zero; both zero throws.
bool is_associate(const CycElt& x, const CycElt& y);
bool is_unit(const CycElt& x);

enum class Group { SU2, SO3 };
std::string to_string(Group g);

/**
 * Choice of root of unity: xi has order r and xi^{1/4} = zeta_t^u, where
 * the conductor is t = 8r for odd r and t = 4r for even r.
 */
struct RootSpec {
  Group group = Group::SO3;
  int r = 3;
  long u = 2;
  int t = 24;
  /// Order of xi^{1/4}: one of r, 2r, 4r.
  int ord4 = 12;

  /**
   * Validates the data.  Throws SpecError when xi is not primitive of order
   * r, when SO(3) is asked with even r, or (unless allow_degenerate) in the
   * degenerate case G = SU(2) with ord4 = 2r where F_{U^±} vanishes.
   */
  static RootSpec make(Group g, int r, std::optional<long> u = std::nullopt, bool allow_degenerate = false);

  bool degenerate() const { return group == Group::SU2 && ord4 == 2 * r; }
  /// (xi^{1/4})^e
  CycElt quarter_power(long e) const { return CycElt::root_power(t, u * e); }
  /// xi^e
  CycElt xi_power(long e) const { return CycElt::root_power(t, 4 * u * e); }
  /// e_8 = exp(pi i / 4)
  CycElt e8() const { return CycElt::root_power(t, t / 8); }
  /// j with xi = zeta_r^j, for work inside the smaller ring Z[zeta_r].
  long xi_exponent_mod_r() const;
};

int conductor_for(int r);
/// Smallest u >= 1 giving xi of order r with xi^{1/4} of order 4r: xi^{1/4} = exp(pi i/2r).
long default_u(int r);
/// The four u with xi = exp(2 pi i / r), in increasing order.
std::vector<long> fourth_root_choices(int r);
/// Every u in [0,t) producing a primitive r-th root xi, non-degenerate for g.
std::vector<long> all_valid_u(Group g, int r);

/// ev_xi: q^{1/4} -> xi^{1/4}, as an element of Z[zeta_t].
CycElt ev_xi(const QLaurent& f, const RootSpec& spec);
/// q^{1/4} -> zeta_t^u
CycElt evaluate(const QLaurent& f, int t, long u);

/// A primitive r-th root xi = zeta_t^e inside Z[zeta_t].
struct XiRing {
  int t;
  long e;
  int r;
  CycElt power(long k) const { return CycElt::root_power(t, e * k); }
};
/// xi inside Z[zeta_t], t the conductor of the RootSpec.
XiRing full_ring(const RootSpec& spec);
/// xi inside Z[zeta_r].
XiRing small_ring(const RootSpec& spec);

/// (xi^a; xi)_m
CycElt xi_pochhammer(const XiRing& x, long a, long m);
/// O_xi = (xi;xi)_{floor((r-1)/2)}
CycElt O_xi(const XiRing& x);
/// x_k = ev_xi(X_k)
CycElt x_k(const XiRing& x, long k);

/// Certified enclosure of the canonical complex image zeta_t -> exp(2 pi i/t).
struct ComplexInterval {
  double re_lo, re_hi, im_lo, im_hi;
};
ComplexInterval complex_embed(const CycElt& x, int precision_bits = 128);
/// Sign (+1/-1) of the real part, raising precision until the enclosure excludes 0.
int real_sign(const CycElt& x);

/**
 * Integral square root of n in Z[zeta_t] for n = 2 or n = spec.r, with
 * positive canonical embedding.  sqrt 2 is e_8 + e_8^{-1}; sqrt r comes
 * from the product of |1 - xi^j|.  The square is re-checked exactly.
 */
CycElt sqrt_in_ring(long n, const RootSpec& spec);

}  // namespace wrtk
