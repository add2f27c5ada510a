#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wrtk/cyclo.hpp"
#include "wrtk/qlaurent.hpp"
#include "wrtk/zqlaurent.hpp"

namespace wrtk {

/// Integral quadratic form Q(n) = a2 n^2 + a1 n + a0.
struct QuadForm {
  long a2 = 0, a1 = 0, a0 = 0;
  long operator()(long n) const { return a2 * n * n + a1 * n + a0; }
  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

/**
 * An element of the ideal I_k of Z[z^{±1}, q^{±1}], kept as an explicit
 * combination sum coeff * z^d * (q^a z;q)_k of generators.  Membership is
 * therefore certified by construction.
 */
struct IkElement {
  struct Term {
    QLaurent coeff;  ///< must lie in Z[q^{±1}]
    long d = 0;
    long a = 0;
  };
  long k = 0;
  std::vector<Term> terms;

  /// The single generator z^d (q^a z;q)_k.
  static IkElement generator(long k, long d, long a);
  ZQLaurent materialize() const;
};

/// Lambda_Q: the Z[q^{±1/4}]-linear map z^j -> q^{Q(j)}.
QLaurent lambda_Q(const ZQLaurent& f, const QuadForm& Q);
/// Lambda_Q(f) = q^{a0} Lambda_{Q0}(f(q^{a1} z)) with Q0(n) = a2 n^2.
QLaurent lambda_Q_reduced(const ZQLaurent& f, const QuadForm& Q);

/**
 * Lambda_Q(e) / X_k, certified exact in Z[q^{±1}].  Both evaluation routes
 * are computed and compared.  Throws Falsification when the routes differ or
 * the division leaves a remainder.
 */
QLaurent check_thm1(const IkElement& e, const QuadForm& Q);

/// sum_{j=0}^k (-1)^j binomq(k,j) q^{Q(j) + j(j-1)/2}, divided exactly by X_k (Falsification otherwise).
QLaurent andrews_sum(long k, const QuadForm& Q);

/// y_l = z^{-l} (1 - z^{-1}) (q^{-l} z;q)_{2l+1}
ZQLaurent y_poly(long l);
/// Lambda_Q((z + z^{-1})^m y_l) / (2 (q^{l+1};q)_{l+1}); Q must have a1 = 0.
QLaurent check_symmetric_divisibility(long m, long l, const QuadForm& Q);
/// Lambda_Q((q^{-l} z;q)_{2l+1} z^m) / (q^{l+1};q)_{l+1}; Q must have a1 = 0.
QLaurent check_odd_divisibility(long m, long l, const QuadForm& Q);

/**
 * Finite-window necessary condition for ideal membership: f(q^b, q) is
 * divisible by (q;q)_k for every b in [b_lo, b_hi].
 */
bool ideal_window_check(const IkElement& e, long b_lo = -6, long b_hi = 6);

/// Polynomial in z_1..z_n (non-negative exponents) with Z[q^{±1/4}] coefficients.
class MultiPoly {
 public:
  using Exps = std::vector<long>;

  explicit MultiPoly(std::size_t nvars = 1) : nvars_(nvars) {}
  static MultiPoly constant(std::size_t nvars, const QLaurent& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exps, QLaurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Exps& e, const QLaurent& c);
  long degree(std::size_t var) const;

  /// Value at z_i = q^{m_i}.
  QLaurent at_q_powers(const std::vector<long>& m) const;

  MultiPoly& operator+=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const QLaurent& c);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

 private:
  std::size_t nvars_;
  std::map<Exps, QLaurent> terms_;
};

/// (z_var;q)_k in nvars variables.
MultiPoly multi_pochhammer(std::size_t nvars, std::size_t var, long k);

/**
 * Coefficients c_k of f = numerator / denominator in the basis
 * prod_i (z_i;q)_{k_i}/(q;q)_{k_i}, computed by evaluating at z_i = q^{-k_i}
 * in order of increasing |k|.  Every value f(q^{-k}) must be an exact
 * element of Z[q^{±1/4}]; otherwise the hypothesis of the expansion theorem
 * fails and Falsification is thrown.  Only non-zero coefficients are kept.
 *
 * The result is re-materialized and compared with the input before it is
 * returned.
 */
std::map<std::vector<long>, QLaurent> expand_pochhammer_basis(const MultiPoly& numerator,
                                                              const QLaurent& denominator = QLaurent(1L));

/// Checks that (q^a z_1 z_2;q)_k expands over (q;q)_k/((q;q)_{k1}(q;q)_{k2}) (z_1;q)_{k1}(z_2;q)_{k2} with k_i <= k.
bool check_product_expansion(long a, long k);

/**
 * sum_{n=0}^{r-1} xi^{Q(n)} f(xi^n, xi) divided by x_k O_xi in Z[xi],
 * evaluated literally from the materialized f.  Requires 0 <= k < r.
 * Throws Falsification when the quotient is not integral.
 */
CycElt check_div1(const IkElement& e, const QuadForm& Q, const RootSpec& spec);

/**
 * y = sum_{n=0}^{r-1} xi^{Q(n)} ev(binomq(n+a, k)) divided by x_{r-1-k} in Z[xi].
 * Throws Falsification when the quotient is not integral.
 */
CycElt check_binomial_sum_division(long a, long k, const QuadForm& Q, const RootSpec& spec);

/**
 * Batch form of the two root-of-unity checks for one r, with xi = zeta_r^{xi_exp},
 * over every k < r, Q with coefficients in [-c, c] and generators
 * z^d (q^a z;q)_k with d, a in [-c, c].  Values of (xi^m;xi)_k and of
 * binomq(m,k) at xi depend only on m mod r and are tabulated once.
 * Returns the number of instances checked; throws Falsification on the
 * first failure.
 */
long verify_root_divisibility(int r, long c, long xi_exp = 1);

}  // namespace wrtk
