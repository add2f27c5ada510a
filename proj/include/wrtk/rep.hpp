#pragma once

#include <vector>

#include "wrtk/qlaurent.hpp"

namespace wrtk {

/**
 * Element of R = Z[v^{±1}][V], v = q^{1/2}: a polynomial in V whose
 * coefficients are Laurent polynomials in q^{1/4} (only even quarter
 * exponents occur for elements built from V_n, P_n and lambda_n).
 */
class RElt {
 public:
  RElt() = default;
  RElt(long c) : RElt(QLaurent(c)) {}  // NOLINT(google-explicit-constructor)
  explicit RElt(const QLaurent& c);
  /// The generator V = V_2.
  static RElt V();

  /// Coefficient of V^i (zero beyond the degree).
  QLaurent coeff(std::size_t i) const;
  /// Degree in V; -1 for zero.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  /// f(lambda) for a value of V.
  QLaurent evaluate(const QLaurent& lambda) const;

  RElt& operator+=(const RElt& o);
  RElt& operator-=(const RElt& o);
  friend RElt operator+(RElt a, const RElt& b) { return a += b; }
  friend RElt operator-(RElt a, const RElt& b) { return a -= b; }
  friend RElt operator*(const RElt& a, const RElt& b);
  friend RElt operator*(const QLaurent& s, const RElt& a);
  friend bool operator==(const RElt& a, const RElt& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<QLaurent> c_;
};

/// True when every exponent is a power of v = q^{1/2}.
bool in_v_powers(const QLaurent& f);

/// V_n from V_1 = 1, V_2 = V, V_n V = V_{n+1} + V_{n-1}.  Throws std::invalid_argument for n < 1.
const RElt& V_n(long n);

/// P_n^{(0)} = prod_{j=1}^n (V - lambda_{2j-1}),  P_n^{(1)} = prod_{j=1}^n (V - lambda_{2j}).
RElt P_basis(long n, int eps);

/// Coefficients a_k with x = sum_k a_k P_k^{(eps)}.
std::vector<QLaurent> to_P_basis(const RElt& x, int eps);

/// Coefficients a_n (index n-1) with x = sum_{n>=1} a_n V_n.
std::vector<QLaurent> to_V_basis(const RElt& x);

/**
 * V_n in the P^{(eps)} basis.  The coefficients are checked against
 * qbinom{n+k}{2k+1} (eps = 0) and qbinom{n+k}{2k+1} lambda_n/lambda_{k+1}
 * (eps = 1, with the division by lambda_{k+1} required to be exact);
 * Falsification otherwise.
 */
std::vector<QLaurent> expand_Vn(long n, int eps);

/// <x, y> = sum_n a_n [n] y(lambda_n) for x = sum a_n V_n.
QLaurent rosso_pairing(const RElt& x, const RElt& y);

/// S_p^{(1)} = V prod_{j=1}^p (V^2 - lambda_j^2).
RElt S_odd(long p);
/// S_p^{(0)} = prod_{j=1}^p (V^2 - lambda_j^2).
RElt S_even(long p);
/// prod_{j=0}^p (V^2 - lambda_j^2), the product including lambda_0 = 2.
RElt S_even_with_zero(long p);

/**
 * <S_p^{(eps)}, P_k^{(eps)}>, checked to be 0 for k != p and, for k = p,
 * {2k+1}!/{1} (eps = 0) or [p+1] lambda_{p+1} prod_{j=1}^p {j}{2p+2-j}
 * (eps = 1, which also equals {2p+1}!/{1} lambda_{p+1}).  Returns the
 * pairing value; throws Falsification on a mismatch.
 */
QLaurent verify_orthogonality(long k, long p, int eps);

/// B(n, l, j) by the recursion {j-n}{j+n} B(n-1,l,j) + q^j (1 - q^{-l}) B(n-1,l-1,j+1).
QLaurent B_trace_recursive(long n, long l, long j);
/// q^{-(j+l)n} (q;q)_n (q;q)_{n-l} binomq(j-1, n-l) binomq(j+n, n-l), zero for l > n.
QLaurent B_trace_closed(long n, long l, long j);
/**
 * The closed form that actually solves the recursion:
 * (-1)^l q^{l(2j+l-1)} times B_trace_closed.  The two printed formulas
 * differ by exactly this unit once l >= 1.
 */
QLaurent B_trace_closed_corrected(long n, long l, long j);
/**
 * Recursion against the corrected closed form; the value must also lie in (q;q)_n Z[q^{±1}].
 * Throws Falsification otherwise.
 */
QLaurent B_trace(long n, long l, long j);

}  // namespace wrtk
