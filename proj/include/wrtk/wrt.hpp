#pragma once

#include <optional>
#include <vector>

#include "wrtk/cyclo.hpp"
#include "wrtk/jones.hpp"

namespace wrtk {

/// A computed invariant with the data needed to interpret it.
struct InvariantResult {
  CycElt value;
  Group group = Group::SO3;
  RootSpec spec;
  /// Set when value lies in Z[zeta_t].
  bool integral = false;
  int beta_plus = 0, beta_minus = 0, beta_zero = 0;
};

/**
 * H^G(k, b, eps) = Sigma^{xi,G}_n q^{b(n^2-1)/4} qbinom{n+k}{2k+1} {k}! {n}
 * lambda_n^eps / lambda_{k+1}^eps, summed literally over n in [0, 4r) (odd n
 * for SO(3)) with the 1/4 prefactor.  The result must be integral;
 * Falsification otherwise.  Values are cached per (spec, k, b, eps).
 */
CycElt H(long k, long b, int eps, const RootSpec& spec);

/**
 * 2/x_{2k+1+eps} Sigma^{xi,G}_n q^{b(n^2-1)/4 - 3 eps n/2} f_eps(q^n, q) with
 * f_eps = z^{-k} (q^{-k} z;q)_{2k+1+eps}.  This is associate to H(k, b, eps).
 * Returns nullopt when x_{2k+1+eps} vanishes at xi (2k+1+eps >= r).
 */
std::optional<CycElt> H_reduced(long k, long b, int eps, const RootSpec& spec);

/// F^G_{U^±} = H(0, ±1, 0) / ev{1}; sign must be +1 or -1.
CycElt F_unknot(int sign, const RootSpec& spec);

/**
 * The rank D^G = |F_{U^+}|, built as (sqrt r, sqrt 2r or 2 sqrt r)/|1 - xi|
 * and checked against D^2 = F_{U^+} F_{U^-}, integrality, a positive
 * canonical embedding, and (1 - xi) D ~ H(0, 1, 0).  Throws SpecError in
 * the degenerate SU(2) case and Falsification when a check fails.
 */
CycElt rank_D(const RootSpec& spec);

/// xi^{mu(L', s)} with mu = -r(r-2)/4 sum p_ij (s_i - 1)(s_j - 1); 1 for SU(2).
CycElt mu_factor(const SurgeryPresentation& pres, const RootSpec& spec);

/**
 * F^G_{L ⊔ L'}: the multi-sum of ev(J(n) prod [n_i]) including the
 * extended SO(3) prefactor.  For split presentations the sum factors over
 * blocks; for table-backed ones the 0-framed table is extended to all
 * colors by period 2r and the reflection J(r+n) = -J(r-n).
 */
CycElt F_link(const SurgeryPresentation& pres, const RootSpec& spec);

/// tau = F / (F_{U^+}^{beta+} F_{U^-}^{beta-} D^beta).
CycElt tau_direct(const SurgeryPresentation& pres, const RootSpec& spec);

/**
 * tau from the Habiro blocks of the 0-framed link:
 * sum over k_i <= floor((r-2)/2) of ev(c(k)) prod H(k_i,b_i,eps_i)/H(0,sn b_i,0),
 * with H(k_i,0,eps_i)/(ev{1} D) for zero framings, times the SO(3) prefactor.
 */
CycElt tau_diagonal(const SurgeryPresentation& pres, const RootSpec& spec);

/// Both routes, compared exactly (Falsification on disagreement).
InvariantResult tau(const SurgeryPresentation& pres, const RootSpec& spec);

/// F^{Z/2}_{U^±} = 1 + xi^{±r(r-2)/4}.
CycElt F_Z2_unknot(int sign, const RootSpec& spec);

/**
 * The Z/2 invariant.  Requires r odd and ord(xi^{1/4}) in {r, 4r}
 * (SpecError otherwise); the group tag of the RootSpec is ignored.  The value
 * must be integral (Falsification otherwise).
 */
InvariantResult tau_Z2(const SurgeryPresentation& pres, const RootSpec& spec);

/// tau^{SU(2)} == tau^{Z/2} tau^{SO(3)} with xi^{1/4} = zeta_t^u.
bool check_splitting(const SurgeryPresentation& pres, int r, long u);

/**
 * tau^{SO(3)}(alpha * s) == (-xi^{r/2})^{sum a} tau^{SO(3)}(s), where
 * 1 * s = r - s on the colors of L'.  Colors must lie in [1, r-1].
 */
bool check_color_flip(const SurgeryPresentation& pres, const RootSpec& spec, const std::vector<int>& alpha);

/**
 * For every b in bs, 0 <= k <= floor((r-2)/2) and eps in {0,1}: H(0,±1,0)
 * divides H(k,b,eps) for b != 0, and (1 - xi) D divides H(k,0,eps).
 * Returns the number of divisions checked; throws Falsification on the
 * first failure.
 */
long integrality_oracles(const RootSpec& spec, const std::vector<long>& bs);

/**
 * SU(2), even r: H(k, ±2, 0) prod_{i=0}^k (1 + xi^{(2i+1)/2}) ~ 2 sqrt r.
 */
bool check_b2_product(long k, int sign, const RootSpec& spec);

/// Lens space with a colored core: the ratio of the two unknot sums.
CycElt lens_tau_sum(long b, long a, const RootSpec& spec);

/**
 * xi^{(sn b - b)/4} (1 - xi^{-b*})/(1 - xi^{-sn b}) G(b,0,xi)/G(sn b,0,xi)
 * for SO(3) with gcd(b, r) = 1, where b* b = 1 mod r and the quarter power
 * is read inside Z[xi] through 4* 4 = 1 mod r.  For b < 0 this is the
 * complex conjugate of the value at -b.
 */
CycElt lens_closed_form(long b, const RootSpec& spec);

/**
 * (G(-b, 4s+4, xi^{1/4}) - G(-b, 4s, xi^{1/4})) / ((1 - xi) G(-1, 0, xi^{1/4})),
 * the shape of tau^{SU(2)} for L(b,-1) with a core colored 2s+1.
 */
CycElt lens_odd_color_shape(long b, long s, const RootSpec& spec);

/// Smallest s in [0, r) with tau^{SU(2)} of L(b,-1) with the core colored 2s+1 non-zero.
std::optional<long> lens_odd_color_search(long b, const RootSpec& spec);

}  // namespace wrtk
