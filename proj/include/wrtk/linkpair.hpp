#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "wrtk/jones.hpp"

namespace wrtk {

/// Largest group order the brute-force routines accept.
inline constexpr long kPairingSizeBound = 512;

/**
 * A symmetric bilinear form on Z/d_1 + ... + Z/d_n with values in Q/Z.
 *
 * gram[i][j] is the value on the i-th and j-th cyclic generators, stored
 * reduced into [0, 1).
 */
struct LinkingPairing {
  std::vector<long> orders;
  std::vector<std::vector<mpq_class>> gram;

  std::size_t rank() const { return orders.size(); }
  /// |G|; throws std::overflow_error beyond the range of long.
  long group_order() const;

  /// Value on two elements given in cyclic coordinates.
  mpq_class operator()(const std::vector<long>& x, const std::vector<long>& y) const;

  /**
   * Throws std::invalid_argument unless the orders are >= 2, the gram
   * matrix is symmetric mod 1 and d_i gram[i][j] is an integer.  When
   * |G| <= bound, also checks non-singularity by brute force.
   */
  void validate(long bound = kPairingSizeBound) const;
  /// G -> Hom(G, Q/Z) injective, by brute force (std::length_error when |G| > bound).
  bool is_nonsingular(long bound = kPairingSizeBound) const;
};

/// Smith form U B V = D with U, V unimodular and d_1 | d_2 | ... (non-negative).
struct SmithForm {
  IntMatrix U, V;
  std::vector<mpz_class> diagonal;
};

SmithForm smith_normal_form(const IntMatrix& B);

/**
 * phi_B(x, x') = x^t B^{-1} x' on Z^n / B Z^n, in Smith coordinates.
 * Cyclic factors of order 1 are dropped.  Throws std::invalid_argument for
 * singular or non-symmetric B.
 */
LinkingPairing phi_B(const IntMatrix& B);

/// phi_{diag(d)}.
LinkingPairing phi_diagonal(const std::vector<long>& d);

/// The hyperbolic form (1/2^k)[[0,1],[1,0]] on (Z/2^k)^2.
LinkingPairing E0(int k);

LinkingPairing block_sum(const LinkingPairing& a, const LinkingPairing& b);
LinkingPairing block_sum(const std::vector<LinkingPairing>& parts);

/// Images of the cyclic generators of the source, in coordinates of the target.
using PairingIsomorphism = std::vector<std::vector<long>>;

/**
 * Searches for a group isomorphism carrying a to b.  Returns the images of
 * a's generators on success.  Groups of different orders are never
 * isomorphic; throws std::length_error when |G| exceeds bound.
 */
std::optional<PairingIsomorphism> find_isomorphism(const LinkingPairing& a, const LinkingPairing& b,
                                                   long bound = kPairingSizeBound);
bool is_isomorphic(const LinkingPairing& a, const LinkingPairing& b, long bound = kPairingSizeBound);

/// Checks that a witness is a well-defined bijection carrying a to b.
bool check_isomorphism(const LinkingPairing& a, const LinkingPairing& b, const PairingIsomorphism& f);

/// True for 0, ±1 and ±p^e with p prime.
bool is_prime_power_framing(long b);

/// phi_B + E0(k_1) + ... + E0(k_j), with B diagonal.
struct DiagonalBlocks {
  std::vector<long> diagonal;
  std::vector<int> e0;
};

LinkingPairing to_pairing(const DiagonalBlocks& blocks);

/**
 * A diagonal B' with phi_{B'} isomorphic to
 * (-2^{k_1}) + ... + (-2^{k_j}) + s (phi_B + E0(k_1) + ... + E0(k_j)):
 * s copies of B, then for each k_i one -2^{k_i} followed by s pairs
 * (2^{k_i}, -2^{k_i}).  Each E0(k) is absorbed through
 * E0(k) + (-2^k) = (-2^k) + (2^k) + (-2^k).  When the group has order at
 * most bound the isomorphism is confirmed by search (Falsification if not).
 */
std::vector<long> stabilized_diagonal(const DiagonalBlocks& blocks, long s, long bound = kPairingSizeBound);

/**
 * Surgery framings B + D for a diagonal B and an enhancement D with entries
 * in {0, ±1}, as a split presentation of unknots.
 */
SurgeryPresentation enhanced_presentation(const std::vector<long>& diagonal, const std::vector<long>& enhancement = {});

/// {"orders":[d...], "gram":[[[num,den], ...], ...]}
LinkingPairing pairing_from_json(const nlohmann::json& j);
nlohmann::json pairing_to_json(const LinkingPairing& p);

}  // namespace wrtk
