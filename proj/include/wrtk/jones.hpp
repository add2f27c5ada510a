#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wrtk/cyclo.hpp"
#include "wrtk/qlaurent.hpp"

namespace wrtk {

using Colors = std::vector<long>;
using IntMatrix = std::vector<std::vector<long>>;

/**
 * Colored Jones values of a link whose first `arity` components carry a
 * varying color and whose remaining components carry the fixed colors.
 *
 * `linking` is the full linking matrix of the tabulated link, varying
 * components first; the diagonal holds the framings.
 */
struct JonesTable {
  std::size_t arity = 0;
  Colors fixed_colors;
  IntMatrix linking;
  std::map<Colors, QLaurent> values;

  bool covers(const Colors& n) const { return values.count(n) != 0; }
  /// Throws std::out_of_range when n is not tabulated.
  const QLaurent& at(const Colors& n) const;
};

enum class Family { SplitDiagonal, TableBacked };

/// A colored unknot attached to a surgery component, or standing alone.
struct ColoredUnknot {
  long color = 1;
  long framing = 0;
};

/// One block of the split-diagonal family: a framed unknot with an optional Hopf-linked companion.
struct SplitBlock {
  long framing = 0;
  std::optional<ColoredUnknot> companion;
};

/**
 * Surgery description of a pair (M, L'): M is surgery on the framed link L
 * with diagonal linking matrix diag(b_1..b_m), and L' is a colored link in
 * the complement.
 *
 * In the split-diagonal family every surgery component is an unknot,
 * Hopf-linked with linking number ±1 to at most one colored unknot, and
 * different blocks (including free colored unknots) are split.  Table-backed
 * presentations carry the colored Jones values of the 0-framed link
 * L^0 ⊔ L' instead.
 */
struct SurgeryPresentation {
  Family family = Family::SplitDiagonal;
  std::vector<long> framings;  ///< b_i
  Colors colors;               ///< s_j
  IntMatrix cross;             ///< m x l linking numbers between L and L'
  IntMatrix colored_linking;   ///< l x l linking matrix p of L', framings on the diagonal
  std::optional<JonesTable> table;

  std::size_t m() const { return framings.size(); }
  std::size_t l() const { return colors.size(); }
  int beta_plus() const;
  int beta_minus() const;
  int beta_zero() const;

  /// Throws SchemaError when the data is inconsistent or outside the declared family.
  void validate() const;

  /// Index of the colored component Hopf-linked to surgery component i (split family).
  std::optional<std::size_t> companion_of(std::size_t i) const;

  /// Full linking matrix of L ⊔ L', surgery components first.
  IntMatrix full_linking(bool zero_framed = false) const;

  static SurgeryPresentation split(const std::vector<SplitBlock>& blocks, const std::vector<ColoredUnknot>& free = {});
  /// Unknot with framing b: the lens space L(b,1), or S^1 x S^2 for b = 0.
  static SurgeryPresentation lens(long b, std::optional<long> companion_color = std::nullopt);

  /// Split union of the two presentations (connected sum of the pairs).
  SurgeryPresentation disjoint_union(const SurgeryPresentation& other) const;
  /// The orientation-reversed pair: linking numbers change sign and q -> q^{-1}.
  SurgeryPresentation mirrored() const;
  /// Same link with the colors of L' replaced.
  SurgeryPresentation recolored(const Colors& s) const;
};

/// (q^{(n^2-1)/4})^b as a quarter exponent.
inline QExp framing_exponent(long b, long n) { return b * (n * n - 1); }

/**
 * J of the 0-framed link L^0 ⊔ L' at colors n (the framings of L' kept).
 * Split family: product over blocks of [n_i] or q^{p(s^2-1)/4}[n_i s],
 * times q^{p(s^2-1)/4}[s] for each free colored unknot.  Table-backed: the
 * tabulated value.  Negative and zero colors are allowed in the split
 * family ([-n] = -[n]).
 */
QLaurent zero_framed_value(const SurgeryPresentation& pres, const Colors& n);

/// J_{L ⊔ L'}(n): the 0-framed value times q^{b_i(n_i^2-1)/4} for each surgery component.
QLaurent jones_value(const SurgeryPresentation& pres, const Colors& n);

/// eps_i = sum_j cross_ij (s_j - 1) mod 2.
std::vector<int> epsilon_vector(const SurgeryPresentation& pres);

/// Table of jones_value (or the 0-framed value) for n in [lo, hi]^m.
JonesTable jones_table(const SurgeryPresentation& pres, long lo, long hi, bool zero_framed = false);

/// qbinom{n+k}{2k+1} {k}! lambda_n^eps / lambda_{k+1}^eps, the Habiro basis term; cached.
const QLaurent& habiro_basis(long n, long k, int eps);

struct HabiroBlocks {
  std::vector<int> eps;
  long depth = 0;
  std::map<Colors, QLaurent> c;
};

/**
 * Solves J(n) = sum_k c(k) prod_i habiro_basis(n_i, k_i, eps_i) for
 * k in [0..K]^m by back-substitution on n = k + 1.  Every c(k) must be
 * integral and lie in (q^{k+1};q)_{k+1}/(1-q) Z[q^{±1/4}] with k = max k_i;
 * the reconstruction is re-checked on the whole window [1..K+1]^m.
 * Throws Falsification when any of this fails and std::out_of_range when
 * the table does not cover the window.
 */
HabiroBlocks habiro_blocks(const JonesTable& table, const std::vector<int>& eps, long K);

/// True when c lies in (q^{k+1};q)_{k+1}/(1-q) Z[q^{±1/4}].
bool in_habiro_ideal(const QLaurent& c, long k);

/// Outcome of the symmetry checks at one color tuple.
struct SymmetryReport {
  bool principle = true;
  bool periodic = true;
  bool reflection = true;
  bool ok() const { return principle && periodic && reflection; }
};

/**
 * Checks ev J(alpha * n) = (-xi^{r/2})^{sum a} xi^t ev J(n) where
 * 1 * n = r - n and t = r(r-2)/4 sum l_ij a_i a_j + r/2 sum l_ij a_i (n_j - 1)
 * over the table's linking matrix (fixed colors enter through n_j = s_j),
 * together with ev J(n + 2r e_i) = ev J(n) and
 * ev J(r + n_i) = -ev J(r - n_i) in each coordinate.  Throws
 * std::out_of_range when the table misses a needed color tuple.
 */
SymmetryReport symmetry_check(const JonesTable& table, const RootSpec& spec, const std::vector<int>& alpha,
                              const Colors& n);

// JSON interchange.

/// {"surgery":[{"framing":b,"companion":{"color":s,"framing":p}|null}], "colored":[...], ...}
SurgeryPresentation presentation_from_json(const nlohmann::json& j);
nlohmann::json presentation_to_json(const SurgeryPresentation& pres);
/// {"arity":m, "fixed_colors":[...], "linking":[[...]], "values":{"n1,n2":"<QLaurent>"}}
JonesTable table_from_json(const nlohmann::json& j);
nlohmann::json table_to_json(const JonesTable& table);

}  // namespace wrtk
