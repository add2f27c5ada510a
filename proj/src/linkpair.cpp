#include "wrtk/linkpair.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wrtk/errors.hpp"

namespace wrtk {

namespace {

using ZMatrix = std::vector<std::vector<mpz_class>>;

long mod(long a, long n) {
  const long m = a % n;
  return m < 0 ? m + n : m;
}

mpq_class frac_part(mpq_class x) {
  x.canonicalize();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpq_class out = x - mpq_class(fl);
  out.canonicalize();
  return out;
}

ZMatrix identity(std::size_t n) {
  ZMatrix I(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

IntMatrix to_long(const ZMatrix& m) {
  IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (const auto& x : m[i]) {
      if (!x.fits_slong_p()) throw std::overflow_error("Smith transform entry exceeds long");
      out[i].push_back(x.get_si());
    }
  return out;
}

// Row and column operations on the working matrix, mirrored on U (rows),
// U^{-1} (inverse column ops) and V (columns).
struct SmithWork {
  ZMatrix A, U, Uinv, V;
  std::size_t n;

  void swap_rows(std::size_t a, std::size_t b) {
    std::swap(A[a], A[b]);
    std::swap(U[a], U[b]);
    for (auto& row : Uinv) std::swap(row[a], row[b]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (auto& row : A) std::swap(row[a], row[b]);
    for (auto& row : V) std::swap(row[a], row[b]);
  }
  // row a += c row b
  void add_row(std::size_t a, std::size_t b, const mpz_class& c) {
    for (std::size_t j = 0; j < n; ++j) {
      A[a][j] += c * A[b][j];
      U[a][j] += c * U[b][j];
    }
    for (auto& row : Uinv) row[b] -= c * row[a];
  }
  // col a += c col b
  void add_col(std::size_t a, std::size_t b, const mpz_class& c) {
    for (auto& row : A) row[a] += c * row[b];
    for (auto& row : V) row[a] += c * row[b];
  }
  void negate_row(std::size_t a) {
    for (auto& x : A[a]) x = -x;
    for (auto& x : U[a]) x = -x;
    for (auto& row : Uinv) row[a] = -row[a];
  }
};

SmithWork smith(const IntMatrix& B) {
  const std::size_t n = B.size();
  for (const auto& row : B)
    if (row.size() != n) throw std::invalid_argument("Smith form needs a square matrix");
  SmithWork w{ZMatrix(n, std::vector<mpz_class>(n)), identity(n), identity(n), identity(n), n};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w.A[i][j] = B[i][j];

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // pivot: smallest non-zero |entry| in the lower-right block
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (w.A[i][j] != 0 && (pi == n || abs(w.A[i][j]) < abs(w.A[pi][pj]))) pi = i, pj = j;
      if (pi == n) break;
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.A[i][t].get_mpz_t(), w.A[t][t].get_mpz_t());
        if (q != 0) w.add_row(i, t, -q);
        if (w.A[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w.A[t][j].get_mpz_t(), w.A[t][t].get_mpz_t());
        if (q != 0) w.add_col(j, t, -q);
        if (w.A[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: the pivot must divide the rest of the block
      bool divides_rest = true;
      for (std::size_t i = t + 1; i < n && divides_rest; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.A[i][j] % w.A[t][t] != 0) {
            w.add_row(t, i, 1);
            divides_rest = false;
            break;
          }
      if (divides_rest) break;
    }
    if (w.A[t][t] < 0) w.negate_row(t);
  }
  return w;
}

// Pairing values as integers modulo a common denominator N.
struct Scaled {
  long N = 1;
  std::vector<long> orders;
  std::vector<std::vector<long>> A;

  Scaled(const LinkingPairing& p, long common) : N(common), orders(p.orders) {
    A.assign(p.rank(), std::vector<long>(p.rank()));
    for (std::size_t i = 0; i < p.rank(); ++i)
      for (std::size_t j = 0; j < p.rank(); ++j) {
        const mpq_class v = p.gram[i][j] * common;
        if (v.get_den() != 1) throw std::invalid_argument("pairing value with an unexpected denominator");
        A[i][j] = mod(v.get_num().get_si(), N);
      }
  }
  long value(const std::vector<long>& x, const std::vector<long>& y) const {
    long s = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (x[i] == 0) continue;
      long row = 0;
      for (std::size_t j = 0; j < orders.size(); ++j) row = (row + A[i][j] * y[j]) % N;
      s = (s + x[i] * row) % N;
    }
    return s;
  }
};

long exponent_of(const LinkingPairing& p) {
  long e = 1;
  for (long d : p.orders) e = std::lcm(e, d);
  return e;
}

std::vector<std::vector<long>> elements(const std::vector<long>& orders) {
  std::vector<std::vector<long>> out;
  std::vector<long> x(orders.size(), 0);
  for (;;) {
    out.push_back(x);
    std::size_t i = 0;
    for (; i < orders.size(); ++i) {
      if (++x[i] < orders[i]) break;
      x[i] = 0;
    }
    if (i == orders.size()) return out;
  }
}

long element_order(const std::vector<long>& x, const std::vector<long>& orders) {
  long o = 1;
  for (std::size_t i = 0; i < x.size(); ++i) o = std::lcm(o, orders[i] / std::gcd(x[i], orders[i]));
  return o;
}

bool kills(long d, const std::vector<long>& x, const std::vector<long>& orders) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if ((d * x[i]) % orders[i] != 0) return false;
  return true;
}

// Multiset of (element order, self-linking) over the group.
std::map<std::pair<long, mpq_class>, long> statistics(const LinkingPairing& p) {
  std::map<std::pair<long, mpq_class>, long> out;
  for (const auto& x : elements(p.orders)) ++out[{element_order(x, p.orders), p(x, x)}];
  return out;
}

void check_bound(const LinkingPairing& p, long bound) {
  long n = 1;
  for (long d : p.orders) {
    n *= d;
    if (n > bound) throw std::length_error("pairing group of order above " + std::to_string(bound));
  }
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

long LinkingPairing::group_order() const {
  long n = 1;
  for (long d : orders) {
    if (__builtin_mul_overflow(n, d, &n)) throw std::overflow_error("group order exceeds long");
  }
  return n;
}

mpq_class LinkingPairing::operator()(const std::vector<long>& x, const std::vector<long>& y) const {
  mpq_class s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (x[i] != 0 && y[j] != 0) s += gram[i][j] * x[i] * y[j];
  return frac_part(s);
}

void LinkingPairing::validate(long bound) const {
  if (gram.size() != rank()) throw std::invalid_argument("gram matrix size does not match the group");
  for (std::size_t i = 0; i < rank(); ++i) {
    if (orders[i] < 2) throw std::invalid_argument("cyclic orders must be at least 2");
    if (gram[i].size() != rank()) throw std::invalid_argument("gram matrix is not square");
    for (std::size_t j = 0; j < rank(); ++j) {
      if (frac_part(gram[i][j] - gram[j][i]) != 0) throw std::invalid_argument("gram matrix is not symmetric mod 1");
      if (frac_part(gram[i][j] * orders[i]) != 0)
        throw std::invalid_argument("gram entry not killed by the order of its generator");
    }
  }
  long n = 1;
  for (long d : orders) n = n > bound ? n : n * d;
  if (n <= bound && !is_nonsingular(bound)) throw std::invalid_argument("pairing is singular");
}

bool LinkingPairing::is_nonsingular(long bound) const {
  check_bound(*this, bound);
  const Scaled s(*this, exponent_of(*this));
  const auto all = elements(orders);
  for (const auto& x : all) {
    if (std::all_of(x.begin(), x.end(), [](long v) { return v == 0; })) continue;
    bool seen = false;
    for (std::size_t j = 0; j < rank() && !seen; ++j) {
      std::vector<long> e(rank(), 0);
      e[j] = 1;
      seen = s.value(x, e) != 0;
    }
    if (!seen) return false;
  }
  return true;
}

SmithForm smith_normal_form(const IntMatrix& B) {
  SmithWork w = smith(B);
  SmithForm out{to_long(w.U), to_long(w.V), {}};
  for (std::size_t i = 0; i < w.n; ++i) out.diagonal.push_back(w.A[i][i]);
  return out;
}

LinkingPairing phi_B(const IntMatrix& B) {
  const std::size_t n = B.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (B[i].size() != n) throw std::invalid_argument("phi_B needs a square matrix");
    for (std::size_t j = 0; j < i; ++j)
      if (B[i][j] != B[j][i]) throw std::invalid_argument("phi_B needs a symmetric matrix");
  }
  const SmithWork w = smith(B);
  for (std::size_t i = 0; i < n; ++i)
    if (w.A[i][i] == 0) throw std::invalid_argument("phi_B needs a non-singular matrix");
  // gram_ij = (U^{-T} V)_ij / d_j for the generators U^{-1} e_i.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (w.A[i][i] != 1) kept.push_back(i);
  LinkingPairing out;
  for (std::size_t i : kept) {
    if (!w.A[i][i].fits_slong_p()) throw std::overflow_error("cyclic order exceeds long");
    out.orders.push_back(w.A[i][i].get_si());
  }
  out.gram.assign(kept.size(), std::vector<mpq_class>(kept.size()));
  for (std::size_t a = 0; a < kept.size(); ++a)
    for (std::size_t b = 0; b < kept.size(); ++b) {
      mpz_class s = 0;
      for (std::size_t k = 0; k < n; ++k) s += w.Uinv[k][kept[a]] * w.V[k][kept[b]];
      out.gram[a][b] = frac_part(mpq_class(s, w.A[kept[b]][kept[b]]));
    }
  return out;
}

LinkingPairing phi_diagonal(const std::vector<long>& d) {
  IntMatrix B(d.size(), std::vector<long>(d.size(), 0));
  for (std::size_t i = 0; i < d.size(); ++i) B[i][i] = d[i];
  return phi_B(B);
}

LinkingPairing E0(int k) {
  if (k < 1 || k > 30) throw std::invalid_argument("E0 needs 1 <= k <= 30");
  const long d = 1L << k;
  return {{d, d}, {{mpq_class(0), mpq_class(1, d)}, {mpq_class(1, d), mpq_class(0)}}};
}

LinkingPairing block_sum(const LinkingPairing& a, const LinkingPairing& b) {
  LinkingPairing out;
  out.orders = a.orders;
  out.orders.insert(out.orders.end(), b.orders.begin(), b.orders.end());
  const std::size_t n = out.orders.size();
  out.gram.assign(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) out.gram[i][j] = a.gram[i][j];
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) out.gram[a.rank() + i][a.rank() + j] = b.gram[i][j];
  return out;
}

LinkingPairing block_sum(const std::vector<LinkingPairing>& parts) {
  LinkingPairing out;
  for (const auto& p : parts) out = block_sum(out, p);
  return out;
}

bool check_isomorphism(const LinkingPairing& a, const LinkingPairing& b, const PairingIsomorphism& f) {
  if (f.size() != a.rank()) return false;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (f[i].size() != b.rank() || !kills(a.orders[i], f[i], b.orders)) return false;
    for (std::size_t j = 0; j < a.rank(); ++j)
      if (b(f[i], f[j]) != a.gram[i][j]) return false;
  }
  if (a.group_order() != b.group_order()) return false;
  // injective on the whole group
  std::map<std::vector<long>, int> images;
  for (const auto& x : elements(a.orders)) {
    std::vector<long> y(b.rank(), 0);
    for (std::size_t i = 0; i < a.rank(); ++i)
      for (std::size_t k = 0; k < b.rank(); ++k) y[k] = mod(y[k] + x[i] * f[i][k], b.orders[k]);
    if (++images[y] > 1) return false;
  }
  return true;
}

std::optional<PairingIsomorphism> find_isomorphism(const LinkingPairing& a, const LinkingPairing& b, long bound) {
  check_bound(a, bound);
  check_bound(b, bound);
  if (a.group_order() != b.group_order()) return std::nullopt;
  if (statistics(a) != statistics(b)) return std::nullopt;

  const long N = std::lcm(exponent_of(a), exponent_of(b));
  const Scaled sa(a, N), sb(b, N);
  const auto targets = elements(b.orders);
  const std::size_t n = a.rank();

  // candidates for each generator: killed by its order, same self-linking
  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (kills(a.orders[i], targets[t], b.orders) && sb.value(targets[t], targets[t]) == sa.A[i][i])
        cand[i].push_back(t);

  PairingIsomorphism f(n);
  std::vector<std::size_t> pick(n);
  std::optional<PairingIsomorphism> found;
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      if (!check_isomorphism(a, b, f)) return false;
      found = f;
      return true;
    }
    for (std::size_t t : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = sb.value(targets[t], f[j]) == sa.A[i][j];
      if (!ok) continue;
      f[i] = targets[t];
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  search(search, 0);
  return found;
}

bool is_isomorphic(const LinkingPairing& a, const LinkingPairing& b, long bound) {
  return find_isomorphism(a, b, bound).has_value();
}

bool is_prime_power_framing(long b) {
  b = b < 0 ? -b : b;
  if (b <= 1) return true;
  long p = 2;
  while (b % p != 0) ++p;
  while (b % p == 0) b /= p;
  return b == 1 && is_prime(p);
}

LinkingPairing to_pairing(const DiagonalBlocks& blocks) {
  std::vector<LinkingPairing> parts{phi_diagonal(blocks.diagonal)};
  for (int k : blocks.e0) parts.push_back(E0(k));
  return block_sum(parts);
}

std::vector<long> stabilized_diagonal(const DiagonalBlocks& blocks, long s, long bound) {
  if (s < 1) throw std::invalid_argument("stabilized_diagonal needs s >= 1");
  for (long b : blocks.diagonal)
    if (b == 0 || !is_prime_power_framing(b)) throw std::invalid_argument("diagonal entries must be ±1 or ±p^e");
  std::vector<long> out;
  for (long c = 0; c < s; ++c) out.insert(out.end(), blocks.diagonal.begin(), blocks.diagonal.end());
  for (int k : blocks.e0) {
    if (k < 1 || k > 30) throw std::invalid_argument("E0 needs 1 <= k <= 30");
    out.push_back(-(1L << k));
    for (long c = 0; c < s; ++c) {
      out.push_back(1L << k);
      out.push_back(-(1L << k));
    }
  }

  const LinkingPairing target = phi_diagonal(out);
  long order = 1;
  for (long d : target.orders) order = order > bound ? order : order * d;
  if (order <= bound) {
    std::vector<LinkingPairing> parts;
    for (int k : blocks.e0) parts.push_back(phi_diagonal({-(1L << k)}));
    for (long c = 0; c < s; ++c) parts.push_back(to_pairing(blocks));
    if (!is_isomorphic(block_sum(parts), target, bound))
      throw Falsification("stabilized diagonal pairing is not isomorphic to the block sum");
  }
  return out;
}

SurgeryPresentation enhanced_presentation(const std::vector<long>& diagonal, const std::vector<long>& enhancement) {
  std::vector<SplitBlock> blocks;
  for (long b : diagonal) blocks.push_back({b, std::nullopt});
  for (long e : enhancement) {
    if (e < -1 || e > 1) throw std::invalid_argument("enhancement entries must be 0 or ±1");
    blocks.push_back({e, std::nullopt});
  }
  return SurgeryPresentation::split(blocks);
}

LinkingPairing pairing_from_json(const nlohmann::json& j) {
  try {
    LinkingPairing p;
    p.orders = j.at("orders").get<std::vector<long>>();
    const auto& g = j.at("gram");
    if (!g.is_array() || g.size() != p.orders.size()) throw SchemaError("gram must have one row per order");
    for (const auto& row : g) {
      if (!row.is_array() || row.size() != p.orders.size()) throw SchemaError("gram rows must match the orders");
      std::vector<mpq_class> r;
      for (const auto& e : row) {
        if (!e.is_array() || e.size() != 2) throw SchemaError("gram entries are [num, den] pairs");
        const long den = e[1].get<long>();
        if (den == 0) throw SchemaError("gram entry with zero denominator");
        r.push_back(frac_part(mpq_class(e[0].get<long>(), 1) / den));
      }
      p.gram.push_back(std::move(r));
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("pairing: ") + e.what());
  } catch (const SchemaError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("pairing: ") + e.what());
  }
}

nlohmann::json pairing_to_json(const LinkingPairing& p) {
  nlohmann::json g = nlohmann::json::array();
  for (const auto& row : p.gram) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back({v.get_num().get_si(), v.get_den().get_si()});
    g.push_back(r);
  }
  return {{"orders", p.orders}, {"gram", g}};
}

}  // namespace wrtk
