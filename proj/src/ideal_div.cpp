#include "wrtk/ideal_div.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wrtk/errors.hpp"

namespace wrtk {

namespace {

long mod(long a, long m) {
  const long x = a % m;
  return x < 0 ? x + m : x;
}

std::string describe(const QuadForm& Q) {
  return "Q = (" + std::to_string(Q.a2) + ", " + std::to_string(Q.a1) + ", " + std::to_string(Q.a0) + ")";
}

QLaurent divide_or_falsify(const QLaurent& f, const QLaurent& g, const std::string& what) {
  auto quo = exact_divide(f, g);
  if (!quo) throw Falsification(what + ": division is not exact");
  return *quo;
}

ZQLaurent z_power(long d) { return ZQLaurent::monomial(QLaurent(1L), d); }

// Exponent of xi for q^{e/4} when e is a whole power of q.
long whole_power(QExp e) {
  if (e % 4 != 0) throw std::invalid_argument("coefficient is not in Z[q^{+-1}]");
  return static_cast<long>(e / 4);
}

}  // namespace

IkElement IkElement::generator(long k, long d, long a) {
  IkElement e;
  e.k = k;
  e.terms.push_back({QLaurent(1L), d, a});
  return e;
}

ZQLaurent IkElement::materialize() const {
  ZQLaurent out;
  for (const auto& t : terms) out += ZQLaurent::monomial(t.coeff, t.d) * pochhammer(t.a, k);
  return out;
}

QLaurent lambda_Q(const ZQLaurent& f, const QuadForm& Q) {
  QLaurent out;
  for (const auto& [j, c] : f.terms()) out += c.shifted(4 * Q(j));
  return out;
}

QLaurent lambda_Q_reduced(const ZQLaurent& f, const QuadForm& Q) {
  return lambda_Q(f.shift_z(Q.a1), QuadForm{Q.a2, 0, 0}).shifted(4 * Q.a0);
}

QLaurent check_thm1(const IkElement& e, const QuadForm& Q) {
  const ZQLaurent f = e.materialize();
  const QLaurent direct = lambda_Q(f, Q);
  if (direct != lambda_Q_reduced(f, Q))
    throw Falsification("Lambda_Q and its a1-reduced form disagree for " + describe(Q));
  return divide_or_falsify(direct, X_poly(e.k), "X_" + std::to_string(e.k) + " divisibility, " + describe(Q));
}

QLaurent andrews_sum(long k, const QuadForm& Q) {
  QLaurent sum;
  for (long j = 0; j <= k; ++j) {
    QLaurent term = q_round_binom(k, j).shifted(4 * (Q(j) + j * (j - 1) / 2));
    sum += j % 2 == 0 ? term : -term;
  }
  return divide_or_falsify(sum, X_poly(k), "alternating binomial sum, k = " + std::to_string(k) + ", " + describe(Q));
}

ZQLaurent y_poly(long l) {
  ZQLaurent one_minus_zinv(QLaurent(1L));
  one_minus_zinv.add_term(-1, QLaurent(-1L));
  return z_power(-l) * one_minus_zinv * pochhammer(-l, 2 * l + 1);
}

QLaurent check_symmetric_divisibility(long m, long l, const QuadForm& Q) {
  if (Q.a1 != 0) throw std::invalid_argument("check_symmetric_divisibility: the form must have a1 = 0");
  ZQLaurent f(QLaurent(1L));
  const ZQLaurent z_plus = z_power(1) + z_power(-1);
  for (long i = 0; i < m; ++i) f = f * z_plus;
  const QLaurent value = lambda_Q(f * y_poly(l), Q);
  return divide_or_falsify(value, q_pochhammer_const(l + 1, l + 1) * mpz_class(2),
                           "symmetric y_l divisibility, m = " + std::to_string(m) + ", l = " + std::to_string(l));
}

QLaurent check_odd_divisibility(long m, long l, const QuadForm& Q) {
  if (Q.a1 != 0) throw std::invalid_argument("check_odd_divisibility: the form must have a1 = 0");
  const QLaurent value = lambda_Q(pochhammer(-l, 2 * l + 1) * z_power(m), Q);
  return divide_or_falsify(value, q_pochhammer_const(l + 1, l + 1),
                           "odd Pochhammer divisibility, m = " + std::to_string(m) + ", l = " + std::to_string(l));
}

bool ideal_window_check(const IkElement& e, long b_lo, long b_hi) {
  const ZQLaurent f = e.materialize();
  const QLaurent modulus = q_pochhammer_const(1, e.k);
  for (long b = b_lo; b <= b_hi; ++b) {
    QLaurent value;
    for (const auto& [d, c] : f.terms()) value += c.shifted(4 * b * d);
    if (!exact_divide(value, modulus)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

MultiPoly MultiPoly::constant(std::size_t nvars, const QLaurent& c) {
  MultiPoly out(nvars);
  out.add_term(Exps(nvars, 0), c);
  return out;
}

void MultiPoly::add_term(const Exps& e, const QLaurent& c) {
  if (e.size() != nvars_) throw std::invalid_argument("MultiPoly: exponent arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

long MultiPoly::degree(std::size_t var) const {
  long deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[var]);
  return deg;
}

QLaurent MultiPoly::at_q_powers(const std::vector<long>& m) const {
  QLaurent out;
  for (const auto& [e, c] : terms_) {
    long shift = 0;
    for (std::size_t i = 0; i < nvars_; ++i) shift += e[i] * m[i];
    out += c.shifted(4 * shift);
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MultiPoly::Exps e(a.nvars_);
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

MultiPoly operator*(const MultiPoly& a, const QLaurent& c) {
  MultiPoly out(a.nvars_);
  for (const auto& [e, x] : a.terms_) out.add_term(e, x * c);
  return out;
}

MultiPoly multi_pochhammer(std::size_t nvars, std::size_t var, long k) {
  MultiPoly out = MultiPoly::constant(nvars, QLaurent(1L));
  for (long i = 0; i < k; ++i) {
    MultiPoly factor = MultiPoly::constant(nvars, QLaurent(1L));
    MultiPoly::Exps e(nvars, 0);
    e[var] = 1;
    factor.add_term(e, -QLaurent::q_power(4 * i));
    out = out * factor;
  }
  return out;
}

std::map<std::vector<long>, QLaurent> expand_pochhammer_basis(const MultiPoly& numerator,
                                                              const QLaurent& denominator) {
  const std::size_t n = numerator.nvars();
  std::vector<long> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = numerator.degree(i);

  // All multi-indices in the degree box, by increasing total degree.
  std::vector<std::vector<long>> box{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<long>> next;
    for (const auto& p : box)
      for (long v = 0; v <= deg[i]; ++v) {
        next.push_back(p);
        next.back().push_back(v);
      }
    box = std::move(next);
  }
  auto total = [](const std::vector<long>& k) { return std::accumulate(k.begin(), k.end(), 0L); };
  std::stable_sort(box.begin(), box.end(), [&](const auto& x, const auto& y) { return total(x) < total(y); });

  // (q^{-k};q)_a/(q;q)_a = (-1)^a q^{a(a-1)/2 - ka} binomq(k, a) for a <= k.
  std::map<std::pair<long, long>, QLaurent> basis_value;
  auto value_at = [&](long a, long k) -> const QLaurent& {
    auto [it, inserted] = basis_value.try_emplace({a, k});
    if (inserted) {
      QLaurent v = q_round_binom(k, a).shifted(4 * (a * (a - 1) / 2 - k * a));
      it->second = a % 2 == 0 ? v : -v;
    }
    return it->second;
  };

  std::map<std::vector<long>, QLaurent> coeffs;
  for (const auto& k : box) {
    std::vector<long> point(n);
    for (std::size_t i = 0; i < n; ++i) point[i] = -k[i];
    auto value = exact_divide(numerator.at_q_powers(point), denominator);
    if (!value) throw Falsification("expand_pochhammer_basis: value at z = q^{-k} is not a Laurent polynomial");
    QLaurent rest = *value;
    for (const auto& [a, c] : coeffs) {
      bool below = true;
      for (std::size_t i = 0; i < n && below; ++i) below = a[i] <= k[i];
      if (!below) continue;
      QLaurent term = c;
      for (std::size_t i = 0; i < n; ++i) term = term * value_at(a[i], k[i]);
      rest -= term;
    }
    // The basis element at its own point equals (-1)^{|k|} q^{-sum k_i(k_i+1)/2}.
    long shift = 0;
    for (long ki : k) shift += ki * (ki + 1) / 2;
    QLaurent c = rest.shifted(4 * shift);
    if (total(k) % 2 != 0) c = -c;
    if (!c.is_zero()) coeffs.emplace(k, std::move(c));
  }

  // Re-materialize: multiply through by denominator * prod (q;q)_{deg_i}.
  MultiPoly lhs(n);
  for (const auto& [k, c] : coeffs) {
    MultiPoly term = MultiPoly::constant(n, c * denominator);
    for (std::size_t i = 0; i < n; ++i)
      term = term * multi_pochhammer(n, i, k[i]) * q_pochhammer_const(k[i] + 1, deg[i] - k[i]);
    lhs += term;
  }
  QLaurent scale(1L);
  for (std::size_t i = 0; i < n; ++i) scale = scale * q_pochhammer_const(1, deg[i]);
  if (lhs != numerator * scale) throw Falsification("expand_pochhammer_basis: re-materialized sum differs from input");
  return coeffs;
}

bool check_product_expansion(long a, long k) {
  MultiPoly f = MultiPoly::constant(2, QLaurent(1L));
  for (long i = 0; i < k; ++i) {
    MultiPoly factor = MultiPoly::constant(2, QLaurent(1L));
    factor.add_term({1, 1}, -QLaurent::q_power(4 * (a + i)));
    f = f * factor;
  }
  const QLaurent qk = q_pochhammer_const(1, k);
  const auto scaled = expand_pochhammer_basis(f, qk);
  for (const auto& [idx, c] : scaled) {
    if (idx[0] > k || idx[1] > k) return false;
    if (!c.in_integer_powers()) return false;
  }
  // Cross-check: expanding f itself must give exactly (q;q)_k times the same coefficients.
  const auto plain = expand_pochhammer_basis(f);
  if (plain.size() != scaled.size()) return false;
  for (const auto& [idx, c] : plain) {
    auto it = scaled.find(idx);
    if (it == scaled.end() || it->second * qk != c) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

CycElt check_div1(const IkElement& e, const QuadForm& Q, const RootSpec& spec) {
  const int r = spec.r;
  if (e.k < 0 || e.k >= r) throw std::invalid_argument("check_div1: need 0 <= k < r");
  const XiRing ring = small_ring(spec);
  const ZQLaurent f = e.materialize();
  PowerSumAccumulator acc(r);
  for (long n = 0; n < r; ++n)
    for (const auto& [d, c] : f.terms())
      for (const auto& [ex, v] : c.terms()) acc.add(ring.e * (Q(n) + n * d + whole_power(ex)), v);
  const auto quo = divides(x_k(ring, e.k) * O_xi(ring), acc.reduce());
  if (!quo)
    throw Falsification("root-of-unity I_k sum not divisible by x_k O_xi, r = " + std::to_string(r) +
                        ", k = " + std::to_string(e.k) + ", " + describe(Q));
  return *quo;
}

CycElt check_binomial_sum_division(long a, long k, const QuadForm& Q, const RootSpec& spec) {
  const int r = spec.r;
  if (k < 0 || k >= r) throw std::invalid_argument("check_binomial_sum_division: need 0 <= k < r");
  const XiRing ring = small_ring(spec);
  PowerSumAccumulator acc(r);
  for (long n = 0; n < r; ++n) {
    const QLaurent binom = q_round_binom(n + a, k);
    for (const auto& [ex, v] : binom.terms()) acc.add(ring.e * (Q(n) + whole_power(ex)), v);
  }
  const auto quo = divides(x_k(ring, r - 1 - k), acc.reduce());
  if (!quo)
    throw Falsification("binomial sum not divisible by x_{r-1-k}, r = " + std::to_string(r) + ", a = " +
                        std::to_string(a) + ", k = " + std::to_string(k) + ", " + describe(Q));
  return *quo;
}

long verify_root_divisibility(int r, long c, long xi_exp) {
  using Sums = std::vector<long>;
  const auto R = static_cast<std::size_t>(r);
  if (std::gcd(mod(xi_exp, r), static_cast<long>(r)) != 1) throw std::invalid_argument("verify_root_divisibility: xi must be primitive");
  const XiRing ring{r, xi_exp, r};

  // Tables hold exponents of xi; they are mapped to zeta_r^{xi_exp * i} only when reduced.
  // poch[m][k]: power sums of (xi^m;xi)_k.  binom[m][k]: of ev(binomq(m,k)).
  std::vector<std::vector<Sums>> poch(R, std::vector<Sums>(R)), binom(R, std::vector<Sums>(R));
  for (long m = 0; m < r; ++m) {
    Sums v(R, 0);
    v[0] = 1;
    for (long k = 0; k < r; ++k) {
      poch[m][k] = v;
      Sums next = v;
      for (long i = 0; i < r; ++i) next[mod(i + m + k, r)] -= v[i];
      v = std::move(next);
    }
    for (long k = 0; k < r; ++k) {
      Sums s(R, 0);
      const QLaurent value = q_round_binom(m, k);
      for (const auto& [ex, val] : value.terms()) s[mod(whole_power(ex), r)] += val.get_si();
      binom[m][k] = std::move(s);
    }
  }
  std::vector<CycElt> inv_div1(R), inv_xbar(R);
  for (long k = 0; k < r; ++k) {
    inv_div1[k] = (x_k(ring, k) * O_xi(ring)).inverse();
    inv_xbar[k] = x_k(ring, r - 1 - k).inverse();
  }

  auto integral = [&](const Sums& s, const CycElt& inv) {
    std::vector<mpz_class> big(R);
    for (long i = 0; i < r; ++i) big[mod(i * xi_exp, r)] = s[i];
    return (CycElt::from_power_sums(r, big) * inv).is_integral();
  };

  long count = 0;
  Sums acc(R);
  for (long k = 0; k < r; ++k)
    for (long a2 = -c; a2 <= c; ++a2)
      for (long a1 = -c; a1 <= c; ++a1)
        for (long a0 = -c; a0 <= c; ++a0) {
          const QuadForm Q{a2, a1, a0};
          for (long a = -c; a <= c; ++a) {
            std::fill(acc.begin(), acc.end(), 0);
            for (long n = 0; n < r; ++n) {
              const Sums& v = binom[mod(n + a, r)][k];
              const long shift = Q(n);
              for (long i = 0; i < r; ++i) acc[mod(i + shift, r)] += v[i];
            }
            ++count;
            if (!integral(acc, inv_xbar[k]))
              throw Falsification("binomial sum not divisible by x_{r-1-k}, r = " + std::to_string(r) + ", a = " +
                                  std::to_string(a) + ", k = " + std::to_string(k) + ", " + describe(Q));
            for (long d = -c; d <= c; ++d) {
              std::fill(acc.begin(), acc.end(), 0);
              for (long n = 0; n < r; ++n) {
                const Sums& v = poch[mod(n + a, r)][k];
                const long shift = Q(n) + d * n;
                for (long i = 0; i < r; ++i) acc[mod(i + shift, r)] += v[i];
              }
              ++count;
              if (!integral(acc, inv_div1[k]))
                throw Falsification("root-of-unity I_k sum not divisible by x_k O_xi, r = " + std::to_string(r) +
                                    ", k = " + std::to_string(k) + ", d = " + std::to_string(d) + ", a = " +
                                    std::to_string(a) + ", " + describe(Q));
            }
          }
        }
  return count;
}

}  // namespace wrtk
