#include "wrtk/wrt.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "wrtk/errors.hpp"
#include "wrtk/gausssum.hpp"

namespace wrtk {

namespace {

long mod(long a, long m) {
  const long x = a % m;
  return x < 0 ? x + m : x;
}

long inverse_mod(long a, long m) {
  a = mod(a, m);
  for (long x = 1; x < m; ++x)
    if (mod(a * x, m) == 1) return x;
  throw std::invalid_argument("no inverse of " + std::to_string(a) + " modulo " + std::to_string(m));
}

int sign_of(long b) { return b > 0 ? 1 : (b < 0 ? -1 : 0); }

CycElt one(const RootSpec& spec) { return CycElt::constant(spec.t, 1); }

bool summed(const RootSpec& spec, long n) { return spec.group == Group::SU2 || n % 2 != 0; }

/// Sigma^{xi,G}_n ev(term(n)) in one variable: 1/4 times the sum over n in [0, 4r).
template <class Term>
CycElt laplace_sum(const RootSpec& spec, Term&& term) {
  PowerSumAccumulator acc(spec.t);
  for (long n = 0; n < 4L * spec.r; ++n)
    if (summed(spec, n)) acc.add_evaluated(term(n), spec.u);
  return acc.reduce(4);
}

CycElt ev_braces_one(const RootSpec& spec) { return ev_xi(q_braces(1), spec); }

void require_nondegenerate(const RootSpec& spec) {
  if (spec.degenerate())
    throw SpecError("SU(2) with xi^{1/4} of order 2r: F_{U^+-} vanishes and the invariant is undefined");
}

using SpecKey = std::tuple<int, int, long>;
SpecKey key_of(const RootSpec& spec) { return {static_cast<int>(spec.group), spec.r, spec.u}; }

// Zero-framed colored Jones value of one split block as a function of its surgery color.
QLaurent block_value(const SurgeryPresentation& pres, std::size_t i, long n) {
  if (const auto j = pres.companion_of(i)) {
    const long s = pres.colors[*j];
    return q_int(n * s).shifted(framing_exponent(pres.colored_linking[*j][*j], s));
  }
  return q_int(n);
}

// Product of q^{p(s^2-1)/4}[s] over colored unknots not attached to any surgery component.
QLaurent free_unknots(const SurgeryPresentation& pres) {
  std::vector<bool> attached(pres.l(), false);
  for (std::size_t i = 0; i < pres.m(); ++i)
    if (const auto j = pres.companion_of(i)) attached[*j] = true;
  QLaurent out(1L);
  for (std::size_t j = 0; j < pres.l(); ++j)
    if (!attached[j]) out = out * q_int(pres.colors[j]).shifted(framing_exponent(pres.colored_linking[j][j], pres.colors[j]));
  return out;
}

template <class F>
void for_each_tuple(std::size_t m, long lo, long hi, F&& visit) {
  Colors n(m, lo);
  while (true) {
    visit(static_cast<const Colors&>(n));
    std::size_t i = m;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (n[i] < hi) {
        ++n[i];
        advanced = true;
        break;
      }
      n[i] = lo;
    }
    if (!advanced) return;
  }
}

/// The factor multiplying ev(c(k)) for one surgery component in the diagonal formula.
CycElt diagonal_factor(long k, long b, int eps, const RootSpec& spec) {
  if (b != 0) return H(k, b, eps, spec) / H(0, sign_of(b), 0, spec);
  return H(k, 0, eps, spec) / (ev_braces_one(spec) * rank_D(spec));
}

}  // namespace

CycElt H(long k, long b, int eps, const RootSpec& spec) {
  static std::mutex lock;
  static std::map<std::tuple<SpecKey, long, long, int>, CycElt> cache;
  const auto key = std::make_tuple(key_of(spec), k, b, eps);
  {
    std::lock_guard<std::mutex> guard(lock);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const CycElt value = laplace_sum(spec, [&](long n) {
    return (habiro_basis(n, k, eps) * q_braces(n)).shifted(framing_exponent(b, n));
  });
  if (!value.is_integral())
    throw Falsification("H(" + std::to_string(k) + ", " + std::to_string(b) + ", " + std::to_string(eps) +
                        ") is not integral");
  std::lock_guard<std::mutex> guard(lock);
  return cache.emplace(key, value).first->second;
}

std::optional<CycElt> H_reduced(long k, long b, int eps, const RootSpec& spec) {
  const CycElt x = x_k(full_ring(spec), 2 * k + 1 + eps);
  if (x.is_zero()) return std::nullopt;
  const CycElt sum = laplace_sum(spec, [&](long n) {
    return q_pochhammer_const(n - k, 2 * k + 1 + eps).shifted(-4 * k * n + framing_exponent(b, n) - 6 * eps * n);
  });
  return sum * mpq_class(2) / x;
}

CycElt F_unknot(int sign, const RootSpec& spec) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("F_unknot: sign must be +1 or -1");
  return H(0, sign, 0, spec) / ev_braces_one(spec);
}

CycElt rank_D(const RootSpec& spec) {
  require_nondegenerate(spec);
  static std::mutex lock;
  static std::map<SpecKey, CycElt> cache;
  {
    std::lock_guard<std::mutex> guard(lock);
    if (auto it = cache.find(key_of(spec)); it != cache.end()) return it->second;
  }
  // |1 - xi| = ±i (xi^{1/2} - xi^{-1/2}); pick the sign with positive real part.
  CycElt abs_one_minus_xi = CycElt::root_power(spec.t, spec.t / 4) * ev_braces_one(spec);
  if (real_sign(abs_one_minus_xi) < 0) abs_one_minus_xi = -abs_one_minus_xi;
  CycElt numerator = sqrt_in_ring(spec.r, spec);
  if (spec.group == Group::SU2) {
    numerator *= spec.ord4 == spec.r ? CycElt::constant(spec.t, 2) : sqrt_in_ring(2, spec);
  }
  const CycElt D = numerator / abs_one_minus_xi;
  if (D * D != F_unknot(1, spec) * F_unknot(-1, spec)) throw Falsification("D^2 differs from F_{U^+} F_{U^-}");
  if (!D.is_integral()) throw Falsification("the rank D is not integral");
  if (!is_associate((one(spec) - spec.xi_power(1)) * D, H(0, 1, 0, spec)))
    throw Falsification("(1 - xi) D is not associate to H(0, 1, 0)");
  std::lock_guard<std::mutex> guard(lock);
  return cache.emplace(key_of(spec), D).first->second;
}

CycElt mu_factor(const SurgeryPresentation& pres, const RootSpec& spec) {
  if (spec.group == Group::SU2) return one(spec);
  long sum = 0;
  for (std::size_t i = 0; i < pres.l(); ++i)
    for (std::size_t j = 0; j < pres.l(); ++j)
      sum += pres.colored_linking[i][j] * (pres.colors[i] - 1) * (pres.colors[j] - 1);
  const long r = spec.r;
  return spec.quarter_power(-r * (r - 2) * sum);
}

CycElt F_link(const SurgeryPresentation& pres, const RootSpec& spec) {
  pres.validate();
  const long r = spec.r;
  if (pres.family == Family::SplitDiagonal) {
    CycElt out = ev_xi(free_unknots(pres), spec);
    for (std::size_t i = 0; i < pres.m(); ++i) {
      out *= laplace_sum(spec, [&](long n) {
        return (block_value(pres, i, n) * q_int(n)).shifted(framing_exponent(pres.framings[i], n));
      });
    }
    return out * mu_factor(pres, spec);
  }

  // Table-backed: J(n) = sign * J(n') with n' in [1, r-1], coordinatewise, so
  // the multi-sum regroups as sum_{n'} ev J(n') prod_i W_i(n'_i).
  const std::size_t m = pres.m();
  std::vector<std::vector<CycElt>> W(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<PowerSumAccumulator> acc(static_cast<std::size_t>(r), PowerSumAccumulator(spec.t));
    for (long n = 0; n < 4 * r; ++n) {
      if (!summed(spec, n)) continue;
      const long red = mod(n, 2 * r);
      if (red == 0 || red == r) continue;  // [n] vanishes at xi
      const long target = red < r ? red : 2 * r - red;
      QLaurent term = q_int(n).shifted(framing_exponent(pres.framings[i], n));
      if (red > r) term = -term;
      acc[static_cast<std::size_t>(target)].add_evaluated(term, spec.u);
    }
    for (long c = 0; c < r; ++c) W[i].push_back(acc[static_cast<std::size_t>(c)].reduce(4));
  }
  CycElt out(spec.t);
  if (m == 0) {
    out = ev_xi(pres.table->at({}), spec);
  } else {
    for_each_tuple(m, 1, r - 1, [&](const Colors& n) {
      CycElt weight = one(spec);
      for (std::size_t i = 0; i < m; ++i) {
        const CycElt& w = W[i][static_cast<std::size_t>(n[i])];
        if (w.is_zero()) return;
        weight *= w;
      }
      out += weight * ev_xi(pres.table->at(n), spec);
    });
  }
  return out * mu_factor(pres, spec);
}

CycElt tau_direct(const SurgeryPresentation& pres, const RootSpec& spec) {
  require_nondegenerate(spec);
  CycElt denom = F_unknot(1, spec).pow(pres.beta_plus()) * F_unknot(-1, spec).pow(pres.beta_minus());
  if (pres.beta_zero() > 0) denom *= rank_D(spec).pow(pres.beta_zero());
  return F_link(pres, spec) / denom;
}

CycElt tau_diagonal(const SurgeryPresentation& pres, const RootSpec& spec) {
  require_nondegenerate(spec);
  pres.validate();
  const long K = (spec.r - 2) / 2;
  const std::vector<int> eps = epsilon_vector(pres);
  const std::size_t m = pres.m();

  std::vector<std::vector<CycElt>> g(m);
  for (std::size_t i = 0; i < m; ++i)
    for (long k = 0; k <= K; ++k) g[i].push_back(diagonal_factor(k, pres.framings[i], eps[i], spec));

  CycElt out = one(spec);
  if (pres.family == Family::SplitDiagonal) {
    out = ev_xi(free_unknots(pres), spec);
    for (std::size_t i = 0; i < m; ++i) {
      JonesTable block;
      block.arity = 1;
      for (long n = 1; n <= K + 1; ++n) block.values.emplace(Colors{n}, block_value(pres, i, n));
      const HabiroBlocks c = habiro_blocks(block, {eps[i]}, K);
      CycElt sum(spec.t);
      for (const auto& [k, v] : c.c)
        if (!v.is_zero()) sum += ev_xi(v, spec) * g[i][static_cast<std::size_t>(k[0])];
      out *= sum;
    }
  } else {
    const HabiroBlocks c = habiro_blocks(*pres.table, eps, K);
    CycElt sum(spec.t);
    for (const auto& [k, v] : c.c) {
      if (v.is_zero()) continue;
      CycElt term = ev_xi(v, spec);
      for (std::size_t i = 0; i < m; ++i) term *= g[i][static_cast<std::size_t>(k[i])];
      sum += term;
    }
    out = sum;
  }
  return out * mu_factor(pres, spec);
}

InvariantResult tau(const SurgeryPresentation& pres, const RootSpec& spec) {
  InvariantResult res;
  res.value = tau_direct(pres, spec);
  if (tau_diagonal(pres, spec) != res.value)
    throw Falsification("the direct and the diagonal computation of tau disagree");
  res.group = spec.group;
  res.spec = spec;
  res.integral = res.value.is_integral();
  res.beta_plus = pres.beta_plus();
  res.beta_minus = pres.beta_minus();
  res.beta_zero = pres.beta_zero();
  return res;
}

CycElt F_Z2_unknot(int sign, const RootSpec& spec) {
  const long r = spec.r;
  return one(spec) + spec.quarter_power(sign * r * (r - 2));
}

InvariantResult tau_Z2(const SurgeryPresentation& pres, const RootSpec& spec) {
  const long r = spec.r;
  if (r % 2 == 0) throw SpecError("the Z/2 invariant needs an odd order r");
  if (spec.ord4 == 2 * r) throw SpecError("the Z/2 invariant needs xi^{1/4} of order r or 4r");
  pres.validate();

  long p_sum = 0;
  for (std::size_t i = 0; i < pres.l(); ++i)
    for (std::size_t j = 0; j < pres.l(); ++j)
      p_sum += pres.colored_linking[i][j] * (pres.colors[i] - 1) * (pres.colors[j] - 1);
  // The linking matrix of L is diagonal, so the sum over alpha in {0,1}^m factors.
  const std::vector<int> eps = epsilon_vector(pres);
  CycElt F = spec.quarter_power(r * (r - 2) * p_sum);
  for (std::size_t i = 0; i < pres.m(); ++i)
    F *= one(spec) + spec.quarter_power(r * (r - 2) * pres.framings[i] + 2 * r * eps[i]);

  const CycElt plus = F_Z2_unknot(1, spec), minus = F_Z2_unknot(-1, spec);
  const CycElt abs_plus = spec.ord4 == r ? CycElt::constant(spec.t, 2) : sqrt_in_ring(2, spec);
  if (abs_plus * abs_plus != plus * minus) throw Falsification("|F^{Z/2}_{U^+}|^2 differs from F^{Z/2}_{U^+} F^{Z/2}_{U^-}");

  InvariantResult res;
  res.value = F / (plus.pow(pres.beta_plus()) * minus.pow(pres.beta_minus()) * abs_plus.pow(pres.beta_zero()));
  if (!res.value.is_integral()) throw Falsification("the Z/2 invariant is not integral");
  res.group = spec.group;
  res.spec = spec;
  res.integral = true;
  res.beta_plus = pres.beta_plus();
  res.beta_minus = pres.beta_minus();
  res.beta_zero = pres.beta_zero();
  return res;
}

bool check_splitting(const SurgeryPresentation& pres, int r, long u) {
  const RootSpec su = RootSpec::make(Group::SU2, r, u);
  const RootSpec so = RootSpec::make(Group::SO3, r, u);
  return tau(pres, su).value == tau_Z2(pres, su).value * tau(pres, so).value;
}

bool check_color_flip(const SurgeryPresentation& pres, const RootSpec& spec, const std::vector<int>& alpha) {
  if (spec.group != Group::SO3) throw SpecError("the color flip symmetry is a statement about SO(3)");
  if (alpha.size() != pres.l()) throw std::invalid_argument("check_color_flip: alpha has the wrong length");
  Colors flipped = pres.colors;
  CycElt factor = one(spec);
  for (std::size_t j = 0; j < pres.l(); ++j) {
    if (pres.colors[j] < 1 || pres.colors[j] >= spec.r) throw std::invalid_argument("colors must lie in [1, r-1]");
    if (alpha[j] == 0) continue;
    flipped[j] = spec.r - pres.colors[j];
    factor *= -spec.quarter_power(2L * spec.r);
  }
  return tau(pres.recolored(flipped), spec).value == factor * tau(pres, spec).value;
}

long integrality_oracles(const RootSpec& spec, const std::vector<long>& bs) {
  require_nondegenerate(spec);
  const long K = (spec.r - 2) / 2;
  const CycElt zero_divisor = (one(spec) - spec.xi_power(1)) * rank_D(spec);
  long checks = 0;
  for (long b : bs)
    for (long k = 0; k <= K; ++k)
      for (int eps = 0; eps <= 1; ++eps) {
        const CycElt h = H(k, b, eps, spec);
        const std::string where = "k = " + std::to_string(k) + ", b = " + std::to_string(b) + ", eps = " +
                                  std::to_string(eps) + ", r = " + std::to_string(spec.r);
        if (b == 0) {
          if (!divides(zero_divisor, h)) throw Falsification("(1 - xi) D does not divide H at " + where);
          ++checks;
          continue;
        }
        for (int sign : {1, -1}) {
          if (!divides(H(0, sign, 0, spec), h)) throw Falsification("H(0, +-1, 0) does not divide H at " + where);
          ++checks;
        }
      }
  return checks;
}

bool check_b2_product(long k, int sign, const RootSpec& spec) {
  if (spec.group != Group::SU2 || spec.r % 2 != 0) throw SpecError("the b = +-2 product form is for SU(2) with even r");
  CycElt lhs = H(k, 2L * sign, 0, spec);
  for (long i = 0; i <= k; ++i) lhs *= one(spec) + spec.quarter_power(2 * (2 * i + 1));
  return is_associate(lhs, CycElt::constant(spec.t, 2) * sqrt_in_ring(spec.r, spec));
}

CycElt lens_tau_sum(long b, long a, const RootSpec& spec) {
  if (b == 0) throw std::invalid_argument("lens_tau_sum needs a non-zero framing");
  require_nondegenerate(spec);
  const CycElt num = laplace_sum(spec, [&](long n) { return (q_int(n * a) * q_int(n)).shifted(framing_exponent(b, n)); });
  const CycElt den =
      laplace_sum(spec, [&](long n) { return (q_int(n) * q_int(n)).shifted(framing_exponent(sign_of(b), n)); });
  return num / den;
}

CycElt lens_closed_form(long b, const RootSpec& spec) {
  if (spec.group != Group::SO3) throw SpecError("the closed lens form is for SO(3)");
  const long r = spec.r;
  if (std::gcd(b, r) != 1) throw std::invalid_argument("lens_closed_form needs gcd(b, r) = 1");
  const long four_star = inverse_mod(4, r), b_star = inverse_mod(b, r), sn = sign_of(b);
  return spec.xi_power(four_star * (sn - b)) * (one(spec) - spec.xi_power(-b_star)) /
         (one(spec) - spec.xi_power(-sn)) * gauss_sum(b, 0, spec) / gauss_sum(sn, 0, spec);
}

CycElt lens_odd_color_shape(long b, long s, const RootSpec& spec) {
  const RootOfUnity w = RootOfUnity::from_exponent(spec.t, spec.u);
  const CycElt num = gauss_reduce(-b, 4 * s + 4, w) - gauss_reduce(-b, 4 * s, w);
  return num / ((one(spec) - spec.xi_power(1)) * gauss_reduce(-1, 0, w));
}

std::optional<long> lens_odd_color_search(long b, const RootSpec& spec) {
  for (long s = 0; s < spec.r; ++s)
    if (!tau(SurgeryPresentation::lens(-b, 2 * s + 1), spec).value.is_zero()) return s;
  return std::nullopt;
}

}  // namespace wrtk
