#include "wrtk/cyclo.hpp"

#include <mpfr.h>

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "wrtk/errors.hpp"

namespace wrtk {

namespace {

long mod(long a, long m) {
  const long x = a % m;
  return x < 0 ? x + m : x;
}

// Quotient of a by the monic polynomial b; throws if the division is inexact.
std::vector<mpz_class> divide_monic(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw std::logic_error("divide_monic: degree too small");
  std::vector<mpz_class> q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    const mpz_class c = a[i];
    q[i - db] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (const auto& c : a)
    if (c != 0) throw std::logic_error("divide_monic: non-zero remainder");
  return q;
}

std::vector<mpz_class> compute_cyclotomic(int t) {
  std::vector<mpz_class> p(static_cast<std::size_t>(t) + 1);
  p[0] = -1;
  p[static_cast<std::size_t>(t)] = 1;
  for (int d = 1; d < t; ++d)
    if (t % d == 0) p = divide_monic(std::move(p), compute_cyclotomic(d));
  return p;
}

struct Table {
  int t = 1;
  int phi = 1;
  std::vector<mpz_class> poly;
  // red[i] = zeta^i written in the basis 1..zeta^{phi-1}, for 0 <= i < t.
  std::vector<std::vector<mpz_class>> red;
};

const Table& table_for(int t) {
  if (t < 1) throw std::invalid_argument("cyclotomic conductor must be >= 1");
  static std::mutex lock;
  static std::map<int, std::unique_ptr<const Table>> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(t);
  if (it != cache.end()) return *it->second;

  auto tab = std::make_unique<Table>();
  tab->t = t;
  tab->poly = compute_cyclotomic(t);
  tab->phi = static_cast<int>(tab->poly.size()) - 1;
  const auto phi = static_cast<std::size_t>(tab->phi);
  tab->red.assign(static_cast<std::size_t>(t), std::vector<mpz_class>(phi));
  std::vector<mpz_class> cur(phi + 1);
  cur[0] = 1;
  for (int i = 0; i < t; ++i) {
    if (cur[phi] != 0) {
      const mpz_class c = cur[phi];
      for (std::size_t j = 0; j <= phi; ++j) cur[j] -= c * tab->poly[j];
    }
    for (std::size_t j = 0; j < phi; ++j) tab->red[static_cast<std::size_t>(i)][j] = cur[j];
    for (std::size_t j = phi; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
  }
  const Table& ref = *tab;
  cache.emplace(t, std::move(tab));
  return ref;
}

// Reduces a length-t vector of power sums into phi(t) coefficients.
std::vector<mpz_class> reduce_sums(const Table& tab, const std::vector<mpz_class>& sums) {
  const auto phi = static_cast<std::size_t>(tab.phi);
  std::vector<mpz_class> out(sums.begin(), sums.begin() + static_cast<std::ptrdiff_t>(phi));
  for (std::size_t i = phi; i < sums.size(); ++i) {
    if (sums[i] == 0) continue;
    const auto& row = tab.red[i];
    for (std::size_t j = 0; j < phi; ++j)
      if (row[j] != 0) out[j] += sums[i] * row[j];
  }
  return out;
}

}  // namespace

std::vector<mpz_class> cyclotomic_poly(int t) { return table_for(t).poly; }

// ---------------------------------------------------------------------------

CycElt::CycElt(int t) : t_(t), num_(static_cast<std::size_t>(table_for(t).phi)) {}

CycElt CycElt::constant(int t, const mpq_class& c) {
  CycElt out(t);
  out.num_[0] = c.get_num();
  out.den_ = c.get_den();
  out.normalize();
  return out;
}

CycElt CycElt::root_power(int t, long e) {
  CycElt out(t);
  out.num_ = table_for(t).red[static_cast<std::size_t>(mod(e, t))];
  return out;
}

CycElt CycElt::from_power_sums(int t, const std::vector<mpz_class>& sums, const mpz_class& den) {
  if (sums.size() != static_cast<std::size_t>(t)) throw std::invalid_argument("from_power_sums: length must be t");
  if (den <= 0) throw std::invalid_argument("from_power_sums: denominator must be positive");
  CycElt out(t);
  out.num_ = reduce_sums(table_for(t), sums);
  out.den_ = den;
  out.normalize();
  return out;
}

CycElt CycElt::from_coeffs(int t, const std::vector<mpq_class>& coeffs) {
  CycElt out(t);
  if (coeffs.size() != out.num_.size()) throw std::invalid_argument("from_coeffs: expected phi(t) coefficients");
  mpz_class den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.num_[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  out.den_ = den;
  out.normalize();
  return out;
}

void CycElt::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

mpq_class CycElt::coeff(int i) const {
  mpq_class q(num_.at(static_cast<std::size_t>(i)), den_);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> CycElt::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (int i = 0; i < degree(); ++i) out.push_back(coeff(i));
  return out;
}

bool CycElt::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

std::optional<mpq_class> CycElt::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return std::nullopt;
  return coeff(0);
}

CycElt CycElt::galois(long a) const {
  if (std::gcd(a, static_cast<long>(t_)) != 1) throw std::invalid_argument("galois: exponent not coprime to t");
  std::vector<mpz_class> sums(static_cast<std::size_t>(t_));
  for (std::size_t i = 0; i < num_.size(); ++i)
    if (num_[i] != 0) sums[static_cast<std::size_t>(mod(a * static_cast<long>(i), t_))] += num_[i];
  return from_power_sums(t_, sums, den_);
}

CycElt CycElt::conj() const { return galois(-1); }

CycElt CycElt::inverse() const {
  if (is_zero()) throw std::domain_error("CycElt::inverse of zero");
  // x^{-1} = (prod of the other conjugates) / norm(x).
  CycElt integral = *this;
  integral.den_ = 1;
  CycElt others = constant(t_, 1);
  for (long a = 2; a < t_; ++a)
    if (std::gcd(a, static_cast<long>(t_)) == 1) others *= integral.galois(a);
  const auto norm = (integral * others).as_rational();
  if (!norm) throw std::logic_error("CycElt::inverse: norm is not rational");
  CycElt out = others * (mpq_class(den_) / *norm);
  return out;
}

CycElt CycElt::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  CycElt out = constant(t_, 1), base = *this;
  while (n != 0) {
    if (n & 1) out *= base;
    n >>= 1;
    if (n != 0) base *= base;
  }
  return out;
}

CycElt& CycElt::operator+=(const CycElt& o) {
  if (o.t_ != t_) throw std::invalid_argument("CycElt: conductor mismatch");
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

CycElt& CycElt::operator-=(const CycElt& o) { return *this += -o; }

CycElt operator-(CycElt a) {
  for (auto& c : a.num_) c = -c;
  return a;
}

CycElt& CycElt::operator*=(const CycElt& o) {
  if (o.t_ != t_) throw std::invalid_argument("CycElt: conductor mismatch");
  const auto& tab = table_for(t_);
  std::vector<mpz_class> sums(static_cast<std::size_t>(t_));
  const std::size_t n = num_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.num_[j] == 0) continue;
      std::size_t k = i + j;
      if (k >= static_cast<std::size_t>(t_)) k -= static_cast<std::size_t>(t_);
      mpz_addmul(sums[k].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
    }
  }
  num_ = reduce_sums(tab, sums);
  den_ *= o.den_;
  normalize();
  return *this;
}

CycElt& CycElt::operator*=(const mpq_class& s) {
  for (auto& c : num_) c *= s.get_num();
  den_ *= s.get_den();
  normalize();
  return *this;
}

CycElt embed(const CycElt& x, int t) {
  const int s = x.conductor();
  if (t % s != 0) throw std::invalid_argument("embed: conductor does not divide target");
  const int step = t / s;
  std::vector<mpz_class> sums(static_cast<std::size_t>(t));
  for (int i = 0; i < x.degree(); ++i) sums[static_cast<std::size_t>(i * step)] = x.numerators()[static_cast<std::size_t>(i)];
  return CycElt::from_power_sums(t, sums, x.denominator());
}

// ---------------------------------------------------------------------------

void PowerSumAccumulator::add(long e, const mpz_class& c) { sums_[static_cast<std::size_t>(mod(e, t_))] += c; }

void PowerSumAccumulator::add_evaluated(const QLaurent& f, long u, long shift) {
  for (const auto& [e, c] : f.terms()) add(u * e + shift, c);
}

void PowerSumAccumulator::add_shifted(const PowerSumAccumulator& o, long shift) {
  for (int i = 0; i < t_; ++i)
    if (o.sums_[static_cast<std::size_t>(i)] != 0) add(i + shift, o.sums_[static_cast<std::size_t>(i)]);
}

CycElt PowerSumAccumulator::reduce(const mpz_class& den) const { return CycElt::from_power_sums(t_, sums_, den); }

// ---------------------------------------------------------------------------

std::optional<CycElt> divides(const CycElt& x, const CycElt& y) {
  if (x.is_zero()) throw std::domain_error("divides: zero divisor");
  CycElt q = y * x.inverse();
  if (!q.is_integral()) return std::nullopt;
  return q;
}

bool is_associate(const CycElt& x, const CycElt& y) {
  if (x.is_zero() && y.is_zero()) throw std::domain_error("is_associate: both arguments are zero");
  if (x.is_zero() || y.is_zero()) return false;
  return divides(y, x).has_value() && divides(x, y).has_value();
}

bool is_unit(const CycElt& x) { return !x.is_zero() && x.inverse().is_integral(); }

std::string to_string(Group g) { return g == Group::SU2 ? "su2" : "so3"; }

// ---------------------------------------------------------------------------

int conductor_for(int r) { return r % 2 != 0 ? 8 * r : 4 * r; }

namespace {
long order_of(long e, long t) { return t / std::gcd(mod(e, t), t); }
}  // namespace

RootSpec RootSpec::make(Group g, int r, std::optional<long> u, bool allow_degenerate) {
  if (r < 2) throw SpecError("root order r must be at least 2");
  if (g == Group::SO3 && (r % 2 == 0 || r < 3)) throw SpecError("SO(3) requires an odd order r >= 3");
  RootSpec s;
  s.group = g;
  s.r = r;
  s.t = conductor_for(r);
  s.u = mod(u.value_or(default_u(r)), s.t);
  if (order_of(4 * s.u, s.t) != r)
    throw SpecError("u = " + std::to_string(s.u) + " does not give a primitive root of order " + std::to_string(r));
  s.ord4 = static_cast<int>(order_of(s.u, s.t));
  if (s.degenerate() && !allow_degenerate)
    throw SpecError("G = SU(2) with xi^{1/4} of order 2r: the unknot sums F_{U^+-} vanish, so the invariant is undefined");
  return s;
}

long RootSpec::xi_exponent_mod_r() const {
  // xi = zeta_t^{4u} = zeta_r^{4u r / t}
  return mod(4 * u / (t / r), r);
}

long default_u(int r) {
  const int t = conductor_for(r);
  for (long u = 1; u < t; ++u)
    if (order_of(4 * u, t) == r && order_of(u, t) == 4 * r) return u;
  throw SpecError("no default fourth root exists");
}

std::vector<long> fourth_root_choices(int r) {
  const int t = conductor_for(r);
  // zeta_t^{4u} = zeta_r  <=>  4u = t/r (mod t)
  std::vector<long> out;
  for (long u = 0; u < t; ++u)
    if (mod(4 * u - t / r, t) == 0) out.push_back(u);
  return out;
}

std::vector<long> all_valid_u(Group g, int r) {
  const int t = conductor_for(r);
  std::vector<long> out;
  for (long u = 0; u < t; ++u) {
    if (order_of(4 * u, t) != r) continue;
    if (g == Group::SU2 && order_of(u, t) == 2 * r) continue;
    out.push_back(u);
  }
  return out;
}

CycElt evaluate(const QLaurent& f, int t, long u) {
  PowerSumAccumulator acc(t);
  acc.add_evaluated(f, u);
  return acc.reduce();
}

CycElt ev_xi(const QLaurent& f, const RootSpec& spec) { return evaluate(f, spec.t, spec.u); }

XiRing full_ring(const RootSpec& spec) { return XiRing{spec.t, 4 * spec.u, spec.r}; }
XiRing small_ring(const RootSpec& spec) { return XiRing{spec.r, spec.xi_exponent_mod_r(), spec.r}; }

CycElt xi_pochhammer(const XiRing& x, long a, long m) {
  CycElt out = CycElt::constant(x.t, 1);
  for (long i = 0; i < m; ++i) out *= CycElt::constant(x.t, 1) - x.power(a + i);
  return out;
}

CycElt O_xi(const XiRing& x) { return xi_pochhammer(x, 1, (x.r - 1) / 2); }

CycElt x_k(const XiRing& x, long k) { return xi_pochhammer(x, k / 2 + 1, k - k / 2); }

// ---------------------------------------------------------------------------

namespace {

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

}  // namespace

ComplexInterval complex_embed(const CycElt& x, int precision_bits) {
  const mpfr_prec_t p = precision_bits;
  Mpfr re(p), im(p), angle(p), c(p), s(p), term(p), pi(p);
  mpfr_set_zero(re.v, 1);
  mpfr_set_zero(im.v, 1);
  mpfr_const_pi(pi.v, MPFR_RNDN);
  mpz_class weight = 0;  // sum |c_i|, drives the error bound
  const int t = x.conductor();
  for (int i = 0; i < x.degree(); ++i) {
    const mpz_class& n = x.numerators()[static_cast<std::size_t>(i)];
    if (n == 0) continue;
    weight += abs(n);
    mpfr_mul_si(angle.v, pi.v, 2L * i, MPFR_RNDN);
    mpfr_div_si(angle.v, angle.v, t, MPFR_RNDN);
    mpfr_sin_cos(s.v, c.v, angle.v, MPFR_RNDN);
    mpfr_mul_z(term.v, c.v, n.get_mpz_t(), MPFR_RNDN);
    mpfr_add(re.v, re.v, term.v, MPFR_RNDN);
    mpfr_mul_z(term.v, s.v, n.get_mpz_t(), MPFR_RNDN);
    mpfr_add(im.v, im.v, term.v, MPFR_RNDN);
  }
  // Each evaluated power is off by at most a few ulps of 1; every product and
  // partial sum adds at most one ulp of a quantity bounded by weight.
  Mpfr rad(64);
  mpfr_set_z(rad.v, weight.get_mpz_t(), MPFR_RNDU);
  mpfr_mul_si(rad.v, rad.v, 64L * (x.degree() + 2), MPFR_RNDU);
  mpfr_mul_2si(rad.v, rad.v, -static_cast<long>(p), MPFR_RNDU);
  mpfr_div_z(re.v, re.v, x.denominator().get_mpz_t(), MPFR_RNDN);
  mpfr_div_z(im.v, im.v, x.denominator().get_mpz_t(), MPFR_RNDN);
  mpfr_div_z(rad.v, rad.v, x.denominator().get_mpz_t(), MPFR_RNDU);

  Mpfr tmp(p);
  ComplexInterval out{};
  mpfr_sub(tmp.v, re.v, rad.v, MPFR_RNDD);
  out.re_lo = mpfr_get_d(tmp.v, MPFR_RNDD);
  mpfr_add(tmp.v, re.v, rad.v, MPFR_RNDU);
  out.re_hi = mpfr_get_d(tmp.v, MPFR_RNDU);
  mpfr_sub(tmp.v, im.v, rad.v, MPFR_RNDD);
  out.im_lo = mpfr_get_d(tmp.v, MPFR_RNDD);
  mpfr_add(tmp.v, im.v, rad.v, MPFR_RNDU);
  out.im_hi = mpfr_get_d(tmp.v, MPFR_RNDU);
  return out;
}

int real_sign(const CycElt& x) {
  for (int bits = 128; bits <= 8192; bits *= 2) {
    const auto box = complex_embed(x, bits);
    if (box.re_lo > 0) return 1;
    if (box.re_hi < 0) return -1;
  }
  throw std::runtime_error("real_sign: real part not separated from zero");
}

CycElt sqrt_in_ring(long n, const RootSpec& spec) {
  const int t = spec.t;
  CycElt root(t);
  if (n == 2) {
    root = spec.e8() + spec.e8().conj();
  } else if (n == spec.r) {
    const int r = spec.r;
    // |1 - zeta_r^j| = -i (zeta_{2r}^j - zeta_{2r}^{-j}) for 0 < j < r/2.
    const CycElt minus_i = CycElt::root_power(t, -t / 4);
    root = CycElt::constant(t, 1);
    for (int j = 1; j <= (r - 1) / 2; ++j) {
      const long e = static_cast<long>(j) * (t / (2 * r));
      root *= minus_i * (CycElt::root_power(t, e) - CycElt::root_power(t, -e));
    }
    if (r % 2 == 0) root *= spec.e8() + spec.e8().conj();  // product above is sqrt(r/2)
  } else {
    throw std::invalid_argument("sqrt_in_ring: only n = 2 and n = r are supported");
  }
  if (real_sign(root) < 0) root = -root;
  if (!(root * root == CycElt::constant(t, n))) throw std::logic_error("sqrt_in_ring: square check failed");
  return root;
}

}  // namespace wrtk
