#include "wrtk/rep.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "wrtk/errors.hpp"

namespace wrtk {

namespace {

std::string at(long a, long b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

RElt linear(const QLaurent& root) { return RElt::V() - RElt(root); }

}  // namespace

RElt::RElt(const QLaurent& c) {
  if (!c.is_zero()) c_.push_back(c);
}

RElt RElt::V() {
  RElt out;
  out.c_ = {QLaurent(), QLaurent(1L)};
  return out;
}

QLaurent RElt::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : QLaurent(); }

void RElt::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QLaurent RElt::evaluate(const QLaurent& lambda) const {
  QLaurent acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

RElt& RElt::operator+=(const RElt& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RElt& RElt::operator-=(const RElt& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RElt operator*(const RElt& a, const RElt& b) {
  RElt out;
  if (a.is_zero() || b.is_zero()) return out;
  out.c_.resize(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
  out.trim();
  return out;
}

RElt operator*(const QLaurent& s, const RElt& a) {
  RElt out = a;
  for (auto& c : out.c_) c = s * c;
  out.trim();
  return out;
}

bool in_v_powers(const QLaurent& f) {
  for (const auto& [e, c] : f.terms())
    if (e % 2 != 0) return false;
  return true;
}

const RElt& V_n(long n) {
  if (n < 1) throw std::invalid_argument("V_n needs n >= 1");
  static std::mutex lock;
  static std::vector<RElt> table{RElt(), RElt(1L)};  // V_0 = 0, V_1 = 1
  std::lock_guard<std::mutex> guard(lock);
  while (static_cast<long>(table.size()) <= n) {
    const std::size_t m = table.size();
    table.push_back(RElt::V() * table[m - 1] - table[m - 2]);
  }
  return table[static_cast<std::size_t>(n)];
}

RElt P_basis(long n, int eps) {
  if (n < 0) throw std::invalid_argument("P_basis needs n >= 0");
  RElt out(1L);
  for (long j = 1; j <= n; ++j) out = out * linear(q_lambda(2 * j - 1 + eps));
  return out;
}

std::vector<QLaurent> to_P_basis(const RElt& x, int eps) {
  const long d = x.degree();
  if (d < 0) return {};
  std::vector<QLaurent> out(static_cast<std::size_t>(d + 1));
  RElt rest = x;
  // P_k is monic of degree k: peel off the top coefficient each time.
  for (long k = d; k >= 0; --k) {
    const QLaurent c = rest.coeff(static_cast<std::size_t>(k));
    out[static_cast<std::size_t>(k)] = c;
    if (!c.is_zero()) rest -= c * P_basis(k, eps);
  }
  if (!rest.is_zero()) throw std::logic_error("P-basis expansion left a remainder");
  return out;
}

std::vector<QLaurent> to_V_basis(const RElt& x) {
  const long d = x.degree();
  if (d < 0) return {};
  std::vector<QLaurent> out(static_cast<std::size_t>(d + 1));
  RElt rest = x;
  // V_n is monic of degree n - 1.
  for (long n = d + 1; n >= 1; --n) {
    const QLaurent c = rest.coeff(static_cast<std::size_t>(n - 1));
    out[static_cast<std::size_t>(n - 1)] = c;
    if (!c.is_zero()) rest -= c * V_n(n);
  }
  if (!rest.is_zero()) throw std::logic_error("V-basis expansion left a remainder");
  return out;
}

std::vector<QLaurent> expand_Vn(long n, int eps) {
  if (n < 1) throw std::invalid_argument("expand_Vn needs n >= 1");
  if (eps != 0 && eps != 1) throw std::invalid_argument("eps must be 0 or 1");
  const auto coeffs = to_P_basis(V_n(n), eps);
  for (long k = 0; k < n; ++k) {
    const QLaurent binom = q_bracket_binom(n + k, 2 * k + 1);
    QLaurent expected = binom;
    if (eps == 1) {
      const auto quo = exact_divide(binom * q_lambda(n), q_lambda(k + 1));
      if (!quo) throw Falsification("lambda_{k+1} does not divide qbinom * lambda_n at (n, k) = " + at(n, k));
      expected = *quo;
    }
    if (coeffs[static_cast<std::size_t>(k)] != expected)
      throw Falsification("V_n expansion coefficient mismatch at (n, k) = " + at(n, k));
  }
  return coeffs;
}

QLaurent rosso_pairing(const RElt& x, const RElt& y) {
  const auto a = to_V_basis(x);
  QLaurent out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    const long n = static_cast<long>(i) + 1;
    out += a[i] * q_int(n) * y.evaluate(q_lambda(n));
  }
  return out;
}

RElt S_even(long p) {
  const RElt V2 = RElt::V() * RElt::V();
  RElt out(1L);
  for (long j = 1; j <= p; ++j) out = out * (V2 - RElt(q_lambda(j) * q_lambda(j)));
  return out;
}

RElt S_even_with_zero(long p) { return (RElt::V() * RElt::V() - RElt(4L)) * S_even(p); }

RElt S_odd(long p) { return RElt::V() * S_even(p); }

QLaurent verify_orthogonality(long k, long p, int eps) {
  if (k < 0 || p < 0) throw std::invalid_argument("orthogonality needs k, p >= 0");
  const RElt S = eps == 0 ? S_even(p) : S_odd(p);
  const QLaurent value = rosso_pairing(S, P_basis(k, eps));
  if (k != p) {
    if (!value.is_zero()) throw Falsification("pairing of S_p and P_k is non-zero at (k, p) = " + at(k, p));
    return value;
  }
  const QLaurent factorial_ratio = *exact_divide(q_braces_factorial(2 * k + 1), q_braces(1));
  QLaurent expected = factorial_ratio;
  if (eps == 1) {
    expected = q_int(p + 1) * q_lambda(p + 1);
    for (long j = 1; j <= p; ++j) expected = expected * q_braces(j) * q_braces(2 * p + 2 - j);
    if (expected != factorial_ratio * q_lambda(k + 1))
      throw Falsification("the two diagonal forms disagree at p = " + std::to_string(p));
  }
  if (value != expected) throw Falsification("diagonal pairing value mismatch at p = " + std::to_string(p));
  return value;
}

QLaurent B_trace_recursive(long n, long l, long j) {
  static std::mutex lock;
  static std::map<std::tuple<long, long, long>, QLaurent> cache;
  if (l < 0 || l > n || n < 0) return QLaurent();
  if (n == 0) return QLaurent(1L);
  {
    std::lock_guard<std::mutex> guard(lock);
    if (auto it = cache.find({n, l, j}); it != cache.end()) return it->second;
  }
  QLaurent value = q_braces(j - n) * q_braces(j + n) * B_trace_recursive(n - 1, l, j);
  if (l > 0)
    value += (QLaurent::q_power(4 * j) - QLaurent::q_power(4 * (j - l))) * B_trace_recursive(n - 1, l - 1, j + 1);
  std::lock_guard<std::mutex> guard(lock);
  return cache.emplace(std::make_tuple(n, l, j), std::move(value)).first->second;
}

QLaurent B_trace_closed(long n, long l, long j) {
  if (l < 0 || l > n || n < 0) return QLaurent();
  return QLaurent::q_power(-4 * (j + l) * n) * q_pochhammer_const(1, n) * q_pochhammer_const(1, n - l) *
         q_round_binom(j - 1, n - l) * q_round_binom(j + n, n - l);
}

QLaurent B_trace_closed_corrected(long n, long l, long j) {
  const QLaurent sign(l % 2 == 0 ? 1L : -1L);
  return sign * QLaurent::q_power(4 * l * (2 * j + l - 1)) * B_trace_closed(n, l, j);
}

QLaurent B_trace(long n, long l, long j) {
  const QLaurent rec = B_trace_recursive(n, l, j);
  if (rec != B_trace_closed_corrected(n, l, j))
    throw Falsification("trace recursion and closed form disagree at (n, l, j) = (" + std::to_string(n) + ", " +
                        std::to_string(l) + ", " + std::to_string(j) + ")");
  if (!rec.is_zero()) {
    const auto quo = exact_divide(rec, q_pochhammer_const(1, n));
    if (!quo || !quo->in_integer_powers())
      throw Falsification("trace not divisible by (q;q)_n at n = " + std::to_string(n));
  }
  return rec;
}

}  // namespace wrtk
