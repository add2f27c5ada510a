#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace wrtk {

/// Exponents of q are counted in quarters: exponent 4 is q^1, 2 is q^{1/2}.
using QExp = std::int64_t;

/**
 * Sparse Laurent polynomial in q^{1/4}.
 *
 * Coeff is mpz_class for the integral ring Z[q^{±1/4}] (the default) or
 * mpq_class for intermediate work over Q that is later checked for
 * integrality. No zero coefficient is ever stored.
 */
template <class Coeff>
class BasicLaurent {
 public:
  using Terms = std::map<QExp, Coeff>;

  BasicLaurent() = default;
  BasicLaurent(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(0, Coeff(c));
  }
  explicit BasicLaurent(const Coeff& c) {
    if (c != 0) terms_.emplace(0, c);
  }

  /// c * q^{e/4}
  static BasicLaurent monomial(const Coeff& c, QExp quarter_exp) {
    BasicLaurent out;
    if (c != 0) out.terms_.emplace(quarter_exp, c);
    return out;
  }
  /// q^{e/4}
  static BasicLaurent q_power(QExp quarter_exp) { return monomial(Coeff(1), quarter_exp); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coeff(QExp e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  void add_term(QExp e, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  QExp min_exp() const { return terms_.begin()->first; }
  QExp max_exp() const { return terms_.rbegin()->first; }

  /// True when every exponent is an integer power of q.
  bool in_integer_powers() const {
    for (const auto& [e, c] : terms_)
      if (e % 4 != 0) return false;
    return true;
  }

  /// Multiply by q^{e/4}.
  BasicLaurent shifted(QExp quarter_exp) const {
    BasicLaurent out;
    for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + quarter_exp, c);
    return out;
  }

  /// q^{1/4} -> q^{-1/4}
  BasicLaurent mirrored() const {
    BasicLaurent out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(-e, c);
    return out;
  }

  BasicLaurent& operator+=(const BasicLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicLaurent& operator-=(const BasicLaurent& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, Coeff(-c));
    return *this;
  }
  BasicLaurent& operator*=(const Coeff& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend BasicLaurent operator+(BasicLaurent a, const BasicLaurent& b) { return a += b; }
  friend BasicLaurent operator-(BasicLaurent a, const BasicLaurent& b) { return a -= b; }
  friend BasicLaurent operator-(BasicLaurent a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend BasicLaurent operator*(const BasicLaurent& a, const BasicLaurent& b) {
    BasicLaurent out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, Coeff(ca * cb));
    return out;
  }
  friend BasicLaurent operator*(BasicLaurent a, const Coeff& s) { return a *= s; }
  friend BasicLaurent operator*(const Coeff& s, BasicLaurent a) { return a *= s; }

  friend bool operator==(const BasicLaurent& a, const BasicLaurent& b) { return a.terms_ == b.terms_; }

  BasicLaurent pow(unsigned n) const {
    BasicLaurent out(1L), base = *this;
    while (n != 0) {
      if (n & 1U) out = out * base;
      n >>= 1U;
      if (n != 0) base = base * base;
    }
    return out;
  }

 private:
  Terms terms_;
};

using QLaurent = BasicLaurent<mpz_class>;
/// Rational-coefficient variant; only used inside solvers that re-check integrality.
using QLaurentQ = BasicLaurent<mpq_class>;

QLaurentQ to_rational(const QLaurent& f);
/// Returns the integral polynomial, or nullopt if some coefficient is not an integer.
std::optional<QLaurent> to_integral(const QLaurentQ& f);

/**
 * Exact division in Z[q^{±1/4}]: returns h with f = g*h, or nullopt when g
 * does not divide f there (non-zero remainder or a non-integral quotient).
 * Throws std::domain_error when g = 0.
 */
std::optional<QLaurent> exact_divide(const QLaurent& f, const QLaurent& g);
/// Same over Q: only a non-zero remainder makes it fail.
std::optional<QLaurentQ> exact_divide(const QLaurentQ& f, const QLaurentQ& g);

/// Canonical text form: ascending exponents, "c*q^(e/4)" joined by " + ".  Zero is "0".
std::string to_string(const QLaurent& f);
/// Inverse of to_string.  Throws std::invalid_argument on malformed input.
QLaurent parse_qlaurent(std::string_view text);

// q-combinatorial building blocks.

/// {n} = q^{n/2} - q^{-n/2}
QLaurent q_braces(long n);
/// [n] = {n}/{1}
QLaurent q_int(long n);
/// {n}! = {1}{2}...{n}
QLaurent q_braces_factorial(long n);
/// lambda_n = q^{n/2} + q^{-n/2}
QLaurent q_lambda(long n);
/// Symmetric binomial {n}!/({k}!{n-k}!), zero unless 0 <= k <= n.
QLaurent q_bracket_binom(long n, long k);
/// (q^{m-n+1};q)_n / (q;q)_n, any integer m, n >= 0.
QLaurent q_round_binom(long m, long n);
/// (q^a;q)_m as a polynomial in q alone.
QLaurent q_pochhammer_const(long a, long m);
/// X_k = (q;q)_k / (q;q)_{floor(k/2)}
QLaurent X_poly(long k);

}  // namespace wrtk
