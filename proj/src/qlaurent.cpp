#include "wrtk/qlaurent.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "wrtk/zqlaurent.hpp"

namespace wrtk {

QLaurentQ to_rational(const QLaurent& f) {
  QLaurentQ out;
  for (const auto& [e, c] : f.terms()) out.add_term(e, mpq_class(c));
  return out;
}

std::optional<QLaurent> to_integral(const QLaurentQ& f) {
  QLaurent out;
  for (const auto& [e, c] : f.terms()) {
    if (c.get_den() != 1) return std::nullopt;
    out.add_term(e, c.get_num());
  }
  return out;
}

namespace {

// Long division from the top.  The quotient's exponents must lie in
// [min f - min g, max f - max g]; a leading term below that window means a
// non-zero remainder.
template <class Coeff, class StepOk>
std::optional<BasicLaurent<Coeff>> divide_impl(const BasicLaurent<Coeff>& f, const BasicLaurent<Coeff>& g,
                                               StepOk step_ok) {
  if (g.is_zero()) throw std::domain_error("exact_divide: division by zero");
  BasicLaurent<Coeff> quotient;
  if (f.is_zero()) return quotient;
  const QExp lo = f.min_exp() - g.min_exp();
  const QExp g_top = g.max_exp();
  const Coeff g_lead = g.terms().rbegin()->second;
  BasicLaurent<Coeff> rem = f;
  while (!rem.is_zero()) {
    const QExp e = rem.max_exp() - g_top;
    if (e < lo) return std::nullopt;
    Coeff c;
    if (!step_ok(rem.terms().rbegin()->second, g_lead, c)) return std::nullopt;
    quotient.add_term(e, c);
    for (const auto& [ge, gc] : g.terms()) rem.add_term(ge + e, Coeff(-c * gc));
  }
  return quotient;
}

}  // namespace

std::optional<QLaurent> exact_divide(const QLaurent& f, const QLaurent& g) {
  return divide_impl(f, g, [](const mpz_class& a, const mpz_class& b, mpz_class& out) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return true;
  });
}

std::optional<QLaurentQ> exact_divide(const QLaurentQ& f, const QLaurentQ& g) {
  return divide_impl(f, g, [](const mpq_class& a, const mpq_class& b, mpq_class& out) {
    out = a / b;
    return true;
  });
}

std::string to_string(const QLaurent& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*q^(" << e << "/4)";
  }
  return os.str();
}

QLaurent parse_qlaurent(std::string_view text) {
  QLaurent out;
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s == "0") return out;
  auto fail = [&] { throw std::invalid_argument("malformed q-Laurent polynomial: " + std::string(text)); };
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto star = s.find("*q^(", pos);
    if (star == std::string::npos) fail();
    const auto slash = s.find("/4)", star);
    if (slash == std::string::npos) fail();
    mpz_class c;
    if (c.set_str(s.substr(pos, star - pos), 10) != 0) fail();
    QExp e = 0;
    try {
      std::size_t used = 0;
      const std::string es = s.substr(star + 4, slash - star - 4);
      e = std::stoll(es, &used);
      if (used != es.size()) fail();
    } catch (const std::logic_error&) {
      fail();
    }
    out.add_term(e, c);
    pos = slash + 3;
    if (pos < s.size()) {
      if (s[pos] != '+') fail();
      ++pos;
    }
  }
  return out;
}

QLaurent q_braces(long n) {
  QLaurent out;
  out.add_term(2 * n, 1);
  out.add_term(-2 * n, -1);
  return out;
}

QLaurent q_int(long n) {
  QLaurent out;
  const long m = n < 0 ? -n : n;
  for (long i = 0; i < m; ++i) out.add_term(2 * (m - 1 - 2 * i), 1);
  return n < 0 ? -out : out;
}

QLaurent q_braces_factorial(long n) {
  QLaurent out(1L);
  for (long i = 1; i <= n; ++i) out = out * q_braces(i);
  return out;
}

QLaurent q_lambda(long n) {
  QLaurent out;
  out.add_term(2 * n, 1);
  out.add_term(-2 * n, 1);
  return out;
}

QLaurent q_bracket_binom(long n, long k) {
  if (k < 0 || k > n) return {};
  if (k > n - k) k = n - k;
  QLaurent num(1L);
  for (long i = 1; i <= k; ++i) num = num * q_braces(n - k + i);
  auto quo = exact_divide(num, q_braces_factorial(k));
  if (!quo) throw std::logic_error("q_bracket_binom: inexact quotient");
  return *quo;
}

QLaurent q_pochhammer_const(long a, long m) {
  QLaurent out(1L);
  for (long i = 0; i < m; ++i) {
    QLaurent factor(1L);
    factor.add_term(4 * (a + i), -1);
    out = out * factor;
  }
  return out;
}

QLaurent q_round_binom(long m, long n) {
  if (n < 0) return {};
  auto quo = exact_divide(q_pochhammer_const(m - n + 1, n), q_pochhammer_const(1, n));
  if (!quo) throw std::logic_error("q_round_binom: inexact quotient");
  return *quo;
}

QLaurent X_poly(long k) {
  QLaurent out(1L);
  for (long j = k / 2 + 1; j <= k; ++j) {
    QLaurent factor(1L);
    factor.add_term(4 * j, -1);
    out = out * factor;
  }
  return out;
}

// ---------------------------------------------------------------------------

ZQLaurent ZQLaurent::monomial(const QLaurent& c, long z_exp) {
  ZQLaurent out;
  out.add_term(z_exp, c);
  return out;
}

QLaurent ZQLaurent::coeff(long z_exp) const {
  auto it = terms_.find(z_exp);
  return it == terms_.end() ? QLaurent{} : it->second;
}

void ZQLaurent::add_term(long z_exp, const QLaurent& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(z_exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ZQLaurent ZQLaurent::sigma() const {
  ZQLaurent out;
  for (const auto& [d, c] : terms_) out.terms_.emplace(-d, c);
  return out;
}

ZQLaurent ZQLaurent::shift_z(long c) const {
  ZQLaurent out;
  for (const auto& [d, coef] : terms_) out.terms_.emplace(d, coef.shifted(4 * c * d));
  return out;
}

ZQLaurent& ZQLaurent::operator+=(const ZQLaurent& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, c);
  return *this;
}

ZQLaurent& ZQLaurent::operator-=(const ZQLaurent& o) {
  for (const auto& [d, c] : o.terms_) add_term(d, -c);
  return *this;
}

ZQLaurent operator*(const ZQLaurent& a, const ZQLaurent& b) {
  ZQLaurent out;
  for (const auto& [da, ca] : a.terms_)
    for (const auto& [db, cb] : b.terms_) out.add_term(da + db, ca * cb);
  return out;
}

ZQLaurent pochhammer(long a, long m) {
  ZQLaurent out(QLaurent(1L));
  for (long i = 0; i < m; ++i) {
    ZQLaurent factor(QLaurent(1L));
    factor.add_term(1, -QLaurent::q_power(4 * (a + i)));
    out = out * factor;
  }
  return out;
}

ZQLaurent pochhammer_newton(long a, long m) {
  ZQLaurent out;
  for (long j = 0; j <= m; ++j) {
    QLaurent c = q_round_binom(m, j).shifted(4 * (j * (j - 1) / 2 + a * j));
    if (j % 2 == 1) c = -c;
    out.add_term(j, c);
  }
  return out;
}

}  // namespace wrtk
