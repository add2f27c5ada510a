#include "wrtk/jones.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "wrtk/errors.hpp"

namespace wrtk {

namespace {

std::string show(const Colors& n) {
  std::string out = "(";
  for (std::size_t i = 0; i < n.size(); ++i) out += (i != 0 ? "," : "") + std::to_string(n[i]);
  return out + ")";
}

// Visits every tuple of [lo, hi]^m in lexicographic order.
template <class F>
void for_each_tuple(std::size_t m, long lo, long hi, F&& visit) {
  if (hi < lo) return;
  Colors n(m, lo);
  while (true) {
    visit(static_cast<const Colors&>(n));
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (n[i] < hi) {
        ++n[i];
        break;
      }
      n[i] = lo;
      if (i == 0) return;
    }
    if (m == 0) return;
  }
}

IntMatrix zeros(std::size_t rows, std::size_t cols) { return IntMatrix(rows, std::vector<long>(cols, 0)); }

bool componentwise_le(const Colors& a, const Colors& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Smallest and largest color appearing in a table.
std::pair<long, long> table_window(const JonesTable& t) {
  long lo = 0, hi = -1;
  bool first = true;
  for (const auto& [n, v] : t.values)
    for (long x : n) {
      if (first || x < lo) lo = x;
      if (first || x > hi) hi = x;
      first = false;
    }
  return {lo, hi};
}

}  // namespace

const QLaurent& JonesTable::at(const Colors& n) const {
  auto it = values.find(n);
  if (it == values.end()) throw std::out_of_range("Jones table has no entry at colors " + show(n));
  return it->second;
}

int SurgeryPresentation::beta_plus() const {
  return static_cast<int>(std::count_if(framings.begin(), framings.end(), [](long b) { return b > 0; }));
}
int SurgeryPresentation::beta_minus() const {
  return static_cast<int>(std::count_if(framings.begin(), framings.end(), [](long b) { return b < 0; }));
}
int SurgeryPresentation::beta_zero() const {
  return static_cast<int>(std::count(framings.begin(), framings.end(), 0L));
}

void SurgeryPresentation::validate() const {
  const std::size_t M = m(), L = l();
  if (cross.size() != M) throw SchemaError("cross-linking matrix must have one row per surgery component");
  for (const auto& row : cross)
    if (row.size() != L) throw SchemaError("cross-linking matrix must have one column per colored component");
  if (colored_linking.size() != L) throw SchemaError("colored linking matrix must be l x l");
  for (std::size_t i = 0; i < L; ++i) {
    if (colored_linking[i].size() != L) throw SchemaError("colored linking matrix must be l x l");
    for (std::size_t j = 0; j < L; ++j)
      if (colored_linking[i][j] != colored_linking[j][i]) throw SchemaError("colored linking matrix must be symmetric");
  }
  for (long s : colors)
    if (s < 1) throw SchemaError("colors must be positive integers");

  if (family == Family::SplitDiagonal) {
    if (table) throw SchemaError("split-diagonal presentations do not carry a Jones table");
    std::vector<int> used(L, 0);
    for (std::size_t i = 0; i < M; ++i) {
      int partners = 0;
      for (std::size_t j = 0; j < L; ++j) {
        if (cross[i][j] == 0) continue;
        if (cross[i][j] != 1 && cross[i][j] != -1)
          throw SchemaError("split-diagonal family: a companion is Hopf-linked with linking number +-1");
        ++partners;
        ++used[j];
      }
      if (partners > 1) throw SchemaError("split-diagonal family: at most one companion per surgery component");
    }
    for (std::size_t j = 0; j < L; ++j) {
      if (used[j] > 1) throw SchemaError("split-diagonal family: a colored unknot links at most one surgery component");
      for (std::size_t k = 0; k < L; ++k)
        if (k != j && colored_linking[j][k] != 0)
          throw SchemaError("split-diagonal family: colored components must be split from each other");
    }
    return;
  }

  if (!table) throw SchemaError("table-backed presentation without a Jones table");
  if (table->arity != M) throw SchemaError("Jones table arity differs from the number of surgery components");
  if (table->fixed_colors != colors) throw SchemaError("Jones table was computed for different colors");
  if (table->linking != full_linking(true))
    throw SchemaError("Jones table linking matrix differs from the 0-framed presentation");
  for (const auto& [n, v] : table->values)
    if (n.size() != M) throw SchemaError("Jones table key of the wrong length");
}

std::optional<std::size_t> SurgeryPresentation::companion_of(std::size_t i) const {
  for (std::size_t j = 0; j < l(); ++j)
    if (cross[i][j] != 0) return j;
  return std::nullopt;
}

IntMatrix SurgeryPresentation::full_linking(bool zero_framed) const {
  const std::size_t M = m(), L = l();
  IntMatrix out = zeros(M + L, M + L);
  for (std::size_t i = 0; i < M; ++i) {
    out[i][i] = zero_framed ? 0 : framings[i];
    for (std::size_t j = 0; j < L; ++j) out[i][M + j] = out[M + j][i] = cross[i][j];
  }
  for (std::size_t j = 0; j < L; ++j)
    for (std::size_t k = 0; k < L; ++k) out[M + j][M + k] = colored_linking[j][k];
  return out;
}

SurgeryPresentation SurgeryPresentation::split(const std::vector<SplitBlock>& blocks,
                                               const std::vector<ColoredUnknot>& free) {
  SurgeryPresentation p;
  std::vector<ColoredUnknot> unknots;
  std::vector<std::optional<std::size_t>> partner;
  for (const auto& b : blocks) {
    p.framings.push_back(b.framing);
    if (b.companion) {
      partner.push_back(unknots.size());
      unknots.push_back(*b.companion);
    } else {
      partner.emplace_back();
    }
  }
  unknots.insert(unknots.end(), free.begin(), free.end());
  p.cross = zeros(blocks.size(), unknots.size());
  p.colored_linking = zeros(unknots.size(), unknots.size());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (partner[i]) p.cross[i][*partner[i]] = 1;
  for (std::size_t j = 0; j < unknots.size(); ++j) {
    p.colors.push_back(unknots[j].color);
    p.colored_linking[j][j] = unknots[j].framing;
  }
  p.validate();
  return p;
}

SurgeryPresentation SurgeryPresentation::lens(long b, std::optional<long> companion_color) {
  SplitBlock block{b, std::nullopt};
  if (companion_color) block.companion = ColoredUnknot{*companion_color, 0};
  return split({block});
}

SurgeryPresentation SurgeryPresentation::disjoint_union(const SurgeryPresentation& other) const {
  SurgeryPresentation out;
  const std::size_t M1 = m(), L1 = l(), M2 = other.m(), L2 = other.l();
  out.framings = framings;
  out.framings.insert(out.framings.end(), other.framings.begin(), other.framings.end());
  out.colors = colors;
  out.colors.insert(out.colors.end(), other.colors.begin(), other.colors.end());
  out.cross = zeros(M1 + M2, L1 + L2);
  for (std::size_t i = 0; i < M1; ++i)
    for (std::size_t j = 0; j < L1; ++j) out.cross[i][j] = cross[i][j];
  for (std::size_t i = 0; i < M2; ++i)
    for (std::size_t j = 0; j < L2; ++j) out.cross[M1 + i][L1 + j] = other.cross[i][j];
  out.colored_linking = zeros(L1 + L2, L1 + L2);
  for (std::size_t i = 0; i < L1; ++i)
    for (std::size_t j = 0; j < L1; ++j) out.colored_linking[i][j] = colored_linking[i][j];
  for (std::size_t i = 0; i < L2; ++i)
    for (std::size_t j = 0; j < L2; ++j) out.colored_linking[L1 + i][L1 + j] = other.colored_linking[i][j];

  if (family == Family::SplitDiagonal && other.family == Family::SplitDiagonal) {
    out.validate();
    return out;
  }
  // At least one side is tabulated: tabulate both on a common window and multiply.
  long lo = 1, hi = 1;
  for (const auto* p : {this, &other})
    if (p->table) std::tie(lo, hi) = table_window(*p->table);
  const JonesTable a = jones_table(*this, lo, hi, true), b = jones_table(other, lo, hi, true);
  JonesTable t;
  t.arity = M1 + M2;
  t.fixed_colors = out.colors;
  for (const auto& [n1, v1] : a.values)
    for (const auto& [n2, v2] : b.values) {
      Colors n = n1;
      n.insert(n.end(), n2.begin(), n2.end());
      t.values.emplace(std::move(n), v1 * v2);
    }
  out.family = Family::TableBacked;
  t.linking = out.full_linking(true);
  out.table = std::move(t);
  out.validate();
  return out;
}

SurgeryPresentation SurgeryPresentation::mirrored() const {
  SurgeryPresentation out = *this;
  for (auto& b : out.framings) b = -b;
  for (auto& row : out.cross)
    for (auto& x : row) x = -x;
  for (auto& row : out.colored_linking)
    for (auto& x : row) x = -x;
  if (out.table) {
    for (auto& [n, v] : out.table->values) v = v.mirrored();
    for (auto& row : out.table->linking)
      for (auto& x : row) x = -x;
  }
  return out;
}

SurgeryPresentation SurgeryPresentation::recolored(const Colors& s) const {
  if (s.size() != l()) throw SchemaError("recolored: wrong number of colors");
  if (family == Family::TableBacked && s != colors)
    throw SchemaError("a table-backed presentation is tied to the colors of its table");
  SurgeryPresentation out = *this;
  out.colors = s;
  out.validate();
  return out;
}

QLaurent zero_framed_value(const SurgeryPresentation& pres, const Colors& n) {
  if (n.size() != pres.m()) throw std::invalid_argument("color tuple has the wrong length");
  if (pres.family == Family::TableBacked) return pres.table->at(n);

  QLaurent value(1L);
  std::vector<bool> attached(pres.l(), false);
  for (std::size_t i = 0; i < pres.m(); ++i) {
    if (const auto j = pres.companion_of(i)) {
      attached[*j] = true;
      const long s = pres.colors[*j];
      value = value * q_int(n[i] * s).shifted(framing_exponent(pres.colored_linking[*j][*j], s));
    } else {
      value = value * q_int(n[i]);
    }
  }
  for (std::size_t j = 0; j < pres.l(); ++j) {
    if (attached[j]) continue;
    const long s = pres.colors[j];
    value = value * q_int(s).shifted(framing_exponent(pres.colored_linking[j][j], s));
  }
  return value;
}

QLaurent jones_value(const SurgeryPresentation& pres, const Colors& n) {
  QExp shift = 0;
  for (std::size_t i = 0; i < pres.m(); ++i) shift += framing_exponent(pres.framings[i], n[i]);
  return zero_framed_value(pres, n).shifted(shift);
}

std::vector<int> epsilon_vector(const SurgeryPresentation& pres) {
  std::vector<int> eps(pres.m(), 0);
  for (std::size_t i = 0; i < pres.m(); ++i) {
    long sum = 0;
    for (std::size_t j = 0; j < pres.l(); ++j) sum += pres.cross[i][j] * (pres.colors[j] - 1);
    eps[i] = static_cast<int>(((sum % 2) + 2) % 2);
  }
  return eps;
}

JonesTable jones_table(const SurgeryPresentation& pres, long lo, long hi, bool zero_framed) {
  JonesTable t;
  t.arity = pres.m();
  t.fixed_colors = pres.colors;
  t.linking = pres.full_linking(zero_framed);
  for_each_tuple(pres.m(), lo, hi, [&](const Colors& n) {
    t.values.emplace(n, zero_framed ? zero_framed_value(pres, n) : jones_value(pres, n));
  });
  return t;
}

const QLaurent& habiro_basis(long n, long k, int eps) {
  static std::mutex lock;
  static std::map<std::tuple<long, long, int>, QLaurent> cache;
  std::lock_guard<std::mutex> guard(lock);
  const auto key = std::make_tuple(n, k, eps);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  QLaurent value = q_bracket_binom(n + k, 2 * k + 1) * q_braces_factorial(k);
  if (eps != 0 && !value.is_zero()) {
    auto quo = exact_divide(value * q_lambda(n), q_lambda(k + 1));
    if (!quo)
      throw Falsification("Habiro basis term is not a Laurent polynomial at n = " + std::to_string(n) +
                          ", k = " + std::to_string(k));
    value = *quo;
  }
  return cache.emplace(key, std::move(value)).first->second;
}

bool in_habiro_ideal(const QLaurent& c, long k) {
  if (c.is_zero()) return true;
  return exact_divide(c * (QLaurent(1L) - QLaurent::q_power(4)), q_pochhammer_const(k + 1, k + 1)).has_value();
}

HabiroBlocks habiro_blocks(const JonesTable& table, const std::vector<int>& eps, long K) {
  const std::size_t m = table.arity;
  if (eps.size() != m) throw std::invalid_argument("habiro_blocks: eps has the wrong length");
  HabiroBlocks out;
  out.eps = eps;
  out.depth = K;

  auto basis_product = [&](const Colors& n, const Colors& k) {
    QLaurent p(1L);
    for (std::size_t i = 0; i < m && !p.is_zero(); ++i) p = p * habiro_basis(n[i], k[i], eps[i]);
    return p;
  };
  auto reconstruct = [&](const Colors& n) {
    QLaurent sum;
    for (const auto& [k, c] : out.c)
      if (!c.is_zero() && componentwise_le(k, n)) sum += c * basis_product(n, k);
    return sum;
  };

  // Lexicographic order solves every k' <= k (componentwise) before k.
  for_each_tuple(m, 0, K, [&](const Colors& k) {
    Colors n = k;
    for (auto& x : n) x += 1;
    const QLaurent rhs = table.at(n) - reconstruct(n);
    QLaurent diagonal(1L);
    for (long ki : k) diagonal = diagonal * q_braces_factorial(ki);
    auto c = exact_divide(rhs, diagonal);
    if (!c) {
      const bool rational = exact_divide(to_rational(rhs), to_rational(diagonal)).has_value();
      throw Falsification(std::string("Habiro coefficient at k = ") + show(k) +
                          (rational ? " has non-integral coefficients" : " is not a Laurent polynomial"));
    }
    const long kmax = k.empty() ? 0 : *std::max_element(k.begin(), k.end());
    if (!in_habiro_ideal(*c, kmax))
      throw Falsification("Habiro coefficient at k = " + show(k) + " is not divisible by (q^{k+1};q)_{k+1}/(1-q)");
    out.c.emplace(k, std::move(*c));
  });

  for_each_tuple(m, 1, K + 1, [&](const Colors& n) {
    if (reconstruct(n) != table.at(n)) throw Falsification("Habiro expansion does not reproduce J at " + show(n));
  });
  return out;
}

SymmetryReport symmetry_check(const JonesTable& table, const RootSpec& spec, const std::vector<int>& alpha,
                              const Colors& n) {
  const std::size_t m = table.arity;
  if (alpha.size() != m || n.size() != m) throw std::invalid_argument("symmetry_check: tuple of the wrong length");
  const long r = spec.r;
  auto ev = [&](const Colors& c) { return ev_xi(table.at(c), spec); };

  // Colors of every component of the tabulated link, fixed ones last.
  Colors all = n;
  all.insert(all.end(), table.fixed_colors.begin(), table.fixed_colors.end());
  long quad = 0, lin = 0, flips = 0;
  Colors flipped = n;
  for (std::size_t i = 0; i < m; ++i) {
    if (alpha[i] == 0) continue;
    ++flips;
    flipped[i] = r - n[i];
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (j < m && alpha[j] != 0) quad += table.linking[i][j];
      lin += table.linking[i][j] * (all[j] - 1);
    }
  }
  // xi^{r(r-2)/4 quad + r/2 lin} in quarter powers, and -xi^{r/2} = -(xi^{1/4})^{2r}.
  CycElt factor = spec.quarter_power(r * (r - 2) * quad + 2 * r * lin);
  const CycElt minus_half = -spec.quarter_power(2 * r);
  for (long i = 0; i < flips; ++i) factor *= minus_half;

  SymmetryReport rep;
  const CycElt base = ev(n);
  rep.principle = ev(flipped) == factor * base;
  for (std::size_t i = 0; i < m; ++i) {
    Colors shifted = n, up = n, down = n;
    shifted[i] += 2 * r;
    up[i] = r + n[i];
    down[i] = r - n[i];
    rep.periodic = rep.periodic && ev(shifted) == base;
    rep.reflection = rep.reflection && ev(up) == -ev(down);
  }
  return rep;
}

namespace {

using nlohmann::json;

long get_long(const json& j, const char* key, long fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  if (!j.at(key).is_number_integer()) throw SchemaError(std::string("\"") + key + "\" must be an integer");
  return j.at(key).get<long>();
}

IntMatrix get_matrix(const json& j, std::size_t rows, std::size_t cols, const char* what) {
  if (!j.is_array() || j.size() != rows) throw SchemaError(std::string(what) + " has the wrong shape");
  IntMatrix out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw SchemaError(std::string(what) + " has the wrong shape");
    std::vector<long> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw SchemaError(std::string(what) + " entries must be integers");
      r.push_back(x.get<long>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

ColoredUnknot get_unknot(const json& j) {
  if (!j.is_object() || !j.contains("color")) throw SchemaError("colored component needs a \"color\"");
  return ColoredUnknot{get_long(j, "color", 1), get_long(j, "framing", 0)};
}

std::string key_of(const Colors& n) {
  std::string out;
  for (std::size_t i = 0; i < n.size(); ++i) out += (i != 0 ? "," : "") + std::to_string(n[i]);
  return out;
}

Colors parse_key(const std::string& key, std::size_t arity) {
  Colors n;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      n.push_back(std::stol(part, &used));
      if (used != part.size()) throw SchemaError("bad color tuple \"" + key + "\"");
    } catch (const std::logic_error&) {
      throw SchemaError("bad color tuple \"" + key + "\"");
    }
  }
  if (n.size() != arity) throw SchemaError("color tuple \"" + key + "\" does not match the arity");
  return n;
}

}  // namespace

SurgeryPresentation presentation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("surgery") || !j.at("surgery").is_array())
    throw SchemaError("presentation needs a \"surgery\" array");
  std::vector<ColoredUnknot> free;
  if (j.contains("colored")) {
    if (!j.at("colored").is_array()) throw SchemaError("\"colored\" must be an array");
    for (const auto& c : j.at("colored")) free.push_back(get_unknot(c));
  }

  if (!j.contains("table") || j.at("table").is_null()) {
    std::vector<SplitBlock> blocks;
    for (const auto& s : j.at("surgery")) {
      if (!s.is_object() || !s.contains("framing")) throw SchemaError("surgery component needs a \"framing\"");
      SplitBlock b{get_long(s, "framing", 0), std::nullopt};
      if (s.contains("companion") && !s.at("companion").is_null()) b.companion = get_unknot(s.at("companion"));
      blocks.push_back(b);
    }
    return SurgeryPresentation::split(blocks, free);
  }

  SurgeryPresentation p;
  p.family = Family::TableBacked;
  for (const auto& s : j.at("surgery")) {
    if (!s.is_object() || !s.contains("framing")) throw SchemaError("surgery component needs a \"framing\"");
    if (s.contains("companion") && !s.at("companion").is_null())
      throw SchemaError("table-backed presentations list colored components under \"colored\"");
    p.framings.push_back(get_long(s, "framing", 0));
  }
  for (const auto& c : free) p.colors.push_back(c.color);
  const std::size_t M = p.m(), L = p.l();
  p.cross = j.contains("cross") ? get_matrix(j.at("cross"), M, L, "\"cross\"") : zeros(M, L);
  if (j.contains("colored_linking")) {
    p.colored_linking = get_matrix(j.at("colored_linking"), L, L, "\"colored_linking\"");
  } else {
    p.colored_linking = zeros(L, L);
    for (std::size_t k = 0; k < L; ++k) p.colored_linking[k][k] = free[k].framing;
  }
  JonesTable t = table_from_json(j.at("table"));
  if (t.linking.empty()) t.linking = p.full_linking(true);
  if (t.fixed_colors.empty()) t.fixed_colors = p.colors;
  p.table = std::move(t);
  p.validate();
  return p;
}

json presentation_to_json(const SurgeryPresentation& pres) {
  json out;
  out["surgery"] = json::array();
  std::vector<bool> attached(pres.l(), false);
  for (std::size_t i = 0; i < pres.m(); ++i) {
    json s{{"framing", pres.framings[i]}};
    const auto j = pres.family == Family::SplitDiagonal ? pres.companion_of(i) : std::nullopt;
    if (j) {
      attached[*j] = true;
      s["companion"] = {{"color", pres.colors[*j]}, {"framing", pres.colored_linking[*j][*j]}};
    } else {
      s["companion"] = nullptr;
    }
    out["surgery"].push_back(s);
  }
  out["colored"] = json::array();
  for (std::size_t j = 0; j < pres.l(); ++j)
    if (!attached[j]) out["colored"].push_back({{"color", pres.colors[j]}, {"framing", pres.colored_linking[j][j]}});
  if (pres.family == Family::TableBacked) {
    out["cross"] = pres.cross;
    out["colored_linking"] = pres.colored_linking;
    out["table"] = table_to_json(*pres.table);
  }
  return out;
}

JonesTable table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("arity") || !j.contains("values")) throw SchemaError("table needs arity and values");
  JonesTable t;
  t.arity = static_cast<std::size_t>(get_long(j, "arity", 0));
  if (j.contains("fixed_colors"))
    for (const auto& s : j.at("fixed_colors")) t.fixed_colors.push_back(s.get<long>());
  if (j.contains("linking")) {
    const std::size_t d = j.at("linking").size();
    t.linking = get_matrix(j.at("linking"), d, d, "table \"linking\"");
  }
  if (!j.at("values").is_object()) throw SchemaError("table values must be an object");
  for (const auto& [key, v] : j.at("values").items()) {
    if (!v.is_string()) throw SchemaError("table values must be serialized Laurent polynomials");
    try {
      t.values.emplace(parse_key(key, t.arity), parse_qlaurent(v.get<std::string>()));
    } catch (const SchemaError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("bad table value: ") + e.what());
    }
  }
  return t;
}

json table_to_json(const JonesTable& table) {
  json values = json::object();
  for (const auto& [n, v] : table.values) values[key_of(n)] = to_string(v);
  return json{{"arity", table.arity}, {"fixed_colors", table.fixed_colors}, {"linking", table.linking}, {"values", values}};
}

}  // namespace wrtk
