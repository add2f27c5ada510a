#include "wrtk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "wrtk/errors.hpp"
#include "wrtk/gausssum.hpp"
#include "wrtk/ideal_div.hpp"
#include "wrtk/jones.hpp"
#include "wrtk/linkpair.hpp"
#include "wrtk/rep.hpp"
#include "wrtk/wrt.hpp"

namespace wrtk::cli {

using nlohmann::json;

namespace {

/// One unit of work in a batch; body returns the instance fields, including "pass".
struct Task {
  std::string key;
  std::function<json()> body;
};

/// 64-bit FNV-1a over a stream of strings, for short quotient digests.
class Digest {
 public:
  void add(const std::string& s) {
    for (unsigned char c : s) h_ = (h_ ^ c) * 1099511628211ULL;
    h_ = (h_ ^ 0xff) * 1099511628211ULL;  // separator
  }
  std::string hex() const {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h_;
    return os.str();
  }

 private:
  std::uint64_t h_ = 14695981039346656037ULL;
};

/**
 * Runs the tasks on `jobs` threads.  Results come back in task order, so the
 * report is the same for every thread count.  A Falsification inside a task
 * becomes a failed instance; any other exception is rethrown (the first one
 * in task order).
 */
std::vector<json> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<json> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        json r = tasks[i].body();
        results[i] = json{{"key", tasks[i].key}};
        results[i].update(r);
      } catch (const Falsification& f) {
        results[i] = json{{"key", tasks[i].key}, {"pass", false}, {"falsification", f.what()}};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

json read_json_file(const std::string& path) {
  if (path.empty()) throw UsageError("an input file is required");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

std::string group_name(Group g) { return g == Group::SO3 ? "so3" : "su2"; }

RootSpec make_spec(const RunConfig& c) {
  return RootSpec::make(c.group.value_or(Group::SO3), c.r, c.u);
}

json spec_json(const RootSpec& spec) {
  return {{"group", group_name(spec.group)}, {"r", spec.r}, {"u", spec.u}, {"conductor", spec.t}, {"ord4", spec.ord4}};
}

SurgeryPresentation hopf(long b, long s, long p = 0) { return SurgeryPresentation::split({{b, ColoredUnknot{s, p}}}); }

std::vector<long> z2_choices(int r) {
  std::vector<long> out;
  for (long u : fourth_root_choices(r))
    if (RootSpec::make(Group::SU2, r, u, true).ord4 != 2 * r) out.push_back(u);
  return out;
}

// ---- single-instance verbs ----------------------------------------------

std::vector<Task> tau_tasks(const RunConfig& c) {
  const RootSpec spec = make_spec(c);
  const SurgeryPresentation pres = presentation_from_json(read_json_file(c.pres_path));
  return {{"tau", [spec, pres] {
             const InvariantResult res = tau(pres, spec);
             json certs = json::array({"direct sum equals the Habiro-block sum"});
             if (res.integral) certs.push_back("value lies in Z[zeta_t]");
             return json{{"value", to_json(res.value)},
                         {"integral", res.integral},
                         {"beta", {{"plus", res.beta_plus}, {"minus", res.beta_minus}, {"zero", res.beta_zero}}},
                         {"certificates", certs},
                         {"pass", res.integral}};
           }}};
}

std::vector<Task> lens_tasks(const RunConfig& c) {
  const RootSpec spec = make_spec(c);
  const long b = c.b, a = c.a;
  if (b == 0) throw UsageError("lens needs --b != 0");
  return {{"lens", [spec, b, a] {
             const CycElt v = lens_tau_sum(b, a, spec);
             json certs = json::array();
             bool pass = v.is_integral();
             if (a == 1) {
               const bool same = tau(SurgeryPresentation::lens(b), spec).value == v;
               pass = pass && same;
               if (same) certs.push_back("equals the surgery invariant of L(b,1)");
               if (spec.group == Group::SO3 && std::gcd(b, static_cast<long>(spec.r)) == 1) {
                 const bool closed = lens_closed_form(b, spec) == v;
                 pass = pass && closed;
                 if (closed) certs.push_back("equals the Gauss-sum closed form");
               }
             }
             const bool unit = is_unit(v);
             if (unit) certs.push_back("unit of Z[zeta_t]");
             return json{{"value", to_json(v)}, {"integral", v.is_integral()}, {"unit", unit},
                         {"certificates", certs}, {"pass", pass}};
           }}};
}

std::vector<Task> gauss_tasks(const RunConfig& c) {
  const RootSpec spec = RootSpec::make(c.group.value_or(Group::SU2), c.r, c.u, true);
  const RootOfUnity w = RootOfUnity::from_exponent(spec.t, 4 * spec.u);
  std::vector<Task> tasks;
  for (long b = 0; b < c.r; ++b)
    for (long d = 0; d < c.r; ++d)
      tasks.push_back({"b=" + std::to_string(b) + ",d=" + std::to_string(d), [w, b, d] {
                         const CycElt g = gauss_reduce(b, d, w);
                         return json{{"b", b}, {"d", d}, {"value", to_json(g)}, {"pass", g == gauss_brute(b, d, w)}};
                       }});
  return tasks;
}

std::vector<Task> blocks_tasks(const RunConfig& c) {
  const SurgeryPresentation pres = presentation_from_json(read_json_file(c.pres_path));
  const long K = c.kmax;
  if (K < 0) throw UsageError("--kmax must be >= 0");
  const JonesTable table =
      pres.family == Family::TableBacked ? *pres.table : jones_table(pres, 1, K + 1, true);
  const HabiroBlocks hb = habiro_blocks(table, epsilon_vector(pres), K);
  std::vector<Task> tasks;
  for (const auto& [k, v] : hb.c) {
    std::string key = "k=";
    for (std::size_t i = 0; i < k.size(); ++i) key += (i ? "," : "") + std::to_string(k[i]);
    const long top = k.empty() ? 0 : *std::max_element(k.begin(), k.end());
    tasks.push_back({key, [k, v, top] {
                       const bool in_ideal = in_habiro_ideal(v, top);
                       return json{{"k", k}, {"c", to_json(v)}, {"in_ideal", in_ideal}, {"pass", in_ideal}};
                     }});
  }
  return tasks;
}

// ---- verify suites ------------------------------------------------------

std::vector<Task> x_k_division_tasks(const RunConfig& c) {
  const int K = c.nmax.value_or(6);
  const long R = c.range.value_or(3);
  std::vector<Task> tasks;
  for (long k = 0; k <= K; ++k)
    tasks.push_back({"k=" + std::to_string(k), [k, R] {
                       Digest digest;
                       long count = 0;
                       for (long d = -R; d <= R; ++d)
                         for (long a = -R; a <= R; ++a)
                           for (long a2 = -R; a2 <= R; ++a2)
                             for (long a1 = -R; a1 <= R; ++a1)
                               for (long a0 = -R; a0 <= R; ++a0) {
                                 digest.add(to_string(check_thm1(IkElement::generator(k, d, a), QuadForm{a2, a1, a0})));
                                 ++count;
                               }
                       return json{{"instances", count}, {"quotient_digest", digest.hex()}, {"pass", true}};
                     }});
  tasks.push_back({"random", [] {
                     std::mt19937 rng(20240917);
                     std::uniform_int_distribution<long> small(-5, 5), k_dist(0, 10);
                     Digest digest;
                     for (int trial = 0; trial < 200; ++trial) {
                       IkElement e;
                       e.k = k_dist(rng);
                       for (int i = 0; i < 3; ++i) {
                         const QLaurent coeff = QLaurent::q_power(4 * small(rng)) * QLaurent(small(rng)) +
                                                QLaurent::q_power(4 * small(rng));
                         const long d = small(rng), a = small(rng);
                         e.terms.push_back({coeff, d, a});
                       }
                       const long a2 = small(rng), a1 = small(rng), a0 = small(rng);
                       digest.add(to_string(check_thm1(e, QuadForm{a2, a1, a0})));
                     }
                     return json{{"instances", 200}, {"quotient_digest", digest.hex()}, {"pass", true}};
                   }});
  return tasks;
}

std::vector<Task> root_divisibility_tasks(const RunConfig& c) {
  const int rmax = c.rmax.value_or(13);
  const long R = c.range.value_or(2);
  std::vector<Task> tasks;
  for (int r = 2; r <= rmax; ++r)
    tasks.push_back({"r=" + std::to_string(r), [r, R] {
                       return json{{"r", r}, {"instances", verify_root_divisibility(r, R)}, {"pass", true}};
                     }});
  return tasks;
}

std::vector<Task> splitting_tasks(const RunConfig& c) {
  const int rmax = c.rmax.value_or(9);
  std::vector<Task> tasks;
  for (int r = 3; r <= rmax; r += 2)
    for (long u : z2_choices(r))
      tasks.push_back({"r=" + std::to_string(r) + ",u=" + std::to_string(u), [r, u] {
                         std::vector<SurgeryPresentation> pool{SurgeryPresentation::split({})};
                         for (long b : {1, -1, 2, -2, 3}) pool.push_back(SurgeryPresentation::lens(b));
                         for (long s : {1, 2, 3, 4}) pool.push_back(hopf(1, s));
                         pool.push_back(hopf(-2, 2, 1));
                         pool.push_back(hopf(2, 3).disjoint_union(hopf(-1, 2)));
                         const RootSpec spec = RootSpec::make(Group::SU2, r, u);
                         bool split_ok = true, z2_trivial = true;
                         for (const auto& p : pool) {
                           split_ok = split_ok && check_splitting(p, r, u);
                           if (spec.ord4 == r)
                             z2_trivial = z2_trivial && tau_Z2(p, spec).value == CycElt::constant(spec.t, 1);
                         }
                         return json{{"r", r}, {"u", u}, {"ord4", spec.ord4}, {"presentations", pool.size()},
                                     {"splitting", split_ok}, {"z2_trivial_when_ord4_is_r", z2_trivial},
                                     {"pass", split_ok && z2_trivial}};
                       }});
  return tasks;
}

std::vector<Task> oracles_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  const bool so3 = !c.group || *c.group == Group::SO3, su2 = !c.group || *c.group == Group::SU2;
  if (so3)
    for (int r = 3; r <= c.rmax.value_or(11); r += 2)
      tasks.push_back({"so3,r=" + std::to_string(r), [r] {
                         std::vector<long> bs;
                         for (long b = -6; b <= 6; ++b) bs.push_back(b);
                         const long n = integrality_oracles(RootSpec::make(Group::SO3, r), bs);
                         return json{{"group", "so3"}, {"r", r}, {"divisions", n}, {"pass", true}};
                       }});
  if (su2)
    for (int r = 2; r <= c.rmax.value_or(8); r += 2)
      tasks.push_back({"su2,r=" + std::to_string(r), [r] {
                         const RootSpec spec = RootSpec::make(Group::SU2, r);
                         const long n = integrality_oracles(spec, {0, 1, -1, 2, -2, 4, -4, 3, -3, 8, -8, 9, -9});
                         bool product = true;
                         for (long k = 0; k <= (r - 2) / 2; ++k)
                           for (int sign : {1, -1}) product = product && check_b2_product(k, sign, spec);
                         return json{{"group", "su2"}, {"r", r}, {"divisions", n}, {"b2_product", product},
                                     {"pass", product}};
                       }});
  return tasks;
}

std::vector<Task> unknot_dichotomy_tasks(const RunConfig& c) {
  std::vector<Task> tasks;
  for (int r = 2; r <= c.rmax.value_or(20); ++r)
    tasks.push_back({"r=" + std::to_string(r), [r] {
                       json cases = json::array();
                       bool pass = true;
                       for (long u : fourth_root_choices(r))
                         for (Group g : {Group::SO3, Group::SU2}) {
                           if (g == Group::SO3 && r % 2 == 0) continue;
                           const RootSpec spec = RootSpec::make(g, r, u, true);
                           const bool zero = F_unknot(1, spec).is_zero() && F_unknot(-1, spec).is_zero();
                           const bool ok = zero == spec.degenerate();
                           pass = pass && ok;
                           cases.push_back({{"group", group_name(g)}, {"u", u}, {"ord4", spec.ord4}, {"vanishes", zero}});
                         }
                       return json{{"r", r}, {"cases", cases}, {"pass", pass}};
                     }});
  return tasks;
}

std::vector<Task> appendix_tasks(const RunConfig& c) {
  const int nmax = c.nmax.value_or(10);
  std::vector<Task> tasks;
  for (long n = 1; n <= nmax; ++n)
    tasks.push_back({"expansion,n=" + std::to_string(n), [n] {
                       expand_Vn(n, 0);
                       expand_Vn(n, 1);
                       return json{{"n", n}, {"pass", true}};
                     }});
  for (long p = 0; p <= std::min(nmax, 6); ++p)
    tasks.push_back({"orthogonality,p=" + std::to_string(p), [p, nmax] {
                       Digest digest;
                       for (long k = 0; k <= std::min(nmax, 6); ++k)
                         for (int eps : {0, 1}) digest.add(to_string(verify_orthogonality(k, p, eps)));
                       return json{{"p", p}, {"value_digest", digest.hex()}, {"pass", true}};
                     }});
  for (long n = 0; n <= std::min(nmax, 8); ++n)
    tasks.push_back({"trace,n=" + std::to_string(n), [n] {
                       long count = 0, printed_mismatch = 0;
                       for (long l = 0; l <= n + 1; ++l)
                         for (long j = -8; j <= 8; ++j) {
                           if (B_trace(n, l, j) != B_trace_closed(n, l, j)) ++printed_mismatch;
                           ++count;
                         }
                       return json{{"n", n}, {"instances", count}, {"uncorrected_closed_form_mismatches", printed_mismatch},
                                   {"pass", true}};
                     }});
  return tasks;
}

// ---- pairings -----------------------------------------------------------

std::vector<Task> absorption_tasks(const RunConfig& c) {
  const int k = c.k;
  if (k < 1 || k > 4) throw UsageError("--k must lie in [1, 4]");
  const long d = 1L << k;
  const LinkingPairing lhs = block_sum(E0(k), phi_diagonal({-d}));
  return {{"as-stated", [lhs, d] {
             const LinkingPairing rhs = phi_diagonal({-d, d, d});
             return json{{"rhs", {-d, d, d}}, {"pass", is_isomorphic(lhs, rhs)}};
           }},
          {"sign-corrected", [lhs, d] {
             const LinkingPairing rhs = phi_diagonal({-d, d, -d});
             const auto w = find_isomorphism(lhs, rhs);
             json out{{"rhs", {-d, d, -d}}, {"pass", w.has_value() && check_isomorphism(lhs, rhs, *w)}};
             if (w) out["witness"] = *w;
             return out;
           }}};
}

std::vector<Task> diagonalize_tasks(const RunConfig& c) {
  const json in = read_json_file(c.in_path);
  DiagonalBlocks blocks;
  try {
    blocks.diagonal = in.at("diagonal").get<std::vector<long>>();
    if (in.contains("e0")) blocks.e0 = in.at("e0").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("diagonalize input needs {\"diagonal\":[...],\"e0\":[...]}: ") + e.what());
  }
  const long s = c.s;
  if (s < 1) throw UsageError("--s must be >= 1");
  return {{"diagonalize", [blocks, s] {
             const std::vector<long> out = stabilized_diagonal(blocks, s);
             bool prime_type = true;
             for (long b : out) prime_type = prime_type && is_prime_power_framing(b);
             const LinkingPairing p = phi_diagonal(out);
             long order = 0;
             try {
               order = p.group_order();
             } catch (const std::overflow_error&) {
             }
             return json{{"diagonal", out}, {"prime_type", prime_type}, {"pairing", pairing_to_json(p)},
                         {"isomorphism_searched", order > 0 && order <= kPairingSizeBound}, {"pass", prime_type}};
           }}};
}

std::vector<Task> build_tasks(const RunConfig& c) {
  if (c.verb == "tau") return tau_tasks(c);
  if (c.verb == "lens") return lens_tasks(c);
  if (c.verb == "gauss") return gauss_tasks(c);
  if (c.verb == "blocks") return blocks_tasks(c);
  if (c.verb == "verify") {
    if (c.suite == "thm2") return x_k_division_tasks(c);
    if (c.suite == "prop32") return root_divisibility_tasks(c);
    if (c.suite == "splitting") return splitting_tasks(c);
    if (c.suite == "oracles") return oracles_tasks(c);
    if (c.suite == "lemma12") return unknot_dichotomy_tasks(c);
    if (c.suite == "appendix") return appendix_tasks(c);
    throw UsageError("unknown verify suite '" + c.suite + "'");
  }
  if (c.verb == "pairing") {
    if (c.suite == "verify-e339") return absorption_tasks(c);
    if (c.suite == "diagonalize") return diagonalize_tasks(c);
    throw UsageError("unknown pairing action '" + c.suite + "'");
  }
  throw UsageError("unknown verb '" + c.verb + "'");
}

json params_json(const RunConfig& c) {
  json p = json::object();
  if (c.group) p["group"] = group_name(*c.group);
  if (c.verb == "tau" || c.verb == "lens" || c.verb == "gauss") p["r"] = c.r;
  if (c.u) p["u"] = *c.u;
  if (c.rmax) p["rmax"] = *c.rmax;
  if (c.nmax) p["nmax"] = *c.nmax;
  if (c.range) p["range"] = *c.range;
  if (c.verb == "lens") {
    p["b"] = c.b;
    p["a"] = c.a;
  }
  if (c.verb == "blocks") p["kmax"] = c.kmax;
  if (c.suite == "verify-e339") p["k"] = c.k;
  if (c.suite == "diagonalize") p["s"] = c.s;
  if (!c.pres_path.empty()) p["pres"] = c.pres_path;
  if (!c.in_path.empty()) p["in"] = c.in_path;
  return p;
}

}  // namespace

json to_json(const CycElt& x) {
  json coeffs = json::array();
  for (const auto& n : x.numerators()) coeffs.push_back(n.get_str());
  return {{"conductor", x.conductor()}, {"denominator", x.denominator().get_str()}, {"coeffs", coeffs}};
}

json to_json(const QLaurent& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back(json::array({e, c.get_str()}));
  return {{"text", to_string(f)}, {"terms", terms}};
}

RunResult run(const RunConfig& config) {
  RunResult result;
  json& rep = result.report;
  rep["schema"] = kSchema;
  rep["verb"] = config.verb;
  if (!config.suite.empty()) rep["suite"] = config.suite;
  rep["params"] = params_json(config);
  if (config.verb == "tau" || config.verb == "lens") rep["spec"] = spec_json(make_spec(config));

  std::vector<json> instances;
  try {
    instances = run_tasks(build_tasks(config), config.jobs);
  } catch (const Falsification& f) {
    // raised while setting up, e.g. by the Habiro solver
    instances = {json{{"key", "setup"}, {"pass", false}, {"falsification", f.what()}}};
  }
  std::size_t passed = 0;
  for (const auto& i : instances) passed += i.at("pass").get<bool>() ? 1 : 0;
  rep["instances"] = instances;
  rep["summary"] = {{"instances", instances.size()}, {"passed", passed}, {"failed", instances.size() - passed}};
  rep["pass"] = passed == instances.size();
  result.exit_code = passed == instances.size() ? kOk : kFalsified;
  return result;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  CLI::App app{"Exact WRT invariants and their integrality checks", "wrtkernel"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string group;
  int jobs = 1;
  std::string output;
  bool as_json = false;
  app.add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--output,-o", output, "also write the JSON report to this file");
  app.add_flag("--json", as_json, "print the JSON report");

  auto add_root = [&](CLI::App* sub, const std::string& default_group) {
    sub->add_option("--group", group, "so3 or su2")->check(CLI::IsMember({"so3", "su2"}))->default_str(default_group);
    sub->add_option("--r", c.r, "order of xi")->check(CLI::Range(2, 1000));
    sub->add_option("--u", c.u, "exponent with xi^{1/4} = zeta_t^u");
  };

  auto* tau_cmd = app.add_subcommand("tau", "invariant of a surgery presentation");
  add_root(tau_cmd, "so3");
  tau_cmd->add_option("--pres", c.pres_path, "presentation JSON")->required();

  auto* lens_cmd = app.add_subcommand("lens", "lens space L(b,1) with core colored a");
  add_root(lens_cmd, "so3");
  lens_cmd->add_option("--b", c.b, "framing")->required();
  lens_cmd->add_option("--a", c.a, "color of the core (1 for the plain lens space)");

  auto* gauss_cmd = app.add_subcommand("gauss", "table of G(b,d,xi) for 0 <= b,d < r");
  add_root(gauss_cmd, "su2");

  auto* blocks_cmd = app.add_subcommand("blocks", "Habiro blocks of the 0-framed link");
  blocks_cmd->add_option("--pres", c.pres_path, "presentation JSON")->required();
  blocks_cmd->add_option("--kmax", c.kmax, "largest block index");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd
      ->add_option("suite", c.suite,
                   "thm2 (X_k division of Lambda_Q), prop32 (divisibility at roots of unity), splitting, "
                   "oracles (H quotients), lemma12 (vanishing of unknot sums) or appendix (representation ring)")
      ->required()
      ->check(CLI::IsMember({"thm2", "prop32", "splitting", "oracles", "lemma12", "appendix"}));
  verify_cmd->add_option("--group", group, "restrict to so3 or su2")->check(CLI::IsMember({"so3", "su2"}));
  verify_cmd->add_option("--rmax", c.rmax, "largest r")->check(CLI::Range(2, 200));
  verify_cmd->add_option("--nmax", c.nmax, "largest k (thm2) or n (appendix)")->check(CLI::Range(0, 40));
  verify_cmd->add_option("--range", c.range, "coefficient range for thm2 and prop32")->check(CLI::Range(0, 10));

  auto* pairing_cmd = app.add_subcommand("pairing", "linking pairings");
  pairing_cmd->require_subcommand(1);
  pairing_cmd->fallthrough();
  auto* absorb = pairing_cmd->add_subcommand("verify-e339", "E0 absorption by a cyclic summand of order 2^k");
  absorb->add_option("--k", c.k, "exponent")->required();
  auto* diag = pairing_cmd->add_subcommand("diagonalize", "stabilize diagonal + E0 blocks to a diagonal form");
  diag->add_option("--in", c.in_path, "{\"diagonal\":[...],\"e0\":[...]}")->required();
  diag->add_option("--s", c.s, "number of copies")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (auto* sub : app.get_subcommands()) {
    c.verb = sub->get_name();
    if (c.verb == "pairing") c.suite = sub->get_subcommands().at(0)->get_name();
  }
  if (!group.empty()) c.group = group == "so3" ? Group::SO3 : Group::SU2;
  if ((c.verb == "tau" || c.verb == "lens") && !c.group) c.group = Group::SO3;
  c.jobs = jobs;
  c.output_path = output;
  c.json = as_json;
  return c;
}

int main_with(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto config = parse_command_line(argc, argv, out);
    if (!config) return kOk;
    const RunResult res = run(*config);
    if (!config->output_path.empty()) {
      std::ofstream f(config->output_path);
      if (!f) throw UsageError("cannot write " + config->output_path);
      f << res.report.dump(2) << '\n';
    }
    if (config->json) {
      out << res.report.dump(2) << '\n';
    } else {
      for (const auto& i : res.report.at("instances")) {
        out << (i.at("pass").get<bool>() ? "PASS " : "FAIL ") << i.at("key").get<std::string>();
        if (i.contains("falsification")) out << "  " << i.at("falsification").get<std::string>();
        out << '\n';
      }
      const auto& s = res.report.at("summary");
      out << s.at("passed").get<std::size_t>() << "/" << s.at("instances").get<std::size_t>() << " passed\n";
    }
    return res.exit_code;
  } catch (const SpecError& e) {
    err << "invalid root of unity: " << e.what() << '\n';
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace wrtk::cli
