#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <sstream>

#include "kirch/filters.hpp"
#include "kirch/graphs.hpp"
#include "kirch/json.hpp"
#include "kirch/numtheory.hpp"
#include "kirch/topology.hpp"
#include "kirch/verify.hpp"

using namespace kirch;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Int parse_int(const std::string& s) {
  Int v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec == std::errc::result_out_of_range) throw UsageError("integer out of range: " + s);
  if (ec != std::errc() || ptr != last || first == last) throw UsageError("not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<Int> parse_ints(const std::vector<std::string>& args) {
  std::vector<Int> out;
  for (const auto& a : args) out.push_back(parse_int(a));
  return out;
}

FiniteSubset parse_set(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError("expected at least one element");
  return FiniteSubset(parse_ints(args));
}

std::string desc_text(const FilterDescriptor& d) {
  return "A=" + d.A.to_string() + " Π=" + d.Pi.to_string() + " α=" + to_string(d.alpha);
}

struct Common {
  std::string format = "text";
  Int window = 30;
  Int l_bound = 0;
  std::string bounds;
  std::uint64_t seed = 7;
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_closure(const Common& c, const std::vector<std::string>& args) {
  if (args.size() != 2) throw UsageError("closure takes a b");
  const Int a = parse_int(args[0]);
  const Int b = parse_int(args[1]);
  const Progression prog(a, b);
  const ClosureSet cl = closure(prog);
  const auto sample = cl.materialize(Window(c.window));
  if (c.format == "json") {
    Json conds = Json::array();
    for (const auto& r : cl.conditions()) conds.push_back({{"prime", r.prime}, {"allowed", r.allowed}});
    emit({{"progression", prog.to_string()},
          {"open_basic", is_kirch_open_basic(a, b)},
          {"conditions", conds},
          {"window", c.window},
          {"sample", sample}});
    return kOk;
  }
  std::cout << "cl(" << prog.to_string() << ") = " << cl.to_string() << '\n';
  std::cout << "basic open: " << (is_kirch_open_basic(a, b) ? "yes" : "no") << '\n';
  std::cout << "in [-" << c.window << "," << c.window << "]:";
  for (Int z : sample) std::cout << ' ' << z;
  std::cout << '\n';
  return kOk;
}

int cmd_ae(const Common& c, const std::vector<std::string>& args) {
  const FilterDescriptor d = descriptor(parse_set(args));
  if (c.format == "json") {
    emit(to_json(d));
  } else {
    std::cout << desc_text(d) << '\n';
  }
  return kOk;
}

int cmd_cmp(const Common& c, const std::vector<std::string>& args) {
  std::string joined;
  for (const auto& a : args) joined += a + " ";
  const auto halves = split(joined, ';');
  if (halves.size() != 2) throw UsageError("cmp expects E ; F");
  auto words = [](const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string w; is >> w;) {
      for (auto& piece : split(w, ',')) {
        if (!piece.empty()) out.push_back(piece);
      }
    }
    return out;
  };
  const FiniteSubset e = parse_set(words(halves[0]));
  const FiniteSubset f = parse_set(words(halves[1]));
  const OrderVerdict ef = compare_filters(e, f);
  const OrderVerdict fe = compare_filters(f, e);

  Json out = {{"E", to_json(e)},
              {"F", to_json(f)},
              {"E<=F", {{"holds", ef.holds}, {"rule", to_string(ef.rule)}}},
              {"F<=E", {{"holds", fe.holds}, {"rule", to_string(fe.rule)}}}};
  bool agree = true;
  if (e.size() >= 2 && f.size() >= 2) {
    const Int l = std::max(c.l_bound, oracle_l_bound_floor(e, f));
    const Window w(c.window);
    const auto oef = filter_leq_oracle_detail(e, f, l, w);
    const auto ofe = filter_leq_oracle_detail(f, e, l, w);
    agree = oef.holds == ef.holds && ofe.holds == fe.holds;
    auto oj = [](const OracleVerdict& v) {
      Json j = {{"holds", v.holds}};
      if (v.holds) j["generator_primes"] = v.generator_primes;
      if (v.counterexample) j["counterexample"] = *v.counterexample;
      return j;
    };
    out["oracle"] = {{"E<=F", oj(oef)}, {"F<=E", oj(ofe)}, {"l_bound", l}, {"agrees", agree}};
  }
  if (c.format == "json") {
    emit(out);
  } else {
    std::cout << "E<=F: " << (ef.holds ? "true" : "false") << " (" << to_string(ef.rule) << ")\n";
    std::cout << "F<=E: " << (fe.holds ? "true" : "false") << " (" << to_string(fe.rule) << ")\n";
    if (out.contains("oracle")) std::cout << "oracle agrees: " << (agree ? "yes" : "NO") << '\n';
  }
  return agree ? kOk : kFailed;
}

int cmd_classify(const Common& c, const std::vector<std::string>& args) {
  const FiniteSubset e = parse_set(args);
  const FilterClass cls = classify(e);
  const FilterDescriptor d = descriptor(e);
  std::vector<FilterDescriptor> up;
  if (cls == FilterClass::FDoublePrime) up = upset_in_fprime(e);
  if (c.format == "json") {
    Json ups = Json::array();
    for (const auto& u : up) ups.push_back(to_json(u));
    Json out = {{"class", to_string(cls)}, {"descriptor", to_json(d)}};
    if (cls == FilterClass::FDoublePrime) out["upset"] = ups;
    emit(out);
    return kOk;
  }
  std::cout << to_string(cls) << '\n' << "  " << desc_text(d) << '\n';
  for (const auto& u : up) std::cout << "  below " << u.source.to_string() << '\n';
  return kOk;
}

int cmd_realize(const Common& c, const std::string& a_arg, const std::string& alpha_arg) {
  std::vector<Int> primes;
  for (const auto& s : split(a_arg, ',')) primes.push_back(parse_int(s));
  AlphaMap alpha;
  if (!alpha_arg.empty()) {
    for (const auto& kv : split(alpha_arg, ',')) {
      const auto parts = split(kv, '=');
      if (parts.size() != 2) throw UsageError("--alpha entries look like p=r, got '" + kv + "'");
      alpha[parse_int(parts[0])] = parse_int(parts[1]);
    }
  }
  const FiniteSubset e = realize(PrimeSet::finite(primes), alpha);
  if (c.format == "json") {
    emit({{"set", to_json(e)}, {"descriptor", to_json(descriptor(e))}});
  } else {
    std::cout << e.to_string() << '\n';
  }
  return kOk;
}

GammaBounds parse_bounds(const std::string& s, Int p) {
  const auto parts = split(s, ',');
  if (p == 2) {
    if (parts.size() != 1 && parts.size() != 2) throw UsageError("--bounds for p=2 is N");
    return {static_cast<int>(parse_int(parts[0])), 0};
  }
  if (parts.size() != 2) throw UsageError("--bounds expects A,B");
  const Int a = parse_int(parts[0]);
  const Int b = parse_int(parts[1]);
  if (a < 0 || b < 0 || a > 62 || b > 62) throw UsageError("--bounds exponents must be in 0..62");
  return {static_cast<int>(a), static_cast<int>(b)};
}

int cmd_gamma(const Common& c, const std::vector<std::string>& args) {
  if (args.size() != 1) throw UsageError("gamma takes one prime p");
  const Int p = parse_int(args[0]);
  const std::string bounds = c.bounds.empty() ? (p == 2 ? "10" : "9,5") : c.bounds;
  const GammaBounds b = parse_bounds(bounds, p);
  const GammaGraph g = p == 2 ? gamma2(b.max_two_exp) : build_gamma(p, b);
  if (c.format == "json") {
    emit(to_json(g));
  } else if (c.format == "dot") {
    std::cout << emit_dot(g);
  } else {
    std::size_t interior = 0;
    for (const auto& d : g.discrepancies) interior += d.interior;
    std::cout << "gamma_" << p << ": " << g.vertices.size() << " vertices, " << g.edges.size() << " edges\n";
    std::cout << "family discrepancies: " << g.discrepancies.size() << " (" << interior << " interior)\n";
    if (p != 2) std::cout << "printed-list discrepancies: " << g.printed_discrepancies.size() << '\n';
    const Int probe = p == 2 ? 1 : p;
    std::cout << "deg(" << probe << ") = " << g.degree(probe) << '\n';
  }
  return kOk;
}

int cmd_prime_class(const Common& c, const std::vector<std::string>& args) {
  if (args.size() != 1) throw UsageError("prime-class takes one prime p");
  const Int p = parse_int(args[0]);
  const PrimeClass cls = classify_prime(p);
  if (c.format == "json") {
    Json out = {{"p", p}, {"fermat", cls.is_fermat}, {"mersenne", cls.is_mersenne}};
    if (auto m = fermat_exponent(p)) out["fermat_exponent"] = *m;
    if (auto m = mersenne_exponent(p)) out["mersenne_exponent"] = *m;
    emit(out);
  } else {
    std::cout << to_string(cls) << '\n';
  }
  return kOk;
}

int cmd_verify(const Common& c, const std::string& suite, bool timing, bool window_set, bool l_set) {
  SuiteConfig cfg = default_config(suite);
  cfg.seed = c.seed;
  cfg.timing = timing;
  if (suite != "all") {
    if (window_set) cfg.window = c.window;
    if (l_set) cfg.l_bound = c.l_bound;
    if (!c.bounds.empty()) {
      if (suite == "gamma2") {
        cfg.max_exp = static_cast<int>(parse_int(c.bounds));
      } else {
        cfg.bounds = parse_bounds(c.bounds, 3);
      }
    }
  }
  const SuiteReport r = run_suite(suite, cfg);
  if (c.format == "json") {
    emit(to_json(r));
  } else {
    std::cout << to_text(r);
  }
  return r.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kirch topology arithmetic toolkit"};
  app.require_subcommand(1);
  Common common;
  std::vector<std::string> args;
  std::string a_arg;
  std::string alpha_arg;
  std::string suite;
  bool timing = false;

  auto add_format = [&](CLI::App* sub, const std::vector<std::string>& allowed) {
    sub->add_option("--format", common.format, "output format")->check(CLI::IsMember(allowed));
  };
  auto* closure_cmd = app.add_subcommand("closure", "closure of a + bZ");
  closure_cmd->add_option("args", args, "a b")->required();
  closure_cmd->add_option("--window", common.window, "sample window half-width");
  add_format(closure_cmd, {"text", "json"});

  auto* ae_cmd = app.add_subcommand("ae", "A, Pi and alpha of a finite set");
  ae_cmd->add_option("elements", args)->required();
  add_format(ae_cmd, {"text", "json"});

  auto* cmp_cmd = app.add_subcommand("cmp", "order between two filters: cmp E ; F");
  cmp_cmd->add_option("sets", args)->required();
  auto* window_opt = cmp_cmd->add_option("--window", common.window, "window for counterexamples");
  auto* l_opt = cmp_cmd->add_option("--l-bound", common.l_bound, "oracle prime bound");
  add_format(cmp_cmd, {"text", "json"});

  auto* classify_cmd = app.add_subcommand("classify", "Top / FPrime / FDoublePrime / Other");
  classify_cmd->add_option("elements", args)->required();
  add_format(classify_cmd, {"text", "json"});

  auto* realize_cmd = app.add_subcommand("realize", "a set with prescribed A and alpha");
  realize_cmd->add_option("--A", a_arg, "primes, e.g. 2,5")->required();
  realize_cmd->add_option("--alpha", alpha_arg, "residues, e.g. 2=1,5=2")->required();
  add_format(realize_cmd, {"text", "json"});

  auto* gamma_cmd = app.add_subcommand("gamma", "the graph Gamma_p");
  gamma_cmd->add_option("p", args)->required();
  gamma_cmd->add_option("--bounds", common.bounds, "exponent bounds A,B (N for p=2)");
  gamma_cmd->add_option("--format", common.format)->check(CLI::IsMember({"text", "json", "dot"}));

  auto* pc_cmd = app.add_subcommand("prime-class", "Fermat / Mersenne class of a prime");
  pc_cmd->add_option("p", args)->required();
  add_format(pc_cmd, {"text", "json"});

  auto* verify_cmd = app.add_subcommand("verify", "run a check suite");
  verify_cmd->add_option("suite", suite)->required();
  verify_cmd->add_option("--seed", common.seed);
  auto* vwindow = verify_cmd->add_option("--window", common.window);
  auto* vl = verify_cmd->add_option("--l-bound", common.l_bound);
  verify_cmd->add_option("--bounds", common.bounds);
  verify_cmd->add_flag("--timing", timing, "include wall time");
  add_format(verify_cmd, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*closure_cmd) return cmd_closure(common, args);
    if (*ae_cmd) return cmd_ae(common, args);
    if (*cmp_cmd) {
      if (!*l_opt) common.l_bound = 0;
      if (!*window_opt) common.window = 2000;
      return cmd_cmp(common, args);
    }
    if (*classify_cmd) return cmd_classify(common, args);
    if (*realize_cmd) return cmd_realize(common, a_arg, alpha_arg);
    if (*gamma_cmd) {
      if (gamma_cmd->count("--format") == 0) common.format = "dot";
      return cmd_gamma(common, args);
    }
    if (*pc_cmd) return cmd_prime_class(common, args);
    if (*verify_cmd) return cmd_verify(common, suite, timing, vwindow->count() > 0, vl->count() > 0);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
