#include "kirch/verify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <map>
#include <random>
#include <sstream>

namespace kirch {

namespace {

const std::vector<Int> kGammaPrimes = {3, 5, 7, 11, 13, 29, 31};
const std::vector<std::array<Int, 3>> kDoublePrimeFixtures = {{3, 5, 1}, {3, 5, 2}, {3, 7, 2}, {5, 7, 1}};

struct Run {
  SuiteReport& report;
  bool stop_first;

  bool done() const { return stop_first && !report.failures.empty(); }

  void check(bool ok, std::string inputs, std::string expected, std::string actual) {
    ++report.cases;
    if (!ok) report.failures.push_back({std::move(inputs), std::move(expected), std::move(actual)});
  }

  // Runs one case; an exception from the code under test counts as a failure.
  template <class F>
  void guarded(const std::string& inputs, F&& body) {
    try {
      body();
    } catch (const std::exception& ex) {
      check(false, inputs, "no exception", std::string("threw: ") + ex.what());
    }
  }
};

std::string str(bool b) { return b ? "true" : "false"; }

std::string pairs_str(const std::vector<PowerPair>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << '{' << v[i].lower << ',' << v[i].upper << '}';
  os << ']';
  return os.str();
}

void suite_closure(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  const Window w(cfg.window);
  const auto points = w.members();
  for (Int a = -cfg.max_element; a <= cfg.max_element && !run.done(); ++a) {
    if (a == 0) continue;
    for (Int b = 1; b <= cfg.max_element && !run.done(); ++b) {
      const Progression prog(a, b);
      const std::string tag = "a=" + std::to_string(a) + " b=" + std::to_string(b);
      for (Int z : points) {
        run.guarded(tag + " z=" + std::to_string(z), [&] {
          const bool formula = impl.closure_member(z, prog);
          const bool oracle = closure_oracle_member(z, prog, b);
          run.check(formula == oracle, tag + " z=" + std::to_string(z), str(oracle), str(formula));
        });
        if (run.done()) return;
      }
    }
  }
  // q = intersection of the closures of 1 + qZ and 2 + qZ.
  for (Int q = 3; q <= cfg.max_element && q <= cfg.window && !run.done(); q += 2) {
    if (!is_squarefree(q)) continue;
    const std::string tag = "superconnect q=" + std::to_string(q);
    run.guarded(tag, [&] {
      std::vector<Int> expected;
      for (Int z : points) {
        if (z % q == 0) expected.push_back(z);
      }
      const auto got = superconnect_witness(q, w);
      run.check(got == expected, tag, std::to_string(expected.size()) + " multiples of q",
                std::to_string(got.size()) + " points");
    });
  }
}

void suite_pair_formula(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  for (Int x = -cfg.max_element; x <= cfg.max_element; ++x) {
    for (Int y = x + 1; y <= cfg.max_element; ++y) {
      if (x == 0 || y == 0) continue;
      const std::string tag = "{" + std::to_string(x) + "," + std::to_string(y) + "}";
      run.guarded(tag, [&] {
        const PrimeSet direct = a_of(FiniteSubset{x, y});
        const PrimeSet formula = impl.pair_formula(x, y);
        run.check(direct == formula, tag, direct.to_string(), formula.to_string());
      });
      if (run.done()) return;
    }
  }
}

// Descriptor-distinct sets of size 2..max_size over [-m, m] \ {0}, keyed canonically.
std::vector<FilterDescriptor> order_catalog(Int m, int max_size) {
  std::vector<Int> pool;
  for (Int x = -m; x <= m; ++x) {
    if (x != 0) pool.push_back(x);
  }
  std::map<std::string, FilterDescriptor> seen;
  std::vector<Int> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() >= 2) {
      FilterDescriptor d = descriptor(FiniteSubset(pick));
      seen.try_emplace(canonical_key(d), std::move(d));
    }
    if (static_cast<int>(pick.size()) == max_size) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      pick.push_back(pool[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  std::vector<FilterDescriptor> out;
  out.reserve(seen.size());
  for (auto& [key, d] : seen) out.push_back(std::move(d));
  return out;
}

std::string order_tag(const FiniteSubset& e, const FiniteSubset& f) {
  return "E=" + e.to_string() + " F=" + f.to_string();
}

void compare_order(const FilterDescriptor& e, const FilterDescriptor& f, Int l_bound, const Window& w,
                   const Implementations& impl, Run& run, bool* verdict) {
  const std::string tag = order_tag(e.source, f.source);
  run.guarded(tag, [&] {
    const bool got = impl.order(e, f);
    if (verdict) *verdict = got;
    const OracleVerdict oracle = filter_leq_oracle_detail(e, f, l_bound, w);
    std::string expected = str(oracle.holds);
    if (oracle.counterexample) expected += " (witness " + std::to_string(*oracle.counterexample) + ")";
    run.check(got == oracle.holds, tag, expected, str(got));
  });
}

void suite_order(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  const Window w(cfg.window);
  const auto cat = order_catalog(cfg.max_element, cfg.max_set_size);
  const std::size_t n = cat.size();
  Int floor = 2;
  for (const auto& d : cat) floor = std::max(floor, d.A.max());
  if (cfg.l_bound < floor) {
    throw DomainError("order suite: l_bound must be at least " + std::to_string(floor) +
                      " for this catalog");
  }
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> leq(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool got = false;
      compare_order(cat[i], cat[j], cfg.l_bound, w, impl, run, &got);
      if (got) leq[i][j / 64] |= std::uint64_t{1} << (j % 64);
      if (run.done()) return;
    }
  }
  auto bit = [&](std::size_t i, std::size_t j) { return (leq[i][j / 64] >> (j % 64)) & 1; };

  for (std::size_t i = 0; i < n; ++i) {
    run.check(bit(i, i), "reflexive " + cat[i].source.to_string(), "true", "false");
    if (run.done()) return;
  }
  // Catalog entries are pairwise non-equal filters, so mutual inclusion is a failure.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool both = bit(i, j) && bit(j, i);
      run.check(!both, "antisymmetric " + order_tag(cat[i].source, cat[j].source),
                "not both directions", "both directions");
      if (run.done()) return;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::string bad;
    for (std::size_t j = 0; j < n && bad.empty(); ++j) {
      if (!bit(i, j)) continue;
      for (std::size_t k_word = 0; k_word < words; ++k_word) {
        const std::uint64_t missing = leq[j][k_word] & ~leq[i][k_word];
        if (missing) {
          const std::size_t k = k_word * 64 + static_cast<std::size_t>(std::countr_zero(missing));
          bad = cat[i].source.to_string() + " <= " + cat[j].source.to_string() + " <= " +
                cat[k].source.to_string();
          break;
        }
      }
    }
    run.check(bad.empty(), "transitive from " + cat[i].source.to_string(), "closed", bad);
    if (run.done()) return;
  }

  // Seeded pairs with larger elements.
  std::mt19937_64 rng(cfg.seed);
  const Int span = std::max<Int>(100, 2 * cfg.max_element);
  auto draw_set = [&] {
    for (;;) {
      const int size = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.max_set_size - 1));
      std::vector<Int> v;
      for (int k = 0; k < size; ++k) {
        const Int x = static_cast<Int>(rng() % static_cast<std::uint64_t>(2 * span)) - span;
        v.push_back(x >= 0 ? x + 1 : x);
      }
      FiniteSubset s(v);
      if (s.size() >= 2) return s;
    }
  };
  for (int s = 0; s < cfg.samples && !run.done(); ++s) {
    const FiniteSubset e = draw_set();
    const FiniteSubset f = draw_set();
    const Int l = std::max(cfg.l_bound, oracle_l_bound_floor(e, f));
    compare_order(descriptor(e), descriptor(f), l, w, impl, run, nullptr);
  }
}

void suite_top(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  std::vector<Int> pool;
  for (Int x = -cfg.max_element; x <= cfg.max_element; ++x) {
    if (x != 0) pool.push_back(x);
  }
  for (int n = 0; n <= 6; ++n) {
    pool.push_back(Int{1} << n);
    pool.push_back(-(Int{1} << n));
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const FiniteSubset e{pool[i], pool[j]};
      run.guarded(e.to_string(), [&] {
        const bool expected = in_top_pair_list(pool[i], pool[j]);
        const bool got = impl.top(e);
        run.check(got == expected, e.to_string(), str(expected), str(got));
      });
      if (run.done()) return;
    }
  }
}

void expect_class(const FiniteSubset& e, FilterClass want, const Implementations& impl, Run& run) {
  run.guarded(e.to_string(), [&] {
    const FilterClass got = impl.classify(e);
    run.check(got == want, e.to_string(), to_string(want), to_string(got));
  });
}

// The up-set is checked twice: its size, and every member against the oracle.
void expect_upset(const FiniteSubset& e, std::size_t want, const SuiteConfig& cfg,
                  const Implementations& impl, Run& run) {
  const std::string tag = "upset " + e.to_string();
  run.guarded(tag, [&] {
    const std::size_t got = impl.upset_size(e);
    run.check(got == want, tag, std::to_string(want), std::to_string(got));
    const Window w(cfg.window);
    const FilterDescriptor de = descriptor(e);
    for (const auto& up : upset_in_fprime(e)) {
      const Int l = std::max(cfg.l_bound, oracle_l_bound_floor(e, up.source));
      const bool below = filter_leq_oracle_detail(de, up, l, w).holds;
      const bool above = filter_leq_oracle_detail(up, de, l, w).holds;
      run.check(below && !above, tag + " member " + up.source.to_string(), "strictly above",
                std::string(below ? "above" : "not above") + (above ? ", equal" : ""));
    }
  });
}

void suite_classify(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  expect_class({1, 2}, FilterClass::Top, impl, run);
  expect_class({-4, 4}, FilterClass::Top, impl, run);
  for (Int p : primes_up_to(cfg.prime_bound)) {
    if (p == 2) continue;
    for (Int a = 1; a < p && !run.done(); ++a) expect_class({a, p, 2 * p}, FilterClass::FPrime, impl, run);
    expect_class({p, 2 * p}, FilterClass::FDoublePrime, impl, run);
    expect_upset({p, 2 * p}, static_cast<std::size_t>(p - 1), cfg, impl, run);
    if (run.done()) return;
  }
  for (const auto& [p, q, x] : kDoublePrimeFixtures) {
    const FiniteSubset e{x, p * q, 2 * p * q};
    expect_class(e, FilterClass::FDoublePrime, impl, run);
    expect_upset(e, 2, cfg, impl, run);
    if (run.done()) return;
  }
}

void suite_realize(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  std::vector<Int> odd;
  for (Int p : primes_up_to(cfg.prime_bound)) {
    if (p != 2) odd.push_back(p);
  }
  std::vector<std::vector<Int>> choices = {{}};
  for (std::size_t i = 0; i < odd.size(); ++i) {
    choices.push_back({odd[i]});
    for (std::size_t j = i + 1; j < odd.size(); ++j) choices.push_back({odd[i], odd[j]});
  }
  for (const auto& extra : choices) {
    std::vector<Int> primes = {2};
    primes.insert(primes.end(), extra.begin(), extra.end());
    const PrimeSet a = PrimeSet::finite(primes);
    // Walk every alpha as a mixed-radix counter over the odd primes.
    std::vector<Int> digits(extra.size(), 0);
    for (;;) {
      AlphaMap alpha{{2, 1}};
      for (std::size_t k = 0; k < extra.size(); ++k) alpha[extra[k]] = digits[k];
      const std::string tag = "A=" + a.to_string() + " alpha=" + to_string(alpha);
      run.guarded(tag, [&] {
        const FiniteSubset e = impl.realize(a, alpha);
        const PrimeSet got_a = a_of(e);
        const AlphaMap got_alpha = alpha_of(e);
        run.check(got_a == a && got_alpha == alpha, tag + " E=" + e.to_string(),
                  a.to_string() + " " + to_string(alpha), got_a.to_string() + " " + to_string(got_alpha));
      });
      if (run.done()) return;
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == extra[k]) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  }
}

void suite_ppix(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  for (Int p : primes_up_to(cfg.prime_bound)) {
    if (p == 2) continue;
    for (Int x = -cfg.max_element; x <= cfg.max_element; ++x) {
      if (x >= -2 && x <= 2) continue;
      const std::string tag = "x=" + std::to_string(x) + " p=" + std::to_string(p);
      run.guarded(tag, [&] {
        const bool expected = x % p == 0;
        const bool got = impl.divides(x, p);
        run.check(got == expected, tag, str(expected), str(got));
      });
      if (run.done()) return;
    }
  }
}

void check_gamma(const GammaGraph& g, Run& run) {
  const Int p = g.p;
  const std::string tag = "p=" + std::to_string(p);
  const auto sig = degree_signature(g);
  run.check(!sig.empty(), tag + " interior", "nonempty", "no interior vertices");
  if (sig.empty()) return;

  const PrimeClass cls = classify_prime(p);
  if (p == 3 || cls.fermat_mersenne()) {
    const int low = p == 3 ? 8 : 4;
    for (const auto& [v, d] : sig) {
      const bool special = v == p || v == -p;
      const bool ok = special ? d == low : d > low;
      run.check(ok, tag + " deg(" + std::to_string(v) + ")",
                special ? std::to_string(low) : ">" + std::to_string(low), std::to_string(d));
    }
  } else {
    for (const auto& [v, d] : sig) {
      const bool power = prime_divisors(v) == PrimeSet::finite({p});
      run.check(power == (d == 2), tag + " deg(" + std::to_string(v) + ")", power ? "2" : ">2",
                std::to_string(d));
    }
  }
  for (const auto& d : g.discrepancies) {
    run.check(!d.interior, tag + " edge {" + std::to_string(d.u) + "," + std::to_string(d.v) + "}",
              "predicate and family list agree", to_string(d.claimed_by) + ": " + d.reason);
  }
  for (const auto& e : g.edges) {
    const Int x = g.value(e.u);
    const Int y = g.value(e.v);
    run.check(g.has_edge(-x, -y), tag + " mirror of {" + std::to_string(x) + "," + std::to_string(y) + "}",
              "edge", "missing");
  }
  std::size_t printed = 0;
  for (const auto& d : g.printed_discrepancies) printed += d.interior;
  if (printed) {
    run.report.notes.push_back(tag + ": " + std::to_string(printed) +
                               " interior pairs where the printed family list and the predicate disagree");
  }
}

void suite_gamma(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  for (Int p : kGammaPrimes) {
    run.guarded("p=" + std::to_string(p), [&] { check_gamma(impl.gamma(p, cfg.bounds), run); });
    if (run.done()) return;
  }
}

void suite_gamma2(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  const std::string tag = "max_exp=" + std::to_string(cfg.max_exp);
  run.guarded(tag, [&] {
    const GammaGraph g = impl.gamma2(cfg.max_exp);
    for (const auto& d : g.discrepancies) {
      run.check(false, tag + " pair {" + std::to_string(d.u) + "," + std::to_string(d.v) + "}",
                "list and top test agree", to_string(d.claimed_by) + ": " + d.reason);
    }
    const std::size_t want_edges = static_cast<std::size_t>(3 * cfg.max_exp + 1);
    run.check(g.edges.size() == want_edges, tag + " edge count", std::to_string(want_edges),
              std::to_string(g.edges.size()));
    for (const auto& [v, d] : degree_signature(g)) {
      const int want = (v == 1 || v == -1) ? 2 : 3;
      run.check(d == want, tag + " deg(" + std::to_string(v) + ")", std::to_string(want), std::to_string(d));
    }
  });
}

void suite_zsigmondy(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  for (Int a = 2; a <= cfg.max_element; ++a) {
    for (int n = 2; n <= cfg.max_exp; ++n) {
      const std::string tag = "a=" + std::to_string(a) + " n=" + std::to_string(n);
      try {
        checked_pow(a, static_cast<unsigned>(n));
      } catch (const OverflowError&) {
        continue;  // outside the exact range
      }
      run.guarded(tag, [&] {
        const bool expected = zsigmondy_closed_form(a, n);
        const bool got = impl.zsigmondy(a, n);
        run.check(got == expected, tag, str(expected), str(got));
      });
      if (run.done()) return;
    }
  }
}

void suite_mihailescu(const SuiteConfig& cfg, const Implementations& impl, Run& run) {
  const std::string tag = "limit=" + std::to_string(cfg.limit);
  run.guarded(tag, [&] {
    const std::vector<PowerPair> want = cfg.limit >= 9 ? std::vector<PowerPair>{{8, 9}} : std::vector<PowerPair>{};
    const auto got = impl.power_pairs(cfg.limit);
    run.check(got == want, tag, pairs_str(want), pairs_str(got));
  });
}

using SuiteFn = void (*)(const SuiteConfig&, const Implementations&, Run&);

const std::map<std::string, SuiteFn, std::less<>>& suite_table() {
  static const std::map<std::string, SuiteFn, std::less<>> table = {
      {"closure", suite_closure},     {"pair_formula", suite_pair_formula},
      {"order", suite_order},         {"top", suite_top},
      {"classify", suite_classify},   {"realize", suite_realize},
      {"ppix", suite_ppix},           {"gamma", suite_gamma},
      {"gamma2", suite_gamma2},       {"zsigmondy", suite_zsigmondy},
      {"mihailescu", suite_mihailescu},
  };
  return table;
}

void validate(const SuiteConfig& cfg) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("SuiteConfig: ") + what);
  };
  need(cfg.window >= 1, "window must be >= 1");
  need(cfg.max_element >= 1, "max_element must be >= 1");
  need(cfg.max_set_size >= 2, "max_set_size must be >= 2");
  need(cfg.bounds.max_two_exp >= 0 && cfg.bounds.max_p_exp >= 0, "bounds must be >= 0");
  need(cfg.max_exp >= 2, "max_exp must be >= 2");
  need(cfg.prime_bound >= 3, "prime_bound must be >= 3");
  need(cfg.l_bound >= 2, "l_bound must be >= 2");
  need(cfg.limit >= 1, "limit must be >= 1");
  need(cfg.samples >= 0, "samples must be >= 0");
}

SuiteReport run_impl(std::string_view name, const SuiteConfig& cfg, const Implementations& impl,
                     bool stop_first) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  report.suite = std::string(name);
  if (name == "all") {
    for (const auto& child : suite_names()) {
      SuiteConfig c = default_config(child);
      c.seed = cfg.seed;
      c.timing = cfg.timing;
      SuiteReport r = run_impl(child, c, impl, stop_first);
      report.cases += r.cases;
      for (const auto& f : r.failures) report.failures.push_back({child + ": " + f.inputs, f.expected, f.actual});
      report.children.push_back(std::move(r));
      if (stop_first && !report.failures.empty()) break;
    }
  } else {
    const auto it = suite_table().find(name);
    if (it == suite_table().end()) throw DomainError("unknown suite: " + std::string(name));
    validate(cfg);
    Run run{report, stop_first};
    it->second(cfg, impl, run);
  }
  report.timed = cfg.timing;
  if (cfg.timing) {
    report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"closure", "pair_formula", "order",  "top",
                                                 "classify", "realize",     "ppix",   "gamma",
                                                 "gamma2",   "zsigmondy",   "mihailescu"};
  return names;
}

SuiteConfig default_config(std::string_view suite) {
  SuiteConfig c;
  c.suite = std::string(suite);
  if (suite == "closure") {
    c.max_element = 20;
  } else if (suite == "pair_formula") {
    c.max_element = 50;
  } else if (suite == "order") {
    c.max_element = 30;
  } else if (suite == "top") {
    c.max_element = 64;
  } else if (suite == "classify" || suite == "realize") {
    c.prime_bound = 13;
  } else if (suite == "ppix") {
    c.max_element = 200;
    c.prime_bound = 50;
  } else if (suite == "zsigmondy") {
    c.max_element = 20;
    c.max_exp = 12;
  } else if (suite != "gamma" && suite != "gamma2" && suite != "mihailescu" && suite != "all") {
    throw DomainError("unknown suite: " + std::string(suite));
  }
  return c;
}

SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg, const Implementations& impl) {
  return run_impl(name, cfg, impl, false);
}

std::optional<Failure> counterexample_search(std::string_view name, const SuiteConfig& cfg,
                                             const Implementations& impl) {
  SuiteReport r = run_impl(name, cfg, impl, true);
  if (r.failures.empty()) return std::nullopt;
  return r.failures.front();
}

Json to_json(const SuiteReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"inputs", f.inputs}, {"expected", f.expected}, {"actual", f.actual}});
  }
  Json out = {{"suite", r.suite}, {"cases", r.cases}, {"failures", failures}, {"notes", r.notes}};
  if (!r.children.empty()) {
    Json children = Json::array();
    for (const auto& c : r.children) children.push_back(to_json(c));
    out["suites"] = children;
  }
  if (r.timed) out["millis"] = r.millis;
  return out;
}

namespace {

void text_into(const SuiteReport& r, std::ostringstream& os, int shown_limit) {
  os << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.cases << " cases, "
     << r.failures.size() << " failures";
  if (r.timed) os << " (" << static_cast<long long>(r.millis) << " ms)";
  os << '\n';
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  int shown = 0;
  for (const auto& f : r.failures) {
    if (shown++ == shown_limit) {
      os << "  ... " << r.failures.size() - static_cast<std::size_t>(shown_limit) << " more\n";
      break;
    }
    os << "  " << f.inputs << ": expected " << f.expected << ", got " << f.actual << '\n';
  }
}

}  // namespace

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  if (r.children.empty()) {
    text_into(r, os, 20);
    return os.str();
  }
  for (const auto& c : r.children) text_into(c, os, 20);
  os << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.cases << " cases, " << r.failures.size()
     << " failures";
  if (r.timed) os << " (" << static_cast<long long>(r.millis) << " ms)";
  os << '\n';
  return os.str();
}

}  // namespace kirch
