#pragma once

// Named check suites. Each one runs a closed-form statement against its
// brute-force counterpart over an exhaustive catalog and reports every
// disagreement. The implementations under test are injectable so the
// harness itself can be checked with deliberately broken variants.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kirch/filters.hpp"
#include "kirch/graphs.hpp"
#include "kirch/json.hpp"
#include "kirch/numtheory.hpp"
#include "kirch/topology.hpp"

namespace kirch {

struct SuiteConfig {
  std::string suite;
  Int window = 2000;       // closure sampling window W
  Int max_element = 50;    // catalog bound on |element| (or on a for zsigmondy)
  int max_set_size = 3;    // order catalog set sizes 2..max_set_size
  GammaBounds bounds{9, 5};
  int max_exp = 10;        // gamma2 exponent bound; n bound for zsigmondy
  Int prime_bound = 50;    // largest p for ppix, largest prime for classify
  Int l_bound = 60;        // order oracle prime bound
  Int limit = 1'000'000;   // mihailescu scan limit
  std::uint64_t seed = 7;  // sampled order pairs beyond the exhaustive catalog
  int samples = 200;
  bool timing = false;     // include wall time in the report
};

/// Defaults for one suite. Throws DomainError for unknown names.
SuiteConfig default_config(std::string_view suite);

const std::vector<std::string>& suite_names();  // without "all"

struct Failure {
  std::string inputs;
  std::string expected;
  std::string actual;
};

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::vector<Failure> failures;
  std::vector<std::string> notes;     // informational findings, not failures
  std::vector<SuiteReport> children;  // filled by "all"
  double millis = 0;
  bool timed = false;

  bool passed() const { return failures.empty(); }
};

struct Implementations {
  std::function<bool(Int, const Progression&)> closure_member = [](Int z, const Progression& p) {
    return closure(p).contains(z);
  };
  std::function<PrimeSet(Int, Int)> pair_formula = [](Int x, Int y) {
    return a_of_pair_formula(x, y);
  };
  std::function<bool(const FilterDescriptor&, const FilterDescriptor&)> order =
      [](const FilterDescriptor& e, const FilterDescriptor& f) { return filter_leq(e, f); };
  std::function<bool(const FiniteSubset&)> top = [](const FiniteSubset& e) { return is_top(e); };
  std::function<FilterClass(const FiniteSubset&)> classify = [](const FiniteSubset& e) {
    return kirch::classify(e);
  };
  std::function<std::size_t(const FiniteSubset&)> upset_size = [](const FiniteSubset& e) {
    return upset_in_fprime(e).size();
  };
  std::function<FiniteSubset(const PrimeSet&, const AlphaMap&)> realize =
      [](const PrimeSet& a, const AlphaMap& alpha) { return kirch::realize(a, alpha); };
  std::function<bool(Int, Int)> divides = [](Int x, Int p) { return divides_via_filters(x, p); };
  std::function<GammaGraph(Int, const GammaBounds&)> gamma = [](Int p, const GammaBounds& b) {
    return build_gamma(p, b);
  };
  std::function<GammaGraph(int)> gamma2 = [](int n) { return kirch::gamma2(n); };
  std::function<bool(Int, int)> zsigmondy = [](Int a, int n) { return zsigmondy_is_exception(a, n); };
  std::function<std::vector<PowerPair>(Int)> power_pairs = [](Int limit) {
    return consecutive_power_pairs(limit);
  };
};

SuiteReport run_suite(std::string_view name, const SuiteConfig& cfg,
                      const Implementations& impl = {});

/// First failure in catalog order, or nullopt.
std::optional<Failure> counterexample_search(std::string_view name, const SuiteConfig& cfg,
                                             const Implementations& impl = {});

Json to_json(const SuiteReport& r);
std::string to_text(const SuiteReport& r);

}  // namespace kirch
