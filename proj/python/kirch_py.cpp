#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kirch/filters.hpp"
#include "kirch/graphs.hpp"
#include "kirch/json.hpp"
#include "kirch/numtheory.hpp"
#include "kirch/topology.hpp"
#include "kirch/verify.hpp"

namespace py = pybind11;
using namespace kirch;

namespace {

// Nested values travel as JSON text; the package __init__ decodes them.
std::string dumps(const Json& j) { return j.dump(); }

FiniteSubset subset(const std::vector<Int>& v) { return FiniteSubset(v); }

}  // namespace

PYBIND11_MODULE(_kirch, m) {
  m.doc() = "Kirch topology arithmetic";

  m.def("prime_divisors", [](Int x) { return prime_divisors(x).primes(); });
  m.def("is_squarefree", &is_squarefree);
  m.def("crt_solve", [](const std::vector<std::pair<Int, Int>>& items) {
    CongruenceSystem sys;
    for (const auto& [r, mod] : items) sys.add(r, mod);
    return crt_solve(sys);
  });
  m.def("dirichlet_prime", &dirichlet_prime);
  m.def("classify_prime", [](Int p) { return to_string(classify_prime(p)); });
  m.def("consecutive_power_pairs", [](Int limit) {
    std::vector<std::pair<Int, Int>> out;
    for (const auto& pp : consecutive_power_pairs(limit)) out.emplace_back(pp.lower, pp.upper);
    return out;
  });
  m.def("zsigmondy_is_exception", &zsigmondy_is_exception);

  m.def("closure_member", [](Int z, Int a, Int b) { return closure(Progression(a, b)).contains(z); });
  m.def("closure_oracle_member",
        [](Int z, Int a, Int b, Int d_bound) { return closure_oracle_member(z, Progression(a, b), d_bound); });
  m.def("closure_sample", [](Int a, Int b, Int w) { return closure(Progression(a, b)).materialize(Window(w)); });

  m.def("_a_of", [](const std::vector<Int>& e) { return dumps(to_json(a_of(subset(e)))); });
  m.def("a_of_pair_formula", [](Int x, Int y) { return a_of_pair_formula(x, y).primes(); });
  m.def("_descriptor", [](const std::vector<Int>& e) { return dumps(to_json(descriptor(subset(e)))); });
  m.def("filter_leq", [](const std::vector<Int>& e, const std::vector<Int>& f) {
    return filter_leq(subset(e), subset(f));
  });
  m.def(
      "filter_leq_oracle",
      [](const std::vector<Int>& e, const std::vector<Int>& f, Int l_bound, Int window) {
        return filter_leq_oracle(subset(e), subset(f), l_bound, Window(window));
      },
      py::arg("e"), py::arg("f"), py::arg("l_bound") = 60, py::arg("window") = 2000);
  m.def("is_top", [](const std::vector<Int>& e) { return is_top(subset(e)); });
  m.def("classify", [](const std::vector<Int>& e) { return to_string(classify(subset(e))); });
  m.def("upset_in_fprime", [](const std::vector<Int>& e) {
    std::vector<std::vector<Int>> out;
    for (const auto& d : upset_in_fprime(subset(e))) out.push_back(d.source.elements());
    return out;
  });
  m.def("realize", [](const std::vector<Int>& a, const std::map<Int, Int>& alpha) {
    return realize(PrimeSet::finite(a), alpha).elements();
  });
  m.def("divides_via_filters", &divides_via_filters);

  m.def("_gamma", [](Int p, int max_two_exp, int max_p_exp) {
    return dumps(to_json(p == 2 ? gamma2(max_two_exp) : build_gamma(p, {max_two_exp, max_p_exp})));
  });
  m.def(
      "gamma_dot",
      [](Int p, int max_two_exp, int max_p_exp) {
        return emit_dot(p == 2 ? gamma2(max_two_exp) : build_gamma(p, {max_two_exp, max_p_exp}));
      },
      py::arg("p"), py::arg("max_two_exp"), py::arg("max_p_exp") = 0);
  m.def("_run_suite", [](const std::string& name, std::uint64_t seed) {
    SuiteConfig cfg = default_config(name);
    cfg.seed = seed;
    py::gil_scoped_release release;
    return dumps(to_json(run_suite(name, cfg)));
  });
}
