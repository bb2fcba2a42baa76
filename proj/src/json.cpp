#include "kirch/json.hpp"

namespace kirch {

Json to_json(const PrimeSet& s) {
  if (s.is_all()) return "all";
  return Json(s.primes());
}

Json to_json(const AlphaMap& alpha) {
  Json out = Json::object();
  for (const auto& [p, r] : alpha) out[std::to_string(p)] = r;
  return out;
}

Json to_json(const FiniteSubset& e) { return Json(e.elements()); }

Json to_json(const FilterDescriptor& d) {
  return {{"A", to_json(d.A)}, {"Pi", to_json(d.Pi)}, {"alpha", to_json(d.alpha)},
          {"source", to_json(d.source)}};
}

namespace {

Json discrepancy_list(const std::vector<Discrepancy>& ds) {
  Json out = Json::array();
  for (const auto& d : ds) {
    out.push_back({{"u", d.u}, {"v", d.v}, {"claimed_by", to_string(d.claimed_by)},
                   {"interior", d.interior}, {"reason", d.reason}});
  }
  return out;
}

}  // namespace

Json to_json(const GammaGraph& g) {
  Json vertices = Json::array();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) vertices.push_back(g.value(i));
  Json edges = Json::array();
  Json provenance = Json::object();
  for (const auto& e : g.edges) {
    edges.push_back({g.value(e.u), g.value(e.v)});
    provenance[std::to_string(g.value(e.u)) + "," + std::to_string(g.value(e.v))] =
        to_string(e.provenance);
  }
  Json bounds = {{"max_two_exp", g.bounds.max_two_exp}};
  if (g.p != 2) bounds["max_p_exp"] = g.bounds.max_p_exp;
  return {{"p", g.p},
          {"bounds", bounds},
          {"vertices", vertices},
          {"edges", edges},
          {"provenance", provenance},
          {"discrepancies", discrepancy_list(g.discrepancies)},
          {"printed_discrepancies", discrepancy_list(g.printed_discrepancies)}};
}

}  // namespace kirch
