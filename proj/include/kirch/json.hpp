#pragma once

// JSON views of the library values. nlohmann::json keeps object keys sorted,
// so every dump here is canonical.

#include <json.hpp>

#include "kirch/filters.hpp"
#include "kirch/graphs.hpp"
#include "kirch/numtheory.hpp"

namespace kirch {

using Json = nlohmann::json;

Json to_json(const PrimeSet& s);  // "all" or [p, ...]
Json to_json(const AlphaMap& alpha);
Json to_json(const FiniteSubset& e);
Json to_json(const FilterDescriptor& d);
Json to_json(const GammaGraph& g);

}  // namespace kirch
