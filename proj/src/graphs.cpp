#include "kirch/graphs.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "kirch/filters.hpp"

namespace kirch {

namespace {

constexpr Int kValueCeiling = Int{1} << 61;

using Family = std::function<VertexPair(int eps, int a, int b)>;

GammaVertex vx(int sign, int two_exp, int p_exp) { return {sign, two_exp, p_exp}; }

// Families for a, b >= 1 and eps = +-1, written with i = a - 1 as the base
// 2-exponent so that the pair {x, y} is listed with x = eps 2^i p^b.
std::vector<Family> derived_families(Int p) {
  if (p == 3) {
    return {
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a - 1, b + 1)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a - 1, b + 2)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a + 1, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a - 1, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a - 1, b + 1)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a + 2, b)}; },
        // 4 - 3, 3 - 2 and 9 - 8 across both exponents.
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b + 1), vx(e, a + 1, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b + 1), vx(e, a, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b + 2), vx(e, a + 2, b)}; },
    };
  }
  if (auto m = fermat_exponent(p)) {
    const int k = *m;
    return {
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a - 1, b + 1)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a, b)}; },
        [k](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a + k - 1, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a - 1, b)}; },
        [k](int e, int a, int b) { return VertexPair{vx(e, k + a - 1, b), vx(e, a - 1, b + 1)}; },
    };
  }
  if (auto m = mersenne_exponent(p)) {
    const int k = *m;
    return {
        [](int e, int a, int b) { return VertexPair{vx(e, a, b), vx(e, a - 1, b)}; },
        [k](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, k + a - 1, b)}; },
        [k](int e, int a, int b) { return VertexPair{vx(e, a - 1, b + 1), vx(e, k + a - 1, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a - 1, b)}; },
        [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a - 1, b + 1)}; },
    };
  }
  return {
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a - 1, b)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a, b)}; },
  };
}

// The printed p = 3 list, entry by entry. The second entry reads
// "2 eps^(a-1) 3^(b+2)", and two entries start their 2-exponent at a
// instead of a - 1; both are kept literally so the report can show them.
std::vector<Family> printed_families_p3() {
  return {
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a - 1, b + 1)}; },
      [](int e, int a, int b) {
        const int sign = (a - 1) % 2 == 0 ? 1 : e;
        return VertexPair{vx(e, a - 1, b), vx(sign, 1, b + 2)};
      },
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a, b)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(e, a + 1, b)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b + 1), vx(e, a + 1, b)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a + 1, b), vx(e, a, b + 1)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a + 3, b), vx(e, a, b + 2)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a - 1, b + 1)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a, b)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a + 2, b)}; },
      [](int e, int a, int b) { return VertexPair{vx(e, a - 1, b), vx(-e, a - 1, b)}; },
  };
}

bool in_bounds(const GammaVertex& v, const GammaBounds& b) {
  return (v.sign == 1 || v.sign == -1) && v.two_exp >= 0 && v.two_exp <= b.max_two_exp &&
         v.p_exp >= 1 && v.p_exp <= b.max_p_exp;
}

VertexPair ordered(VertexPair e) {
  if (grid_less(e.second, e.first)) std::swap(e.first, e.second);
  return e;
}

void require_odd_prime(Int p, const char* who) {
  if (p == 2 || !is_prime(p)) throw DomainError(std::string(who) + ": p must be an odd prime");
}

std::vector<Discrepancy> compare_edge_sets(const GammaGraph& g,
                                           const std::set<std::pair<std::size_t, std::size_t>>& predicate,
                                           const std::set<std::pair<std::size_t, std::size_t>>& listed,
                                           const std::string& list_name) {
  std::vector<Discrepancy> out;
  for (const auto& [u, v] : predicate) {
    if (listed.contains({u, v})) continue;
    out.push_back({g.value(u), g.value(v), Provenance::Predicate,
                   g.is_interior(g.vertices[u]) || g.is_interior(g.vertices[v]),
                   "edge missing from the " + list_name + " family list"});
  }
  for (const auto& [u, v] : listed) {
    if (predicate.contains({u, v})) continue;
    const PrimeSet a = a_of_pair_formula(g.value(u), g.value(v));
    out.push_back({g.value(u), g.value(v), Provenance::ClosedForm,
                   g.is_interior(g.vertices[u]) || g.is_interior(g.vertices[v]),
                   list_name + " family pair has A = " + a.to_string()});
  }
  return out;
}

std::set<std::pair<std::size_t, std::size_t>> index_pairs(const GammaGraph& g,
                                                          const std::vector<VertexPair>& pairs) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [x, y] : pairs) {
    const auto ix = std::lower_bound(g.vertices.begin(), g.vertices.end(), x, grid_less);
    const auto iy = std::lower_bound(g.vertices.begin(), g.vertices.end(), y, grid_less);
    out.emplace(static_cast<std::size_t>(ix - g.vertices.begin()),
                static_cast<std::size_t>(iy - g.vertices.begin()));
  }
  return out;
}

}  // namespace

Int GammaVertex::value(Int p) const {
  Int v = checked_mul(checked_pow(2, static_cast<unsigned>(two_exp)),
                      checked_pow(p, static_cast<unsigned>(p_exp)));
  return sign < 0 ? -v : v;
}

bool grid_less(const GammaVertex& a, const GammaVertex& b) {
  if (a.sign != b.sign) return a.sign > b.sign;
  if (a.two_exp != b.two_exp) return a.two_exp < b.two_exp;
  return a.p_exp < b.p_exp;
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Predicate: return "predicate";
    case Provenance::ClosedForm: return "closed_form";
    case Provenance::Both: return "both";
  }
  return "both";
}

bool GammaGraph::is_interior(const GammaVertex& v) const {
  return v.two_exp <= interior.max_two_exp && (p == 2 || v.p_exp <= interior.max_p_exp);
}

std::optional<std::size_t> GammaGraph::index_of(Int x) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (value(i) == x) return i;
  }
  return std::nullopt;
}

std::vector<Int> GammaGraph::neighbours(Int x) const {
  const auto i = index_of(x);
  if (!i) throw DomainError("GammaGraph: " + std::to_string(x) + " is not a vertex");
  std::vector<Int> out;
  for (const auto& e : edges) {
    if (e.u == *i) out.push_back(value(e.v));
    if (e.v == *i) out.push_back(value(e.u));
  }
  return out;
}

int GammaGraph::degree(Int x) const { return static_cast<int>(neighbours(x).size()); }

bool GammaGraph::has_edge(Int x, Int y) const {
  const auto i = index_of(x);
  const auto j = index_of(y);
  if (!i || !j) return false;
  const auto lo = std::min(*i, *j);
  const auto hi = std::max(*i, *j);
  return std::any_of(edges.begin(), edges.end(),
                     [&](const GammaEdge& e) { return e.u == lo && e.v == hi; });
}

bool in_vertex_set(Int x, Int p) {
  if (x == 0 || x % p != 0) return false;
  return prime_divisors(x).subset_of(PrimeSet::finite({2, p}));
}

bool edge_predicate(Int x, Int y, Int p) {
  require_odd_prime(p, "edge_predicate");
  if (x == y) throw DomainError("edge_predicate: x and y must differ");
  if (!in_vertex_set(x, p) || !in_vertex_set(y, p)) {
    throw DomainError("edge_predicate: both endpoints must be vertices of Gamma_" + std::to_string(p));
  }
  return a_of_pair_formula(x, y) == PrimeSet::finite({2, p});
}

std::vector<VertexPair> closed_form_edges(Int p, const GammaBounds& bounds, FamilyList list) {
  require_odd_prime(p, "closed_form_edges");
  const auto families =
      (list == FamilyList::Printed && p == 3) ? printed_families_p3() : derived_families(p);
  std::set<VertexPair, bool (*)(const VertexPair&, const VertexPair&)> out(
      [](const VertexPair& l, const VertexPair& r) {
        if (grid_less(l.first, r.first)) return true;
        if (grid_less(r.first, l.first)) return false;
        return grid_less(l.second, r.second);
      });
  for (const auto& family : families) {
    for (int eps : {1, -1}) {
      for (int a = 1; a <= bounds.max_two_exp + 1; ++a) {
        for (int b = 1; b <= bounds.max_p_exp; ++b) {
          const VertexPair e = family(eps, a, b);
          if (e.first == e.second || !in_bounds(e.first, bounds) || !in_bounds(e.second, bounds)) {
            continue;
          }
          out.insert(ordered(e));
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

GammaBounds family_reach(Int p) {
  if (p == 3) return {3, 2};
  if (auto m = fermat_exponent(p)) return {*m, 1};
  if (auto m = mersenne_exponent(p)) return {*m, 1};
  return {1, 1};
}

GammaGraph build_gamma(Int p, const GammaBounds& bounds) {
  require_odd_prime(p, "build_gamma");
  if (bounds.max_two_exp < 0 || bounds.max_p_exp < 0) {
    throw DomainError("build_gamma: exponent bounds must be non-negative");
  }
  const Int top = checked_mul(checked_pow(2, static_cast<unsigned>(bounds.max_two_exp)),
                              checked_pow(p, static_cast<unsigned>(bounds.max_p_exp)));
  if (top > kValueCeiling) throw OverflowError("build_gamma: 2^A * p^B must stay below 2^61");

  GammaGraph g;
  g.p = p;
  g.bounds = bounds;
  const GammaBounds reach = family_reach(p);
  g.interior = {bounds.max_two_exp - reach.max_two_exp - 1, bounds.max_p_exp - reach.max_p_exp - 1};
  for (int sign : {1, -1}) {
    for (int i = 0; i <= bounds.max_two_exp; ++i) {
      for (int j = 1; j <= bounds.max_p_exp; ++j) g.vertices.push_back({sign, i, j});
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> predicate;
  for (std::size_t u = 0; u < g.vertices.size(); ++u) {
    for (std::size_t v = u + 1; v < g.vertices.size(); ++v) {
      if (edge_predicate(g.value(u), g.value(v), p)) predicate.emplace(u, v);
    }
  }
  const auto derived = index_pairs(g, closed_form_edges(p, bounds, FamilyList::Derived));
  const auto printed = index_pairs(g, closed_form_edges(p, bounds, FamilyList::Printed));
  for (const auto& [u, v] : predicate) {
    g.edges.push_back({u, v, derived.contains({u, v}) ? Provenance::Both : Provenance::Predicate});
  }
  g.discrepancies = compare_edge_sets(g, predicate, derived, "derived");
  g.printed_discrepancies = compare_edge_sets(g, predicate, printed, "printed");
  return g;
}

GammaGraph gamma2(int max_exp) {
  if (max_exp < 2) throw DomainError("gamma2: max_exp must be >= 2");
  if (max_exp > 60) throw OverflowError("gamma2: max_exp must be <= 60");
  GammaGraph g;
  g.p = 2;
  g.bounds = {max_exp, 0};
  g.interior = {max_exp - 1, 0};
  for (int sign : {1, -1}) {
    for (int n = 0; n <= max_exp; ++n) g.vertices.push_back({sign, n, 0});
  }
  std::vector<VertexPair> listed;
  for (int n = 0; n <= max_exp; ++n) {
    if (n < max_exp) {
      listed.push_back({vx(1, n, 0), vx(1, n + 1, 0)});
      listed.push_back({vx(-1, n, 0), vx(-1, n + 1, 0)});
    }
    listed.push_back({vx(1, n, 0), vx(-1, n, 0)});
  }
  const auto list_edges = index_pairs(g, listed);
  std::set<std::pair<std::size_t, std::size_t>> top_edges;
  for (std::size_t u = 0; u < g.vertices.size(); ++u) {
    for (std::size_t v = u + 1; v < g.vertices.size(); ++v) {
      if (is_top(FiniteSubset{g.value(u), g.value(v)})) top_edges.emplace(u, v);
    }
  }
  for (const auto& [u, v] : top_edges) {
    g.edges.push_back({u, v, list_edges.contains({u, v}) ? Provenance::Both : Provenance::Predicate});
  }
  g.discrepancies = compare_edge_sets(g, top_edges, list_edges, "listed");
  return g;
}

std::map<Int, int> degree_signature(const GammaGraph& g) {
  std::vector<int> deg(g.vertices.size(), 0);
  for (const auto& e : g.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  std::map<Int, int> out;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (g.is_interior(g.vertices[i])) out[g.value(i)] = deg[i];
  }
  return out;
}

std::string vertex_label(const GammaVertex& v, Int p) {
  std::ostringstream os;
  if (v.sign < 0) os << '-';
  bool any = false;
  if (v.two_exp > 0) {
    os << '2';
    if (v.two_exp > 1) os << '^' << v.two_exp;
    any = true;
  }
  if (v.p_exp > 0) {
    if (any) os << '*';
    os << p;
    if (v.p_exp > 1) os << '^' << v.p_exp;
    any = true;
  }
  if (!any) os << '1';
  return os.str();
}

std::string emit_dot(const GammaGraph& g) {
  std::ostringstream os;
  os << "graph gamma_" << g.p << " {\n";
  os << "  node [shape=plaintext];\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const auto& v = g.vertices[i];
    const int row = v.sign > 0 ? v.two_exp + 1 : -(v.two_exp + 1);
    os << "  \"" << g.value(i) << "\" [label=\"" << vertex_label(v, g.p) << "\", pos=\"" << v.p_exp
       << ',' << row << "!\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  \"" << g.value(e.u) << "\" -- \"" << g.value(e.v) << "\";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace kirch
