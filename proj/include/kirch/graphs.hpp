#pragma once

// The graphs Gamma_2 and Gamma_p. Vertices are stored by exponents
// (sign, i, j) meaning sign * 2^i * p^j, so bounds are exponent bounds.
// Gamma_p edges are the doubletons whose A-set is exactly {2, p}; the
// closed-form edge families per prime class are kept alongside and every
// disagreement between the two is reported.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kirch/numtheory.hpp"

namespace kirch {

struct GammaVertex {
  int sign = 1;  // +1 or -1
  int two_exp = 0;
  int p_exp = 0;

  Int value(Int p) const;

  friend auto operator<=>(const GammaVertex&, const GammaVertex&) = default;
};

/// Grid order: positive vertices first, then by 2-exponent, then p-exponent.
bool grid_less(const GammaVertex& a, const GammaVertex& b);

struct GammaBounds {
  int max_two_exp = 0;  // 2-exponents 0..max_two_exp
  int max_p_exp = 0;    // p-exponents 1..max_p_exp (ignored for Gamma_2)

  friend bool operator==(const GammaBounds&, const GammaBounds&) = default;
};

enum class Provenance { Predicate, ClosedForm, Both };

std::string to_string(Provenance p);

struct GammaEdge {
  std::size_t u;  // vertex indices, u < v in grid order
  std::size_t v;
  Provenance provenance;
};

/// A pair on which the definitional predicate and a closed-form list differ.
struct Discrepancy {
  Int u;
  Int v;
  Provenance claimed_by;  // the side that has the pair as an edge
  bool interior;
  std::string reason;
};

struct GammaGraph {
  Int p = 2;  // 2 marks Gamma_2
  GammaBounds bounds;
  /// Largest exponents of vertices whose whole neighbourhood lies in bounds;
  /// negative when no vertex is interior.
  GammaBounds interior;
  std::vector<GammaVertex> vertices;  // grid order
  std::vector<GammaEdge> edges;       // predicate edges, sorted
  std::vector<Discrepancy> discrepancies;          // predicate vs derived families
  std::vector<Discrepancy> printed_discrepancies;  // predicate vs printed families

  Int value(std::size_t i) const { return vertices[i].value(p); }
  bool is_interior(const GammaVertex& v) const;
  std::optional<std::size_t> index_of(Int value) const;
  std::vector<Int> neighbours(Int value) const;
  int degree(Int value) const;
  bool has_edge(Int x, Int y) const;
};

/// Whether x is in V_p: p | x and every prime factor of x is 2 or p.
bool in_vertex_set(Int x, Int p);

/// A_{x,y} = {2, p} for two distinct vertices of Gamma_p.
bool edge_predicate(Int x, Int y, Int p);

using VertexPair = std::pair<GammaVertex, GammaVertex>;

enum class FamilyList { Derived, Printed };

/// Edges of Gamma_p given by the closed-form families for the class of p,
/// restricted to pairs with both endpoints in bounds. `Printed` reproduces
/// the printed p = 3 list verbatim (including its irregular entries); for
/// p > 3 both lists coincide.
std::vector<VertexPair> closed_form_edges(Int p, const GammaBounds& bounds,
                                          FamilyList list = FamilyList::Derived);

/// Largest 2- and p-exponent shift used by the families for p.
GammaBounds family_reach(Int p);

GammaGraph build_gamma(Int p, const GammaBounds& bounds);

/// Gamma_2 on {+-2^n : n <= max_exp}.
GammaGraph gamma2(int max_exp);

/// value -> degree for interior vertices.
std::map<Int, int> degree_signature(const GammaGraph& g);

std::string vertex_label(const GammaVertex& v, Int p);

/// Deterministic Graphviz text, LF line endings.
std::string emit_dot(const GammaGraph& g);

}  // namespace kirch
