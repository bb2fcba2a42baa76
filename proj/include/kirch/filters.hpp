#pragma once

// The superconnecting poset of the Kirch space. A filter F_E is described by
// finite data (A_E, Pi_E, alpha_E); this module computes that data, decides
// the inclusion order arithmetically, checks it against an independent
// generator-inclusion oracle, and classifies the top layers of the poset.

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kirch/numtheory.hpp"
#include "kirch/topology.hpp"

namespace kirch {

/// Nonempty finite set of nonzero integers, kept sorted and deduplicated.
class FiniteSubset {
 public:
  FiniteSubset(std::initializer_list<Int> elements);
  explicit FiniteSubset(std::vector<Int> elements);

  const std::vector<Int>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Int x) const;
  bool subset_of(const FiniteSubset& other) const;
  FiniteSubset negated() const;

  std::string to_string() const;

  friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;
  friend auto operator<=>(const FiniteSubset&, const FiniteSubset&) = default;

 private:
  std::vector<Int> elements_;
};

/// prime -> residue alpha(p) in [0, p).
using AlphaMap = std::map<Int, Int>;

std::string to_string(const AlphaMap& alpha);

struct FilterDescriptor {
  PrimeSet A;   // AllPrimes for singletons
  PrimeSet Pi;  // common prime divisors of the source
  AlphaMap alpha;  // empty for singletons
  FiniteSubset source;

  bool singleton() const { return source.size() == 1; }
};

/// Equality of the filters of two descriptors with |E|, |F| >= 2: same A,
/// same Pi up to 2, same alpha off Pi and 2. Throws for singletons.
bool canonically_equal(const FilterDescriptor& e, const FilterDescriptor& f);

/// Key that is equal exactly when canonically_equal holds.
std::string canonical_key(const FilterDescriptor& d);

/// Common prime divisors of all elements.
PrimeSet pi_of(const FiniteSubset& e);

/// Primes p for which E fits in {0, k} + pZ for some k. Singletons give
/// AllPrimes; otherwise every prime up to the largest prime of x, y, x - y
/// (for the first two elements) is tested directly on residues.
PrimeSet a_of(const FiniteSubset& e);

/// Prime divisors of x, y and x - y. Throws for x == y.
PrimeSet a_of_pair_formula(Int x, Int y);

/// The residue map alpha_E. Throws for singletons.
AlphaMap alpha_of(const FiniteSubset& e);

FilterDescriptor descriptor(const FiniteSubset& e);

enum class OrderRule { Singleton, Arithmetic };

std::string to_string(OrderRule rule);

struct OrderVerdict {
  bool holds;
  OrderRule rule;
};

/// Decides F_E <= F_F: singleton rule when either side has one element,
/// otherwise the (A, Pi, alpha) conditions.
OrderVerdict compare_filters(const FiniteSubset& e, const FiniteSubset& f);
bool filter_leq(const FiniteSubset& e, const FiniteSubset& f);
bool filter_leq(const FilterDescriptor& e, const FilterDescriptor& f);

struct OracleVerdict {
  bool holds = false;
  std::vector<Int> generator_primes;       // witnessing L when holds
  std::optional<Int> counterexample;       // element of G_F(L) outside G_E when not
  bool counterexample_in_window = false;
};

/// Independent order test from the generator description of the filters.
/// F_E <= F_F iff for every L_E over primes of A_F \ A_E there is L_F over
/// primes <= l_bound outside A_F with G_F(L_F) inside G_E(L_E); inclusion of
/// these congruence-defined sets is decided exactly prime by prime.
/// Requires |E|, |F| >= 2 and l_bound >= the largest prime of A_E and A_F.
OracleVerdict filter_leq_oracle_detail(const FiniteSubset& e, const FiniteSubset& f, Int l_bound,
                                       const Window& w);
OracleVerdict filter_leq_oracle_detail(const FilterDescriptor& e, const FilterDescriptor& f,
                                       Int l_bound, const Window& w);
bool filter_leq_oracle(const FiniteSubset& e, const FiniteSubset& f, Int l_bound, const Window& w);

/// Smallest l_bound accepted by filter_leq_oracle for this pair.
Int oracle_l_bound_floor(const FiniteSubset& e, const FiniteSubset& f);

/// {2^n, 2^(n+1)}, {-2^n, -2^(n+1)} or {-2^n, 2^n} for some n >= 0.
bool in_top_pair_list(Int x, Int y);

/// F_E is the top filter, i.e. A_E = {2}.
bool is_top(const FiniteSubset& e);

enum class FilterClass { Top, FPrime, FDoublePrime, Other };

std::string to_string(FilterClass c);

FilterClass classify(const FiniteSubset& e);

/// Filters of the first layer strictly above F_E. Requires FDoublePrime.
std::vector<FilterDescriptor> upset_in_fprime(const FiniteSubset& e);

/// {y, x, 2x} with x the product of the odd primes of A and y the least
/// positive solution of y = alpha(p) (mod p). Throws on invalid alpha.
FiniteSubset realize(const PrimeSet& a, const AlphaMap& alpha);

/// p | x decided through two filter inclusions. x must avoid {-2,-1,0,1,2};
/// p must be an odd prime.
bool divides_via_filters(Int x, Int p);

}  // namespace kirch
