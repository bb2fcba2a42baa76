#include "kirch/filters.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace kirch {

namespace {

std::vector<Int> normalize(std::vector<Int> v) {
  if (v.empty()) throw DomainError("FiniteSubset: must be nonempty");
  if (std::find(v.begin(), v.end(), 0) != v.end()) throw DomainError("FiniteSubset: zero is not allowed");
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Residues allowed at a prime by a congruence-defined generator.
// An absent prime means every residue is allowed.
using Constraints = std::map<Int, std::vector<Int>>;

void restrict_to(Constraints& c, Int p, std::vector<Int> allowed) {
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (static_cast<Int>(allowed.size()) == p) return;  // no restriction
  c[p] = std::move(allowed);
}

// G_X(L) = intersection over p in L of pZ, and over p in A_X \ Pi_X of {0, alpha(p)} + pZ.
Constraints generator(const FilterDescriptor& d, const std::vector<Int>& l) {
  Constraints c;
  for (Int p : d.A.primes()) {
    if (!d.Pi.contains(p)) restrict_to(c, p, {0, d.alpha.at(p)});
  }
  for (Int p : l) restrict_to(c, p, {0});
  return c;
}

std::vector<Int> allowed_at(const Constraints& c, Int p) {
  if (auto it = c.find(p); it != c.end()) return it->second;
  std::vector<Int> all(static_cast<std::size_t>(p));
  for (Int r = 0; r < p; ++r) all[static_cast<std::size_t>(r)] = r;
  return all;
}

// First (prime, residue) allowed by `inner` but not by `outer`, if any. Both
// sets are nonempty CRT boxes, so inner is inside outer iff this is empty.
std::optional<std::pair<Int, Int>> escape(const Constraints& inner, const Constraints& outer) {
  for (const auto& [p, outer_allowed] : outer) {
    for (Int r : allowed_at(inner, p)) {
      if (!std::binary_search(outer_allowed.begin(), outer_allowed.end(), r)) return std::pair{p, r};
    }
  }
  return std::nullopt;
}

std::vector<std::vector<Int>> subsets_smallest_first(const std::vector<Int>& pool) {
  std::vector<std::vector<Int>> out;
  const std::size_t n = pool.size();
  std::vector<std::size_t> masks(std::size_t{1} << n);
  for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = m;
  std::stable_sort(masks.begin(), masks.end(), [](std::size_t a, std::size_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (std::size_t m : masks) {
    std::vector<Int> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (m & (std::size_t{1} << i)) s.push_back(pool[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

FiniteSubset::FiniteSubset(std::initializer_list<Int> elements)
    : elements_(normalize(std::vector<Int>(elements))) {}

FiniteSubset::FiniteSubset(std::vector<Int> elements) : elements_(normalize(std::move(elements))) {}

bool FiniteSubset::contains(Int x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

bool FiniteSubset::subset_of(const FiniteSubset& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

FiniteSubset FiniteSubset::negated() const {
  std::vector<Int> v;
  for (Int x : elements_) v.push_back(checked_sub(0, x));
  return FiniteSubset(std::move(v));
}

std::string FiniteSubset::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < elements_.size(); ++i) os << (i ? "," : "") << elements_[i];
  os << '}';
  return os.str();
}

std::string to_string(const AlphaMap& alpha) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [p, r] : alpha) {
    os << (first ? "" : ",") << p << ':' << r;
    first = false;
  }
  os << '}';
  return os.str();
}

PrimeSet pi_of(const FiniteSubset& e) {
  PrimeSet out = prime_divisors(e.elements().front());
  for (Int x : e.elements()) out = out.intersect(prime_divisors(x));
  return out;
}

PrimeSet a_of(const FiniteSubset& e) {
  if (e.size() == 1) return PrimeSet::all_primes();
  const Int x = e.elements()[0];
  const Int y = e.elements()[1];
  const Int bound =
      prime_divisors(x).unite(prime_divisors(y)).unite(prime_divisors(checked_sub(x, y))).max();
  std::vector<Int> out;
  for (Int p : primes_up_to(bound)) {
    std::optional<Int> cls;
    bool two_class = true;
    for (Int z : e.elements()) {
      const Int r = mod_floor(z, p);
      if (r == 0) continue;
      if (cls && *cls != r) {
        two_class = false;
        break;
      }
      cls = r;
    }
    if (two_class) out.push_back(p);
  }
  return PrimeSet::finite(std::move(out));
}

PrimeSet a_of_pair_formula(Int x, Int y) {
  if (x == y) throw DomainError("a_of_pair_formula: x and y must differ");
  return prime_divisors(x).unite(prime_divisors(y)).unite(prime_divisors(checked_sub(x, y)));
}

AlphaMap alpha_of(const FiniteSubset& e) {
  if (e.size() < 2) throw DomainError("alpha_of: E must have at least two elements");
  const PrimeSet a = a_of(e);
  const PrimeSet pi = pi_of(e);
  AlphaMap alpha;
  for (Int p : a.primes()) {
    if (p == 2) {
      alpha[p] = 1;
    } else if (pi.contains(p)) {
      alpha[p] = 0;
    } else {
      // p is outside Pi_E, so some element has a nonzero residue, and all
      // nonzero residues agree because p is in A_E.
      for (Int z : e.elements()) {
        if (const Int r = mod_floor(z, p); r != 0) {
          alpha[p] = r;
          break;
        }
      }
    }
  }
  return alpha;
}

FilterDescriptor descriptor(const FiniteSubset& e) {
  if (e.size() == 1) return {PrimeSet::all_primes(), pi_of(e), {}, e};
  return {a_of(e), pi_of(e), alpha_of(e), e};
}

bool canonically_equal(const FilterDescriptor& e, const FilterDescriptor& f) {
  if (e.singleton() || f.singleton()) {
    throw DomainError("canonically_equal: defined only for sets with at least two elements");
  }
  return canonical_key(e) == canonical_key(f);
}

std::string canonical_key(const FilterDescriptor& d) {
  if (d.singleton()) return "singleton:" + d.source.to_string();
  const PrimeSet pi_odd = d.Pi.without(2);
  AlphaMap free;
  for (auto [p, r] : d.alpha) {
    if (p != 2 && !d.Pi.contains(p)) free[p] = r;
  }
  return d.A.to_string() + "|" + pi_odd.to_string() + "|" + to_string(free);
}

std::string to_string(OrderRule rule) {
  return rule == OrderRule::Singleton ? "singleton" : "arithmetic";
}

bool filter_leq(const FilterDescriptor& e, const FilterDescriptor& f) {
  if (e.singleton() || f.singleton()) return e.singleton() && e.source.subset_of(f.source);
  if (!f.A.subset_of(e.A)) return false;
  if (!f.Pi.without(2).subset_of(e.Pi)) return false;
  for (Int p : f.A.primes()) {
    if (e.Pi.contains(p)) continue;
    if (e.alpha.at(p) != f.alpha.at(p)) return false;
  }
  return true;
}

OrderVerdict compare_filters(const FiniteSubset& e, const FiniteSubset& f) {
  const OrderRule rule =
      std::min(e.size(), f.size()) == 1 ? OrderRule::Singleton : OrderRule::Arithmetic;
  return {filter_leq(descriptor(e), descriptor(f)), rule};
}

bool filter_leq(const FiniteSubset& e, const FiniteSubset& f) { return compare_filters(e, f).holds; }

Int oracle_l_bound_floor(const FiniteSubset& e, const FiniteSubset& f) {
  const PrimeSet both = a_of(e).unite(a_of(f));
  return both.max();
}

OracleVerdict filter_leq_oracle_detail(const FiniteSubset& e, const FiniteSubset& f, Int l_bound,
                                       const Window& w) {
  if (e.size() < 2 || f.size() < 2) {
    throw DomainError("filter_leq_oracle: both sets need at least two elements");
  }
  return filter_leq_oracle_detail(descriptor(e), descriptor(f), l_bound, w);
}

OracleVerdict filter_leq_oracle_detail(const FilterDescriptor& de, const FilterDescriptor& df,
                                       Int l_bound, const Window& w) {
  if (de.singleton() || df.singleton()) {
    throw DomainError("filter_leq_oracle: both sets need at least two elements");
  }
  const Int floor = de.A.unite(df.A).max();
  if (l_bound < floor) {
    throw DomainError("filter_leq_oracle: l_bound must be at least " + std::to_string(floor));
  }

  OracleVerdict verdict;
  const std::vector<Int> extra_e = df.A.minus(de.A).primes();
  for (const auto& l_e : subsets_smallest_first(extra_e)) {
    const Constraints target = generator(de, l_e);
    // Only primes where the target is constrained can repair an escape, so
    // the search pool for L_F is those primes outside A_F and within bound.
    std::vector<Int> pool;
    for (const auto& [p, allowed] : target) {
      if (p <= l_bound && !df.A.contains(p)) pool.push_back(p);
    }
    std::optional<std::vector<Int>> found;
    for (const auto& l_f : subsets_smallest_first(pool)) {
      if (!escape(generator(df, l_f), target)) {
        found = l_f;
        break;
      }
    }
    if (!found) {
      const Constraints inner = generator(df, pool);
      const auto [p, r] = *escape(inner, target);
      CongruenceSystem sys;
      sys.add(r, p);
      for (const auto& [q, allowed] : inner) {
        if (q != p) sys.add(0, q);
      }
      verdict.holds = false;
      verdict.generator_primes.clear();
      verdict.counterexample = crt_solve(sys);
      verdict.counterexample_in_window = w.contains(*verdict.counterexample);
      return verdict;
    }
    verdict.generator_primes = *found;
  }
  verdict.holds = true;
  return verdict;
}

bool filter_leq_oracle(const FiniteSubset& e, const FiniteSubset& f, Int l_bound, const Window& w) {
  return filter_leq_oracle_detail(e, f, l_bound, w).holds;
}

bool in_top_pair_list(Int x, Int y) {
  if (x == 0 || y == 0 || x == y) return false;
  Int lo = checked_abs(x) <= checked_abs(y) ? x : y;
  Int hi = lo == x ? y : x;
  const Int m = checked_abs(lo);
  if (!is_power_of_two(m)) return false;
  if (hi == -lo) return true;
  return (lo > 0) == (hi > 0) && checked_abs(hi) == checked_mul(m, 2);
}

bool is_top(const FiniteSubset& e) {
  const PrimeSet a = a_of(e);
  const bool top = a.is_finite() && a == PrimeSet::finite({2});
  if (e.size() == 2 && top != in_top_pair_list(e.elements()[0], e.elements()[1])) {
    throw std::logic_error("is_top: A_E test and the doubleton list disagree on " + e.to_string());
  }
  return top;
}

std::string to_string(FilterClass c) {
  switch (c) {
    case FilterClass::Top: return "Top";
    case FilterClass::FPrime: return "FPrime";
    case FilterClass::FDoublePrime: return "FDoublePrime";
    case FilterClass::Other: return "Other";
  }
  return "Other";
}

FilterClass classify(const FiniteSubset& e) {
  if (e.size() == 1) return FilterClass::Other;
  const PrimeSet a = a_of(e);
  const PrimeSet pi = pi_of(e);
  const std::vector<Int>& ps = a.primes();
  if (ps.size() == 1) return FilterClass::Top;
  if (ps.size() == 2) return pi.contains(ps[1]) ? FilterClass::FDoublePrime : FilterClass::FPrime;
  if (ps.size() == 3 && pi.subset_of(PrimeSet::finite({2}))) return FilterClass::FDoublePrime;
  return FilterClass::Other;
}

std::vector<FilterDescriptor> upset_in_fprime(const FiniteSubset& e) {
  if (classify(e) != FilterClass::FDoublePrime) {
    throw DomainError("upset_in_fprime: " + e.to_string() + " is not in the second layer");
  }
  const FilterDescriptor de = descriptor(e);
  std::vector<FilterDescriptor> out;
  // Every first-layer filter is F_{a, r, 2r} with r an odd prime and
  // 0 < a < r; lying above F_E forces r into A_E.
  for (Int r : de.A.primes()) {
    if (r == 2) continue;
    for (Int a = 1; a < r; ++a) {
      const FilterDescriptor dh = descriptor(FiniteSubset{a, r, 2 * r});
      if (filter_leq(de, dh) && !filter_leq(dh, de)) out.push_back(dh);
    }
  }
  const std::size_t expected =
      de.A.size() == 2 ? static_cast<std::size_t>(de.A.max() - 1) : std::size_t{2};
  if (out.size() != expected) {
    throw std::logic_error("upset_in_fprime: found " + std::to_string(out.size()) +
                           " filters above " + e.to_string() + ", expected " +
                           std::to_string(expected));
  }
  return out;
}

FiniteSubset realize(const PrimeSet& a, const AlphaMap& alpha) {
  if (a.is_all() || !a.contains(2)) throw DomainError("realize: A must be finite and contain 2");
  std::vector<Int> keys;
  for (auto [p, r] : alpha) keys.push_back(p);
  if (keys != a.primes()) throw DomainError("realize: alpha must be defined exactly on A");
  if (alpha.at(2) != 1) throw DomainError("realize: alpha(2) must be 1");
  CongruenceSystem sys;
  Int x = 1;
  for (auto [p, r] : alpha) {
    if (r < 0 || r >= p) throw DomainError("realize: alpha(p) must lie in [0, p)");
    sys.add(r, p);
    if (p != 2) x = checked_mul(x, p);
  }
  const Int y = crt_solve(sys);
  FiniteSubset out{y, x, checked_mul(2, x)};
  if (!(a_of(out) == a) || alpha_of(out) != alpha) {
    throw std::logic_error("realize: " + out.to_string() + " does not recover (A, alpha)");
  }
  return out;
}

bool divides_via_filters(Int x, Int p) {
  if (x >= -2 && x <= 2) throw DomainError("divides_via_filters: x must avoid {-2,-1,0,1,2}");
  if (p == 2 || !is_prime(p)) throw DomainError("divides_via_filters: p must be an odd prime");
  const Int two_p = checked_mul(2, p);
  return filter_leq(FiniteSubset{1, x}, FiniteSubset{1, p, two_p}) &&
         filter_leq(FiniteSubset{2, x}, FiniteSubset{2, p, two_p});
}

}  // namespace kirch
