#include "kirch/topology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kirch {

Window::Window(Int half_width) : half_width_(half_width) {
  if (half_width < 1) throw DomainError("Window: W must be >= 1");
}

std::vector<Int> Window::members() const {
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(2 * half_width_));
  for (Int z = -half_width_; z <= half_width_; ++z) {
    if (z != 0) out.push_back(z);
  }
  return out;
}

Progression::Progression(Int a, Int b) : residue_(0), modulus_(b) {
  if (b < 1) throw DomainError("Progression: modulus must be >= 1");
  if (a == 0) throw DomainError("Progression: representative must be nonzero");
  Int r = mod_floor(a, b);
  if (r == 0) {
    residue_ = b;
  } else if (b - r < r) {
    residue_ = r - b;
  } else {
    residue_ = r;
  }
}

bool Progression::contains(Int z) const { return z != 0 && mod_floor(z - residue_, modulus_) == 0; }

std::string Progression::to_string() const {
  return std::to_string(residue_) + "+" + std::to_string(modulus_) + "Z";
}

ClosureSet::ClosureSet(PrimeSet modulus_primes, Int allowed_residue)
    : modulus_primes_(std::move(modulus_primes)), allowed_residue_(allowed_residue) {
  if (modulus_primes_.is_all()) throw DomainError("ClosureSet: modulus primes must be finite");
}

bool ClosureSet::contains(Int z) const {
  if (z == 0) return false;
  for (Int p : modulus_primes_.primes()) {
    const Int r = mod_floor(z, p);
    if (r != 0 && r != mod_floor(allowed_residue_, p)) return false;
  }
  return true;
}

std::vector<ResidueCondition> ClosureSet::conditions() const {
  std::vector<ResidueCondition> out;
  for (Int p : modulus_primes_.primes()) {
    const Int r = mod_floor(allowed_residue_, p);
    out.push_back({p, r == 0 ? std::vector<Int>{0} : std::vector<Int>{0, r}});
  }
  return out;
}

std::vector<Int> ClosureSet::materialize(const Window& w) const {
  std::vector<Int> out;
  for (Int z = -w.half_width(); z <= w.half_width(); ++z) {
    if (contains(z)) out.push_back(z);
  }
  return out;
}

std::string ClosureSet::to_string() const {
  const auto conds = conditions();
  if (conds.empty()) return "Z\\{0}";
  std::ostringstream os;
  os << "{z != 0 :";
  for (std::size_t i = 0; i < conds.size(); ++i) {
    os << (i ? " and" : "") << " z = ";
    for (std::size_t j = 0; j < conds[i].allowed.size(); ++j) {
      os << (j ? " or " : "") << conds[i].allowed[j];
    }
    os << " (mod " << conds[i].prime << ")";
  }
  os << '}';
  return os.str();
}

bool is_kirch_open_basic(Int a, Int b) {
  if (a == 0 || b < 1) return false;
  return is_squarefree(b) && gcd(a, b) == 1;
}

ClosureSet closure(const Progression& p) {
  return ClosureSet(prime_divisors(p.modulus()), p.residue());
}

bool closure_oracle_member(Int z, const Progression& p, Int d_bound) {
  if (z == 0) throw DomainError("closure_oracle_member: z must be nonzero");
  const Int b = p.modulus();
  if (d_bound < radical(b)) {
    throw DomainError("closure_oracle_member: d_bound must be at least rad(b) = " +
                      std::to_string(radical(b)));
  }
  // A separating d can be replaced by gcd(d, b): that divisor is still
  // squarefree, coprime to z, no larger, and gives the same solvability
  // test. So the search runs over squarefree divisors of rad(b) coprime to z.
  std::vector<Int> pool;
  const PrimeSet b_primes = prime_divisors(b);
  for (Int q : b_primes.primes()) {
    if (z % q != 0) pool.push_back(q);
  }
  const Int gap = checked_sub(z, p.residue());
  const std::size_t subsets = std::size_t{1} << pool.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    Int d = 1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (mask & (std::size_t{1} << i)) d *= pool[i];
    }
    if (d > d_bound || !is_squarefree(d) || gcd(d, z) != 1) continue;
    // (z + dZ) and (a + bZ) meet iff gcd(d, b) divides z - a.
    if (gap % gcd(d, b) != 0) return false;
  }
  return true;
}

std::vector<Int> superconnect_witness(Int q, const Window& w) {
  if (q < 3 || q % 2 == 0 || !is_squarefree(q)) {
    throw DomainError("superconnect_witness: q must be odd, squarefree and >= 3");
  }
  if (w.half_width() < q) throw DomainError("superconnect_witness: window must reach q");
  const ClosureSet c1 = closure(Progression(1, q));
  const ClosureSet c2 = closure(Progression(2, q));
  std::vector<Int> out;
  for (Int z : w.members()) {
    const bool in_both = c1.contains(z) && c2.contains(z);
    if (in_both != (z % q == 0)) {
      throw std::logic_error("superconnect_witness: intersection differs from qZ at " +
                             std::to_string(z));
    }
    if (in_both) out.push_back(z);
  }
  return out;
}

std::optional<Int> common_closure_point(std::span<const ClosureSet> sets) {
  std::map<Int, std::vector<Int>> shared;  // prime -> residues allowed by every set
  for (const auto& s : sets) {
    for (const auto& cond : s.conditions()) {
      auto [it, fresh] = shared.try_emplace(cond.prime, cond.allowed);
      if (!fresh) {
        std::vector<Int> both;
        std::set_intersection(it->second.begin(), it->second.end(), cond.allowed.begin(),
                              cond.allowed.end(), std::back_inserter(both));
        it->second = std::move(both);
      }
    }
  }
  CongruenceSystem sys;
  for (const auto& [p, allowed] : shared) {
    if (allowed.empty()) return std::nullopt;
    sys.add(allowed.front(), p);
  }
  const Int z = crt_solve(sys);
  for (const auto& s : sets) {
    if (!s.contains(z)) throw std::logic_error("common_closure_point: CRT point rejected");
  }
  return z;
}

}  // namespace kirch
