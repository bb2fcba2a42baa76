#pragma once

// The Kirch space on the nonzero integers: basic open progressions, their
// closures in residue form, and a definitional closure test built from
// basic neighbourhoods.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kirch/numtheory.hpp"

namespace kirch {

/// Finite test universe [-W, W] \ {0}.
class Window {
 public:
  explicit Window(Int half_width);

  Int half_width() const { return half_width_; }
  bool contains(Int z) const { return z != 0 && z >= -half_width_ && z <= half_width_; }

  /// All members in increasing order.
  std::vector<Int> members() const;

 private:
  Int half_width_;
};

/// The set (a + bZ) \ {0}. The representative is reduced to the nonzero
/// residue of least magnitude (ties go to the positive one; a class
/// containing 0 is represented by b itself).
class Progression {
 public:
  Progression(Int a, Int b);

  Int residue() const { return residue_; }
  Int modulus() const { return modulus_; }
  bool contains(Int z) const;

  std::string to_string() const;

  friend bool operator==(const Progression&, const Progression&) = default;

 private:
  Int residue_;
  Int modulus_;
};

/// Allowed residues modulo one prime.
struct ResidueCondition {
  Int prime;
  std::vector<Int> allowed;  // sorted, within [0, prime)
};

/// Nonzero z with z = 0 or z = a (mod p) for every prime p of the modulus.
class ClosureSet {
 public:
  ClosureSet(PrimeSet modulus_primes, Int allowed_residue);

  const PrimeSet& modulus_primes() const { return modulus_primes_; }
  Int allowed_residue() const { return allowed_residue_; }

  bool contains(Int z) const;
  std::vector<ResidueCondition> conditions() const;
  std::vector<Int> materialize(const Window& w) const;

  std::string to_string() const;

 private:
  PrimeSet modulus_primes_;
  Int allowed_residue_;
};

/// True iff b is squarefree and gcd(a, b) = 1, i.e. a + bZ is a base set.
bool is_kirch_open_basic(Int a, Int b);

ClosureSet closure(const Progression& p);

/// Decides z in cl(a + bZ) from the definition: z lies outside the closure
/// iff some basic neighbourhood z + dZ (d squarefree, gcd(d, z) = 1,
/// d <= d_bound) misses a + bZ. Requires d_bound >= rad(b); throws otherwise.
bool closure_oracle_member(Int z, const Progression& p, Int d_bound);

/// cl(1 + qZ) & cl(2 + qZ) restricted to the window, checked against
/// qZ \ {0}. Requires q odd, squarefree, q >= 3 and W >= q.
std::vector<Int> superconnect_witness(Int q, const Window& w);

/// A common point of the given closures, found by CRT over the union of
/// their primes; nullopt only if some prime admits no shared residue.
std::optional<Int> common_closure_point(std::span<const ClosureSet> sets);

}  // namespace kirch
