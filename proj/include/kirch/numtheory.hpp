#pragma once

// Exact 63-bit integer arithmetic: factorization, CRT, Dirichlet search,
// Fermat/Mersenne classification and the Mihailescu / Zsigmondy checks.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kirch {

using Int = std::int64_t;

/// Raised when an exact computation would leave the signed 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Raised for inputs outside an operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Checked arithmetic. INT64_MIN is never produced, so negation is always safe.
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_pow(Int base, unsigned exp);
Int checked_abs(Int a);

/// Non-negative residue of `a` modulo `m` (m >= 1).
Int mod_floor(Int a, Int m);

Int gcd(Int a, Int b);

/// Deterministic for every 64-bit input (Miller-Rabin with a fixed base set).
bool is_prime(Int n);

/// Primes p <= limit in increasing order.
std::vector<Int> primes_up_to(Int limit);

/// Prime-power factorization of |x| as (prime, exponent), primes increasing.
std::vector<std::pair<Int, int>> factorize(Int x);

bool is_power_of_two(Int n);

/// A finite set of primes, or the symbolic set of all primes.
class PrimeSet {
 public:
  PrimeSet() = default;

  /// Validates: strictly increasing after sorting, every element prime.
  static PrimeSet finite(std::vector<Int> primes);
  static PrimeSet all_primes();

  bool is_all() const { return all_; }
  bool is_finite() const { return !all_; }
  bool empty() const { return !all_ && primes_.empty(); }
  std::size_t size() const;

  /// Sorted primes. Throws DomainError for the AllPrimes variant.
  const std::vector<Int>& primes() const;

  bool contains(Int p) const;
  bool subset_of(const PrimeSet& other) const;

  PrimeSet unite(const PrimeSet& other) const;
  PrimeSet intersect(const PrimeSet& other) const;
  PrimeSet minus(const PrimeSet& other) const;
  PrimeSet without(Int p) const;

  /// Largest element; throws for the empty set and for AllPrimes.
  Int max() const;

  std::string to_string() const;

  friend bool operator==(const PrimeSet&, const PrimeSet&) = default;

 private:
  bool all_ = false;
  std::vector<Int> primes_;
};

PrimeSet prime_divisors(Int x);
bool is_squarefree(Int x);

/// Product of the distinct primes dividing x.
Int radical(Int x);

struct PrimeClass {
  bool is_fermat = false;
  bool is_mersenne = false;

  bool fermat_mersenne() const { return is_fermat || is_mersenne; }
  friend bool operator==(const PrimeClass&, const PrimeClass&) = default;
};

PrimeClass classify_prime(Int p);

/// n with p = 2^n + 1, if p is a Fermat prime.
std::optional<int> fermat_exponent(Int p);
/// n with p = 2^n - 1, if p is a Mersenne prime.
std::optional<int> mersenne_exponent(Int p);

std::string to_string(const PrimeClass& c);

struct Congruence {
  Int residue = 0;
  Int modulus = 1;
};

/// A system of congruences x = a_i (mod b_i), b_i >= 1.
class CongruenceSystem {
 public:
  CongruenceSystem() = default;
  CongruenceSystem(std::initializer_list<Congruence> items);
  explicit CongruenceSystem(std::vector<Congruence> items);

  void add(Int residue, Int modulus);
  std::span<const Congruence> items() const { return items_; }
  bool pairwise_coprime() const;
  bool satisfied_by(Int x) const;

 private:
  std::vector<Congruence> items_;
};

/// Smallest positive solution of a system with pairwise coprime moduli.
/// Throws DomainError when the moduli are not pairwise coprime.
Int crt_solve(const CongruenceSystem& sys);

/// Merges congruences with arbitrary moduli. Returns the combined class
/// (residue in [0, modulus)) or nullopt when the system is inconsistent.
std::optional<Congruence> solve_congruences(const CongruenceSystem& sys);

/// Walks the solutions of a coprime system in increasing order:
/// first, first + step, first + 2 step, ...
class CrtSolutions {
 public:
  explicit CrtSolutions(const CongruenceSystem& sys);

  Int first() const { return first_; }
  Int step() const { return step_; }
  Int next();

 private:
  Int first_;
  Int step_;
  Int current_;
  bool started_ = false;
};

/// Least prime among a + b, a + 2b, ... for coprime positive a, b.
Int dirichlet_prime(Int a, Int b);

struct PowerPair {
  Int lower;
  Int upper;
  friend bool operator==(const PowerPair&, const PowerPair&) = default;
};

/// Every pair {u, u + 1} of perfect powers m^k (m >= 1, k >= 2) up to limit.
std::vector<PowerPair> consecutive_power_pairs(Int limit);

/// Whether every prime factor of a^n - 1 already divides some a^k - 1,
/// 0 < k < n. Requires a^n < 2^63; throws OverflowError otherwise.
bool zsigmondy_is_exception(Int a, int n);

/// The classical exception list: (n = 2, a = 2^k - 1) or (n = 6, a = 2).
bool zsigmondy_closed_form(Int a, int n);

}  // namespace kirch
