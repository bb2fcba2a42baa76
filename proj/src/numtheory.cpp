#include "kirch/numtheory.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace kirch {

namespace {

constexpr Int kSieveLimit = Int{1} << 20;

[[noreturn]] void overflow(const char* op) {
  throw OverflowError(std::string("integer overflow in ") + op);
}

Int reject_min(Int v, const char* op) {
  if (v == std::numeric_limits<Int>::min()) overflow(op);
  return v;
}

const std::vector<Int>& sieve_primes() {
  static const std::vector<Int> primes = [] {
    std::vector<bool> composite(static_cast<std::size_t>(kSieveLimit) + 1, false);
    std::vector<Int> out;
    for (Int i = 2; i <= kSieveLimit; ++i) {
      if (composite[static_cast<std::size_t>(i)]) continue;
      out.push_back(i);
      for (Int j = i * i; j <= kSieveLimit; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
  }();
  return primes;
}

using U64 = std::uint64_t;
using U128 = unsigned __int128;

U64 mul_mod(U64 a, U64 b, U64 m) { return static_cast<U64>(static_cast<U128>(a) * b % m); }

U64 pow_mod(U64 base, U64 exp, U64 m) {
  U64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

bool miller_rabin_witness(U64 n, U64 a, U64 d, int s) {
  U64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Inverse of a modulo m, for 0 <= a < m and gcd(a, m) = 1.
Int inverse_mod(Int a, Int m) {
  __int128 old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  __int128 inv = old_s % m;
  if (inv < 0) inv += m;
  return static_cast<Int>(inv);
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) overflow("addition");
  return reject_min(r, "addition");
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) overflow("subtraction");
  return reject_min(r, "subtraction");
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) overflow("multiplication");
  return reject_min(r, "multiplication");
}

Int checked_pow(Int base, unsigned exp) {
  Int result = 1;
  for (unsigned i = 0; i < exp; ++i) result = checked_mul(result, base);
  return result;
}

Int checked_abs(Int a) { return reject_min(a, "abs") < 0 ? -a : a; }

Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int gcd(Int a, Int b) { return std::gcd(checked_abs(a), checked_abs(b)); }

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  const auto un = static_cast<U64>(n);
  U64 d = un - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // This base set is a proven witness set for all n < 3.3e24.
  for (U64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (miller_rabin_witness(un, a, d, s)) return false;
  }
  return true;
}

std::vector<Int> primes_up_to(Int limit) {
  if (limit < 2) return {};
  const auto& sieve = sieve_primes();
  if (limit <= kSieveLimit) {
    auto end = std::upper_bound(sieve.begin(), sieve.end(), limit);
    return {sieve.begin(), end};
  }
  std::vector<Int> out = sieve;
  for (Int n = kSieveLimit + 1; n <= limit; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::pair<Int, int>> factorize(Int x) {
  if (x == 0) throw DomainError("factorize: zero has no factorization");
  Int n = checked_abs(x);
  std::vector<std::pair<Int, int>> out;
  auto strip = [&](Int p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  bool exhausted_sqrt = false;
  for (Int p : sieve_primes()) {
    if (p > n / p) {
      exhausted_sqrt = true;
      break;
    }
    strip(p);
  }
  if (n == 1) return out;
  if (exhausted_sqrt || is_prime(n)) {
    out.emplace_back(n, 1);
    return out;
  }
  // Composite cofactor whose factors all exceed the sieve: keep dividing.
  for (Int d = kSieveLimit + 1; d <= n / d; d += 2) strip(d);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_power_of_two(Int n) { return n > 0 && (n & (n - 1)) == 0; }

PrimeSet PrimeSet::finite(std::vector<Int> primes) {
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) {
    throw DomainError("PrimeSet: duplicate element");
  }
  for (Int p : primes) {
    if (!is_prime(p)) throw DomainError("PrimeSet: " + std::to_string(p) + " is not prime");
  }
  PrimeSet s;
  s.primes_ = std::move(primes);
  return s;
}

PrimeSet PrimeSet::all_primes() {
  PrimeSet s;
  s.all_ = true;
  return s;
}

std::size_t PrimeSet::size() const {
  if (all_) throw DomainError("PrimeSet: the set of all primes has no finite size");
  return primes_.size();
}

const std::vector<Int>& PrimeSet::primes() const {
  if (all_) throw DomainError("PrimeSet: the set of all primes cannot be listed");
  return primes_;
}

bool PrimeSet::contains(Int p) const {
  if (all_) return is_prime(p);
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

bool PrimeSet::subset_of(const PrimeSet& other) const {
  if (other.all_) return true;
  if (all_) return false;
  return std::includes(other.primes_.begin(), other.primes_.end(), primes_.begin(), primes_.end());
}

PrimeSet PrimeSet::unite(const PrimeSet& other) const {
  if (all_ || other.all_) return all_primes();
  PrimeSet s;
  std::set_union(primes_.begin(), primes_.end(), other.primes_.begin(), other.primes_.end(),
                 std::back_inserter(s.primes_));
  return s;
}

PrimeSet PrimeSet::intersect(const PrimeSet& other) const {
  if (all_) return other;
  if (other.all_) return *this;
  PrimeSet s;
  std::set_intersection(primes_.begin(), primes_.end(), other.primes_.begin(), other.primes_.end(),
                        std::back_inserter(s.primes_));
  return s;
}

PrimeSet PrimeSet::minus(const PrimeSet& other) const {
  if (other.all_) return {};
  if (all_) throw DomainError("PrimeSet: complement of a finite set in all primes is infinite");
  PrimeSet s;
  std::set_difference(primes_.begin(), primes_.end(), other.primes_.begin(), other.primes_.end(),
                      std::back_inserter(s.primes_));
  return s;
}

PrimeSet PrimeSet::without(Int p) const {
  PrimeSet s = *this;
  if (all_) throw DomainError("PrimeSet: complement of a finite set in all primes is infinite");
  std::erase(s.primes_, p);
  return s;
}

Int PrimeSet::max() const {
  if (all_ || primes_.empty()) throw DomainError("PrimeSet: no maximum");
  return primes_.back();
}

std::string PrimeSet::to_string() const {
  if (all_) return "all";
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) os << ',';
    os << primes_[i];
  }
  os << '}';
  return os.str();
}

PrimeSet prime_divisors(Int x) {
  if (x == 0) throw DomainError("prime_divisors: x must be nonzero");
  std::vector<Int> ps;
  for (auto [p, e] : factorize(x)) ps.push_back(p);
  return PrimeSet::finite(std::move(ps));
}

bool is_squarefree(Int x) {
  if (x == 0) throw DomainError("is_squarefree: x must be nonzero");
  for (auto [p, e] : factorize(x)) {
    if (e > 1) return false;
  }
  return true;
}

Int radical(Int x) {
  Int r = 1;
  for (auto [p, e] : factorize(x)) r *= p;
  return r;
}

std::optional<int> fermat_exponent(Int p) {
  if (!is_prime(p) || p < 3 || !is_power_of_two(p - 1)) return std::nullopt;
  return std::countr_zero(static_cast<std::uint64_t>(p - 1));
}

std::optional<int> mersenne_exponent(Int p) {
  if (!is_prime(p) || !is_power_of_two(p + 1)) return std::nullopt;
  return std::countr_zero(static_cast<std::uint64_t>(p + 1));
}

PrimeClass classify_prime(Int p) {
  if (!is_prime(p)) throw DomainError("classify_prime: " + std::to_string(p) + " is not prime");
  return {fermat_exponent(p).has_value(), mersenne_exponent(p).has_value()};
}

std::string to_string(const PrimeClass& c) {
  if (c.is_fermat && c.is_mersenne) return "fermat,mersenne";
  if (c.is_fermat) return "fermat";
  if (c.is_mersenne) return "mersenne";
  return "neither";
}

CongruenceSystem::CongruenceSystem(std::initializer_list<Congruence> items) {
  for (const auto& c : items) add(c.residue, c.modulus);
}

CongruenceSystem::CongruenceSystem(std::vector<Congruence> items) {
  for (const auto& c : items) add(c.residue, c.modulus);
}

void CongruenceSystem::add(Int residue, Int modulus) {
  if (modulus < 1) throw DomainError("CongruenceSystem: modulus must be >= 1");
  items_.push_back({residue, modulus});
}

bool CongruenceSystem::pairwise_coprime() const {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    for (std::size_t j = i + 1; j < items_.size(); ++j) {
      if (gcd(items_[i].modulus, items_[j].modulus) != 1) return false;
    }
  }
  return true;
}

bool CongruenceSystem::satisfied_by(Int x) const {
  return std::all_of(items_.begin(), items_.end(), [x](const Congruence& c) {
    return mod_floor(x, c.modulus) == mod_floor(c.residue, c.modulus);
  });
}

std::optional<Congruence> solve_congruences(const CongruenceSystem& sys) {
  Int r = 0;
  Int m = 1;
  for (const auto& c : sys.items()) {
    const Int a = mod_floor(c.residue, c.modulus);
    const Int g = gcd(m, c.modulus);
    if (mod_floor(a - r, g) != 0) return std::nullopt;
    const Int m_g = m / g;
    const Int n_g = c.modulus / g;
    const Int lcm = checked_mul(m_g, c.modulus);
    // r + m * t = a (mod n)  <=>  m_g * t = (a - r) / g (mod n_g)
    const Int rhs = mod_floor((a - r) / g, n_g);
    const Int t = static_cast<Int>(static_cast<__int128>(rhs) * inverse_mod(mod_floor(m_g, n_g), n_g) % n_g);
    const __int128 merged = (static_cast<__int128>(r) + static_cast<__int128>(m) * t) % lcm;
    r = static_cast<Int>(merged);
    m = lcm;
  }
  return Congruence{r, m};
}

Int crt_solve(const CongruenceSystem& sys) {
  if (!sys.pairwise_coprime()) throw DomainError("crt_solve: moduli are not pairwise coprime");
  const auto sol = solve_congruences(sys);
  return sol->residue == 0 ? sol->modulus : sol->residue;
}

CrtSolutions::CrtSolutions(const CongruenceSystem& sys)
    : first_(crt_solve(sys)), step_(solve_congruences(sys)->modulus), current_(first_) {}

Int CrtSolutions::next() {
  if (started_) current_ = checked_add(current_, step_);
  started_ = true;
  return current_;
}

Int dirichlet_prime(Int a, Int b) {
  if (a < 1 || b < 1) throw DomainError("dirichlet_prime: a and b must be positive");
  if (gcd(a, b) != 1) throw DomainError("dirichlet_prime: gcd(a, b) != 1");
  for (Int candidate = checked_add(a, b);; candidate = checked_add(candidate, b)) {
    if (is_prime(candidate)) return candidate;
  }
}

std::vector<PowerPair> consecutive_power_pairs(Int limit) {
  if (limit < 1) throw DomainError("consecutive_power_pairs: limit must be positive");
  std::set<Int> powers{1};
  for (Int m = 2; m <= limit / m; ++m) {
    for (Int v = m * m;; v *= m) {
      powers.insert(v);
      if (v > limit / m) break;
    }
  }
  std::vector<PowerPair> out;
  for (auto it = powers.begin(); it != powers.end(); ++it) {
    auto nx = std::next(it);
    if (nx != powers.end() && *nx - *it == 1) out.push_back({*it, *nx});
  }
  return out;
}

bool zsigmondy_is_exception(Int a, int n) {
  if (a < 2 || n < 2) throw DomainError("zsigmondy_is_exception: need a >= 2 and n >= 2");
  const Int top = checked_sub(checked_pow(a, static_cast<unsigned>(n)), 1);
  PrimeSet earlier;
  Int power = 1;
  for (int k = 1; k < n; ++k) {
    power *= a;
    earlier = earlier.unite(prime_divisors(power - 1));
  }
  return prime_divisors(top).subset_of(earlier);
}

bool zsigmondy_closed_form(Int a, int n) {
  return (n == 2 && is_power_of_two(a + 1)) || (n == 6 && a == 2);
}

}  // namespace kirch
