#include <gtest/gtest.h>

#include "kirch/filters.hpp"

using namespace kirch;

namespace {

// A_E straight from the definition: p is in A_E iff E fits inside {0, k} + pZ.
std::vector<Int> brute_a(const std::vector<Int>& e, Int p_max) {
  std::vector<Int> out;
  for (Int p = 2; p <= p_max; ++p) {
    if (!is_prime(p)) continue;
    bool ok = false;
    for (Int k = 0; k < p && !ok; ++k) {
      ok = true;
      for (Int x : e) ok = ok && (mod_floor(x, p) == 0 || mod_floor(x, p) == k);
    }
    if (ok) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Subset, Normalizes) {
  const FiniteSubset e{10, 5, 10};
  EXPECT_EQ(e.elements(), (std::vector<Int>{5, 10}));
  EXPECT_EQ(e.negated().elements(), (std::vector<Int>{-10, -5}));
  EXPECT_THROW(FiniteSubset({0, 1}), DomainError);
  EXPECT_THROW(FiniteSubset(std::vector<Int>{}), DomainError);
}

TEST(Descriptor, Examples) {
  const FilterDescriptor d = descriptor({5, 10});
  EXPECT_EQ(d.A.to_string(), "{2,5}");
  EXPECT_EQ(d.Pi.to_string(), "{5}");
  EXPECT_EQ(to_string(d.alpha), "{2:1,5:0}");
  EXPECT_TRUE(descriptor({7}).A.is_all());
  EXPECT_THROW(alpha_of({7}), DomainError);
}

TEST(Descriptor, AMatchesDefinition) {
  for (Int x = -25; x <= 25; ++x) {
    for (Int y = x + 1; y <= 25; ++y) {
      for (Int z = y + 1; z <= 25; z += 3) {
        if (!x || !y || !z) continue;
        EXPECT_EQ(a_of({x, y, z}).primes(), brute_a({x, y, z}, 60));
      }
      if (!x || !y) continue;
      EXPECT_EQ(a_of({x, y}).primes(), brute_a({x, y}, 60));
      EXPECT_EQ(a_of({x, y}), a_of_pair_formula(x, y));
    }
  }
}

TEST(Descriptor, AlphaIsCommonResidue) {
  const FiniteSubset e{1, 15, 30};
  for (const auto& [p, r] : alpha_of(e)) {
    if (p == 2) {
      EXPECT_EQ(r, 1);
      continue;
    }
    for (Int x : e.elements()) EXPECT_TRUE(mod_floor(x, p) == 0 || mod_floor(x, p) == r);
  }
}

TEST(Order, Examples) {
  EXPECT_TRUE(filter_leq({1, 15}, {1, 5, 10}));
  EXPECT_FALSE(filter_leq({5, 10}, {7, 14}));
  EXPECT_TRUE(filter_leq({3, 9}, {3, 9}));
  EXPECT_EQ(compare_filters({3}, {3, 5}).rule, OrderRule::Singleton);
  EXPECT_TRUE(filter_leq({3}, {3, 5}));
  EXPECT_FALSE(filter_leq({3}, {4, 5}));
  EXPECT_FALSE(filter_leq({3, 5}, {3}));
}

TEST(Order, OracleExamples) {
  const Window w(2000);
  const auto yes = filter_leq_oracle_detail({1, 15}, {1, 5, 10}, 60, w);
  EXPECT_TRUE(yes.holds);
  const auto no = filter_leq_oracle_detail({5, 10}, {7, 14}, 60, w);
  EXPECT_FALSE(no.holds);
  ASSERT_TRUE(no.counterexample.has_value());
  // The generator of E on L = {7} is 7Z; the witness escapes it.
  EXPECT_NE(mod_floor(*no.counterexample, 7), 0);
  // A_F = {2, 7} sits inside A_E = {2, 3, 5, 7} with matching residue 1 at 7.
  EXPECT_TRUE(filter_leq_oracle({1, 15}, {1, 7, 14}, 60, w));
  EXPECT_TRUE(filter_leq({1, 15}, {1, 7, 14}));
  EXPECT_FALSE(filter_leq({1, 7, 14}, {1, 15}));
  EXPECT_THROW(filter_leq_oracle({1, 15}, {1, 7, 14}, 5, w), DomainError);
}

TEST(Order, AgreesWithOracleOnSmallCatalog) {
  const Window w(2000);
  std::vector<FiniteSubset> cat;
  for (Int x = -9; x <= 9; ++x) {
    for (Int y = x + 1; y <= 9; ++y) {
      if (x && y) cat.push_back({x, y});
    }
  }
  for (const auto& e : cat) {
    for (const auto& f : cat) {
      const Int l = std::max<Int>(20, oracle_l_bound_floor(e, f));
      EXPECT_EQ(filter_leq(e, f), filter_leq_oracle(e, f, l, w)) << e.to_string() << " " << f.to_string();
    }
  }
}

TEST(Top, Examples) {
  EXPECT_TRUE(is_top({-4, 4}));
  EXPECT_TRUE(is_top({1, 2}));
  EXPECT_FALSE(is_top({5, 10}));
  EXPECT_TRUE(in_top_pair_list(-8, -16));
  EXPECT_FALSE(in_top_pair_list(2, 8));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify({1, 5, 10}), FilterClass::FPrime);
  EXPECT_EQ(classify({5, 10}), FilterClass::FDoublePrime);
  EXPECT_EQ(classify({1, 15, 30}), FilterClass::FDoublePrime);
  EXPECT_EQ(classify({1, 2}), FilterClass::Top);
  EXPECT_EQ(classify({1, 4}), FilterClass::FPrime);
  EXPECT_EQ(classify({1, 105, 210}), FilterClass::Other);
}

TEST(Upset, Sizes) {
  EXPECT_EQ(upset_in_fprime({5, 10}).size(), 4u);
  EXPECT_EQ(upset_in_fprime({7, 14}).size(), 6u);
  EXPECT_EQ(upset_in_fprime({1, 15, 30}).size(), 2u);
  EXPECT_THROW(upset_in_fprime({1, 5, 10}), DomainError);
}

TEST(Realize, Examples) {
  EXPECT_EQ(realize(PrimeSet::finite({2, 5}), {{2, 1}, {5, 2}}), (FiniteSubset{7, 5, 10}));
  EXPECT_EQ(realize(PrimeSet::finite({2}), {{2, 1}}), (FiniteSubset{1, 2}));
  EXPECT_EQ(realize(PrimeSet::finite({2, 3, 5}), {{2, 1}, {3, 1}, {5, 1}}), (FiniteSubset{1, 15, 30}));
  EXPECT_THROW(realize(PrimeSet::finite({2, 5}), {{2, 1}, {5, 5}}), DomainError);
  EXPECT_THROW(realize(PrimeSet::finite({3, 5}), {{3, 1}, {5, 1}}), DomainError);
  EXPECT_THROW(realize(PrimeSet::finite({2, 5}), {{2, 0}, {5, 1}}), DomainError);
}

TEST(Divides, MatchesRemainder) {
  for (Int p : {3, 5, 7, 11}) {
    for (Int x = -60; x <= 60; ++x) {
      if (x >= -2 && x <= 2) continue;
      EXPECT_EQ(divides_via_filters(x, p), x % p == 0) << x << " " << p;
    }
  }
  EXPECT_THROW(divides_via_filters(1, 3), DomainError);
  EXPECT_THROW(divides_via_filters(9, 2), DomainError);
}
