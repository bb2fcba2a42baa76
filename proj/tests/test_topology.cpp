#include <gtest/gtest.h>

#include "kirch/topology.hpp"

using namespace kirch;

namespace {

// z is in the closure iff every basic neighbourhood z + dZ (d squarefree,
// coprime to z) meets a + bZ. Checked here by walking the progression.
bool brute_in_closure(Int z, Int a, Int b, Int d_max) {
  for (Int d = 1; d <= d_max; ++d) {
    if (!is_squarefree(d) || gcd(d, z) != 1) continue;
    bool meets = false;
    for (Int k = 0; k < d && !meets; ++k) {
      const Int y = a + k * b;
      meets = mod_floor(y - z, d) == 0;
    }
    if (!meets) return false;
  }
  return true;
}

}  // namespace

TEST(Progression, Normalizes) {
  EXPECT_EQ(Progression(7, 5).to_string(), "2+5Z");
  EXPECT_EQ(Progression(4, 5).to_string(), "-1+5Z");
  EXPECT_EQ(Progression(10, 5).to_string(), "5+5Z");
  EXPECT_TRUE(Progression(2, 3).contains(-1));
  EXPECT_FALSE(Progression(3, 3).contains(0));
  EXPECT_THROW(Progression(0, 3), DomainError);
  EXPECT_THROW(Progression(1, 0), DomainError);
}

TEST(OpenBasic, Examples) {
  EXPECT_TRUE(is_kirch_open_basic(1, 6));
  EXPECT_FALSE(is_kirch_open_basic(3, 6));
  EXPECT_FALSE(is_kirch_open_basic(5, 4));
}

TEST(Closure, Examples) {
  const Window w(2000);
  EXPECT_EQ(closure(Progression(1, 2)).materialize(w), w.members());
  const ClosureSet c = closure(Progression(2, 3));
  for (Int z : w.members()) EXPECT_EQ(c.contains(z), mod_floor(z, 3) != 1) << z;
  const ClosureSet c15 = closure(Progression(1, 15));
  for (Int z : w.members()) {
    const bool want = mod_floor(z, 3) != 2 && (mod_floor(z, 5) == 0 || mod_floor(z, 5) == 1);
    EXPECT_EQ(c15.contains(z), want) << z;
  }
}

TEST(Closure, OracleExamples) {
  EXPECT_FALSE(closure_oracle_member(4, Progression(2, 3), 30));
  EXPECT_TRUE(closure_oracle_member(5, Progression(2, 3), 30));
  for (Int z : {1, -7, 12}) EXPECT_TRUE(closure_oracle_member(z, Progression(z, 10), 30));
  EXPECT_THROW(closure_oracle_member(1, Progression(1, 30), 29), DomainError);
}

TEST(Closure, FormulaMatchesBruteForce) {
  for (Int a = -12; a <= 12; ++a) {
    if (a == 0) continue;
    for (Int b = 1; b <= 12; ++b) {
      const ClosureSet c = closure(Progression(a, b));
      for (Int z = -60; z <= 60; ++z) {
        if (z == 0) continue;
        EXPECT_EQ(c.contains(z), brute_in_closure(z, a, b, 2 * b)) << a << "+" << b << "Z at " << z;
        EXPECT_EQ(c.contains(z), closure_oracle_member(z, Progression(a, b), b));
      }
    }
  }
}

TEST(Superconnect, Examples) {
  std::vector<Int> want;
  for (Int k = -10; k <= 10; ++k) {
    if (k) want.push_back(15 * k);
  }
  EXPECT_EQ(superconnect_witness(15, Window(150)), want);
  EXPECT_EQ(superconnect_witness(3, Window(9)), (std::vector<Int>{-9, -6, -3, 3, 6, 9}));
  EXPECT_EQ(superconnect_witness(105, Window(210)), (std::vector<Int>{-210, -105, 105, 210}));
  EXPECT_THROW(superconnect_witness(9, Window(100)), DomainError);
  EXPECT_THROW(superconnect_witness(15, Window(10)), DomainError);
}

TEST(CommonPoint, FindsSharedElement) {
  const std::vector<ClosureSet> sets = {closure(Progression(1, 15)), closure(Progression(2, 21))};
  const auto z = common_closure_point(sets);
  ASSERT_TRUE(z.has_value());
  for (const auto& s : sets) EXPECT_TRUE(s.contains(*z));
}
