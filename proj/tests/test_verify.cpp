#include <gtest/gtest.h>

#include "kirch/verify.hpp"

using namespace kirch;

TEST(Suites, CheapSuitesPass) {
  for (const char* name : {"pair_formula", "top", "classify", "realize", "ppix", "gamma", "gamma2",
                           "zsigmondy", "mihailescu"}) {
    const SuiteReport r = run_suite(name, default_config(name));
    EXPECT_TRUE(r.passed()) << to_text(r);
    EXPECT_GT(r.cases, 0u) << name;
  }
}

TEST(Suites, SmallOrderCatalogPasses) {
  SuiteConfig cfg = default_config("order");
  cfg.max_element = 8;
  cfg.samples = 20;
  const SuiteReport r = run_suite("order", cfg);
  EXPECT_TRUE(r.passed()) << to_text(r);
}

TEST(Suites, UnknownNameIsRejected) {
  EXPECT_THROW(run_suite("nope", SuiteConfig{}), DomainError);
  EXPECT_THROW(default_config("nope"), DomainError);
}

TEST(Suites, OrderRejectsSmallLBound) {
  SuiteConfig cfg = default_config("order");
  cfg.max_element = 8;
  cfg.l_bound = 5;
  EXPECT_THROW(run_suite("order", cfg), DomainError);
}

TEST(FaultInjection, DroppedDifferenceIsCaught) {
  Implementations broken;
  broken.pair_formula = [](Int x, Int y) { return prime_divisors(x).unite(prime_divisors(y)); };
  const auto cx = counterexample_search("pair_formula", default_config("pair_formula"), broken);
  ASSERT_TRUE(cx.has_value());
  EXPECT_FALSE(run_suite("pair_formula", default_config("pair_formula"), broken).passed());
}

TEST(FaultInjection, MutatedOrderIsCaught) {
  Implementations broken;
  broken.order = [](const FilterDescriptor& e, const FilterDescriptor& f) {
    return f.A.subset_of(e.A);  // drops the Pi and alpha conditions
  };
  SuiteConfig cfg = default_config("order");
  cfg.max_element = 8;
  EXPECT_TRUE(counterexample_search("order", cfg, broken).has_value());
}

TEST(FaultInjection, OtherSuites) {
  Implementations broken;
  broken.top = [](const FiniteSubset& e) { return a_of(e).subset_of(PrimeSet::finite({2, 3})); };
  EXPECT_TRUE(counterexample_search("top", default_config("top"), broken).has_value());
  broken.zsigmondy = [](Int a, int n) { return n == 2 && a % 2 == 1; };
  EXPECT_TRUE(counterexample_search("zsigmondy", default_config("zsigmondy"), broken).has_value());
  broken.closure_member = [](Int z, const Progression& p) { return p.contains(z); };
  SuiteConfig cfg = default_config("closure");
  cfg.max_element = 4;
  cfg.window = 50;
  EXPECT_TRUE(counterexample_search("closure", cfg, broken).has_value());
}

TEST(Search, NoneOnCorrectCode) {
  SuiteConfig cfg = default_config("closure");
  cfg.max_element = 6;
  cfg.window = 200;
  EXPECT_FALSE(counterexample_search("closure", cfg).has_value());
  EXPECT_FALSE(counterexample_search("top", default_config("top")).has_value());
}

TEST(Report, DeterministicJson) {
  SuiteConfig cfg = default_config("gamma");
  const std::string a = to_json(run_suite("gamma", cfg)).dump();
  const std::string b = to_json(run_suite("gamma", cfg)).dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("millis"), std::string::npos);
  cfg.timing = true;
  EXPECT_NE(to_json(run_suite("gamma", cfg)).dump().find("millis"), std::string::npos);
}

TEST(Report, GammaNotesPrintedDiscrepancies) {
  const SuiteReport r = run_suite("gamma", default_config("gamma"));
  ASSERT_FALSE(r.notes.empty());
  EXPECT_EQ(r.notes.front().rfind("p=3:", 0), 0u);
}
