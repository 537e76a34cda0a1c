#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "srcf/cf.hpp"
#include "srcf/constructors.hpp"
#include "srcf/error.hpp"

using namespace srcf;

namespace {

CFSpec stored(long head, std::vector<std::pair<int, long>> terms) {
  std::vector<PartialQuotient> out;
  for (auto [a, b] : terms) out.push_back({a, BigInt(b)});
  return CFSpec(BigInt(head), out);
}

}  // namespace

TEST(Validate, RegularPrefixIsRcfWithoutViolations) {
  auto r = validate(stored(0, {{1, 1}, {1, 2}, {1, 3}}), 3);
  EXPECT_TRUE(r.has(CFClass::RCF));
  EXPECT_TRUE(r.has(CFClass::GENERAL));
  EXPECT_FALSE(r.has(CFClass::NCF));
  EXPECT_TRUE(r.violations.empty());
}

TEST(Validate, LehnerPatternIsLcf) {
  auto spec = stored(1, {{1, 2}, {-1, 1}, {1, 2}, {-1, 1}, {1, 2}, {-1, 1}, {1, 2}});
  auto r = validate(spec, 6);
  EXPECT_TRUE(r.has(CFClass::LCF));
  EXPECT_FALSE(r.has(CFClass::RCF));
}

TEST(Validate, OmegaTailHasNoCond1WitnessAndIsFlagged) {
  auto r = validate(omega(), 50);
  EXPECT_EQ(r.cond1_witness_count, 0u);
  EXPECT_TRUE(r.cond1_suspect);
  EXPECT_EQ(r.trailing_negative_large_b, 0u);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Validate, RejectsZeroSumOfConsecutiveTerms) {
  auto spec = stored(0, {{1, 1}, {-1, 3}});
  try {
    validate(spec, 2);
    FAIL() << "expected MalformedSpec";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedSpec);
  }
  auto r = inspect(spec, 2);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].index, 1u);
}

TEST(Validate, ReportsBadSignsAndNonPositiveB) {
  auto r = inspect(stored(0, {{2, 3}, {1, 0}, {1, 4}}), 3);
  EXPECT_GE(r.violations.size(), 2u);
  EXPECT_THROW(validate(stored(0, {{2, 3}}), 1), Error);
}

TEST(Validate, IsIdempotentAndDepthMonotone) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto [head, terms] = oracle::random_srcf(rng, 30);
    // Break one pair on purpose half of the time.
    if (trial % 2 == 0) {
      terms[10] = {1, 1};
      terms[11] = {-1, 4};
    }
    CFSpec spec(head, terms);
    bool seen = false;
    for (std::size_t d = 1; d <= 30; ++d) {
      auto r1 = inspect(spec, d);
      auto r2 = inspect(spec, d);
      EXPECT_EQ(r1.violations.size(), r2.violations.size());
      EXPECT_EQ(r1.classes, r2.classes);
      if (seen) EXPECT_FALSE(r1.violations.empty()) << "violation vanished at depth " << d;
      seen = seen || !r1.violations.empty();
    }
    EXPECT_EQ(seen, trial % 2 == 0);
  }
}

TEST(Validate, NicfMembershipImpliesStrictPairSums) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto [head, terms] = oracle::random_srcf(rng, 12, 4);
    CFSpec spec(head, terms);
    auto r = inspect(spec, 11);
    if (!r.has(CFClass::NICF)) continue;
    for (std::size_t n = 1; n <= 11; ++n) EXPECT_GE(terms[n - 1].b + terms[n].a, 2);
  }
}

TEST(Families, ConstantNcfHasMinusOnesAndThrees) {
  auto spec = family_generator("constant_ncf", {{"b", "3"}});
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(spec.term(n), (PartialQuotient{-1, 3}));
  EXPECT_FALSE(spec.length());
  ASSERT_TRUE(spec.provenance());
  EXPECT_EQ(spec.provenance()->family, "constant_ncf");
}

TEST(Families, BesselRatioAndOmegaRules) {
  auto bessel = family_generator("bessel_ratio", {});
  EXPECT_EQ(bessel.head(), 1);
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(bessel.term(n), (PartialQuotient{1, BigInt(n + 1)}));

  auto w = family_generator("omega", {});
  EXPECT_EQ(w.head(), 0);
  EXPECT_EQ(w.term(1), (PartialQuotient{1, 2}));
  for (std::size_t n = 2; n <= 10; ++n) EXPECT_EQ(w.term(n), (PartialQuotient{-1, 2}));
}

TEST(Families, RulesArePureAndPrefixesRevalidateAlike) {
  for (const auto& name : {"bessel_ratio", "omega", "e_recip", "lehner_sqrt2"}) {
    auto spec = family_generator(name, {});
    EXPECT_EQ(spec.terms(25), spec.terms(25)) << name;
    auto whole = inspect(spec, 20);
    auto prefix = inspect(spec.prefix(21), 20);
    EXPECT_EQ(whole.classes, prefix.classes) << name;
  }
}

TEST(Families, UnknownNamesAndParamsAreRejected) {
  try {
    family_generator("no_such_family", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownFamily);
  }
  try {
    family_generator("constant_ncf", {{"b", "3"}, {"colour", "red"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadParams);
  }
  EXPECT_THROW(family_generator("constant_ncf", {}), Error);
}

TEST(Families, RegistryListsEveryName) {
  auto names = registered_families();
  for (const auto& want : {"constant_ncf", "bessel_ratio", "omega", "e_recip", "adams_davison", "example4",
                           "ncf_exponent", "lcf_exponent", "lehner_sqrt2", "periodic_rcf"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
}

TEST(CFSpec, StoredPrefixBehaviour) {
  auto spec = stored(3, {{1, 1}, {1, 2}});
  EXPECT_EQ(spec.length(), 2u);
  EXPECT_TRUE(spec.has_term(2));
  EXPECT_FALSE(spec.has_term(3));
  EXPECT_FALSE(spec.has_term(0));
  EXPECT_THROW(spec.term(3), Error);
  EXPECT_EQ(spec.prefix(1).length(), 1u);
  EXPECT_EQ(spec.prefix(10).length(), 2u);
}
