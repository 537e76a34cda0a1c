#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "srcf/constructors.hpp"
#include "srcf/convergents.hpp"
#include "srcf/error.hpp"
#include "srcf/transforms.hpp"

using namespace srcf;

namespace {

CFSpec ncf(long head, std::vector<long> b) {
  std::vector<PartialQuotient> t;
  for (long v : b) t.push_back({-1, BigInt(v)});
  return CFSpec(BigInt(head), t);
}

CFSpec rcf(long head, std::vector<long> c) {
  std::vector<PartialQuotient> t;
  for (long v : c) t.push_back({1, BigInt(v)});
  return CFSpec(BigInt(head), t);
}

std::vector<BigInt> bs(const CFSpec& s) {
  std::vector<BigInt> out;
  for (const auto& t : s.terms(s.length().value_or(0))) out.push_back(t.b);
  return out;
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::ParseError;
}

// Regular expansion of a rational by Euclid, canonical (last term >= 2
// unless it is the only term).
std::pair<BigInt, std::vector<BigInt>> euclid(const Rational& x) {
  BigInt num = x.get_num(), den = x.get_den();
  std::vector<BigInt> out;
  BigInt head = floor_div(num, den);
  num -= head * den;
  while (num != 0) {
    std::swap(num, den);
    BigInt t = num / den;
    out.push_back(t);
    num -= t * den;
  }
  return {head, out};
}

void expect_alignment(const CFSpec& src, const TransformResult& r) {
  for (const auto& p : r.alignment) {
    EXPECT_TRUE(alignment_holds(src, r.output, p, r.relation))
        << "alignment (" << p.source_index << ", " << p.target_index << ")";
  }
}

}  // namespace

TEST(NcfToRcf, MixedThreesAndTwos) {
  auto src = ncf(2, {3, 2, 3, 2, 3});
  auto r = ncf_to_rcf(src, 5);
  EXPECT_EQ(r.output.head(), 1);
  EXPECT_EQ(bs(r.output), ints({1, 1, 2, 1, 2, 1}));
  ASSERT_EQ(r.alignment.size(), 4u);
  EXPECT_EQ(r.alignment.back().source_index, 5u);
  EXPECT_EQ(r.alignment.back().target_index, 6u);
  expect_alignment(src, r);
  // [b0; b1, ..., b5]^- = [c0; c1, ..., c6, 1]
  auto cs = bs(r.output);
  cs.push_back(1);
  EXPECT_EQ(oracle::ncf_value(2, ints({3, 2, 3, 2, 3})), oracle::rcf_value(1, cs));
}

TEST(NcfToRcf, AllThreesGivesAllOnes) {
  auto r = ncf_to_rcf(constant_ncf(3, 7), 20);
  EXPECT_EQ(r.output.head(), 6);
  for (const auto& c : bs(r.output)) EXPECT_EQ(c, 1);
  EXPECT_EQ(r.output.length(), 40u);
}

TEST(NcfToRcf, RejectsInputsWithoutLargeTermOrNotNcf) {
  EXPECT_EQ(kind_of([] { ncf_to_rcf(constant_ncf(2), 30); }), ErrorKind::NoLargeTerm);
  EXPECT_EQ(kind_of([] { ncf_to_rcf(omega(), 30); }), ErrorKind::NotNCF);
  EXPECT_EQ(kind_of([] { ncf_to_rcf(bessel_ratio(), 5); }), ErrorKind::NotNCF);
}

TEST(NcfToRcf, OutputTermsArePositiveOnRandomPrefixes) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto b = oracle::random_ncf_b(rng, 30, 5);
    std::vector<long> v;
    for (const auto& x : b) v.push_back(x.get_si());
    auto src = ncf(0, v);
    auto r = ncf_to_rcf(src, 30);
    for (const auto& c : bs(r.output)) ASSERT_GE(c, 1);
    expect_alignment(src, r);
  }
}

TEST(RcfToNcf, WorkedPrefix) {
  auto r = rcf_to_ncf(rcf(0, {1, 2, 3, 4}), 4);
  EXPECT_EQ(r.output.head(), 1);
  EXPECT_EQ(bs(r.output), ints({4, 2, 2, 6}));
  for (const auto& t : r.output.terms(4)) EXPECT_EQ(t.a, -1);
  expect_alignment(rcf(0, {1, 2, 3, 4}), r);
}

TEST(RcfToNcf, GoldenCollapsesToThrees) {
  auto r = rcf_to_ncf(constant_rcf(1), 40);
  EXPECT_EQ(r.output.head(), 1);
  for (const auto& b : bs(r.output)) EXPECT_EQ(b, 3);
  EXPECT_EQ(r.output.length(), 20u);
}

TEST(RcfToNcf, HeadShiftsByOne) {
  auto r = rcf_to_ncf(rcf(5, {2, 3}), 2);
  EXPECT_EQ(r.output.head(), 6);
  EXPECT_EQ(kind_of([] { rcf_to_ncf(constant_ncf(3), 4); }), ErrorKind::NotRCF);
}

TEST(RoundTrip, RcfThroughNcfAndBack) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> c_dist(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long> c(2 * (1 + trial % 15));
    for (auto& x : c) x = c_dist(rng);
    auto src = rcf(trial % 5 - 2, c);
    auto to_ncf = rcf_to_ncf(src, c.size());
    auto back = ncf_to_rcf(to_ncf.output, *to_ncf.output.length());
    ASSERT_EQ(back.output.head(), src.head());
    ASSERT_EQ(bs(back.output), bs(src)) << "trial " << trial;
  }
}

TEST(LcfDecompose, LehnerSqrtTwoHasEmptyRuns) {
  auto runs = lcf_decompose(lehner_sqrt2(), 20);
  EXPECT_EQ(runs.head_relation, Relation::OnePlus);
  ASSERT_EQ(runs.m.size(), 10u);
  for (auto m : runs.m) EXPECT_EQ(m, 0u);
  for (auto l : runs.l) EXPECT_EQ(l, 0u);
}

TEST(LcfDecompose, AllOnesIsOneOpenRun) {
  std::vector<PartialQuotient> t(12, PartialQuotient{1, 1});
  auto runs = lcf_decompose(CFSpec(1, t), 12);
  EXPECT_TRUE(runs.m.empty());
  ASSERT_EQ(runs.l.size(), 1u);
  EXPECT_EQ(runs.l[0], 12u);
}

TEST(LcfDecompose, RecoversPrescribedRuns) {
  std::vector<std::size_t> l{0, 0, 0, 0}, m{1, 4, 2, 7};
  auto spec = lehner_from_runs(l, m);
  auto runs = lcf_decompose(spec, *spec.length());
  EXPECT_EQ(runs.m, m);
  for (std::size_t k = 0; k < m.size(); ++k) EXPECT_EQ(runs.l[k], 0u);

  std::vector<std::size_t> l2{2, 0, 3}, m2{0, 1, 5};
  auto spec2 = lehner_from_runs(l2, m2);
  auto runs2 = lcf_decompose(spec2, *spec2.length());
  EXPECT_EQ(runs2.m, m2);
  for (std::size_t k = 0; k < l2.size(); ++k) EXPECT_EQ(runs2.l[k], l2[k]);
  EXPECT_EQ(kind_of([] { lcf_decompose(bessel_ratio(), 10); }), ErrorKind::NotLCF);
}

TEST(LcfToRcf, LehnerSqrtTwo) {
  auto spec = lehner_sqrt2();
  auto r = lcf_to_rcf(spec, 40);
  EXPECT_EQ(r.relation, Relation::OnePlus);
  EXPECT_EQ(r.output.head(), 0);
  auto beta = bs(r.output);
  ASSERT_GE(beta.size(), 10u);
  EXPECT_EQ(beta[0], 1);
  for (std::size_t i = 1; i < beta.size(); ++i) EXPECT_EQ(beta[i], 2);
  expect_alignment(spec, r);

  // alpha = 1 + beta = [1; 1, 2, 2, ...], and its value is 1 + sqrt(2)/2.
  auto alpha = apply_relation(r.output, r.relation);
  EXPECT_EQ(alpha.head(), 1);
  auto e = enclose(alpha, *alpha.length() - 2);
  auto ref = oracle::lehner_interval(20);
  EXPECT_LE(e.lo, ref.hi);
  EXPECT_GE(e.hi, ref.lo);
}

TEST(LcfToRcf, PrescribedRunsGiveShiftedRcf) {
  std::vector<std::size_t> l{0, 0, 0, 0, 0}, m{1, 4, 2, 7, 3};
  auto spec = lehner_from_runs(l, m);
  auto r = lcf_to_rcf(spec, *spec.length());
  auto alpha = apply_relation(r.output, r.relation);
  EXPECT_EQ(alpha.head(), 1);
  auto c = bs(alpha);
  ASSERT_GE(c.size(), 4u);
  EXPECT_EQ(c[0], 1);
  for (std::size_t k = 1; k < c.size(); ++k) EXPECT_EQ(c[k], BigInt(m[k - 1] + 2));
  expect_alignment(spec, r);
}

TEST(LcfToRcf, TwoMinusHeadGivesSqrtTwo) {
  // 2 - 1/(1 + 1/(2 - 1/(1 + ...))) = sqrt(2)
  std::vector<PartialQuotient> t;
  for (int i = 0; i < 30; ++i) {
    t.push_back({-1, 1});
    t.push_back({1, 2});
  }
  CFSpec spec(2, t);
  auto r = lcf_to_rcf(spec, 60);
  EXPECT_EQ(r.relation, Relation::TwoMinus);
  expect_alignment(spec, r);
  auto alpha = apply_relation(r.output, r.relation);
  auto e = enclose(alpha, *alpha.length() - 2);
  EXPECT_LT(e.lo * e.lo, 2 + Rational(1, 1000000000));
  EXPECT_GT(e.hi * e.hi, 2 - Rational(1, 1000000000));
}

TEST(LcfToRcf, PrefixWithoutCompleteBlock) {
  CFSpec spec(1, {{1, 2}, {-1, 2}, {-1, 2}});
  EXPECT_EQ(kind_of([&] { lcf_to_rcf(spec, 3); }), ErrorKind::IncompleteBlock);
}

TEST(ApplyRelation, MatchesExactArithmetic) {
  for (auto beta : {rcf(0, {1, 3, 4}), rcf(0, {3, 4}), rcf(1, {1}), rcf(0, {5}), rcf(2, {2, 2, 9})}) {
    Rational b = finite_value(beta.head(), beta.terms(*beta.length()));
    auto two = apply_relation(beta, Relation::TwoMinus);
    EXPECT_EQ(finite_value(two.head(), two.terms(*two.length())), 2 - b);
    for (const auto& t : two.terms(*two.length())) EXPECT_GE(t.b, 1);
    auto one = apply_relation(beta, Relation::OnePlus);
    EXPECT_EQ(finite_value(one.head(), one.terms(*one.length())), 1 + b);
  }
}

TEST(SrcfToRcf, ElementaryRewrites) {
  // x - 1/y = (x - 1) + 1/(1 + 1/(y - 1)) and x + 1/(0 + 1/y) = x + y
  EXPECT_EQ(finite_value(3, {{-1, 2}}), Rational(5, 2));
  EXPECT_EQ(finite_value(2, {{1, 1}, {1, 1}}), Rational(5, 2));
  EXPECT_EQ(finite_value(4, {{1, 0}, {1, 7}}), 11);
}

TEST(SrcfToRcf, StableTermsArePrefixOfEveryContinuation) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    // Stability is a statement about every continuation, so compare with the
    // expansion of a longer admissible extension of the same prefix.
    auto [head, longer] = oracle::random_srcf(rng, 80, 5);
    std::vector<PartialQuotient> terms(longer.begin(), longer.begin() + 40);
    CFSpec spec(head, terms);
    auto [eh, ec] = euclid(oracle::cf_value(head, longer));
    std::vector<BigInt> prev;
    for (std::size_t d : {10u, 20u, 40u}) {
      TransformResult r;
      try {
        r = srcf_to_rcf(spec, d);
      } catch (const Error& e) {
        ASSERT_EQ(e.kind(), ErrorKind::TruncationEmpty);
        continue;
      }
      ASSERT_EQ(r.output.head(), eh) << "trial " << trial;
      auto out = bs(r.output);
      ASSERT_LE(out.size(), ec.size());
      for (std::size_t i = 0; i < out.size(); ++i) ASSERT_EQ(out[i], ec[i]) << "trial " << trial << " i=" << i;
      // Deeper input only extends the stable output.
      ASSERT_GE(out.size(), prev.size());
      for (std::size_t i = 0; i < prev.size(); ++i) ASSERT_EQ(out[i], prev[i]);
      prev = out;
      expect_alignment(spec, r);
    }
  }
}

TEST(SrcfToRcf, RcfInputIsUnchangedUpToTheLastTerm) {
  auto src = rcf(3, {1, 4, 1, 5, 9, 2, 6});
  auto r = srcf_to_rcf(src, 7);
  EXPECT_EQ(r.output.head(), 3);
  EXPECT_EQ(bs(r.output), ints({1, 4, 1, 5, 9, 2}));
  // The last source term still enters through the closing terms of the
  // final alignment point.
  EXPECT_EQ(r.withheld, 0u);
  EXPECT_EQ(r.alignment.back().target_closing.back().b, 6);
}

TEST(SrcfToRcf, AgreesWithNcfTransform) {
  auto src = ncf(2, {3, 2, 3, 2, 3});
  auto general = bs(srcf_to_rcf(src, 5).output);
  auto special = bs(ncf_to_rcf(src, 5).output);
  const std::size_t n = std::min(general.size(), special.size());
  ASSERT_GE(n, 4u);
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(general[i], special[i]);

  auto e_rcf = bs(srcf_to_rcf(e_recip(1), 30).output);
  auto want = ints({1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8});
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(e_rcf[i], want[i]);
}

TEST(SrcfToRcf, TooShortToEmitAnything) {
  // 3 + 1/(1 + x): the head could still absorb the trailing 1.
  EXPECT_EQ(kind_of([] { srcf_to_rcf(CFSpec(3, {{1, 1}}), 1); }), ErrorKind::TruncationEmpty);
  // 3 - 1/2 = [2; 1, 1]: only the head is settled.
  auto r = srcf_to_rcf(CFSpec(3, {{-1, 2}}), 1);
  EXPECT_EQ(r.output.head(), 2);
  EXPECT_EQ(r.output.length(), 0u);
}

TEST(CertifyEquivalence, TransformOutputMatchesSource) {
  auto src = constant_ncf(3);
  auto r = ncf_to_rcf(src, 80);
  const Rational tolerance(BigInt(1), BigInt(1) << 100);  // below 10^-30
  EXPECT_TRUE(certify_equivalence(src, r.output, r.alignment, tolerance));
}

TEST(CertifyEquivalence, UnrelatedSpecsAndZeroTolerance) {
  EXPECT_FALSE(certify_equivalence(constant_ncf(3), bessel_ratio(), {}, Rational(1, 1000), Relation::Identity, 30));
  auto src = constant_ncf(3);
  auto r = ncf_to_rcf(src, 40);
  EXPECT_FALSE(certify_equivalence(src, r.output, r.alignment, Rational(0)));
}
