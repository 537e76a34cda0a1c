#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "srcf/constructors.hpp"
#include "srcf/convergents.hpp"
#include "srcf/error.hpp"

using namespace srcf;

namespace {

std::vector<BigInt> q_column(const std::vector<Convergent>& c) {
  std::vector<BigInt> out;
  for (const auto& x : c) out.push_back(x.q);
  return out;
}

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Convergents, AllOnesGivesFibonacci) {
  auto c = convergents(constant_rcf(1), 4);
  EXPECT_EQ(q_column(c), ints({1, 1, 2, 3, 5}));
  std::vector<BigInt> p;
  for (const auto& x : c) p.push_back(x.p);
  EXPECT_EQ(p, ints({0, 1, 1, 2, 3}));

  auto long_run = convergents(constant_rcf(1), 300);
  for (unsigned n = 0; n <= 300; ++n) EXPECT_EQ(long_run[n].q, oracle::fibonacci(n + 1));
}

TEST(Convergents, ConstantNcfThree) {
  EXPECT_EQ(q_column(convergents(constant_ncf(3), 4)), ints({1, 3, 8, 21, 55}));
}

TEST(Convergents, OmegaConvergentsAreNOverNPlusOne) {
  auto c = convergents(omega(), 5);
  for (std::size_t n = 0; n <= 5; ++n) {
    EXPECT_EQ(c[n].p, BigInt(n));
    EXPECT_EQ(c[n].q, BigInt(n + 1));
  }
}

TEST(Convergents, DepthZeroIsTheHead) {
  auto c = convergents(CFSpec(BigInt(-7), {}), 0);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].p, -7);
  EXPECT_EQ(c[0].q, 1);
}

TEST(Convergents, MalformedPrefixIsRejected) {
  CFSpec bad(0, {{1, 1}, {-1, 3}});
  try {
    convergents(bad, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedSpec);
  }
  // The table itself trips on q_2 = 3*1 - 1*... only through the invariant.
  ConvergentTable table(CFSpec(0, {{1, 1}, {-1, 1}}));
  EXPECT_THROW(table.extend_to(2), Error);
}

TEST(Convergents, TableMatchesBackwardEvaluation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto [head, terms] = oracle::random_srcf(rng, 40);
    CFSpec spec(head, terms);
    auto c = convergents(spec, 40);
    for (std::size_t n = 0; n <= 40; ++n) {
      std::vector<PartialQuotient> prefix(terms.begin(), terms.begin() + static_cast<long>(n));
      Rational pq(c[n].p, c[n].q);
      pq.canonicalize();
      ASSERT_EQ(pq, oracle::cf_value(head, prefix));
      ASSERT_EQ(pq, finite_value(head, prefix));
    }
  }
}

TEST(Convergents, IndependentTablesAgreeAcrossThreads) {
  auto spec = bessel_ratio();
  std::vector<BigInt> results(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      ConvergentTable table(spec);
      results[static_cast<std::size_t>(t)] = table.q(200);
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& r : results) EXPECT_EQ(r, results[0]);
}

TEST(TailBound, SignFollowsNextTerm) {
  auto pos = tail_bound(bessel_ratio(), 5);
  EXPECT_EQ(pos.lo, 0);
  EXPECT_EQ(pos.hi, 1);
  EXPECT_TRUE(pos.open_lo);
  EXPECT_FALSE(pos.open_hi);

  auto neg = tail_bound(constant_ncf(3), 5);
  EXPECT_EQ(neg.lo, -1);
  EXPECT_EQ(neg.hi, 0);
  EXPECT_TRUE(neg.open_hi);

  try {
    tail_bound(CFSpec(0, {{1, 2}, {1, 3}}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
  }
}

TEST(Enclose, OmegaIntervalEndsAtOne) {
  for (std::size_t n = 0; n <= 30; ++n) {
    auto e = enclose(omega(), n);
    EXPECT_EQ(e.hi, 1);
    EXPECT_EQ(e.lo, Rational(BigInt(n + 1), BigInt(n + 2)));
    EXPECT_TRUE(e.contains(1));
  }
}

TEST(Enclose, KnownConstants) {
  auto lehner = enclose(lehner_sqrt2(), 30);
  auto ref = oracle::lehner_interval(30);
  EXPECT_LE(lehner.lo, ref.hi);
  EXPECT_GE(lehner.hi, ref.lo);
  EXPECT_LT(lehner.width(), Rational(1, 1000000));

  auto bessel = enclose(bessel_ratio(), 10);
  auto bref = oracle::bessel_interval(40);
  EXPECT_LE(bessel.lo, bref.lo);
  EXPECT_GE(bessel.hi, bref.hi);
  EXPECT_LT(bessel.width(), Rational(1, 1000000));
  // I_0(2)/I_1(2) = 1.4331274...
  EXPECT_GT(bessel.lo, Rational(143312, 100000));
  EXPECT_LT(bessel.hi, Rational(143313, 100000));
}

TEST(Enclose, IntervalsNestAndShrink) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto [head, terms] = oracle::random_srcf(rng, 60);
    CFSpec spec(head, terms);
    auto prev = enclose(spec, 1);
    for (std::size_t d = 2; d <= 58; ++d) {
      auto e = enclose(spec, d);
      ASSERT_GE(e.lo, prev.lo);
      ASSERT_LE(e.hi, prev.hi);
      prev = e;
    }
    // The whole prefix read as a finite fraction is one admissible value.
    EXPECT_TRUE(prev.contains(oracle::cf_value(head, terms)));
  }
}

TEST(Enclose, NcfConvergentsApproachFromAbove) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto b = oracle::random_ncf_b(rng, 40);
    std::vector<PartialQuotient> terms;
    for (const auto& v : b) terms.push_back({-1, v});
    CFSpec spec(2, terms);
    auto e = enclose(spec, 38);
    auto c = convergents(spec, 38);
    for (const auto& x : c) {
      Rational pq(x.p, x.q);
      pq.canonicalize();
      EXPECT_GE(pq, e.hi);
    }
  }
}

TEST(Enclose, NeedsTwoTermsPastTheDepth) {
  CFSpec spec(0, {{1, 2}, {1, 3}, {1, 4}});
  EXPECT_NO_THROW(enclose(spec, 1));
  try {
    enclose(spec, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
  }
}

TEST(Enclose, DegenerateTailFailsInsteadOfLooping) {
  // b_n = 1 followed by a_{n+1} = -1 is inadmissible; without the check the
  // denominator q_{d+1} + x q_d reaches 0 at x = -1 at every depth.
  auto spec = CFSpec(BigInt(0), [](std::size_t) { return PartialQuotient{-1, 1}; }, std::nullopt, {"degenerate", {}});
  try {
    detail::enclose_unchecked(spec, 1, 3);
    FAIL() << "expected EnclosureFailed";
  } catch (const Error& e) {
    EXPECT_TRUE(e.kind() == ErrorKind::EnclosureFailed || e.kind() == ErrorKind::InvariantBreach)
        << e.what();
  }
}

TEST(ApproxError, BesselBoundsAtThree) {
  auto spec = bessel_ratio();
  auto err = approx_error(spec, 3, 20);
  auto c = convergents(spec, 4);
  EXPECT_GT(err.err_lo, 0);
  EXPECT_LE(err.err_lo, err.err_hi);
  Rational cap(1);
  cap /= c[3].q * c[4].q;
  EXPECT_LE(err.err_hi, cap);
  EXPECT_EQ(err.xi_lo, c[4].q);
}

TEST(ApproxError, ConstantNcfXiRange) {
  auto err = approx_error(constant_ncf(3), 3, 20);
  EXPECT_EQ(err.xi_lo, 34);
  EXPECT_EQ(err.xi_hi, 55);
}

TEST(ApproxError, EnclosesTheTrueDistance) {
  auto spec = e_recip(1);
  auto ref = oracle::e_interval(60);
  auto c = convergents(spec, 20);
  for (std::size_t n = 1; n <= 20; ++n) {
    auto err = approx_error(spec, n, 45);
    Rational pq(c[n].p, c[n].q);
    pq.canonicalize();
    Rational d_lo = pq > ref.hi ? pq - ref.hi : ref.lo - pq;
    Rational d_hi = pq > ref.hi ? pq - ref.lo : ref.hi - pq;
    EXPECT_LE(err.err_lo, d_hi) << n;
    EXPECT_GE(err.err_hi, d_lo) << n;
  }
}

TEST(ApproxError, RequiresDeepEnoughEvaluation) {
  try {
    approx_error(bessel_ratio(), 5, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}
