#pragma once

#include <string>
#include <vector>

#include "srcf/numeric.hpp"

namespace srcf {

/// (a + b sqrt(D)) / c with D > 0, c > 0 and gcd(a, b, c) = 1. Values with
/// different D never mix.
class QuadraticSurd {
 public:
  QuadraticSurd(BigInt a, BigInt b, BigInt c, BigInt d);
  static QuadraticSurd integer(const BigInt& n, const BigInt& d);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  int sign() const;
  QuadraticSurd conjugate() const;
  QuadraticSurd reciprocal() const;
  QuadraticSurd operator-() const;
  friend QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y);
  friend QuadraticSurd operator+(const QuadraticSurd& x, const BigInt& n);

  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() == 0; }
  friend bool operator<(const QuadraticSurd& x, const QuadraticSurd& y) { return (x - y).sign() < 0; }

  /// floor(value * 10^digits), exact.
  BigInt scaled_floor(unsigned digits) const;
  /// Decimal expansion truncated toward -inf.
  std::string decimal(unsigned digits) const;
  double to_double() const;
  /// "(a+b*sqrt(D))/c", dropping unit factors.
  std::string to_string() const;

 private:
  void normalize();
  BigInt a_, b_, c_, d_;
};

struct PeriodicMu {
  /// alpha = [c_1; c_2, ..., c_H, c_1, ...].
  QuadraticSurd alpha;
  /// beta_1 = -1/alpha*, beta_n = c_{n-1} + 1/beta_{n-1}.
  std::vector<QuadraticSurd> beta;
  std::size_t argmax = 1;
  /// 1 + max beta_n.
  QuadraticSurd mu;
};

/// Exponent of the Adams-Davison series when 1/alpha = [0; c_1, c_2, ...]
/// with the given period. Throws BadPeriod on an empty period or entries < 1.
PeriodicMu periodic_quadratic_mu(const std::vector<BigInt>& period);

}  // namespace srcf
