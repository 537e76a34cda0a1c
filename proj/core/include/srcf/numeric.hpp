#pragma once

// Exact integer/rational helpers on top of GMP, plus the certified logarithm
// used by the exponent estimators.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace srcf {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt parse_bigint(std::string_view text);
std::string to_decimal(const BigInt& value);

/// Parses "p/q", "p", or a finite decimal such as "1.5" or "-0.25".
Rational parse_rational(std::string_view text);
/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor_of(const Rational& value);
BigInt ceil_of(const Rational& value);

/// Largest r with r^k <= n (n >= 0, k >= 1).
BigInt iroot_floor(const BigInt& n, unsigned long k);

/// floor(base^exponent) for base >= 1 and rational exponent >= 0, by exact
/// power and integer-root extraction.
BigInt floor_pow(const BigInt& base, const Rational& exponent);

/// floor(2^x) for rational x >= 0. Evaluated with directed-rounding interval
/// arithmetic, refining precision until both bounds share a floor; exact.
BigInt floor_exp2(const Rational& x);

/// Decimal rendering of a rational, rounded toward -inf (floor) or +inf
/// (ceil) at the given number of fractional digits.
std::string decimal_floor(const Rational& value, unsigned digits);
std::string decimal_ceil(const Rational& value, unsigned digits);

/// Nearest double; for display and estimates only.
double to_double(const Rational& value);

/// Owning wrapper for an MPFR number.
class Real {
 public:
  explicit Real(mpfr_prec_t precision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  std::string to_string(int significant_digits) const;

 private:
  mpfr_t value_;
};

/// log|z| from the top `mantissa_bits` bits of z.
///
/// The input is truncated to `mantissa_bits` significant bits (relative error
/// < 2^(1-bits)) and the logarithm is evaluated at bits+64 working precision,
/// so the absolute error of every returned value is below error_bound().
class LogScale {
 public:
  explicit LogScale(unsigned mantissa_bits = 64);

  Real log(const BigInt& z) const;
  /// log|num| / log|den|; den must satisfy |den| >= 2.
  double log_ratio(const BigInt& num, const BigInt& den) const;
  double log_double(const BigInt& z) const { return log(z).to_double(); }

  unsigned mantissa_bits() const { return bits_; }
  /// Absolute error bound on each logarithm.
  double error_bound() const;

  /// Reads SRCF_LOG_PRECISION_BITS (default 64, clamped to [16, 4096]).
  static LogScale from_environment();

 private:
  unsigned bits_;
};

}  // namespace srcf
