#include "srcf/quadratic.hpp"

#include <vector>

#include "srcf/error.hpp"

namespace srcf {

namespace {

// floor(b * sqrt(d)) for d >= 0.
BigInt floor_root_times(const BigInt& b, const BigInt& d) {
  BigInt sq = b * b * d;
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), sq.get_mpz_t());
  if (b >= 0) return r;
  return r * r == sq ? BigInt(-r) : BigInt(-r - 1);
}

}  // namespace

QuadraticSurd::QuadraticSurd(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (c_ == 0) throw Error(ErrorKind::PreconditionFailed, "zero denominator in quadratic surd");
  if (d_ <= 0) throw Error(ErrorKind::PreconditionFailed, "radicand must be positive");
  normalize();
}

QuadraticSurd QuadraticSurd::integer(const BigInt& n, const BigInt& d) { return {n, 0, 1, d}; }

void QuadraticSurd::normalize() {
  if (c_ < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  // Pull small square factors out of the radicand so that equal values tend
  // to share a representation (comparisons never rely on it).
  for (unsigned long k = 2; k <= 1000 && BigInt(k * k) <= d_; ++k) {
    while (mpz_divisible_ui_p(d_.get_mpz_t(), k * k)) {
      d_ /= k * k;
      b_ *= k;
    }
  }
  BigInt g = gcd(gcd(a_, b_), c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

int QuadraticSurd::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 D.
  int cmp_ = cmp(BigInt(a_ * a_), BigInt(b_ * b_ * d_));
  if (cmp_ == 0) return 0;
  return cmp_ > 0 ? sa : sb;
}

QuadraticSurd QuadraticSurd::conjugate() const { return {a_, -b_, c_, d_}; }

QuadraticSurd QuadraticSurd::operator-() const { return {-a_, -b_, c_, d_}; }

QuadraticSurd QuadraticSurd::reciprocal() const {
  BigInt norm = a_ * a_ - b_ * b_ * d_;
  if (norm == 0) {
    // D is a perfect square and the value is 0 or the surd collapses; only 0
    // is a genuine failure.
    if (sign() == 0) throw Error(ErrorKind::PreconditionFailed, "reciprocal of zero");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), d_.get_mpz_t());
    return {c_, 0, a_ + b_ * r, d_};
  }
  return {c_ * a_, -c_ * b_, norm, d_};
}

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
  if (x.d_ != y.d_) throw Error(ErrorKind::PreconditionFailed, "surds with different radicands");
  return {x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_, x.c_ * y.c_, x.d_};
}

QuadraticSurd operator-(const QuadraticSurd& x, const QuadraticSurd& y) { return x + (-y); }

QuadraticSurd operator+(const QuadraticSurd& x, const BigInt& n) {
  return {x.a_ + n * x.c_, x.b_, x.c_, x.d_};
}

BigInt QuadraticSurd::scaled_floor(unsigned digits) const {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // floor((A + f + theta)/c) with f = floor(B sqrt D), theta in [0, 1).
  BigInt f = floor_root_times(b_ * scale, d_);
  return floor_div(a_ * scale + f, c_);
}

std::string QuadraticSurd::decimal(unsigned digits) const {
  BigInt scaled = scaled_floor(digits);
  if (digits == 0) return to_decimal(scaled);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  BigInt ip = floor_div(scaled, scale);
  BigInt frac = scaled - ip * scale;
  std::string fs = to_decimal(frac);
  fs.insert(0, digits - fs.size(), '0');
  return to_decimal(ip) + "." + fs;
}

double QuadraticSurd::to_double() const {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 30);
  Rational r(scaled_floor(30), scale);
  r.canonicalize();
  return srcf::to_double(r);
}

std::string QuadraticSurd::to_string() const {
  std::string out = to_decimal(a_);
  if (b_ != 0) {
    if (b_ > 0) out += "+";
    if (b_ == -1) out += "-";
    else if (b_ != 1) out += to_decimal(b_) + "*";
    out += "sqrt(" + to_decimal(d_) + ")";
    if (a_ == 0) out = out.substr(out[1] == '+' ? 2 : 1);
  }
  if (c_ != 1) {
    if (b_ != 0 && a_ != 0) out = "(" + out + ")";
    out += "/" + to_decimal(c_);
  }
  return out;
}

PeriodicMu periodic_quadratic_mu(const std::vector<BigInt>& period) {
  if (period.empty()) throw Error(ErrorKind::BadPeriod, "period must be non-empty");
  for (const auto& c : period) {
    if (c < 1) throw Error(ErrorKind::BadPeriod, "period entries must be >= 1");
  }
  // Convergents of [c_1; c_2, ..., c_H]; alpha is the positive root of
  // Q x^2 + (Q' - P) x - P' = 0 with P/Q the last and P'/Q' the one before.
  BigInt p_prev = 1, q_prev = 0, p = period[0], q = 1;
  for (std::size_t i = 1; i < period.size(); ++i) {
    BigInt pn = period[i] * p + p_prev;
    BigInt qn = period[i] * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
  }
  BigInt lin = q_prev - p;
  BigInt disc = lin * lin + 4 * q * p_prev;

  PeriodicMu out{QuadraticSurd(-lin, 1, 2 * q, disc), {}, 1, QuadraticSurd::integer(0, disc)};
  out.beta.push_back((-out.alpha.conjugate()).reciprocal());
  for (std::size_t n = 2; n <= period.size(); ++n) {
    out.beta.push_back(out.beta.back().reciprocal() + period[n - 2]);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.beta.size(); ++i) {
    if (out.beta[best] < out.beta[i]) best = i;
  }
  out.argmax = best + 1;
  out.mu = out.beta[best] + BigInt(1);
  return out;
}

}  // namespace srcf
