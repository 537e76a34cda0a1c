#include "srcf/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "srcf/error.hpp"

namespace srcf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedSpec: return "MalformedSpec";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvariantBreach: return "InvariantBreach";
    case ErrorKind::EnclosureFailed: return "EnclosureFailed";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotNCF: return "NotNCF";
    case ErrorKind::NotRCF: return "NotRCF";
    case ErrorKind::NotLCF: return "NotLCF";
    case ErrorKind::NoLargeTerm: return "NoLargeTerm";
    case ErrorKind::IncompleteBlock: return "IncompleteBlock";
    case ErrorKind::TruncationEmpty: return "TruncationEmpty";
    case ErrorKind::DegenerateQ: return "DegenerateQ";
    case ErrorKind::ConditionNotVerified: return "ConditionNotVerified";
    case ErrorKind::BadTarget: return "BadTarget";
    case ErrorKind::BadPeriod: return "BadPeriod";
    case ErrorKind::DivisibilityBreach: return "DivisibilityBreach";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  std::string s = trim(text);
  if (!is_integer_literal(s)) {
    throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return BigInt(s, 10);
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_bigint(s.substr(0, slash));
    BigInt den = parse_bigint(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator: '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (frac.empty() || !std::all_of(frac.begin(), frac.end(),
                                     [](unsigned char c) { return std::isdigit(c) != 0; })) {
      throw Error(ErrorKind::ParseError, "not a decimal: '" + s + "'");
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt int_part = parse_bigint(whole);
    BigInt frac_part(frac, 10);
    BigInt num = abs(int_part) * scale + frac_part;
    if (negative) num = -num;
    Rational r(num, scale);
    r.canonicalize();
    return r;
  }
  return Rational(parse_bigint(s));
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return to_decimal(v.get_num());
  return to_decimal(v.get_num()) + "/" + to_decimal(v.get_den());
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt floor_of(const Rational& value) { return floor_div(value.get_num(), value.get_den()); }

BigInt ceil_of(const Rational& value) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

BigInt iroot_floor(const BigInt& n, unsigned long k) {
  if (n < 0) throw Error(ErrorKind::PreconditionFailed, "iroot_floor of a negative number");
  if (k == 0) throw Error(ErrorKind::PreconditionFailed, "iroot_floor with k = 0");
  BigInt r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

BigInt floor_pow(const BigInt& base, const Rational& exponent) {
  if (base < 1) throw Error(ErrorKind::PreconditionFailed, "floor_pow needs base >= 1");
  if (exponent < 0) throw Error(ErrorKind::PreconditionFailed, "floor_pow needs exponent >= 0");
  if (!exponent.get_num().fits_ulong_p() || !exponent.get_den().fits_ulong_p()) {
    throw Error(ErrorKind::PreconditionFailed, "floor_pow exponent too large");
  }
  BigInt power;
  mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), exponent.get_num().get_ui());
  return iroot_floor(power, exponent.get_den().get_ui());
}

BigInt floor_exp2(const Rational& x) {
  if (x < 0) throw Error(ErrorKind::PreconditionFailed, "floor_exp2 needs x >= 0");
  if (x.get_den() == 1) {
    if (!x.get_num().fits_ulong_p()) {
      throw Error(ErrorKind::PreconditionFailed, "floor_exp2 exponent too large");
    }
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, x.get_num().get_ui());
    return r;
  }
  // 2^x is irrational here, so the loop terminates once the enclosure is
  // narrower than the distance to the nearest integer.
  BigInt integer_part = floor_of(x);
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(mpz_sizeinbase(integer_part.get_mpz_t(), 2)) + 64;
  if (integer_part.fits_ulong_p()) prec += static_cast<mpfr_prec_t>(integer_part.get_ui());
  for (int attempt = 0; attempt < 40; ++attempt, prec *= 2) {
    Real lo_x(prec), hi_x(prec), lo(prec), hi(prec);
    mpfr_set_q(lo_x.get(), x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_x.get(), x.get_mpq_t(), MPFR_RNDU);
    mpfr_exp2(lo.get(), lo_x.get(), MPFR_RNDD);
    mpfr_exp2(hi.get(), hi_x.get(), MPFR_RNDU);
    BigInt flo, fhi;
    mpfr_get_z(flo.get_mpz_t(), lo.get(), MPFR_RNDD);
    mpfr_get_z(fhi.get_mpz_t(), hi.get(), MPFR_RNDD);
    if (flo == fhi) return flo;
  }
  throw Error(ErrorKind::InvariantBreach, "floor_exp2 did not converge");
}

namespace {

std::string render_scaled(const BigInt& scaled, unsigned digits) {
  bool negative = scaled < 0;
  std::string body = to_decimal(abs(scaled));
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  return negative ? "-" + body : body;
}

BigInt ten_pow(unsigned digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  return scale;
}

}  // namespace

std::string decimal_floor(const Rational& value, unsigned digits) {
  return render_scaled(floor_of(value * Rational(ten_pow(digits))), digits);
}

std::string decimal_ceil(const Rational& value, unsigned digits) {
  return render_scaled(ceil_of(value * Rational(ten_pow(digits))), digits);
}

double to_double(const Rational& value) {
  Real r(64);
  mpfr_set_q(r.get(), value.get_mpq_t(), MPFR_RNDN);
  return r.to_double();
}

Real::Real(mpfr_prec_t precision) { mpfr_init2(value_, precision); }

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int significant_digits) const {
  char* raw = nullptr;
  mpfr_asprintf(&raw, "%.*Rg", significant_digits, value_);
  std::unique_ptr<char, void (*)(char*)> guard(raw, [](char* p) { mpfr_free_str(p); });
  return std::string(raw);
}

LogScale::LogScale(unsigned mantissa_bits) : bits_(std::clamp(mantissa_bits, 16u, 4096u)) {}

Real LogScale::log(const BigInt& z) const {
  if (z == 0) throw Error(ErrorKind::PreconditionFailed, "log of zero");
  Real top(static_cast<mpfr_prec_t>(bits_));
  mpfr_set_z(top.get(), z.get_mpz_t(), MPFR_RNDZ);
  mpfr_abs(top.get(), top.get(), MPFR_RNDN);
  Real out(static_cast<mpfr_prec_t>(bits_) + 64);
  mpfr_log(out.get(), top.get(), MPFR_RNDN);
  return out;
}

double LogScale::log_ratio(const BigInt& num, const BigInt& den) const {
  if (abs(den) < 2) throw Error(ErrorKind::DegenerateQ, "log ratio with |denominator| < 2");
  Real n = log(num);
  Real d = log(den);
  Real r(static_cast<mpfr_prec_t>(bits_) + 64);
  mpfr_div(r.get(), n.get(), d.get(), MPFR_RNDN);
  return r.to_double();
}

double LogScale::error_bound() const {
  // Truncation: |log(1 - e)| <= 2e for e = 2^(1-bits) small; the working
  // precision contributes far less than that.
  return std::ldexp(1.0, 2 - static_cast<int>(bits_));
}

LogScale LogScale::from_environment() {
  const char* env = std::getenv("SRCF_LOG_PRECISION_BITS");
  if (env == nullptr || *env == '\0') return LogScale(64);
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return LogScale(64);
  return LogScale(static_cast<unsigned>(std::min<unsigned long>(v, 4096)));
}

}  // namespace srcf
