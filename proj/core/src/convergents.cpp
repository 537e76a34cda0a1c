#include "srcf/convergents.hpp"

#include <algorithm>

#include "srcf/error.hpp"

namespace srcf {

ConvergentTable::ConvergentTable(CFSpec spec) : spec_(std::move(spec)) {
  p_ = {BigInt(1), spec_.head()};
  q_ = {BigInt(0), BigInt(1)};
  det_ = {0, -1};
}

void ConvergentTable::extend_to(std::size_t n) {
  if (n > computed()) {
    p_.reserve(n + 2);
    q_.reserve(n + 2);
    det_.reserve(n + 2);
  }
  while (computed() < n) {
    std::size_t k = computed() + 1;
    PartialQuotient t = spec_.term(k);
    const std::size_t i = k + 1;
    BigInt p = t.b * p_[i - 1] + t.a * p_[i - 2];
    BigInt q = t.b * q_[i - 1] + t.a * q_[i - 2];
    if (q < 1) {
      throw Error(ErrorKind::InvariantBreach,
                  "q_" + std::to_string(k) + " = " + to_decimal(q) + " < 1");
    }
    sign_product_ *= t.a;
    const int expected = (k % 2 == 1) ? sign_product_ : -sign_product_;
    BigInt det = p * q_[i - 1] - p_[i - 1] * q;
    if (det != expected) {
      throw Error(ErrorKind::InvariantBreach, "determinant identity fails at n=" + std::to_string(k));
    }
    p_.push_back(std::move(p));
    q_.push_back(std::move(q));
    det_.push_back(expected);
  }
}

BigInt ConvergentTable::p(long n) {
  if (n < -1) throw Error(ErrorKind::IndexOutOfRange, "convergent index below -1");
  if (n >= 0) extend_to(static_cast<std::size_t>(n));
  return p_[static_cast<std::size_t>(n + 1)];
}

BigInt ConvergentTable::q(long n) {
  if (n < -1) throw Error(ErrorKind::IndexOutOfRange, "convergent index below -1");
  if (n >= 0) extend_to(static_cast<std::size_t>(n));
  return q_[static_cast<std::size_t>(n + 1)];
}

Convergent ConvergentTable::at(std::size_t n) {
  extend_to(n);
  Convergent c;
  c.n = n;
  c.p = p_[n + 1];
  c.q = q_[n + 1];
  c.det = det_[n + 1];
  return c;
}

std::vector<Convergent> convergents(const CFSpec& spec, std::size_t n_max) {
  if (n_max > 0) {
    if (!spec.has_term(n_max)) {
      throw Error(ErrorKind::IndexOutOfRange, "spec has fewer than " + std::to_string(n_max) + " terms");
    }
    validate(spec, n_max);
  }
  ConvergentTable table(spec);
  table.extend_to(n_max);
  std::vector<Convergent> out;
  out.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(table.at(n));
  return out;
}

TailBound tail_bound(const CFSpec& spec, std::size_t n) {
  if (!spec.has_term(n + 1)) {
    throw Error(ErrorKind::IndexOutOfRange, "no term after index " + std::to_string(n));
  }
  TailBound t;
  t.sign_of_next_a = spec.term(n + 1).a;
  if (t.sign_of_next_a == 1) {
    t.lo = 0;
    t.hi = 1;
    t.open_lo = true;
  } else {
    t.lo = -1;
    t.hi = 0;
    t.open_hi = true;
  }
  return t;
}

namespace {

Enclosure enclose_impl(const CFSpec& spec, std::size_t depth, unsigned retry_cap, bool check) {
  ConvergentTable table(spec);
  std::size_t d = depth;
  for (unsigned attempt = 0; attempt <= retry_cap; ++attempt) {
    if (!spec.has_term(d + 2)) {
      if (attempt == 0) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "enclosure at depth " + std::to_string(d) + " needs " + std::to_string(d + 2) + " terms");
      }
      break;
    }
    if (check) validate(spec, d + 2);
    TailBound tail = tail_bound(spec, d + 1);
    const long i = static_cast<long>(d);
    const BigInt p0 = table.p(i);
    const BigInt q0 = table.q(i);
    const BigInt p1 = table.p(i + 1);
    const BigInt q1 = table.q(i + 1);
    // Denominator q1 + x q0 is affine in x; sign-definite iff both ends agree.
    Rational den_lo = q1 + tail.lo * q0;
    Rational den_hi = q1 + tail.hi * q0;
    if (sgn(den_lo) != 0 && sgn(den_lo) == sgn(den_hi)) {
      Rational v_lo = (p1 + tail.lo * p0) / den_lo;
      Rational v_hi = (p1 + tail.hi * p0) / den_hi;
      Enclosure e;
      e.depth = d;
      e.lo = std::min(v_lo, v_hi);
      e.hi = std::max(v_lo, v_hi);
      return e;
    }
    d = std::max<std::size_t>(2 * d, d + 1);
  }
  throw Error(ErrorKind::EnclosureFailed,
              "no sign-definite denominator found from depth " + std::to_string(depth));
}

}  // namespace

Enclosure enclose(const CFSpec& spec, std::size_t depth, unsigned retry_cap) {
  return enclose_impl(spec, depth, retry_cap, true);
}

Enclosure detail::enclose_unchecked(const CFSpec& spec, std::size_t depth, unsigned retry_cap) {
  return enclose_impl(spec, depth, retry_cap, false);
}

ApproxError approx_error(const CFSpec& spec, std::size_t n, std::size_t eval_depth) {
  if (eval_depth < n + 2) {
    throw Error(ErrorKind::PreconditionFailed, "eval_depth must be at least n + 2");
  }
  ConvergentTable table(spec);
  return approx_error(table, n, enclose(spec, eval_depth));
}

ApproxError approx_error(ConvergentTable& table, std::size_t n, const Enclosure& enclosure) {
  if (enclosure.depth < n + 2) {
    throw Error(ErrorKind::PreconditionFailed, "enclosure depth must be at least n + 2");
  }
  const CFSpec& spec = table.spec();
  ApproxError out;
  out.n = n;
  out.enclosure = enclosure;
  const long i = static_cast<long>(n);
  const BigInt pn = table.p(i);
  const BigInt qn = table.q(i);
  const BigInt qn1 = table.q(i + 1);
  TailBound tail = tail_bound(spec, n + 1);
  out.xi_lo = qn1 + tail.lo * qn;
  out.xi_hi = qn1 + tail.hi * qn;
  if (out.xi_lo <= 0) {
    throw Error(ErrorKind::InvariantBreach, "xi_{n+1} range reaches 0 at n=" + std::to_string(n));
  }
  out.err_lo = 1 / (qn * out.xi_hi);
  out.err_hi = 1 / (qn * out.xi_lo);

  Rational c(pn, qn);
  c.canonicalize();
  const Enclosure& e = out.enclosure;
  Rational d_lo, d_hi;
  if (c < e.lo) {
    d_lo = e.lo - c;
    d_hi = e.hi - c;
  } else if (c > e.hi) {
    d_lo = c - e.hi;
    d_hi = c - e.lo;
  } else {
    d_lo = 0;
    d_hi = std::max(c - e.lo, e.hi - c);
  }
  out.err_lo = std::max(out.err_lo, d_lo);
  out.err_hi = std::min(out.err_hi, d_hi);
  if (out.err_lo > out.err_hi) {
    throw Error(ErrorKind::InvariantBreach, "error bounds are inconsistent at n=" + std::to_string(n));
  }
  return out;
}

Rational finite_value(const BigInt& head, const std::vector<PartialQuotient>& terms) {
  Rational tail = 0;
  for (std::size_t i = terms.size(); i-- > 0;) {
    Rational den = terms[i].b + tail;
    if (den == 0) throw Error(ErrorKind::PreconditionFailed, "zero denominator in finite fraction");
    tail = terms[i].a / den;
  }
  return head + tail;
}

}  // namespace srcf
