#include "srcf/exponent.hpp"

#include <algorithm>
#include <cmath>

#include "srcf/convergents.hpp"
#include "srcf/error.hpp"

namespace srcf {

namespace {

std::size_t bit_length(const BigInt& z) {
  return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

// num/den of two logarithms, each carrying an absolute error up to eps.
struct Ratio {
  double value;
  double error;
};

Ratio log_quotient(const Real& num, const Real& den, double eps) {
  Real q(std::max(num.precision(), den.precision()));
  mpfr_div(q.get(), num.get(), den.get(), MPFR_RNDN);
  double value = q.to_double();
  double d = den.to_double();
  double error = d > eps ? eps * (1 + std::fabs(value)) / (d - eps) : INFINITY;
  return {value, error};
}

std::size_t window_start(std::size_t n_max, double f) {
  if (!(f >= 0 && f <= 1)) throw Error(ErrorKind::PreconditionFailed, "window fraction must lie in [0, 1]");
  return static_cast<std::size_t>(std::ceil(f * static_cast<double>(n_max)));
}

}  // namespace

std::string to_string(MuMethod m) {
  switch (m) {
    case MuMethod::Form: return "form";
    case MuMethod::Form1: return "form1";
    case MuMethod::Both: return "both";
  }
  return "?";
}

ExponentReport lambda_series(const CFSpec& spec, std::size_t n_max, const LogScale& logs) {
  if (n_max < 1) throw Error(ErrorKind::PreconditionFailed, "n_max must be >= 1");
  if (!spec.has_term(n_max)) {
    throw Error(ErrorKind::IndexOutOfRange, "spec has fewer than " + std::to_string(n_max) + " terms");
  }
  validate(spec, n_max);

  ExponentReport report;
  report.n_max = n_max;
  report.log_bits = logs.mantissa_bits();
  report.log_error_bound = logs.error_bound();

  ConvergentTable table(spec);
  table.extend_to(n_max);
  std::optional<Real> log_prev;
  for (std::size_t n = 0; n <= n_max; ++n) {
    BigInt q = table.q(static_cast<long>(n));
    std::optional<Real> log_q;
    if (q >= 2) log_q = logs.log(q);
    if (n >= 1 && log_prev) {
      Ratio r = log_quotient(*log_q, *log_prev, report.log_error_bound);
      BigInt q_prev = table.q(static_cast<long>(n - 1));
      report.lambda_series.push_back({n - 1, r.value, r.error, bit_length(q_prev), bit_length(q)});
    } else if (n >= 1) {
      report.skipped.push_back(n - 1);
    }
    log_prev = std::move(log_q);
  }
  if (report.lambda_series.empty()) {
    throw Error(ErrorKind::DegenerateQ, "q_n < 2 for every n < " + std::to_string(n_max));
  }
  return report;
}

ExponentReport estimate_mu(const CFSpec& spec, std::size_t n_max, MuMethod method,
                           double window_fraction, const LogScale& logs) {
  const std::size_t start = window_start(n_max, window_fraction);
  ExponentReport report;
  if (method != MuMethod::Form1) {
    report = lambda_series(spec, n_max, logs);
    for (const auto& pt : report.lambda_series) {
      double mu = 1 + pt.lambda;
      if (!report.mu_form_full || mu > *report.mu_form_full) report.mu_form_full = mu;
      if (pt.n >= start && (!report.mu_form || mu > *report.mu_form)) {
        report.mu_form = mu;
        report.mu_form_argmax = pt.n;
        report.mu_form_error = pt.error;
      }
    }
    if (!report.mu_form) {
      throw Error(ErrorKind::DegenerateQ, "no index with q_n >= 2 inside the window");
    }
  } else {
    if (n_max < 1 || !spec.has_term(n_max)) {
      throw Error(ErrorKind::IndexOutOfRange, "spec has fewer than " + std::to_string(n_max) + " terms");
    }
    validate(spec, n_max);
    report.n_max = n_max;
    report.log_bits = logs.mantissa_bits();
    report.log_error_bound = logs.error_bound();
  }
  report.window_fraction = window_fraction;
  report.window_start = start;
  report.method = to_string(method);

  if (method != MuMethod::Form) {
    const double eps = logs.error_bound();
    BigInt product = 1;
    for (std::size_t n = 1; n < n_max; ++n) {
      product *= spec.term(n).b;
      if (product < 2) continue;
      Real log_prod = logs.log(product);
      Ratio r = log_quotient(logs.log(spec.term(n + 1).b), log_prod, eps);
      double mu = 2 + r.value;
      if (!report.mu_form1_full || mu > *report.mu_form1_full) report.mu_form1_full = mu;
      if (n >= start && (!report.mu_form1 || mu > *report.mu_form1)) {
        report.mu_form1 = mu;
        report.mu_form1_argmax = n;
        report.mu_form1_error = r.error;
      }
    }
    product *= spec.term(n_max).b;
    if (product >= 2) {
      report.form1_diagnostic = static_cast<double>(n_max) / logs.log(product).to_double();
    }
    if (!report.mu_form1) {
      throw Error(ErrorKind::DegenerateQ, "b_1 ... b_n < 2 throughout the window");
    }
  }
  return report;
}

std::string to_string(Condition c) {
  switch (c) {
    case Condition::A: return "A";
    case Condition::B: return "B";
    case Condition::C: return "C";
    case Condition::D: return "D";
  }
  return "?";
}

Condition parse_condition(const std::string& text) {
  if (text == "A" || text == "a") return Condition::A;
  if (text == "B" || text == "b") return Condition::B;
  if (text == "C" || text == "c") return Condition::C;
  if (text == "D" || text == "d") return Condition::D;
  throw Error(ErrorKind::ParseError, "condition must be one of A, B, C, D");
}

bool ConditionReport::holds(Condition c) const {
  switch (c) {
    case Condition::A: return holds_A;
    case Condition::B: return holds_B;
    case Condition::C: return holds_C;
    case Condition::D: return holds_D;
  }
  return false;
}

namespace {

struct RunStats {
  std::size_t longest_closed = 0;
  std::size_t trailing = 0;
  std::size_t longest() const { return std::max(longest_closed, trailing); }
  bool bounded(std::size_t length) const {
    if (trailing == length) return false;  // one run covers the whole window
    return trailing <= std::max<std::size_t>(longest_closed, 1);
  }
};

}  // namespace

ConditionReport check_conditions(const CFSpec& spec, std::size_t from, std::size_t to) {
  if (from < 1 || to < from) throw Error(ErrorKind::PreconditionFailed, "need 1 <= from <= to");
  if (!spec.has_term(to)) {
    throw Error(ErrorKind::IndexOutOfRange, "spec has fewer than " + std::to_string(to) + " terms");
  }
  ConditionReport r;
  r.from_index = from;
  r.to_index = to;
  const std::size_t length = to - from + 1;

  RunStats neg, twos;
  bool b_ge2 = true, c_ok = true, d_ok = true;
  for (std::size_t n = from; n <= to; ++n) {
    PartialQuotient t = spec.term(n);
    if (t.a == -1) {
      ++neg.trailing;
    } else {
      neg.longest_closed = std::max(neg.longest_closed, neg.trailing);
      neg.trailing = 0;
    }
    if (t.b == 2) {
      ++twos.trailing;
    } else {
      twos.longest_closed = std::max(twos.longest_closed, twos.trailing);
      twos.trailing = 0;
    }
    if (t.b < 2) b_ge2 = false;
    if (t.b + t.a < 2) c_ok = false;
    if (spec.has_term(n + 1)) {
      if (t.b + spec.term(n + 1).a < 2) d_ok = false;
    } else if (n == to) {
      r.notes.push_back("D: pair (b_n, a_{n+1}) at n=" + std::to_string(n) + " not available");
    }
  }

  r.max_run_neg_a = neg.longest();
  r.max_run_b2 = twos.longest();
  r.trailing_run_neg_a = neg.trailing;
  r.trailing_run_b2 = twos.trailing;
  r.holds_A = neg.bounded(length);
  r.holds_B = b_ge2 && twos.bounded(length);
  r.holds_C = c_ok;
  r.holds_D = b_ge2 && d_ok;
  if (!r.holds_A) r.notes.push_back("A: trailing run of a_n = -1 still growing");
  if (b_ge2 && !r.holds_B) r.notes.push_back("B: trailing run of b_n = 2 still growing");
  return r;
}

BoundConstants default_constants(const ConditionReport& report, Condition condition,
                                 std::size_t run_bound) {
  if (!report.holds(condition)) {
    throw Error(ErrorKind::ConditionNotVerified,
                "condition " + to_string(condition) + " does not hold on [" +
                    std::to_string(report.from_index) + ", " + std::to_string(report.to_index) + "]");
  }
  const std::size_t bound = std::max<std::size_t>(run_bound, 1);
  auto check_run = [&](std::size_t observed, const char* name) {
    if (bound < observed) {
      throw Error(ErrorKind::ConditionNotVerified,
                  std::string(name) + " = " + std::to_string(bound) + " is below the observed run " +
                      std::to_string(observed));
    }
  };
  const Rational b(static_cast<long>(bound));
  switch (condition) {
    case Condition::A:
      check_run(report.max_run_neg_a, "L");
      return {1 / b, 1 / (b + 1), b + 1};
    case Condition::B:
      check_run(report.max_run_b2, "M");
      return {1, Rational(1, 2), b + 1};
    case Condition::C:
    case Condition::D:
      return {1, Rational(1, 2), 2};
  }
  throw Error(ErrorKind::PreconditionFailed, "unknown condition");
}

BoundConstants default_constants(const CFSpec& spec, Condition condition, std::size_t run_bound,
                                 std::size_t from, std::size_t to) {
  return default_constants(check_conditions(spec, from, to), condition, run_bound);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

Verdict combine(std::initializer_list<Verdict> vs) {
  bool indet = false;
  for (Verdict v : vs) {
    if (v == Verdict::Fail) return Verdict::Fail;
    if (v == Verdict::Indeterminate) indet = true;
  }
  return indet ? Verdict::Indeterminate : Verdict::Pass;
}

}  // namespace

Verdict SandwichRow::overall() const { return combine({growth, lower, upper}); }

Verdict SandwichReport::overall() const {
  if (failed) return Verdict::Fail;
  return indeterminate ? Verdict::Indeterminate : Verdict::Pass;
}

SandwichReport verify_sandwich(const CFSpec& spec, const BoundConstants& constants,
                               std::size_t n_from, std::size_t n_to, std::size_t eval_depth) {
  if (n_to < n_from) throw Error(ErrorKind::PreconditionFailed, "empty n range");
  if (eval_depth < n_to + 2) {
    throw Error(ErrorKind::PreconditionFailed, "eval_depth must exceed the range by at least 2");
  }
  if (constants.rho <= 0 || constants.sigma <= 0 || constants.tau <= 0) {
    throw Error(ErrorKind::PreconditionFailed, "constants must be positive");
  }
  SandwichReport report;
  report.constants = constants;
  Enclosure e = enclose(spec, eval_depth);
  report.eval_depth = e.depth;
  ConvergentTable table(spec);
  table.extend_to(e.depth + 1);

  for (std::size_t n = n_from; n <= n_to; ++n) {
    ApproxError err = approx_error(table, n, e);
    const BigInt qn = table.q(static_cast<long>(n));
    const BigInt qn1 = table.q(static_cast<long>(n + 1));
    const BigInt qq = qn * qn1;

    SandwichRow row;
    row.n = n;
    row.growth_margin = qn1 - constants.rho * qn;
    row.growth = row.growth_margin >= 0 ? Verdict::Pass : Verdict::Fail;

    // Compare against the certified interval [err_lo, err_hi] of the error.
    Rational lo_scaled = err.err_lo * qq;
    Rational hi_scaled = err.err_hi * qq;
    row.lower_margin = lo_scaled - constants.sigma;
    if (constants.sigma <= lo_scaled) row.lower = Verdict::Pass;
    else if (constants.sigma > hi_scaled) row.lower = Verdict::Fail;
    row.upper_margin = constants.tau - hi_scaled;
    if (hi_scaled <= constants.tau) row.upper = Verdict::Pass;
    else if (lo_scaled > constants.tau) row.upper = Verdict::Fail;

    switch (row.overall()) {
      case Verdict::Pass: ++report.passed; break;
      case Verdict::Fail: ++report.failed; break;
      case Verdict::Indeterminate: ++report.indeterminate; break;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

EncadReport check_encad(const CFSpec& spec, std::size_t n_max) {
  if (n_max < 1) throw Error(ErrorKind::PreconditionFailed, "n_max must be >= 1");
  if (!spec.has_term(n_max)) {
    throw Error(ErrorKind::IndexOutOfRange, "spec has fewer than " + std::to_string(n_max) + " terms");
  }
  validate(spec, n_max);
  EncadReport report;
  report.n_max = n_max;
  ConvergentTable table(spec);
  table.extend_to(n_max);
  LogScale logs(128);

  BigInt product = 1, fib = 1, fib_prev = 0;  // F_{n+1}, F_n at n = 0
  bool first = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    product *= spec.term(n).b;
    BigInt next = fib + fib_prev;
    fib_prev = fib;
    fib = next;
    const BigInt q = table.q(static_cast<long>(n));
    if (q > fib * product) {
      if (report.upper_ok) report.first_failure = n;
      report.upper_ok = false;
    }
    // (q_n / prod)^(1/n), via logs of each side.
    Real lq = logs.log(q);
    Real lp = logs.log(product);
    Real diff(lq.precision());
    mpfr_sub(diff.get(), lq.get(), lp.get(), MPFR_RNDN);
    double k = std::exp(diff.to_double() / static_cast<double>(n));
    if (first || k < report.empirical_K) {
      report.empirical_K = k;
      report.empirical_K_index = n;
      first = false;
    }
  }
  return report;
}

}  // namespace srcf
