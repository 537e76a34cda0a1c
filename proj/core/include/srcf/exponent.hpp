#pragma once

// Irrationality-exponent estimates from convergent growth, the growth
// conditions (A)-(D), certified sandwich checks and the Fibonacci upper
// bound on q_n.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "srcf/cf.hpp"
#include "srcf/numeric.hpp"

namespace srcf {

struct LambdaPoint {
  std::size_t n = 0;
  /// log q_{n+1} / log q_n.
  double lambda = 0;
  /// Bound on |lambda - computed| from the logarithm error.
  double error = 0;
  std::size_t q_bits = 0;
  std::size_t q_next_bits = 0;
};

enum class MuMethod { Form, Form1, Both };

std::string to_string(MuMethod m);

struct ExponentReport {
  std::size_t n_max = 0;
  double window_fraction = 0.5;
  /// Window [window_start, n_max - 1] of indices n entering the maximum.
  std::size_t window_start = 0;
  std::string method;

  std::vector<LambdaPoint> lambda_series;
  /// Indices with q_n < 2 (log q_n <= 0).
  std::vector<std::size_t> skipped;

  /// 1 + max lambda_n over the window, and over all indices.
  std::optional<double> mu_form;
  std::optional<double> mu_form_full;
  std::optional<std::size_t> mu_form_argmax;
  std::optional<double> mu_form_error;

  /// 2 + max log b_{n+1} / log(b_1 ... b_n) over the window, and over all
  /// indices with b_1 ... b_n >= 2.
  std::optional<double> mu_form1;
  std::optional<double> mu_form1_full;
  std::optional<std::size_t> mu_form1_argmax;
  std::optional<double> mu_form1_error;
  /// n_max / log(b_1 ... b_{n_max}); should be small for the b_n formula to
  /// be meaningful.
  std::optional<double> form1_diagnostic;

  unsigned log_bits = 64;
  double log_error_bound = 0;
};

/// lambda_n for 0 <= n < n_max. Throws DegenerateQ if every q_n < 2.
ExponentReport lambda_series(const CFSpec& spec, std::size_t n_max,
                             const LogScale& logs = LogScale::from_environment());

ExponentReport estimate_mu(const CFSpec& spec, std::size_t n_max, MuMethod method,
                           double window_fraction = 0.5,
                           const LogScale& logs = LogScale::from_environment());

enum class Condition { A, B, C, D };

std::string to_string(Condition c);
Condition parse_condition(const std::string& text);

struct ConditionReport {
  std::size_t from_index = 1;
  std::size_t to_index = 1;
  bool holds_A = false;
  bool holds_B = false;
  bool holds_C = false;
  bool holds_D = false;
  /// L: longest run of a_n = -1 in the range (0 if none).
  std::size_t max_run_neg_a = 0;
  /// M: longest run of b_n = 2 in the range (0 if none).
  std::size_t max_run_b2 = 0;
  std::size_t trailing_run_neg_a = 0;
  std::size_t trailing_run_b2 = 0;
  std::vector<std::string> notes;

  bool holds(Condition c) const;
};

/// Conditions read as for-all statements over [from, to]. A run statistic is
/// accepted as bounded when the run still open at `to` is no longer than the
/// longest completed run (or 1): a window whose final run keeps growing is
/// the finite picture of an unbounded run.
ConditionReport check_conditions(const CFSpec& spec, std::size_t from, std::size_t to);

struct BoundConstants {
  Rational rho;
  Rational sigma;
  Rational tau;
};

/// (1/L, 1/(L+1), L+1) for A; (1, 1/2, M+1) for B; (1, 1/2, 2) for C and D.
/// L and M are run bounds (a run bound of 0 is read as 1). Throws
/// ConditionNotVerified if the report does not confirm the condition or the
/// run bound is below the observed run.
BoundConstants default_constants(const ConditionReport& report, Condition condition,
                                 std::size_t run_bound);
BoundConstants default_constants(const CFSpec& spec, Condition condition, std::size_t run_bound,
                                 std::size_t from, std::size_t to);

enum class Verdict { Pass, Fail, Indeterminate };

std::string to_string(Verdict v);

struct SandwichRow {
  std::size_t n = 0;
  Verdict growth = Verdict::Indeterminate;  // q_{n+1} >= rho q_n
  Verdict lower = Verdict::Indeterminate;   // sigma/(q_n q_{n+1}) <= |alpha - p_n/q_n|
  Verdict upper = Verdict::Indeterminate;   // |alpha - p_n/q_n| <= tau/(q_n q_{n+1})
  /// q_{n+1} - rho q_n.
  Rational growth_margin;
  /// err_lo - sigma/(q_n q_{n+1}) and tau/(q_n q_{n+1}) - err_hi, scaled by
  /// q_n q_{n+1}: positive means the bound is certified.
  Rational lower_margin;
  Rational upper_margin;

  Verdict overall() const;
};

struct SandwichReport {
  BoundConstants constants;
  std::size_t eval_depth = 0;
  std::vector<SandwichRow> rows;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t indeterminate = 0;

  Verdict overall() const;
};

SandwichReport verify_sandwich(const CFSpec& spec, const BoundConstants& constants,
                               std::size_t n_from, std::size_t n_to, std::size_t eval_depth);

struct EncadReport {
  std::size_t n_max = 0;
  /// q_n <= F_{n+1} b_1 ... b_n for every 1 <= n <= n_max.
  bool upper_ok = true;
  std::optional<std::size_t> first_failure;
  /// min over n of (q_n / (b_1 ... b_n))^(1/n).
  double empirical_K = 0;
  std::size_t empirical_K_index = 0;
};

EncadReport check_encad(const CFSpec& spec, std::size_t n_max);

}  // namespace srcf
