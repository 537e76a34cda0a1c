#pragma once

// Convergents p_n/q_n, tail bounds and certified rational enclosures.

#include <cstddef>
#include <vector>

#include "srcf/cf.hpp"
#include "srcf/numeric.hpp"

namespace srcf {

struct Convergent {
  std::size_t n = 0;
  BigInt p;
  BigInt q;
  /// p_n q_{n-1} - p_{n-1} q_n, checked against (-1)^(n-1) a_1...a_n.
  int det = -1;
};

/// Incremental p/q table for one spec, indices -1, 0, 1, ... Not thread-safe;
/// give each thread its own table (values are deterministic, so independent
/// tables always agree).
class ConvergentTable {
 public:
  explicit ConvergentTable(CFSpec spec);

  /// Computes through index n; throws InvariantBreach on q_n < 1 or a
  /// determinant mismatch.
  void extend_to(std::size_t n);
  std::size_t computed() const { return p_.size() - 2; }

  /// n >= -1; extends as needed.
  BigInt p(long n);
  BigInt q(long n);
  Convergent at(std::size_t n);

  const CFSpec& spec() const { return spec_; }

 private:
  CFSpec spec_;
  std::vector<BigInt> p_, q_;  // index i holds n = i - 1
  std::vector<int> det_;       // certified p_n q_{n-1} - p_{n-1} q_n, same indexing
  int sign_product_ = 1;       // a_1 ... a_n for the last computed n
};

/// p_0..p_{n_max}, q_0..q_{n_max}. Validates the prefix first.
std::vector<Convergent> convergents(const CFSpec& spec, std::size_t n_max);

/// Range of the tail x_n = a_{n+1}/(b_{n+1} + a_{n+2}/(...)).
struct TailBound {
  int sign_of_next_a = 1;
  Rational lo;
  Rational hi;
  bool open_lo = false;
  bool open_hi = false;
};

/// (0, 1] when a_{n+1} = +1 and [-1, 0) when a_{n+1} = -1.
TailBound tail_bound(const CFSpec& spec, std::size_t n);

struct Enclosure {
  /// Depth actually used (may exceed the request after a retry).
  std::size_t depth = 0;
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

/// Default number of depth doublings tried by enclose().
inline constexpr unsigned kEnclosureRetryCap = 64;

/// Closed interval containing the value, from
///   alpha = (p_{d+1} + x p_d) / (q_{d+1} + x q_d),  x in the tail range of
/// x_{d+1}. Needs terms through d+2. Tail endpoints are treated as closed.
/// If the denominator is not sign-definite on the tail range the depth is
/// doubled, up to `retry_cap` times.
Enclosure enclose(const CFSpec& spec, std::size_t depth, unsigned retry_cap = kEnclosureRetryCap);

namespace detail {
/// enclose() without the admissibility check, so that degenerate inputs can
/// exercise the retry path.
Enclosure enclose_unchecked(const CFSpec& spec, std::size_t depth, unsigned retry_cap);
}  // namespace detail

/// Bounds on xi_{n+1} = q_{n+1} + x_{n+1} q_n and on |alpha - p_n/q_n|.
struct ApproxError {
  std::size_t n = 0;
  Rational xi_lo;
  Rational xi_hi;
  /// 1/(q_n xi) over the xi range, intersected with the distance from p_n/q_n
  /// to enclose(spec, eval_depth).
  Rational err_lo;
  Rational err_hi;
  Enclosure enclosure;
};

ApproxError approx_error(const CFSpec& spec, std::size_t n, std::size_t eval_depth);
/// Same, reusing a table and an enclosure of depth >= n + 2.
ApproxError approx_error(ConvergentTable& table, std::size_t n, const Enclosure& enclosure);

/// Exact value of the finite fraction b_0 + a_1/(b_1 + ... + a_n/b_n) given
/// explicitly (no admissibility requirement beyond non-zero denominators).
Rational finite_value(const BigInt& head, const std::vector<PartialQuotient>& terms);

}  // namespace srcf
