#pragma once

// Generators for the named continued fractions: prescribed-exponent NCF and
// LCF constructions, Adams-Davison series, e^(1/b), the Bessel ratio,
// Example-4 style fractions with doubly exponential partial quotients, and
// the degenerate omega = 1/(2 - 1/(2 - ...)).

#include <cstddef>
#include <string>
#include <vector>

#include "srcf/cf.hpp"
#include "srcf/numeric.hpp"

namespace srcf {

/// Target exponent s (exact rational, s >= 2, or s = 1 for omega) and the
/// number of construction rounds.
struct TargetExponentParams {
  Rational s = 2;
  std::size_t k_max = 10;
};

struct NcfExponentConstruction {
  /// Head 0, a_n = -1, b_n = 3 at the marked positions and 2 elsewhere.
  CFSpec ncf;
  /// Regular expansion [c0; c1, ..., c_{2 k_max}] of the same number.
  CFSpec companion_rcf;
  /// Marked positions n_1 < ... < n_{k_max}.
  std::vector<BigInt> positions;
  /// c_0 .. c_{2 k_max}.
  std::vector<BigInt> c;
};

/// Gaps n_{k+1} - n_k = floor(Q_{2k}^(s-2)), Q the denominators of the
/// companion regular expansion. s = 1 yields omega (companion left empty).
NcfExponentConstruction construct_ncf_exponent(const TargetExponentParams& params);

struct LcfExponentConstruction {
  /// 1 + 1/2 - 1/2 - ... - 1/2 - 1/1 + 1/2 - ... with m_k copies of -1/2 in
  /// block k.
  CFSpec lcf;
  /// [1; 1, m_1 + 2, m_2 + 2, ...].
  CFSpec companion_rcf;
  std::vector<BigInt> m;
};

/// m_k + 2 = floor(Q_k^(s-2)) with Q_k the denominators of the companion
/// expansion. Requires s > 2. Since Q_1 = 1, m_k is clamped at 0 whenever the
/// floor falls below 2.
LcfExponentConstruction construct_lcf_exponent(const TargetExponentParams& params);

struct AdamsDavisonParams {
  /// Regular expansion [c0; c1, c2, ...] of 1/alpha.
  CFSpec alpha_inverse_rcf;
  BigInt b = 2;
};

struct AdamsDavisonConstruction {
  /// Admissible SRCF with value (b-1) * sum_k b^(-floor(k alpha)).
  CFSpec spec;
  /// c0 * b and (b^q_n - b^q_{n-2}) / (b^q_{n-1} - 1), signs as computed.
  BigInt raw_head;
  std::vector<BigInt> raw_terms;
  /// Raw expansion with negative partial quotients folded into the
  /// numerators; the form in which the series is usually displayed.
  CFSpec sign_normalized;
  /// q_{-1}, q_0, ..., q_{n_max} of the expansion of 1/alpha.
  std::vector<BigInt> q;
  /// Human-readable list of equivalence rewrites applied.
  std::vector<std::string> rewrites;
};

AdamsDavisonConstruction construct_adams_davison(const AdamsDavisonParams& params,
                                                 std::size_t n_max);

/// e^(1/b) = 1 + 1/b - 1/2 + 1/3b - 1/2 + 1/5b - ...  For b = 1 the first
/// two levels violate b_n + a_{n+1} >= 1 and the equivalent form
/// 2 + 1/1 + 1/3 - 1/2 + 1/5 - 1/2 + ... is returned.
CFSpec e_recip(const BigInt& b);
/// 0F1(1;1)/0F1(2;1) = 1 + 1/2 + 1/3 + 1/4 + ...
CFSpec bessel_ratio();
/// 1/2 - 1/2 - 1/2 - ... = 1.
CFSpec omega();
/// b_{3k-2} = b_{3k-1} = 2, b_{3k} = floor(2^(sigma^k)); sigma > 1 rational.
/// `alternate` flips a_n to -1 on even n.
CFSpec example4(const Rational& sigma, bool alternate = false);
/// 1 + 1/2 - 1/1 + 1/2 - 1/1 + ... = 1 + sqrt(2)/2.
CFSpec lehner_sqrt2();
/// Lehner fraction 1 + beta with beta built from runs l_0, l_1, ... of (+1,1)
/// and m_1, m_2, ... of (-1,2); l.size() must equal m.size().
CFSpec lehner_from_runs(const std::vector<std::size_t>& l, const std::vector<std::size_t>& m);
CFSpec constant_ncf(const BigInt& b, const BigInt& head = 0);
CFSpec constant_rcf(const BigInt& b, const BigInt& head = 0);
/// [head; p_1, ..., p_H, p_1, ..., p_H, ...].
CFSpec periodic_rcf(const BigInt& head, const std::vector<BigInt>& period);

/// e_recip(b) | bessel_ratio | omega | example4(sigma) | lehner_sqrt2.
CFSpec construct_named(const std::string& name, const Params& params);

/// Rewrites a finite signed expansion (a_n in {-1,+1}, b_n any non-zero
/// integer) into an admissible SRCF of the same value: negative partial
/// quotients are folded into the numerators, then pairs b_n = 1, a_{n+1} = -1
/// are removed with 1/(1 - 1/y) = 1 + 1/(y - 1). Terms that cannot be settled
/// without looking past the prefix are dropped. Each rewrite is logged.
CFSpec normalize_to_srcf(const BigInt& head, const std::vector<PartialQuotient>& raw,
                         std::vector<std::string>* log = nullptr,
                         CFSpec* sign_normalized = nullptr);

}  // namespace srcf
