#pragma once

// Rewriting between continued-fraction families: NCF <-> RCF, LCF -> RCF and
// the general SRCF -> RCF transform, each with a certified alignment map.

#include <cstddef>
#include <string>
#include <vector>

#include "srcf/cf.hpp"
#include "srcf/numeric.hpp"

namespace srcf {

/// Value relation between a source alpha and a target beta.
enum class Relation {
  Identity,  // alpha = beta
  OnePlus,   // alpha = 1 + beta
  TwoMinus,  // alpha = 2 - beta
};

std::string to_string(Relation r);
Rational apply(Relation r, const Rational& beta);

/// The source truncated after `source_index` terms and extended by
/// `source_closing` has exactly the value of the target truncated after
/// `target_index` terms and extended by `target_closing` (up to the result's
/// relation). Closing lists are usually empty or a single (+1, 1).
struct AlignmentPoint {
  std::size_t source_index = 0;
  std::size_t target_index = 0;
  std::vector<PartialQuotient> source_closing;
  std::vector<PartialQuotient> target_closing;
};

struct TransformResult {
  CFSpec output;
  std::vector<AlignmentPoint> alignment;
  Relation relation = Relation::Identity;
  /// Source terms read but not reflected in the output because a deeper term
  /// could still change them.
  std::size_t withheld = 0;
};

/// Exact value check of one alignment point.
bool alignment_holds(const CFSpec& source, const CFSpec& target, const AlignmentPoint& point,
                     Relation relation = Relation::Identity);

/// Requires a_n = -1 and b_n >= 2 on 1..depth with some b_n >= 3. Output is
/// [c_0; c_1, ..., c_{2K}] up to the last marked index n_K <= depth, aligned
/// at (n_k, 2k) with the target closed by a final partial quotient 1.
TransformResult ncf_to_rcf(const CFSpec& spec, std::size_t depth);

/// Inverse of ncf_to_rcf on complete pairs (c_{2k-1}, c_{2k}); an unpaired
/// last term is withheld.
TransformResult rcf_to_ncf(const CFSpec& spec, std::size_t depth);

struct LehnerRuns {
  /// l_0, l_1, ... : runs of (+1, 1) before each block, l_k preceding block
  /// k+1. A trailing run after the last complete block is included.
  std::vector<std::size_t> l;
  /// m_1, m_2, ... : runs of (-1, 2) inside each complete block.
  std::vector<std::size_t> m;
  Relation head_relation = Relation::OnePlus;
  /// Source index of the (-1, 1) closing block k (1-based k).
  std::vector<std::size_t> block_end;
  /// Terms after the last complete block.
  std::size_t open_tail = 0;
};

LehnerRuns lcf_decompose(const CFSpec& spec, std::size_t depth);

/// Regular expansion of beta, with alpha = 1 + beta or alpha = 2 - beta.
/// Emitted through m_K + 2 of the last complete block K.
TransformResult lcf_to_rcf(const CFSpec& spec, std::size_t depth);

/// Regular expansion of the relation image: turns the RCF of beta into the
/// RCF of 1 + beta or 2 - beta (the latter needs at least one term).
CFSpec apply_relation(const CFSpec& beta_rcf, Relation relation);

/// Any admissible prefix to an RCF prefix, via
///   x - 1/y = (x - 1) + 1/(1 + 1/(y - 1)),   x + 1/(0 + 1/y) = x + y.
/// Partial quotients that a deeper source term could still alter are held
/// back; withheld counts them.
TransformResult srcf_to_rcf(const CFSpec& spec, std::size_t depth);

/// True iff every alignment point holds exactly and the deepest enclosures
/// of both specs intersect with widths below `tolerance`. Unbounded specs
/// are enclosed at the deepest aligned index (or `min_depth`, if larger).
bool certify_equivalence(const CFSpec& a, const CFSpec& b,
                         const std::vector<AlignmentPoint>& alignment, const Rational& tolerance,
                         Relation relation = Relation::Identity, std::size_t min_depth = 0);

}  // namespace srcf
