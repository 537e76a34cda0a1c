#pragma once

// Semi-regular continued fractions
//
//   b0 + a1/(b1 + a2/(b2 + ...))
//
// with a_n in {-1, +1}, b_n >= 1 and b_n + a_{n+1} >= 1. A CFSpec is either a
// stored finite prefix or a pure generator rule queried by index n >= 1.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "srcf/numeric.hpp"

namespace srcf {

/// One signed partial quotient (a_n, b_n). Range checks live in validate():
/// raw expansions (e.g. Adams-Davison with negative base) pass through this
/// type before normalization.
struct PartialQuotient {
  int a = 1;
  BigInt b = 1;

  friend bool operator==(const PartialQuotient& x, const PartialQuotient& y) {
    return x.a == y.a && x.b == y.b;
  }
};

using Params = std::map<std::string, std::string>;

/// Family name and parameters a generated spec was built from.
struct Provenance {
  std::string family;
  Params params;
};

/// Term rule for indices n >= 1. Must be pure: the same n always yields the
/// same term.
using TermRule = std::function<PartialQuotient(std::size_t)>;

class CFSpec {
 public:
  CFSpec() = default;
  /// Stored finite prefix: terms[0] is (a_1, b_1).
  CFSpec(BigInt head, std::vector<PartialQuotient> terms);
  /// Generated spec; `length` is nullopt for unbounded rules.
  CFSpec(BigInt head, TermRule rule, std::optional<std::size_t> length, Provenance provenance);

  const BigInt& head() const { return head_; }

  /// Term n (1-based). Throws IndexOutOfRange past the end.
  PartialQuotient term(std::size_t n) const;
  bool has_term(std::size_t n) const { return n >= 1 && (!length_ || n <= *length_); }

  /// Number of available terms, nullopt if unbounded.
  std::optional<std::size_t> length() const { return length_; }
  bool is_generated() const { return static_cast<bool>(rule_); }
  const std::optional<Provenance>& provenance() const { return provenance_; }

  /// Stored copy of the first `depth` terms (clamped to length()).
  CFSpec prefix(std::size_t depth) const;
  /// All stored terms; for generated specs, terms 1..n materialized.
  std::vector<PartialQuotient> terms(std::size_t n) const;

  /// Attaches provenance to a stored spec (used by constructors whose output
  /// is finite).
  CFSpec with_provenance(Provenance provenance) const;

 private:
  BigInt head_ = 0;
  std::shared_ptr<const std::vector<PartialQuotient>> stored_;
  TermRule rule_;
  std::optional<std::size_t> length_;
  std::optional<Provenance> provenance_;
};

enum class CFClass { RCF, NCF, NICF, SCF, LCF, GENERAL };

std::string to_string(CFClass c);

struct Violation {
  std::size_t index = 0;
  std::string rule;  // "a_n in {-1,+1}", "b_n >= 1", "b_n + a_{n+1} >= 1"
};

/// Classification of an inspected prefix. Memberships hold on the prefix
/// only; nothing is claimed about terms beyond `depth`.
struct ClassReport {
  std::size_t depth = 0;
  std::set<CFClass> classes;
  /// Indices n in [1, depth] with b_n + a_{n+1} >= 2.
  std::size_t cond1_witness_count = 0;
  std::optional<std::size_t> last_cond1_witness;
  /// No witness in the second half of the prefix: a suspected tail of the
  /// all-(-1, 2) kind.
  bool cond1_suspect = false;
  /// Alternative phrasing: length of the trailing all-(a_n = -1) run and how
  /// many b_n >= 3 it contains.
  std::size_t trailing_negative_run = 0;
  std::size_t trailing_negative_large_b = 0;
  std::vector<Violation> violations;

  bool has(CFClass c) const { return classes.count(c) != 0; }
};

/// Non-throwing inspection of terms 1..depth (pairs needing a_{n+1} use term
/// depth+1 when available). Violations are listed, not raised.
ClassReport inspect(const CFSpec& spec, std::size_t depth);

/// As inspect(), but throws MalformedSpec listing every violation.
ClassReport validate(const CFSpec& spec, std::size_t depth);

/// Builds a spec from a registered family; see registered_families().
CFSpec family_generator(const std::string& name, const Params& params);

/// Names accepted by family_generator.
std::vector<std::string> registered_families();

}  // namespace srcf
