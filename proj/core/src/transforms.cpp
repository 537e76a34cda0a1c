#include "srcf/transforms.hpp"

#include <algorithm>

#include "srcf/convergents.hpp"
#include "srcf/error.hpp"

namespace srcf {

namespace {

std::size_t clamp_depth(const CFSpec& spec, std::size_t depth) {
  if (spec.length() && depth > *spec.length()) return *spec.length();
  return depth;
}

std::vector<PartialQuotient> rcf_terms(const std::vector<BigInt>& c, std::size_t from) {
  std::vector<PartialQuotient> out;
  for (std::size_t i = from; i < c.size(); ++i) out.push_back({1, c[i]});
  return out;
}

Rational truncated_value(const CFSpec& spec, std::size_t index,
                         const std::vector<PartialQuotient>& closing) {
  std::vector<PartialQuotient> t = spec.terms(index);
  if (t.size() != index) {
    throw Error(ErrorKind::IndexOutOfRange, "alignment index " + std::to_string(index) + " past end");
  }
  t.insert(t.end(), closing.begin(), closing.end());
  return finite_value(spec.head(), t);
}

}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Identity: return "identity";
    case Relation::OnePlus: return "alpha = 1 + beta";
    case Relation::TwoMinus: return "alpha = 2 - beta";
  }
  return "?";
}

Rational apply(Relation r, const Rational& beta) {
  switch (r) {
    case Relation::Identity: return beta;
    case Relation::OnePlus: return 1 + beta;
    case Relation::TwoMinus: return 2 - beta;
  }
  return beta;
}

bool alignment_holds(const CFSpec& source, const CFSpec& target, const AlignmentPoint& point,
                     Relation relation) {
  Rational lhs = truncated_value(source, point.source_index, point.source_closing);
  Rational rhs = truncated_value(target, point.target_index, point.target_closing);
  return lhs == apply(relation, rhs);
}

TransformResult ncf_to_rcf(const CFSpec& spec, std::size_t depth) {
  depth = clamp_depth(spec, depth);
  std::vector<std::size_t> marks;
  for (std::size_t n = 1; n <= depth; ++n) {
    PartialQuotient t = spec.term(n);
    if (t.a != -1 || t.b < 2) {
      throw Error(ErrorKind::NotNCF, "term " + std::to_string(n) + " is not (-1, b >= 2)");
    }
    if (t.b >= 3) marks.push_back(n);
  }
  if (marks.empty()) {
    throw Error(ErrorKind::NoLargeTerm, "no b_n >= 3 among the first " + std::to_string(depth) + " terms");
  }

  std::vector<BigInt> c{spec.head() - 1};
  TransformResult out;
  out.alignment.push_back({0, 0, {}, {{1, 1}}});
  std::size_t prev = 0;
  for (std::size_t k = 0; k < marks.size(); ++k) {
    c.push_back(BigInt(static_cast<unsigned long>(marks[k] - prev)));
    c.push_back(spec.term(marks[k]).b - 2);
    prev = marks[k];
    out.alignment.push_back({marks[k], 2 * (k + 1), {}, {{1, 1}}});
  }
  out.output = CFSpec(c[0], rcf_terms(c, 1));
  out.withheld = depth - marks.back();
  return out;
}

TransformResult rcf_to_ncf(const CFSpec& spec, std::size_t depth) {
  depth = clamp_depth(spec, depth);
  std::vector<BigInt> c;
  for (std::size_t n = 1; n <= depth; ++n) {
    PartialQuotient t = spec.term(n);
    if (t.a != 1 || t.b < 1) {
      throw Error(ErrorKind::NotRCF, "term " + std::to_string(n) + " is not (+1, b >= 1)");
    }
    c.push_back(t.b);
  }

  TransformResult out;
  std::vector<PartialQuotient> terms;
  out.alignment.push_back({0, 0, {{1, 1}}, {}});
  const std::size_t pairs = c.size() / 2;
  for (std::size_t k = 0; k < pairs; ++k) {
    const BigInt& odd = c[2 * k];
    const BigInt& even = c[2 * k + 1];
    if (!odd.fits_ulong_p() || odd > 1000000) {
      throw Error(ErrorKind::PreconditionFailed, "run of 2s too long to materialize");
    }
    terms.insert(terms.end(), odd.get_ui() - 1, PartialQuotient{-1, 2});
    terms.push_back({-1, even + 2});
    out.alignment.push_back({2 * (k + 1), terms.size(), {{1, 1}}, {}});
  }
  out.output = CFSpec(spec.head() + 1, std::move(terms));
  out.withheld = depth - 2 * pairs;
  return out;
}

LehnerRuns lcf_decompose(const CFSpec& spec, std::size_t depth) {
  depth = clamp_depth(spec, depth);
  if (depth < 1) throw Error(ErrorKind::NotLCF, "empty prefix");
  ClassReport report = inspect(spec, depth);
  if (!report.has(CFClass::LCF)) {
    throw Error(ErrorKind::NotLCF, "prefix is not a Lehner continued fraction");
  }

  LehnerRuns runs;
  runs.head_relation = spec.head() == 1 ? Relation::OnePlus : Relation::TwoMinus;
  bool in_block = false;
  std::size_t l = 0, m = 0;
  for (std::size_t n = 1; n <= depth; ++n) {
    const bool one = spec.term(n).b == 1;
    if (!in_block) {
      if (one) {
        ++l;
      } else {
        runs.l.push_back(l);
        l = 0;
        m = 0;
        in_block = true;
      }
    } else if (!one) {
      ++m;
    } else {
      runs.m.push_back(m);
      runs.block_end.push_back(n);
      in_block = false;
    }
  }
  if (!in_block) runs.l.push_back(l);
  runs.open_tail = depth - (runs.block_end.empty() ? 0 : runs.block_end.back());
  return runs;
}

TransformResult lcf_to_rcf(const CFSpec& spec, std::size_t depth) {
  depth = clamp_depth(spec, depth);
  LehnerRuns runs = lcf_decompose(spec, depth);
  const std::size_t blocks = runs.m.size();
  if (blocks == 0) {
    throw Error(ErrorKind::IncompleteBlock, "prefix closes no (l, m) block");
  }

  TransformResult out;
  out.relation = runs.head_relation;
  out.alignment.push_back({0, 0, {}, {}});
  std::vector<PartialQuotient> terms(runs.l[0] + 1, PartialQuotient{1, 1});
  for (std::size_t k = 0; k < blocks; ++k) {
    if (k > 0) terms.insert(terms.end(), runs.l[k], PartialQuotient{1, 1});
    // Truncating the source right after the closing (-1, 1) of this block
    // lands on the target just before m_k + 2.
    out.alignment.push_back({runs.block_end[k], terms.size(), {}, {}});
    terms.push_back({1, BigInt(static_cast<unsigned long>(runs.m[k])) + 2});
  }
  out.output = CFSpec(0, std::move(terms));
  out.withheld = runs.open_tail;
  return out;
}

CFSpec apply_relation(const CFSpec& beta_rcf, Relation relation) {
  if (relation == Relation::Identity) return beta_rcf;
  const std::size_t len = beta_rcf.length().value_or(0);
  if (!beta_rcf.length()) {
    throw Error(ErrorKind::PreconditionFailed, "apply_relation needs a finite RCF prefix");
  }
  std::vector<PartialQuotient> c = beta_rcf.terms(len);
  if (relation == Relation::OnePlus) return CFSpec(beta_rcf.head() + 1, std::move(c));

  // 2 - (h + [0; c1, c2, ...]) = (1 - h) + (1 - [0; c1, c2, ...]).
  BigInt head = 1 - beta_rcf.head();
  if (c.empty()) return CFSpec(head + 1, {});
  std::vector<PartialQuotient> out;
  if (c[0].b == 1) {
    // 1 - 1/(1 + 1/y) = 1/(1 + y)
    if (c.size() >= 2) {
      out.push_back({1, c[1].b + 1});
      out.insert(out.end(), c.begin() + 2, c.end());
    }
  } else {
    // 1 - 1/(c1 + x) = 1/(1 + 1/(c1 - 1 + x))
    out.push_back({1, 1});
    out.push_back({1, c[0].b - 1});
    out.insert(out.end(), c.begin() + 1, c.end());
  }
  return CFSpec(head, std::move(out));
}

TransformResult srcf_to_rcf(const CFSpec& spec, std::size_t depth) {
  depth = clamp_depth(spec, depth);
  if (depth >= 1) validate(spec, depth);

  // r holds [r_0; r_1, ..., r_L] where the source prefix through term n with
  // tail x equals [r_0; r_1, ..., r_L + x]. A trailing 0 (never the head) is
  // transient and is fused with the next term.
  std::vector<BigInt> r{spec.head()};
  std::vector<AlignmentPoint> candidates;
  for (std::size_t n = 1; n <= depth; ++n) {
    PartialQuotient t = spec.term(n);
    auto append = [&r](const BigInt& v) {
      if (r.size() >= 2 && r.back() == 0) {
        r.pop_back();
        r.back() += v;
      } else {
        r.push_back(v);
      }
    };
    if (t.a == 1) {
      append(t.b);
    } else {
      r.back() -= 1;
      append(1);
      r.push_back(t.b - 1);
    }

    const std::size_t L = r.size() - 1;
    if (L >= 2 && r.back() == 0) {
      candidates.push_back({n, L - 2, {}, {}});
    } else if (L >= 2) {
      candidates.push_back({n, L - 2, {}, {{1, r[L - 1]}, {1, r[L]}}});
    }
  }

  // Indices up to L-2 are final; L-1 is final too unless r_L could still
  // become 0 and fuse into it.
  const std::size_t L = r.size() - 1;
  std::optional<std::size_t> last_stable;
  if (L >= 1 && r.back() >= 2) last_stable = L - 1;
  else if (L >= 2) last_stable = L - 2;
  if (!last_stable) {
    throw Error(ErrorKind::TruncationEmpty,
                "no stable regular partial quotient after " + std::to_string(depth) + " terms");
  }

  TransformResult out;
  std::vector<BigInt> stable(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(*last_stable) + 1);
  out.output = CFSpec(stable[0], rcf_terms(stable, 1));
  std::size_t reflected = 0;
  for (auto& c : candidates) {
    if (c.target_index <= *last_stable) {
      reflected = std::max(reflected, c.source_index);
      out.alignment.push_back(std::move(c));
    }
  }
  out.withheld = depth - reflected;
  return out;
}

bool certify_equivalence(const CFSpec& a, const CFSpec& b,
                         const std::vector<AlignmentPoint>& alignment, const Rational& tolerance,
                         Relation relation, std::size_t min_depth) {
  std::size_t deepest_a = min_depth, deepest_b = min_depth;
  for (const auto& point : alignment) {
    if (!alignment_holds(a, b, point, relation)) return false;
    deepest_a = std::max(deepest_a, point.source_index);
    deepest_b = std::max(deepest_b, point.target_index);
  }
  auto deepest = [](const CFSpec& s, std::size_t fallback) {
    if (!s.length()) return fallback;
    if (*s.length() < 2) {
      throw Error(ErrorKind::EnclosureFailed, "a spec with fewer than 2 terms cannot be enclosed");
    }
    return *s.length() - 2;
  };
  Enclosure ea = enclose(a, deepest(a, deepest_a));
  Enclosure eb = enclose(b, deepest(b, deepest_b));
  Rational b_lo = apply(relation, eb.lo), b_hi = apply(relation, eb.hi);
  if (b_lo > b_hi) std::swap(b_lo, b_hi);
  if (!(ea.width() < tolerance && eb.width() < tolerance)) return false;
  return ea.lo <= b_hi && b_lo <= ea.hi;
}

}  // namespace srcf
