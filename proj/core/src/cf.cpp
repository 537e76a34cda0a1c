#include "srcf/cf.hpp"

#include <sstream>

#include "srcf/error.hpp"

namespace srcf {

CFSpec::CFSpec(BigInt head, std::vector<PartialQuotient> terms)
    : head_(std::move(head)),
      stored_(std::make_shared<const std::vector<PartialQuotient>>(std::move(terms))),
      length_(stored_->size()) {}

CFSpec::CFSpec(BigInt head, TermRule rule, std::optional<std::size_t> length,
               Provenance provenance)
    : head_(std::move(head)),
      rule_(std::move(rule)),
      length_(length),
      provenance_(std::move(provenance)) {}

PartialQuotient CFSpec::term(std::size_t n) const {
  if (!has_term(n)) {
    throw Error(ErrorKind::IndexOutOfRange, "term " + std::to_string(n) + " not available");
  }
  if (rule_) return rule_(n);
  return (*stored_)[n - 1];
}

std::vector<PartialQuotient> CFSpec::terms(std::size_t n) const {
  if (length_ && n > *length_) n = *length_;
  if (!rule_ && n == stored_->size()) return *stored_;
  std::vector<PartialQuotient> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(term(i));
  return out;
}

CFSpec CFSpec::prefix(std::size_t depth) const {
  CFSpec out(head_, terms(depth));
  out.provenance_ = provenance_;
  return out;
}

CFSpec CFSpec::with_provenance(Provenance provenance) const {
  CFSpec out = *this;
  out.provenance_ = std::move(provenance);
  return out;
}

std::string to_string(CFClass c) {
  switch (c) {
    case CFClass::RCF: return "RCF";
    case CFClass::NCF: return "NCF";
    case CFClass::NICF: return "NICF";
    case CFClass::SCF: return "SCF";
    case CFClass::LCF: return "LCF";
    case CFClass::GENERAL: return "GENERAL";
  }
  return "?";
}

ClassReport inspect(const CFSpec& spec, std::size_t depth) {
  if (depth < 1) throw Error(ErrorKind::PreconditionFailed, "validation depth must be >= 1");
  if (spec.length() && depth > *spec.length()) depth = *spec.length();

  ClassReport report;
  report.depth = depth;
  bool rcf = true, ncf = true, nicf = true, scf = true;
  bool lcf = spec.head() == 1 || spec.head() == 2;

  std::vector<PartialQuotient> window;
  window.reserve(depth + 1);
  for (std::size_t n = 1; n <= depth; ++n) window.push_back(spec.term(n));
  std::optional<PartialQuotient> next;
  if (spec.has_term(depth + 1)) next = spec.term(depth + 1);

  auto a_at = [&](std::size_t n) -> std::optional<int> {
    if (n <= depth) return window[n - 1].a;
    if (n == depth + 1 && next) return next->a;
    return std::nullopt;
  };

  if (auto a1 = a_at(1); a1 && lcf) {
    lcf = (spec.head() == 1 && *a1 == 1) || (spec.head() == 2 && *a1 == -1);
  }

  for (std::size_t n = 1; n <= depth; ++n) {
    const auto& pq = window[n - 1];
    if (pq.a != 1 && pq.a != -1) report.violations.push_back({n, "a_n in {-1,+1}"});
    if (pq.b < 1) report.violations.push_back({n, "b_n >= 1"});
    if (pq.a != 1) rcf = false;
    if (pq.a != -1) ncf = false;
    if (pq.b < 2) nicf = scf = false;
    if (pq.b + pq.a < 2) scf = false;
    if (pq.b != 1 && pq.b != 2) lcf = false;

    if (auto an = a_at(n + 1)) {
      BigInt sum = pq.b + *an;
      if (sum < 1) report.violations.push_back({n, "b_n + a_{n+1} >= 1"});
      if (sum >= 2) {
        ++report.cond1_witness_count;
        report.last_cond1_witness = n;
      } else {
        nicf = false;
      }
      if (!((pq.b == 1 && *an == 1) || (pq.b == 2 && *an == -1))) lcf = false;
    }
  }

  for (std::size_t n = depth; n >= 1; --n) {
    if (window[n - 1].a != -1) break;
    ++report.trailing_negative_run;
    if (window[n - 1].b >= 3) ++report.trailing_negative_large_b;
  }
  report.cond1_suspect =
      !report.last_cond1_witness || *report.last_cond1_witness <= depth / 2;

  if (report.violations.empty()) {
    report.classes.insert(CFClass::GENERAL);
    if (rcf) report.classes.insert(CFClass::RCF);
    if (ncf) report.classes.insert(CFClass::NCF);
    if (nicf) report.classes.insert(CFClass::NICF);
    if (scf) report.classes.insert(CFClass::SCF);
    if (lcf) report.classes.insert(CFClass::LCF);
  }
  return report;
}

ClassReport validate(const CFSpec& spec, std::size_t depth) {
  ClassReport report = inspect(spec, depth);
  if (!report.violations.empty()) {
    std::ostringstream msg;
    msg << report.violations.size() << " violation(s):";
    for (const auto& v : report.violations) msg << " [n=" << v.index << ": " << v.rule << "]";
    throw Error(ErrorKind::MalformedSpec, msg.str());
  }
  return report;
}

}  // namespace srcf
