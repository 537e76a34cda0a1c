#include "srcf/constructors.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <sstream>

#include "srcf/error.hpp"

namespace srcf {

namespace {

constexpr std::size_t kIndexCap = std::numeric_limits<std::size_t>::max() / 4;

std::size_t saturate(const BigInt& v) {
  if (v < 0) return 0;
  if (v.fits_ulong_p() && v.get_ui() < kIndexCap) return static_cast<std::size_t>(v.get_ui());
  return kIndexCap;
}

Params join_params(std::initializer_list<std::pair<std::string, std::string>> items) {
  return Params(items.begin(), items.end());
}

std::string join(const std::vector<BigInt>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += to_decimal(values[i]);
  }
  return out;
}

std::vector<PartialQuotient> rcf_terms(const std::vector<BigInt>& c) {
  std::vector<PartialQuotient> out;
  out.reserve(c.size());
  for (const auto& v : c) out.push_back({1, v});
  return out;
}

// Index of the last start <= n in a sorted vector of block starts.
std::size_t block_of(const std::vector<BigInt>& starts, const BigInt& n) {
  auto it = std::upper_bound(starts.begin(), starts.end(), n,
                             [](const BigInt& x, const BigInt& s) { return x < s; });
  return static_cast<std::size_t>(std::distance(starts.begin(), it)) - 1;
}

}  // namespace

NcfExponentConstruction construct_ncf_exponent(const TargetExponentParams& params) {
  if (params.s == 1) {
    NcfExponentConstruction out;
    out.ncf = omega();
    return out;
  }
  if (params.s < 2) {
    throw Error(ErrorKind::BadTarget, "target exponent must be 1 or >= 2, got " + to_string(params.s));
  }
  if (params.k_max < 1) throw Error(ErrorKind::BadParams, "k_max must be >= 1");

  const Rational excess = params.s - 2;
  // Head 0 with a_1 = -1, so c_0 = b_0 - 1 = -1.
  std::vector<BigInt> c{BigInt(-1)};
  BigInt q_prev = 0, q = 1;  // Q_{-1}, Q_0
  auto push = [&](const BigInt& value) {
    c.push_back(value);
    BigInt next = value * q + q_prev;
    q_prev = q;
    q = next;
  };

  NcfExponentConstruction out;
  BigInt position = 0;
  for (std::size_t k = 0; k < params.k_max; ++k) {
    BigInt gap = floor_pow(q, excess);  // q is Q_{2k} here
    position += gap;
    out.positions.push_back(position);
    push(gap);
    push(1);  // b_{n_k} - 2
  }
  out.c = c;

  auto positions = std::make_shared<const std::vector<BigInt>>(out.positions);
  TermRule rule = [positions](std::size_t n) {
    BigInt idx(static_cast<unsigned long>(n));
    bool marked = std::binary_search(positions->begin(), positions->end(), idx,
                                     [](const BigInt& x, const BigInt& y) { return x < y; });
    return PartialQuotient{-1, marked ? BigInt(3) : BigInt(2)};
  };
  Params prov = join_params({{"s", to_string(params.s)}, {"k_max", std::to_string(params.k_max)}});
  out.ncf = CFSpec(0, rule, saturate(out.positions.back()), {"ncf_exponent", prov});
  std::vector<BigInt> tail(c.begin() + 1, c.end());
  out.companion_rcf =
      CFSpec(c.front(), rcf_terms(tail)).with_provenance({"ncf_exponent_companion", prov});
  return out;
}

LcfExponentConstruction construct_lcf_exponent(const TargetExponentParams& params) {
  if (params.s <= 2) {
    throw Error(ErrorKind::BadTarget, "the Lehner construction needs s > 2, got " + to_string(params.s));
  }
  if (params.k_max < 1) throw Error(ErrorKind::BadParams, "k_max must be >= 1");

  const Rational excess = params.s - 2;
  // [1; 1, m_1 + 2, ...]: Q_0 = 1, Q_1 = 1.
  std::vector<BigInt> d{BigInt(1)};
  BigInt q_prev = 1, q = 1;  // Q_0, Q_1
  LcfExponentConstruction out;
  for (std::size_t k = 1; k <= params.k_max; ++k) {
    BigInt partial = floor_pow(q, excess);  // Q_k
    if (partial < 2) partial = 2;
    out.m.push_back(partial - 2);
    d.push_back(partial);
    BigInt next = partial * q + q_prev;
    q_prev = q;
    q = next;
  }

  // Block k occupies [start_k, start_k + m_k + 1]: (+1,2), m_k x (-1,2), (-1,1).
  auto starts = std::make_shared<std::vector<BigInt>>();
  auto m = std::make_shared<const std::vector<BigInt>>(out.m);
  BigInt start = 1;
  for (const auto& mk : out.m) {
    starts->push_back(start);
    start += mk + 2;
  }
  std::shared_ptr<const std::vector<BigInt>> frozen = starts;
  TermRule rule = [frozen, m](std::size_t n) {
    BigInt idx(static_cast<unsigned long>(n));
    std::size_t k = block_of(*frozen, idx);
    BigInt offset = idx - (*frozen)[k];
    if (offset == 0) return PartialQuotient{1, 2};
    if (offset <= (*m)[k]) return PartialQuotient{-1, 2};
    return PartialQuotient{-1, 1};
  };
  Params prov = join_params({{"s", to_string(params.s)}, {"k_max", std::to_string(params.k_max)}});
  out.lcf = CFSpec(1, rule, saturate(start - 1), {"lcf_exponent", prov});
  std::vector<BigInt> tail(d.begin(), d.end());
  out.companion_rcf = CFSpec(1, rcf_terms(tail)).with_provenance({"lcf_exponent_companion", prov});
  return out;
}

CFSpec normalize_to_srcf(const BigInt& head, const std::vector<PartialQuotient>& raw,
                         std::vector<std::string>* log, CFSpec* sign_normalized) {
  BigInt h = head;
  std::vector<PartialQuotient> t = raw;
  auto note = [&](const std::string& s) {
    if (log) log->push_back(s);
  };

  // (1) a/(b + v) = (-a)/(-b - v): fold negative partial quotients.
  auto fold_signs = [&]() {
    bool changed = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].b < 0) {
        t[i].a = -t[i].a;
        t[i].b = -t[i].b;
        if (i + 1 < t.size()) t[i + 1].a = -t[i + 1].a;
        changed = true;
      }
    }
    return changed;
  };
  auto prev_b = [&](std::size_t i) -> BigInt& { return i == 0 ? h : t[i - 1].b; };

  if (fold_signs()) note("folded negative partial quotients into numerator signs");
  if (sign_normalized) *sign_normalized = CFSpec(h, t);

  for (std::size_t guard = 0; guard < 4 * raw.size() + 8; ++guard) {
    bool changed = false;
    // (2) X + a/(0 + a'/(b' + v)) = (X + a a' b') + (a a')·v.
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i].b != 0) continue;
      if (i + 1 >= t.size()) {
        t.resize(i);
        note("dropped trailing zero partial quotient at n=" + std::to_string(i + 1));
      } else {
        int s = t[i].a * t[i + 1].a;
        prev_b(i) += s * t[i + 1].b;
        if (i + 2 < t.size()) t[i + 2].a *= s;
        t.erase(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        note("fused zero partial quotient at n=" + std::to_string(i + 1));
      }
      changed = true;
      break;
    }
    if (!changed) changed = fold_signs();
    if (!changed) {
      // (3) X + a/(1 - 1/y) = (X + a) + a/(y - 1).
      for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (t[i].b == 1 && t[i + 1].a == -1) {
          prev_b(i) += t[i].a;
          t[i].b = t[i + 1].b - 1;
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(i) + 1);
          note("removed b_n = 1, a_{n+1} = -1 at n=" + std::to_string(i + 1));
          changed = true;
          break;
        }
      }
    }
    if (!changed) {
      CFSpec out(h, t);
      if (!t.empty()) validate(out, t.size());
      return out;
    }
  }
  throw Error(ErrorKind::BadParams, "normalization to SRCF form did not settle");
}

AdamsDavisonConstruction construct_adams_davison(const AdamsDavisonParams& params,
                                                 std::size_t n_max) {
  const BigInt& b = params.b;
  if (abs(b) < 2) throw Error(ErrorKind::BadParams, "|b| must be >= 2");
  if (n_max < 1) throw Error(ErrorKind::BadParams, "n_max must be >= 1");
  const CFSpec& inv = params.alpha_inverse_rcf;
  if (!inv.has_term(n_max)) {
    throw Error(ErrorKind::BadParams, "expansion of 1/alpha has fewer than n_max terms");
  }
  if (inv.head() < 0) throw Error(ErrorKind::BadParams, "alpha must be positive");

  AdamsDavisonConstruction out;
  out.q = {BigInt(0), BigInt(1)};  // q_{-1}, q_0
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto pq = inv.term(n);
    if (pq.a != 1 || pq.b < 1) throw Error(ErrorKind::BadParams, "1/alpha must be given as an RCF");
    out.q.push_back(pq.b * out.q[n] + out.q[n - 1]);
  }
  // q_j is stored at out.q[j + 1].
  auto q_at = [&](long j) -> const BigInt& { return out.q[static_cast<std::size_t>(j + 1)]; };
  auto power = [&](const BigInt& e) {
    // Resource guard: b^e must stay below about 2^24 bits.
    const unsigned long bits_per_unit = mpz_sizeinbase(b.get_mpz_t(), 2);
    if (!e.fits_ulong_p() || e.get_ui() > (1ul << 24) / bits_per_unit) {
      throw Error(ErrorKind::BadParams, "exponent q_n = " + to_decimal(e) + " too large to expand; lower n_max");
    }
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e.get_ui());
    return r;
  };

  out.raw_head = inv.head() * b;
  std::vector<PartialQuotient> raw;
  BigInt pow_nm2 = power(q_at(-1));
  BigInt pow_nm1 = power(q_at(0));
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigInt pow_n = power(q_at(static_cast<long>(n)));
    BigInt num = pow_n - pow_nm2;
    BigInt den = pow_nm1 - 1;
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
      throw Error(ErrorKind::DivisibilityBreach, "b_" + std::to_string(n) + " is not an integer");
    }
    BigInt bn;
    mpz_divexact(bn.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.raw_terms.push_back(bn);
    raw.push_back({1, bn});
    pow_nm2 = std::move(pow_nm1);
    pow_nm1 = std::move(pow_n);
  }

  CFSpec normalized = normalize_to_srcf(out.raw_head, raw, &out.rewrites, &out.sign_normalized);
  Params prov{{"b", to_decimal(b)}, {"n_max", std::to_string(n_max)}};
  if (inv.provenance()) {
    prov["alpha_inverse_family"] = inv.provenance()->family;
    for (const auto& [k, v] : inv.provenance()->params) prov["alpha_inverse_" + k] = v;
  }
  out.spec = normalized.with_provenance({"adams_davison", prov});
  return out;
}

CFSpec e_recip(const BigInt& b) {
  if (b < 1) throw Error(ErrorKind::BadParams, "e_recip needs b >= 1");
  Params prov{{"b", to_decimal(b)}};
  if (b == 1) {
    // Term n >= 2 is term n+1 of the displayed expansion.
    TermRule rule = [](std::size_t n) {
      if (n == 1) return PartialQuotient{1, 1};
      std::size_t m = n + 1;
      if (m % 2 == 1) return PartialQuotient{1, BigInt(static_cast<unsigned long>(m))};
      return PartialQuotient{-1, 2};
    };
    return CFSpec(2, rule, std::nullopt, {"e_recip", prov});
  }
  TermRule rule = [b](std::size_t n) {
    if (n % 2 == 1) return PartialQuotient{1, BigInt(static_cast<unsigned long>(n)) * b};
    return PartialQuotient{-1, 2};
  };
  return CFSpec(1, rule, std::nullopt, {"e_recip", prov});
}

CFSpec bessel_ratio() {
  TermRule rule = [](std::size_t n) {
    return PartialQuotient{1, BigInt(static_cast<unsigned long>(n + 1))};
  };
  return CFSpec(1, rule, std::nullopt, {"bessel_ratio", {}});
}

CFSpec omega() {
  TermRule rule = [](std::size_t n) { return PartialQuotient{n == 1 ? 1 : -1, 2}; };
  return CFSpec(0, rule, std::nullopt, {"omega", {}});
}

CFSpec example4(const Rational& sigma, bool alternate) {
  if (sigma <= 1) throw Error(ErrorKind::BadParams, "example4 needs sigma > 1");
  if (!sigma.get_num().fits_ulong_p() || !sigma.get_den().fits_ulong_p()) {
    throw Error(ErrorKind::BadParams, "sigma numerator/denominator too large");
  }
  TermRule rule = [sigma, alternate](std::size_t n) {
    int a = (alternate && n % 2 == 0) ? -1 : 1;
    if (n % 3 != 0) return PartialQuotient{a, 2};
    unsigned long k = static_cast<unsigned long>(n / 3);
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), sigma.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), sigma.get_den_mpz_t(), k);
    Rational exponent(num, den);
    exponent.canonicalize();
    return PartialQuotient{a, floor_exp2(exponent)};
  };
  Params prov{{"sigma", to_string(sigma)}};
  if (alternate) prov["signs"] = "alternate";
  return CFSpec(0, rule, std::nullopt, {"example4", prov});
}

CFSpec lehner_sqrt2() {
  TermRule rule = [](std::size_t n) {
    return n % 2 == 1 ? PartialQuotient{1, 2} : PartialQuotient{-1, 1};
  };
  return CFSpec(1, rule, std::nullopt, {"lehner_sqrt2", {}});
}

CFSpec lehner_from_runs(const std::vector<std::size_t>& l, const std::vector<std::size_t>& m) {
  if (l.size() != m.size() || l.empty()) {
    throw Error(ErrorKind::BadParams, "lehner_from_runs needs equally many l and m runs");
  }
  std::vector<PartialQuotient> terms;
  for (std::size_t k = 0; k < l.size(); ++k) {
    terms.insert(terms.end(), l[k], PartialQuotient{1, 1});
    terms.push_back({1, 2});
    terms.insert(terms.end(), m[k], PartialQuotient{-1, 2});
    terms.push_back({-1, 1});
  }
  auto to_list = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  return CFSpec(1, std::move(terms)).with_provenance({"lehner_runs", {{"l", to_list(l)}, {"m", to_list(m)}}});
}

CFSpec constant_ncf(const BigInt& b, const BigInt& head) {
  if (b < 2) throw Error(ErrorKind::BadParams, "constant_ncf needs b >= 2");
  TermRule rule = [b](std::size_t) { return PartialQuotient{-1, b}; };
  return CFSpec(head, rule, std::nullopt,
                {"constant_ncf", {{"b", to_decimal(b)}, {"head", to_decimal(head)}}});
}

CFSpec constant_rcf(const BigInt& b, const BigInt& head) {
  if (b < 1) throw Error(ErrorKind::BadParams, "constant_rcf needs b >= 1");
  TermRule rule = [b](std::size_t) { return PartialQuotient{1, b}; };
  return CFSpec(head, rule, std::nullopt,
                {"constant_rcf", {{"b", to_decimal(b)}, {"head", to_decimal(head)}}});
}

CFSpec periodic_rcf(const BigInt& head, const std::vector<BigInt>& period) {
  if (period.empty()) throw Error(ErrorKind::BadParams, "empty period");
  for (const auto& p : period) {
    if (p < 1) throw Error(ErrorKind::BadParams, "period entries must be >= 1");
  }
  auto shared = std::make_shared<const std::vector<BigInt>>(period);
  TermRule rule = [shared](std::size_t n) {
    return PartialQuotient{1, (*shared)[(n - 1) % shared->size()]};
  };
  return CFSpec(head, rule, std::nullopt,
                {"periodic_rcf", {{"head", to_decimal(head)}, {"period", join(period)}}});
}

namespace {

const std::string& require(const Params& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorKind::BadParams, "missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

CFSpec construct_named(const std::string& name, const Params& params) {
  try {
    if (name == "e_recip") {
      auto it = params.find("b");
      return e_recip(it == params.end() ? BigInt(1) : parse_bigint(it->second));
    }
    if (name == "bessel_ratio") return bessel_ratio();
    if (name == "omega") return omega();
    if (name == "lehner_sqrt2") return lehner_sqrt2();
    if (name == "example4") {
      auto signs = params.find("signs");
      bool alternate = signs != params.end() && signs->second == "alternate";
      return example4(parse_rational(require(params, "sigma")), alternate);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw Error(ErrorKind::BadParams, e.detail());
    throw;
  }
  throw Error(ErrorKind::UnknownFamily, "'" + name + "' is not a named fraction");
}

}  // namespace srcf
