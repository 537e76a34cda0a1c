#include <functional>
#include <map>
#include <set>

#include "srcf/cf.hpp"
#include "srcf/constructors.hpp"
#include "srcf/error.hpp"

namespace srcf {

namespace {

class ParamReader {
 public:
  ParamReader(std::string family, const Params& params, std::set<std::string> allowed)
      : family_(std::move(family)), params_(params) {
    for (const auto& [key, value] : params_) {
      if (!allowed.count(key)) {
        throw Error(ErrorKind::BadParams, "family '" + family_ + "' has no parameter '" + key + "'");
      }
    }
  }

  template <typename F>
  auto wrap(F&& f, const std::string& key) const {
    try {
      return f();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError) {
        throw Error(ErrorKind::BadParams, "parameter '" + key + "': " + e.detail());
      }
      throw;
    }
  }

  bool has(const std::string& key) const { return params_.count(key) != 0; }

  const std::string& raw(const std::string& key) const {
    auto it = params_.find(key);
    if (it == params_.end()) {
      throw Error(ErrorKind::BadParams, "family '" + family_ + "' needs parameter '" + key + "'");
    }
    return it->second;
  }

  BigInt integer(const std::string& key, std::optional<BigInt> fallback = std::nullopt) const {
    if (!has(key) && fallback) return *fallback;
    return wrap([&] { return parse_bigint(raw(key)); }, key);
  }

  Rational rational(const std::string& key) const {
    return wrap([&] { return parse_rational(raw(key)); }, key);
  }

  std::size_t index(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) const {
    if (!has(key) && fallback) return *fallback;
    BigInt v = integer(key);
    if (v < 0 || !v.fits_ulong_p()) {
      throw Error(ErrorKind::BadParams, "parameter '" + key + "' must be a non-negative index");
    }
    return static_cast<std::size_t>(v.get_ui());
  }

  std::vector<BigInt> list(const std::string& key) const {
    const std::string& text = raw(key);
    std::vector<BigInt> out;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t comma = text.find(',', start);
      if (comma == std::string::npos) comma = text.size();
      std::string item = text.substr(start, comma - start);
      out.push_back(wrap([&] { return parse_bigint(item); }, key));
      start = comma + 1;
    }
    return out;
  }

  std::vector<std::size_t> index_list(const std::string& key) const {
    std::vector<std::size_t> out;
    for (const auto& v : list(key)) {
      if (v < 0 || !v.fits_ulong_p()) throw Error(ErrorKind::BadParams, "bad run length in '" + key + "'");
      out.push_back(static_cast<std::size_t>(v.get_ui()));
    }
    return out;
  }

 private:
  std::string family_;
  const Params& params_;
};

using Builder = std::function<CFSpec(const Params&)>;

TargetExponentParams target_params(const ParamReader& r) {
  TargetExponentParams t;
  t.s = r.rational("s");
  t.k_max = r.index("k_max", 10);
  return t;
}

CFSpec build_adams_davison(const Params& params) {
  ParamReader r("adams_davison", params, {"b", "n_max", "alpha", "period", "inverse_head", "inverse_period"});
  AdamsDavisonParams p;
  p.b = r.integer("b", BigInt(2));
  std::size_t n_max = r.index("n_max", 25);
  if (r.has("inverse_period")) {
    p.alpha_inverse_rcf = periodic_rcf(r.integer("inverse_head", BigInt(0)), r.list("inverse_period"));
  } else {
    std::vector<BigInt> period{BigInt(1)};
    if (r.has("alpha") && r.raw("alpha") != "golden") {
      throw Error(ErrorKind::BadParams, "alpha must be 'golden'; use period or inverse_period otherwise");
    }
    if (r.has("period")) period = r.list("period");
    // alpha = [c1; c2, ..., cH, c1, ...] purely periodic, so 1/alpha = [0; c1, c2, ...].
    p.alpha_inverse_rcf = periodic_rcf(0, period);
  }
  return construct_adams_davison(p, n_max).spec;
}

const std::map<std::string, Builder>& registry() {
  static const std::map<std::string, Builder> table = {
      {"constant_ncf",
       [](const Params& p) {
         ParamReader r("constant_ncf", p, {"b", "head"});
         return constant_ncf(r.integer("b"), r.integer("head", BigInt(0)));
       }},
      {"constant_rcf",
       [](const Params& p) {
         ParamReader r("constant_rcf", p, {"b", "head"});
         return constant_rcf(r.integer("b"), r.integer("head", BigInt(0)));
       }},
      {"periodic_rcf",
       [](const Params& p) {
         ParamReader r("periodic_rcf", p, {"head", "period"});
         return periodic_rcf(r.integer("head", BigInt(0)), r.list("period"));
       }},
      {"bessel_ratio",
       [](const Params& p) {
         ParamReader r("bessel_ratio", p, {});
         return bessel_ratio();
       }},
      {"omega",
       [](const Params& p) {
         ParamReader r("omega", p, {});
         return omega();
       }},
      {"lehner_sqrt2",
       [](const Params& p) {
         ParamReader r("lehner_sqrt2", p, {});
         return lehner_sqrt2();
       }},
      {"e_recip",
       [](const Params& p) {
         ParamReader r("e_recip", p, {"b"});
         return e_recip(r.integer("b", BigInt(1)));
       }},
      {"example4",
       [](const Params& p) {
         ParamReader r("example4", p, {"sigma", "signs"});
         bool alternate = false;
         if (r.has("signs")) {
           if (r.raw("signs") == "alternate") alternate = true;
           else if (r.raw("signs") != "plus") throw Error(ErrorKind::BadParams, "signs must be plus or alternate");
         }
         return example4(r.rational("sigma"), alternate);
       }},
      {"lehner_runs",
       [](const Params& p) {
         ParamReader r("lehner_runs", p, {"l", "m"});
         return lehner_from_runs(r.index_list("l"), r.index_list("m"));
       }},
      {"ncf_exponent",
       [](const Params& p) {
         ParamReader r("ncf_exponent", p, {"s", "k_max"});
         return construct_ncf_exponent(target_params(r)).ncf;
       }},
      {"ncf_exponent_companion",
       [](const Params& p) {
         ParamReader r("ncf_exponent_companion", p, {"s", "k_max"});
         auto c = construct_ncf_exponent(target_params(r));
         if (c.c.empty()) throw Error(ErrorKind::BadTarget, "s = 1 has no companion expansion");
         return c.companion_rcf;
       }},
      {"lcf_exponent",
       [](const Params& p) {
         ParamReader r("lcf_exponent", p, {"s", "k_max"});
         return construct_lcf_exponent(target_params(r)).lcf;
       }},
      {"lcf_exponent_companion",
       [](const Params& p) {
         ParamReader r("lcf_exponent_companion", p, {"s", "k_max"});
         return construct_lcf_exponent(target_params(r)).companion_rcf;
       }},
      {"adams_davison", build_adams_davison},
  };
  return table;
}

}  // namespace

CFSpec family_generator(const std::string& name, const Params& params) {
  const auto& table = registry();
  auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorKind::UnknownFamily, "unknown family '" + name + "'");
  // Record the caller's parameters so that the spec can be rebuilt from its
  // provenance alone.
  return it->second(params).with_provenance({name, params});
}

std::vector<std::string> registered_families() {
  std::vector<std::string> names;
  for (const auto& [name, builder] : registry()) names.push_back(name);
  return names;
}

}  // namespace srcf
