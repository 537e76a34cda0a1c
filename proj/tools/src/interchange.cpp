#include "srcf_tools/interchange.hpp"

#include <string>

#include "srcf/error.hpp"

namespace srcf::tools {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

BigInt integer_field(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
  parse_fail(where + " must be a decimal string or an integer");
}

int sign_field(const Json& v, const std::string& where) {
  BigInt a = integer_field(v, where);
  // Out-of-range signs are kept so validate() can report them with an index.
  if (a > 1000 || a < -1000) parse_fail(where + " is not a sign");
  return static_cast<int>(a.get_si());
}

std::string param_value(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_array()) {
    std::string out;
    for (const auto& x : v) {
      if (!out.empty()) out += ",";
      out += param_value(x, key);
    }
    return out;
  }
  parse_fail("param '" + key + "' must be a string, an integer or a list");
}

Json params_json(const Params& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p) out[k] = v;
  return out;
}

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json opt(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

CFSpec spec_from_json(const Json& doc) {
  if (!doc.is_object()) parse_fail("spec document must be a JSON object");
  if (doc.contains("terms")) {
    if (!doc.contains("head")) parse_fail("explicit spec needs a 'head'");
    BigInt head = integer_field(doc["head"], "head");
    const Json& terms = doc["terms"];
    if (!terms.is_array()) parse_fail("'terms' must be an array");
    std::vector<PartialQuotient> out;
    out.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const Json& t = terms[i];
      const std::string where = "terms[" + std::to_string(i) + "]";
      if (!t.is_array() || t.size() != 2) parse_fail(where + " must be a pair [a, b]");
      out.push_back({sign_field(t[0], where + ".a"), integer_field(t[1], where + ".b")});
    }
    CFSpec spec(head, std::move(out));
    if (doc.contains("provenance")) {
      const Json& pj = doc["provenance"];
      Provenance prov;
      prov.family = pj.value("family", std::string());
      if (pj.contains("params")) {
        for (const auto& [k, v] : pj["params"].items()) prov.params[k] = param_value(v, k);
      }
      spec = spec.with_provenance(prov);
    }
    return spec;
  }
  if (doc.contains("family")) {
    if (!doc["family"].is_string()) parse_fail("'family' must be a string");
    Params params;
    if (doc.contains("params")) {
      if (!doc["params"].is_object()) parse_fail("'params' must be an object");
      for (const auto& [k, v] : doc["params"].items()) params[k] = param_value(v, k);
    }
    return family_generator(doc["family"].get<std::string>(), params);
  }
  parse_fail("spec needs either 'terms' or 'family'");
}

Json spec_to_json(const CFSpec& spec, std::size_t depth) {
  Json out;
  const auto& prov = spec.provenance();
  const bool explicit_form =
      depth > 0 || (!spec.is_generated() && spec.length().value_or(0) <= kMaxSerializedTerms);
  if (explicit_form) {
    std::size_t n = depth > 0 ? depth : *spec.length();
    if (spec.length()) n = std::min(n, *spec.length());
    out["head"] = to_decimal(spec.head());
    Json terms = Json::array();
    for (const auto& t : spec.terms(n)) terms.push_back(to_json(t));
    out["terms"] = std::move(terms);
    if (prov) out["provenance"] = {{"family", prov->family}, {"params", params_json(prov->params)}};
    return out;
  }
  if (!prov) {
    throw Error(ErrorKind::PreconditionFailed, "generated spec without provenance needs an explicit depth");
  }
  out["family"] = prov->family;
  out["params"] = params_json(prov->params);
  return out;
}

Json to_json(const PartialQuotient& t) { return Json::array({t.a, to_decimal(t.b)}); }

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const Convergent& c) {
  return {{"n", c.n}, {"p", to_decimal(c.p)}, {"q", to_decimal(c.q)}, {"det", c.det}};
}

Json to_json(const Enclosure& e) {
  return {{"depth", e.depth}, {"lo", to_json(e.lo)}, {"hi", to_json(e.hi)}, {"width", to_json(e.width())}};
}

Json to_json(const AlignmentPoint& p) {
  Json src = Json::array(), tgt = Json::array();
  for (const auto& t : p.source_closing) src.push_back(to_json(t));
  for (const auto& t : p.target_closing) tgt.push_back(to_json(t));
  return {{"source", p.source_index}, {"target", p.target_index}, {"source_closing", src}, {"target_closing", tgt}};
}

Json to_json(const TransformResult& r) {
  Json out = spec_to_json(r.output);
  Json pairs = Json::array();
  Json detail = Json::array();
  for (const auto& p : r.alignment) {
    pairs.push_back(Json::array({p.source_index, p.target_index}));
    detail.push_back(to_json(p));
  }
  out["alignment"] = std::move(pairs);
  out["alignment_detail"] = std::move(detail);
  out["relation"] = to_string(r.relation);
  out["withheld"] = r.withheld;
  return out;
}

Json to_json(const ExponentReport& r) {
  Json series = Json::array();
  for (const auto& p : r.lambda_series) {
    series.push_back({{"n", p.n},
                      {"lambda", p.lambda},
                      {"error", p.error},
                      {"q_bits", p.q_bits},
                      {"q_next_bits", p.q_next_bits}});
  }
  return {{"n_max", r.n_max},
          {"method", r.method},
          {"window_fraction", r.window_fraction},
          {"window", Json::array({r.window_start, r.n_max == 0 ? 0 : r.n_max - 1})},
          {"mu_form", opt(r.mu_form)},
          {"mu_form_error", opt(r.mu_form_error)},
          {"mu_form_argmax", opt(r.mu_form_argmax)},
          {"mu_form_full", opt(r.mu_form_full)},
          {"mu_form1", opt(r.mu_form1)},
          {"mu_form1_error", opt(r.mu_form1_error)},
          {"mu_form1_argmax", opt(r.mu_form1_argmax)},
          {"mu_form1_full", opt(r.mu_form1_full)},
          {"form1_diagnostic", opt(r.form1_diagnostic)},
          {"log_bits", r.log_bits},
          {"log_error_bound", r.log_error_bound},
          {"skipped", r.skipped},
          {"lambda_series", std::move(series)}};
}

Json to_json(const ConditionReport& r) {
  return {{"range", Json::array({r.from_index, r.to_index})},
          {"A", r.holds_A},
          {"B", r.holds_B},
          {"C", r.holds_C},
          {"D", r.holds_D},
          {"max_run_neg_a", r.max_run_neg_a},
          {"max_run_b2", r.max_run_b2},
          {"trailing_run_neg_a", r.trailing_run_neg_a},
          {"trailing_run_b2", r.trailing_run_b2},
          {"notes", r.notes}};
}

Json to_json(const BoundConstants& c) {
  return {{"rho", to_json(c.rho)}, {"sigma", to_json(c.sigma)}, {"tau", to_json(c.tau)}};
}

Json to_json(const SandwichReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"verdict", to_string(row.overall())},
                    {"growth", to_string(row.growth)},
                    {"lower", to_string(row.lower)},
                    {"upper", to_string(row.upper)},
                    {"growth_margin", to_json(row.growth_margin)},
                    {"lower_margin", to_json(row.lower_margin)},
                    {"upper_margin", to_json(row.upper_margin)}});
  }
  return {{"constants", to_json(r.constants)},
          {"eval_depth", r.eval_depth},
          {"verdict", to_string(r.overall())},
          {"passed", r.passed},
          {"failed", r.failed},
          {"indeterminate", r.indeterminate},
          {"rows", std::move(rows)}};
}

Json to_json(const EncadReport& r) {
  return {{"n_max", r.n_max},
          {"upper_ok", r.upper_ok},
          {"first_failure", opt(r.first_failure)},
          {"empirical_K", r.empirical_K},
          {"empirical_K_index", r.empirical_K_index}};
}

Json to_json(const ClassReport& r) {
  Json classes = Json::array();
  for (auto c : r.classes) classes.push_back(to_string(c));
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back({{"index", v.index}, {"rule", v.rule}});
  return {{"depth", r.depth},
          {"classes", std::move(classes)},
          {"cond1_witness_count", r.cond1_witness_count},
          {"last_cond1_witness", opt(r.last_cond1_witness)},
          {"cond1_suspect", r.cond1_suspect},
          {"trailing_negative_run", r.trailing_negative_run},
          {"trailing_negative_large_b", r.trailing_negative_large_b},
          {"violations", std::move(violations)}};
}

}  // namespace srcf::tools
