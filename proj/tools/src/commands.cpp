#include "srcf_tools/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srcf/constructors.hpp"
#include "srcf/convergents.hpp"
#include "srcf/error.hpp"
#include "srcf/exponent.hpp"
#include "srcf/quadratic.hpp"
#include "srcf/transforms.hpp"
#include "srcf_tools/interchange.hpp"

namespace srcf::tools {

namespace {

enum class Status { Ok, Error, Indeterminate };

std::string to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::Error: return "error";
    case Status::Indeterminate: return "indeterminate";
  }
  return "error";
}

struct CommandResult {
  Status status = Status::Ok;
  int exit_code = kExitOk;
  Json payload;
  std::vector<std::string> diagnostics;

  void fail(const std::string& note) {
    status = Status::Error;
    exit_code = kExitCheckFailed;
    diagnostics.push_back(note);
  }
  void undecided(const std::string& note) {
    if (status == Status::Ok) {
      status = Status::Indeterminate;
      exit_code = kExitIndeterminate;
    }
    diagnostics.push_back(note);
  }
};

struct InputOptions {
  std::string file;
  std::string family;
  std::vector<std::string> params;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.file, "CF interchange JSON file ('-' for stdin)");
  cmd->add_option("--family", in.family, "Registered family name instead of a file");
  cmd->add_option("--param", in.params, "Family parameter key=value (repeatable)");
}

Params parse_params(const std::vector<std::string>& raw) {
  Params out;
  for (const auto& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::ParseError, "--param expects key=value, got '" + kv + "'");
    }
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

CFSpec load_spec(const InputOptions& in) {
  if (!in.family.empty()) {
    if (!in.file.empty()) throw Error(ErrorKind::ParseError, "give either an input file or --family, not both");
    return family_generator(in.family, parse_params(in.params));
  }
  if (in.file.empty()) throw Error(ErrorKind::ParseError, "no input: pass a spec file or --family");
  if (!in.params.empty()) throw Error(ErrorKind::ParseError, "--param only applies with --family");
  Json doc;
  try {
    if (in.file == "-") {
      doc = Json::parse(std::cin);
    } else {
      std::ifstream f(in.file);
      if (!f) throw Error(ErrorKind::ParseError, "cannot open '" + in.file + "'");
      doc = Json::parse(f);
    }
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  return spec_from_json(doc);
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorKind::ParseError, "range must look like a..b");
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const unsigned long from = std::stoul(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    const unsigned long to = std::stoul(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    if (from > to) throw Error(ErrorKind::ParseError, "range start exceeds its end");
    return {from, to};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "range must look like a..b with non-negative integers");
  }
}

// ---- commands ----------------------------------------------------------

struct ExpandArgs {
  InputOptions in;
  std::size_t terms = 10;
};

CommandResult cmd_expand(const ExpandArgs& args) {
  CFSpec spec = load_spec(args.in);
  CommandResult r;
  std::size_t terms = args.terms;
  if (spec.length() && *spec.length() < terms) {
    terms = *spec.length();
    r.diagnostics.push_back("spec has only " + std::to_string(terms) + " terms");
  }
  Json rows = Json::array();
  for (const auto& c : convergents(spec, terms)) rows.push_back(to_json(c));
  r.payload = {{"terms", terms},
               {"classes", to_json(inspect(spec, terms))},
               {"determinant_certified", true},
               {"rows", std::move(rows)}};
  return r;
}

struct ValueArgs {
  InputOptions in;
  std::size_t depth = 20;
  unsigned digits = 20;
};

CommandResult cmd_value(const ValueArgs& args) {
  CFSpec spec = load_spec(args.in);
  CommandResult r;
  Enclosure e;
  if (spec.length() && *spec.length() < args.depth + 2) {
    // A finite prefix is its own value.
    const std::size_t len = *spec.length();
    validate(spec, len);
    e.depth = len;
    e.lo = e.hi = finite_value(spec.head(), spec.terms(len));
    r.diagnostics.push_back("finite spec of length " + std::to_string(len) + ": exact value");
  } else {
    e = enclose(spec, args.depth);
    if (e.depth != args.depth) {
      r.diagnostics.push_back("depth raised to " + std::to_string(e.depth) + " for a sign-definite tail");
    }
  }
  r.payload = to_json(e);
  r.payload["digits"] = args.digits;
  r.payload["lo_decimal"] = decimal_floor(e.lo, args.digits);
  r.payload["hi_decimal"] = decimal_ceil(e.hi, args.digits);
  r.payload["width_decimal"] = decimal_ceil(e.width(), args.digits);
  return r;
}

struct ConvertArgs {
  InputOptions in;
  std::string mode;
  std::size_t depth = 0;
};

CommandResult cmd_convert(const ConvertArgs& args) {
  CFSpec spec = load_spec(args.in);
  std::size_t depth = args.depth;
  if (depth == 0) {
    if (!spec.length()) throw Error(ErrorKind::ParseError, "--depth is required for unbounded specs");
    depth = *spec.length();
  }
  TransformResult t;
  if (args.mode == "ncf2rcf") t = ncf_to_rcf(spec, depth);
  else if (args.mode == "rcf2ncf") t = rcf_to_ncf(spec, depth);
  else if (args.mode == "lcf2rcf") t = lcf_to_rcf(spec, depth);
  else t = srcf_to_rcf(spec, depth);
  CommandResult r;
  r.payload = to_json(t);
  r.payload["mode"] = args.mode;
  r.payload["source_depth"] = depth;
  if (t.withheld > 0) {
    r.diagnostics.push_back(std::to_string(t.withheld) + " trailing source term(s) not yet determined");
  }
  return r;
}

struct MuArgs {
  InputOptions in;
  std::size_t terms = 25;
  std::string method = "form";
  double window = 0.5;
};

CommandResult cmd_mu(const MuArgs& args) {
  CFSpec spec = load_spec(args.in);
  MuMethod m = args.method == "form1" ? MuMethod::Form1 : args.method == "both" ? MuMethod::Both : MuMethod::Form;
  auto report = estimate_mu(spec, args.terms, m, args.window);
  CommandResult r;
  r.payload = to_json(report);
  const auto& prov = spec.provenance();
  if (prov && prov->family == "adams_davison" && !prov->params.count("inverse_period")) {
    // Purely periodic alpha: the exponent is a known quadratic surd.
    std::vector<BigInt> period;
    auto it = prov->params.find("period");
    std::stringstream ss(it == prov->params.end() ? std::string("1") : it->second);
    for (std::string item; std::getline(ss, item, ',');) period.push_back(parse_bigint(item));
    auto exact = periodic_quadratic_mu(period);
    r.payload["mu_exact"] = exact.mu.to_string();
    r.payload["mu_exact_decimal"] = exact.mu.decimal(12);
  }
  if (report.form1_diagnostic && *report.form1_diagnostic > 1) {
    r.diagnostics.push_back("form1 diagnostic above 1: b_n grow too slowly for the form1 proxy");
  }
  return r;
}

struct VerifyArgs {
  InputOptions in;
  std::string check;
  std::string range = "1..20";
  std::string condition;
  std::size_t run_bound = 0;
  std::string rho, sigma, tau;
  std::size_t eval_depth = 0;
};

CommandResult verify_sandwich_cmd(const CFSpec& spec, const VerifyArgs& args, std::size_t from,
                                  std::size_t to) {
  CommandResult r;
  const std::size_t eval = args.eval_depth ? args.eval_depth : to + 10;
  BoundConstants k;
  Json source;
  const bool all_explicit = !args.rho.empty() && !args.sigma.empty() && !args.tau.empty();
  if (!all_explicit) {
    auto report = check_conditions(spec, 1, eval);
    Condition cond;
    if (!args.condition.empty()) {
      cond = parse_condition(args.condition);
    } else {
      // Prefer the conditions whose constants do not depend on a run bound.
      const Condition order[] = {Condition::C, Condition::D, Condition::B, Condition::A};
      const Condition* hit = std::find_if(std::begin(order), std::end(order),
                                          [&](Condition c) { return report.holds(c); });
      if (hit == std::end(order)) {
        throw Error(ErrorKind::ConditionNotVerified,
                    "none of A-D holds on 1.." + std::to_string(eval) + "; pass --rho/--sigma/--tau");
      }
      cond = *hit;
    }
    std::size_t bound = args.run_bound;
    if (bound == 0) bound = cond == Condition::A ? report.max_run_neg_a : report.max_run_b2;
    k = default_constants(report, cond, bound);
    source = {{"condition", to_string(cond)}, {"run_bound", std::max<std::size_t>(bound, 1)},
              {"conditions", to_json(report)}};
  }
  if (!args.rho.empty()) k.rho = parse_rational(args.rho);
  if (!args.sigma.empty()) k.sigma = parse_rational(args.sigma);
  if (!args.tau.empty()) k.tau = parse_rational(args.tau);

  auto report = verify_sandwich(spec, k, from, to, eval);
  r.payload = to_json(report);
  if (!source.is_null()) r.payload["constants_from"] = std::move(source);
  for (const auto& row : report.rows) {
    if (row.overall() == Verdict::Fail) r.fail("n=" + std::to_string(row.n) + ": bound violated");
  }
  for (const auto& row : report.rows) {
    if (row.overall() == Verdict::Indeterminate) r.undecided("n=" + std::to_string(row.n) + ": not certified");
  }
  return r;
}

CommandResult verify_invariants(const CFSpec& spec, std::size_t from, std::size_t to) {
  CommandResult r;
  validate(spec, to);
  ConvergentTable table(spec);
  std::size_t det_ok = 0, coprime_ok = 0, lem1_ok = 0, lem1_checked = 0;
  try {
    table.extend_to(to);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvariantBreach) throw;
    r.fail(e.detail());
  }
  if (r.status == Status::Ok) {
    for (std::size_t n = std::max<std::size_t>(from, 1); n <= to; ++n) {
      ++det_ok;  // extend_to already certified the determinant through `to`
      const BigInt p = table.p(static_cast<long>(n)), q = table.q(static_cast<long>(n));
      if (gcd(p, q) == 1) ++coprime_ok;
      else r.fail("gcd(p_" + std::to_string(n) + ", q_" + std::to_string(n) + ") > 1");
      if (spec.has_term(n + 1)) {
        ++lem1_checked;
        const BigInt prev = table.q(static_cast<long>(n) - 1);
        if (q >= 1 && q + spec.term(n + 1).a * prev >= 1) ++lem1_ok;
        else r.fail("q_n + a_{n+1} q_{n-1} >= 1 fails at n=" + std::to_string(n));
      }
    }
  }
  r.payload = {{"range", Json::array({from, to})},
               {"determinant", det_ok},
               {"coprime", coprime_ok},
               {"lem1_checked", lem1_checked},
               {"lem1", lem1_ok}};
  return r;
}

CommandResult cmd_verify(const VerifyArgs& args) {
  CFSpec spec = load_spec(args.in);
  auto [from, to] = parse_range(args.range);
  if (args.check == "sandwich") return verify_sandwich_cmd(spec, args, from, to);
  if (args.check == "invariants") return verify_invariants(spec, from, to);
  CommandResult r;
  if (args.check == "encad") {
    auto report = check_encad(spec, to);
    r.payload = to_json(report);
    if (!report.upper_ok) r.fail("q_n exceeds F_{n+1} b_1...b_n at n=" + std::to_string(*report.first_failure));
    return r;
  }
  // conditions: informational only
  validate(spec, to);
  r.payload = to_json(check_conditions(spec, std::max<std::size_t>(from, 1), to));
  return r;
}

struct ConstructArgs {
  std::string target;
  std::string s;
  std::size_t k_max = 10;
  std::string b;
  std::size_t n_max = 25;
  std::string alpha;
  std::string name;
  std::vector<std::string> params;
  std::size_t terms = 0;
};

Json big_list(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_decimal(x));
  return out;
}

CommandResult cmd_construct(const ConstructArgs& args) {
  CommandResult r;
  Params extra = parse_params(args.params);
  if (args.target == "ncf_exp" || args.target == "lcf_exp") {
    if (args.s.empty()) throw Error(ErrorKind::ParseError, "--s is required for " + args.target);
    TargetExponentParams p{parse_rational(args.s), args.k_max};
    if (args.target == "ncf_exp") {
      auto c = construct_ncf_exponent(p);
      r.payload = spec_to_json(c.ncf, args.terms);
      r.payload["companion_rcf"] = spec_to_json(c.companion_rcf);
      r.payload["positions"] = big_list(c.positions);
    } else {
      auto c = construct_lcf_exponent(p);
      r.payload = spec_to_json(c.lcf, args.terms);
      r.payload["companion_rcf"] = spec_to_json(c.companion_rcf);
      r.payload["m"] = big_list(c.m);
    }
    return r;
  }
  std::string family = args.target == "named" ? args.name : "adams_davison";
  if (family.empty()) throw Error(ErrorKind::ParseError, "--name is required for --target named");
  if (args.target == "adams_davison") {
    if (!args.b.empty()) extra["b"] = args.b;
    extra["n_max"] = std::to_string(args.n_max);
    if (!args.alpha.empty()) extra["alpha"] = args.alpha;
  }
  CFSpec spec = family_generator(family, extra);
  if (spec.is_generated() && !spec.length() && args.terms == 0) {
    r.diagnostics.push_back("unbounded family written in family form; pass --terms for an explicit prefix");
  }
  r.payload = spec_to_json(spec, args.terms);
  return r;
}

// ---- output ------------------------------------------------------------

Json envelope(const std::string& command, const CommandResult& r) {
  return {{"command", command}, {"status", to_string(r.status)}, {"payload", r.payload},
          {"diagnostics", r.diagnostics}};
}

void print_pretty(std::ostream& out, const std::string& command, const CommandResult& r) {
  out << command << ": " << to_string(r.status) << "\n";
  const Json& p = r.payload;
  if (command == "expand" && p.contains("rows")) {
    out << std::left << std::setw(6) << "n" << std::setw(4) << "det" << "  p / q\n";
    for (const auto& row : p["rows"]) {
      out << std::setw(6) << row["n"].get<std::size_t>() << std::setw(4) << row["det"].get<int>() << "  "
          << row["p"].get<std::string>() << " / " << row["q"].get<std::string>() << "\n";
    }
  } else if (command == "value" && p.contains("lo_decimal")) {
    out << "lo    " << p["lo_decimal"].get<std::string>() << "\n"
        << "hi    " << p["hi_decimal"].get<std::string>() << "\n"
        << "width " << p["width_decimal"].get<std::string>() << "\n"
        << "depth " << p["depth"].get<std::size_t>() << "\n";
  } else if (command == "verify" && p.contains("rows")) {
    out << std::left << std::setw(6) << "n" << std::setw(15) << "verdict" << std::setw(15) << "growth"
        << std::setw(15) << "lower" << "upper\n";
    for (const auto& row : p["rows"]) {
      out << std::setw(6) << row["n"].get<std::size_t>() << std::setw(15) << row["verdict"].get<std::string>()
          << std::setw(15) << row["growth"].get<std::string>() << std::setw(15)
          << row["lower"].get<std::string>() << row["upper"].get<std::string>() << "\n";
    }
  } else if (command == "mu" && p.contains("lambda_series")) {
    out << std::left << std::setw(6) << "n" << "lambda_n\n";
    for (const auto& row : p["lambda_series"]) {
      out << std::setw(6) << row["n"].get<std::size_t>() << row["lambda"].get<double>() << "\n";
    }
    for (const char* key : {"mu_form", "mu_form1", "mu_exact"}) {
      if (p.contains(key) && !p[key].is_null()) out << key << " = " << p[key].dump() << "\n";
    }
  } else {
    out << p.dump(2) << "\n";
  }
  for (const auto& d : r.diagnostics) out << "note: " << d << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact semi-regular continued fraction toolkit", "srcf"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable table instead of JSON");

  ExpandArgs expand;
  auto* c_expand = app.add_subcommand("expand", "Convergent table with determinant certificates");
  add_input_options(c_expand, expand.in);
  c_expand->add_option("--terms", expand.terms, "Last index n")->capture_default_str();

  ValueArgs value;
  auto* c_value = app.add_subcommand("value", "Certified decimal enclosure of the value");
  add_input_options(c_value, value.in);
  c_value->add_option("--depth", value.depth, "Enclosure depth")->capture_default_str();
  c_value->add_option("--digits", value.digits, "Decimal digits shown")->capture_default_str();

  ConvertArgs convert;
  auto* c_convert = app.add_subcommand("convert", "Transform to a regular or nearest-integer expansion");
  add_input_options(c_convert, convert.in);
  c_convert->add_option("--mode", convert.mode, "Conversion")
      ->required()
      ->check(CLI::IsMember({"ncf2rcf", "rcf2ncf", "lcf2rcf", "srcf2rcf"}));
  c_convert->add_option("--depth", convert.depth, "Source terms to read (default: whole finite spec)");

  MuArgs mu;
  auto* c_mu = app.add_subcommand("mu", "Estimate the irrationality exponent");
  add_input_options(c_mu, mu.in);
  c_mu->add_option("--terms", mu.terms, "Number of convergents N")->capture_default_str();
  c_mu->add_option("--method", mu.method, "Estimator")
      ->check(CLI::IsMember({"form", "form1", "both"}))
      ->capture_default_str();
  c_mu->add_option("--window", mu.window, "Window fraction f")->check(CLI::Range(0.0, 1.0))->capture_default_str();

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Certified checks over an index range");
  add_input_options(c_verify, verify.in);
  c_verify->add_option("--check", verify.check, "Check to run")
      ->required()
      ->check(CLI::IsMember({"sandwich", "encad", "invariants", "conditions"}));
  c_verify->add_option("--range", verify.range, "Index range a..b")->capture_default_str();
  c_verify->add_option("--condition", verify.condition, "Condition for default constants")
      ->check(CLI::IsMember({"A", "B", "C", "D"}));
  c_verify->add_option("--run-bound", verify.run_bound, "L or M for conditions A and B");
  c_verify->add_option("--rho", verify.rho, "Override rho (rational)");
  c_verify->add_option("--sigma", verify.sigma, "Override sigma (rational)");
  c_verify->add_option("--tau", verify.tau, "Override tau (rational)");
  c_verify->add_option("--eval-depth", verify.eval_depth, "Enclosure depth (default: range end + 10)");

  ConstructArgs construct;
  auto* c_construct = app.add_subcommand("construct", "Build a continued fraction");
  c_construct->add_option("--target", construct.target, "What to build")
      ->required()
      ->check(CLI::IsMember({"ncf_exp", "lcf_exp", "adams_davison", "named"}));
  c_construct->add_option("--s", construct.s, "Target exponent s (rational)");
  c_construct->add_option("--k-max", construct.k_max, "Construction stages")->capture_default_str();
  c_construct->add_option("--b", construct.b, "Adams-Davison base");
  c_construct->add_option("--n-max", construct.n_max, "Adams-Davison terms")->capture_default_str();
  c_construct->add_option("--alpha", construct.alpha, "Adams-Davison alpha (golden)");
  c_construct->add_option("--name", construct.name, "Family for --target named");
  c_construct->add_option("--param", construct.params, "Family parameter key=value (repeatable)");
  c_construct->add_option("--terms", construct.terms, "Write an explicit prefix of this many terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CommandResult result;
  try {
    if (command == "expand") result = cmd_expand(expand);
    else if (command == "value") result = cmd_value(value);
    else if (command == "convert") result = cmd_convert(convert);
    else if (command == "mu") result = cmd_mu(mu);
    else if (command == "verify") result = cmd_verify(verify);
    else result = cmd_construct(construct);
  } catch (const Error& e) {
    result = CommandResult{};
    result.status = Status::Error;
    result.exit_code = kExitError;
    result.payload = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"detail", e.detail()}}}};
    result.diagnostics.push_back(e.what());
  }

  if (pretty) print_pretty(out, command, result);
  else out << envelope(command, result).dump(2) << "\n";
  return result.exit_code;
}

}  // namespace srcf::tools
