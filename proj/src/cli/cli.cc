#include "ftvn/cli.h"

#include <unistd.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ftvn/convex.h"
#include "ftvn/core.h"
#include "ftvn/error.h"
#include "ftvn/majorization.h"
#include "ftvn/oracle.h"
#include "ftvn/spectral_sets.h"
#include "ftvn/systems.h"
#include "json_io.h"

namespace ftvn::cli {
namespace {

struct Request {
  std::string command;
  std::optional<System> sys;
  std::function<Json()> load;
  std::optional<Json> input_cache;
  double tol = 1e-8;
  bool tol_given = false;
  std::uint64_t seed = 0;
  int samples = 1000;
  Json extra_diagnostics = Json::object();
};

// Input is read on first use so commands without fields never touch stdin.
const Json& inp(Request& r) {
  if (!r.input_cache) r.input_cache = r.load();
  return *r.input_cache;
}

const System& need_system(const Request& r) {
  if (!r.sys) throw SchemaError("/system", "command '" + r.command + "' needs --system");
  return *r.sys;
}

int count_or(Request& r, const std::string& key, int fallback) {
  const Json* f = optional_field(inp(r), key, "");
  if (!f) return fallback;
  const int v = read_int(*f, "/" + key);
  if (v < 0) throw SchemaError("/" + key, "must be non-negative");
  return v;
}

Point point_at(Request& r, const std::string& key) {
  return read_point(need_system(r), field(inp(r), key, ""), "/" + key);
}

SpecVector spec_at(Request& r, const std::string& key) {
  const System& sys = need_system(r);
  SpecVector w = read_spec(field(inp(r), key, ""), "/" + key);
  if (w.size() != sys.dim_w()) {
    throw SchemaError("/" + key, "expected length " + std::to_string(sys.dim_w()));
  }
  return w;
}

SpectralSet set_at(Request& r, const std::string& key) {
  return read_set(need_system(r), field(inp(r), key, ""), "/" + key);
}

Domain domain_of(Request& r) {
  const Json* d = optional_field(inp(r), "domain", "");
  if (!d) return Domain::All();
  return Domain::Of(read_set(need_system(r), *d, "/domain"));
}

Json support_json(const System& sys, const SupportValue& h) {
  Json j;
  j["value"] = write_real(h.value);
  j["approximate"] = h.approximate;
  j["argmax"] = h.argmax ? write_spec(*h.argmax) : Json();
  (void)sys;
  return j;
}

Json cmd_lambda(Request& r) { return write_spec(lambda_of(need_system(r), point_at(r, "point"))); }

Json cmd_mu(Request& r) { return write_spec(mu_of(need_system(r), spec_at(r, "w"))); }

Json cmd_in_range(Request& r) {
  const SpecVector w = spec_at(r, "w");
  return in_range(need_system(r), w, range_tol(w));
}

Json cmd_align(Request& r) {
  const System& sys = need_system(r);
  return write_point(sys, align(sys, point_at(r, "c"), spec_at(r, "q")));
}

Json cmd_commute(Request& r) {
  const System& sys = need_system(r);
  const auto v = commutation_verdicts(sys, point_at(r, "x"), point_at(r, "y"), r.tol);
  r.extra_diagnostics["verdicts"] = {{"by_inner", v.by_inner},
                                     {"by_additivity", v.by_additivity},
                                     {"by_isometry", v.by_isometry},
                                     {"slack", write_real(v.slack)}};
  return v.by_inner;
}

Json cmd_majorize(Request& r) {
  const System& sys = need_system(r);
  MajorizationVerdict v;
  if (inp(r).contains("u")) {
    v = reduced_majorized(sys, spec_at(r, "u"), spec_at(r, "v"), r.tol);
  } else {
    v = majorized(sys, point_at(r, "x"), point_at(r, "y"), r.tol);
  }
  return {{"holds", v.holds}, {"worst_slack", write_real(v.worst_slack)}};
}

Json cmd_support(Request& r) {
  const System& sys = need_system(r);
  return support_json(sys, support(sys, set_at(r, "set"), point_at(r, "c")));
}

Json cmd_member(Request& r) {
  return member(need_system(r), set_at(r, "set"), point_at(r, "x"), r.tol);
}

Json cmd_conjugate(Request& r) {
  const System& sys = need_system(r);
  const SpectralFn phi = read_fn(sys, field(inp(r), "fn", ""), "/fn");
  ConjugateOptions opt;
  if (const Json* f = optional_field(inp(r), "over_spectral_hull", "")) {
    opt.over_spectral_hull = read_bool(*f, "/over_spectral_hull");
  }
  const auto res = conjugate(sys, phi, domain_of(r), point_at(r, "z"), r.tol, opt);
  Json j;
  j["value"] = write_real(res.value);
  j["maximizer"] = res.maximizer ? write_point(sys, *res.maximizer) : Json();
  j["w_maximizer"] = res.w_maximizer ? write_spec(*res.w_maximizer) : Json();
  j["exact"] = res.exact;
  return j;
}

Json cmd_subdiff_check(Request& r) {
  const System& sys = need_system(r);
  const SpectralFn phi = read_fn(sys, field(inp(r), "fn", ""), "/fn");
  const Domain s = domain_of(r);
  const Point xbar = point_at(r, "xbar"), y = point_at(r, "y");
  const auto rep = subdiff_check(sys, phi, s, xbar, y, r.tol);
  Json j;
  j["holds"] = rep.holds();
  j["fenchel_gap"] = write_real(rep.fenchel_gap);
  j["fenchel_ok"] = rep.fenchel_ok;
  j["commutation_gap"] = write_real(rep.commutation_gap);
  j["commutes"] = rep.commutes;
  return j;
}

Json cmd_subdiff_construct(Request& r) {
  const System& sys = need_system(r);
  const SpectralFn phi = read_fn(sys, field(inp(r), "fn", ""), "/fn");
  return write_point(sys, subdiff_construct(sys, phi, point_at(r, "xbar"), spec_at(r, "v"), r.tol));
}

Json cmd_axioms(Request& r) {
  const System& sys = need_system(r);
  const auto rep = check_axioms(sys, r.samples, r.seed);
  const double tol = r.tol_given ? r.tol : default_tol(sys);
  Json j;
  j["samples"] = rep.samples;
  j["a1_max_violation"] = write_real(rep.a1_max_violation);
  j["a2_max_violation"] = write_real(rep.a2_max_violation);
  j["a3_max_violation"] = write_real(rep.a3_max_violation);
  j["threshold"] = tol;
  j["pass"] = rep.pass(tol);
  return j;
}

Json cmd_transfer_suite(Request& r) {
  const System& sys = need_system(r);
  const auto rep = transfer_suite(sys, set_at(r, "set"), count_or(r, "combos", r.samples),
                                  count_or(r, "probes", r.samples), r.seed, r.tol);
  Json j;
  j["convex_trials"] = rep.convex_trials;
  j["convex_failures"] = rep.convex_failures;
  j["worst_convex_excess"] = write_real(rep.worst_convex_excess);
  j["probe_points"] = rep.probe_points;
  j["classification_disagreements"] = rep.classification_disagreements;
  j["pass"] = rep.pass();
  return j;
}

Json cmd_minkowski(Request& r) {
  const System& sys = need_system(r);
  const auto rep = minkowski_check(sys, set_at(r, "q1"), set_at(r, "q2"),
                                   count_or(r, "trials", r.samples), r.seed, r.tol);
  Json j;
  j["trials"] = rep.trials;
  j["max_v_slack"] = write_real(rep.max_v_slack);
  j["max_w_slack"] = write_real(rep.max_w_slack);
  j["forward_failures"] = rep.forward_failures;
  j["pass"] = rep.pass(r.tol);
  return j;
}

Json cmd_extreme(Request& r) {
  const System& sys = need_system(r);
  const SpectralSet q = set_at(r, "set");
  const Point cand = point_at(r, "candidate");
  const auto v = extreme_refute(sys, q, cand, count_or(r, "probes", r.samples), r.seed);
  Json j;
  j["refuted"] = v.refuted;
  j["a"] = v.a ? write_point(sys, *v.a) : Json();
  j["b"] = v.b ? write_point(sys, *v.b) : Json();
  j["probes_used"] = v.probes_used;
  if (!v.refuted && sys.kind() == SystemKind::kSorted && sys.order() <= 5 &&
      std::holds_alternative<MajorizationHull>(q)) {
    j["certified_extreme"] = certify_extreme_lp(sys, q, cand);
  }
  return j;
}

Json cmd_davis_probe(Request& r) {
  const System& sys = need_system(r);
  const SpectralFn phi = read_fn(sys, field(inp(r), "fn", ""), "/fn");
  Json j;
  if (inp(r).contains("x")) {
    const double t = read_real(field(inp(r), "t", ""), "/t");
    j["violation"] = write_real(convexity_violation(sys, phi, point_at(r, "x"), point_at(r, "y"), t));
    return j;
  }
  const auto rep = convexity_probe(sys, phi, r.samples, r.seed);
  j["samples"] = rep.samples;
  j["max_violation_v"] = write_real(rep.max_violation_v);
  j["max_violation_w"] = write_real(rep.max_violation_w);
  j["x"] = rep.x ? write_point(sys, *rep.x) : Json();
  j["y"] = rep.y ? write_point(sys, *rep.y) : Json();
  j["t"] = rep.t;
  j["convex_within_tol"] = rep.max_violation_v <= r.tol;
  return j;
}

Json cmd_oracle_perms_support(Request& r) {
  const SpecVector c = read_spec(field(inp(r), "c", ""), "/c");
  const SpecVector u = read_spec(field(inp(r), "u", ""), "/u");
  if (c.size() != u.size()) throw SchemaError("/u", "c and u must have equal length");
  return write_real(oracle::perms_support(c, u));
}

Json cmd_oracle_conv_member(Request& r) {
  const auto pts = read_spec_list(field(inp(r), "points", ""), "/points");
  const SpecVector x = read_spec(field(inp(r), "x", ""), "/x");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].size() != x.size()) throw SchemaError("/points/" + std::to_string(i), "length mismatch with x");
  }
  const auto res = oracle::conv_member_lp(pts, x, r.tol);
  return {{"feasible", res.feasible},
          {"coefficients", res.feasible ? write_reals(res.coefficients) : Json()},
          {"max_residual", write_real(res.max_residual)}};
}

Json cmd_oracle_grid_conjugate(Request& r) {
  const System& sys = need_system(r);
  const SpectralFn phi = read_fn(sys, field(inp(r), "fn", ""), "/fn");
  const SpecVector lo = spec_at(r, "lo"), hi = spec_at(r, "hi"), z = spec_at(r, "z");
  const double step = read_real(field(inp(r), "step", ""), "/step");
  if (!(step > 0.0)) throw SchemaError("/step", "step must be positive");
  oracle::GridOptions opt;
  if (const Json* f = optional_field(inp(r), "lipschitz", "")) opt.lipschitz = read_real(*f, "/lipschitz");
  auto res = oracle::grid_conjugate([&](const SpecVector& u) { return eval_w(sys, phi, u); }, lo, hi,
                                    step, z, opt);
  return {{"value", write_real(res.value)},
          {"argmax", res.argmax.size() ? write_spec(res.argmax) : Json()},
          {"slack", write_real(res.slack)},
          {"unbounded_suspected", res.unbounded_suspected},
          {"evaluations", res.evaluations}};
}

Json cmd_oracle_random_orthogonal(Request& r) {
  const int n = read_int(field(inp(r), "n", ""), "/n");
  if (n < 1 || n > 64) throw SchemaError("/n", "n must lie in 1..64");
  const Eigen::MatrixXd q = oracle::random_orthogonal(n, r.seed);
  Json rows = Json::array();
  for (int i = 0; i < n; ++i) rows.push_back(write_reals(q.row(i).transpose()));
  return rows;
}

const std::map<std::string, std::function<Json(Request&)>>& commands() {
  static const std::map<std::string, std::function<Json(Request&)>> table = {
      {"lambda", cmd_lambda},
      {"mu", cmd_mu},
      {"in-range", cmd_in_range},
      {"align", cmd_align},
      {"commute", cmd_commute},
      {"majorize", cmd_majorize},
      {"support", cmd_support},
      {"member", cmd_member},
      {"conjugate", cmd_conjugate},
      {"subdiff-check", cmd_subdiff_check},
      {"subdiff-construct", cmd_subdiff_construct},
      {"axioms", cmd_axioms},
      {"transfer-suite", cmd_transfer_suite},
      {"minkowski", cmd_minkowski},
      {"extreme", cmd_extreme},
      {"davis-probe", cmd_davis_probe},
      {"oracle-perms-support", cmd_oracle_perms_support},
      {"oracle-conv-member", cmd_oracle_conv_member},
      {"oracle-grid-conjugate", cmd_oracle_grid_conjugate},
      {"oracle-random-orthogonal", cmd_oracle_random_orthogonal},
  };
  return table;
}

std::string command_list() {
  std::string s;
  for (const auto& [name, _] : commands()) s += (s.empty() ? "" : ", ") + name;
  return s;
}

Json read_input(const std::optional<std::string>& input, std::istream& in) {
  std::string text;
  if (input) {
    std::ifstream file(*input);
    if (file) {
      text.assign(std::istreambuf_iterator<char>(file), {});
    } else {
      text = *input;
    }
  } else if (&in != &std::cin || !isatty(STDIN_FILENO)) {
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return Json::object();
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw SchemaError("/", "input must be a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("/", std::string("input is not valid JSON: ") + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"FTvN systems toolkit: JSON in, JSON out."};
  std::string command;
  std::optional<std::string> system_desc, input;
  double tol = 1e-8;
  long long seed = 0;
  int samples = 1000;
  std::string out_mode = "json";
  app.add_option("command", command, "One of: " + command_list())->required();
  app.add_option("--system", system_desc, "System descriptor, e.g. sym:3 or soc:4");
  app.add_option("--input", input, "Input JSON file or inline JSON (stdin when absent)");
  app.add_option("--tol", tol, "Tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed")->check(CLI::NonNegativeNumber);
  app.add_option("--samples", samples, "Sample count")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out_mode, "Output format")->check(CLI::IsMember({"json", "pretty"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  Request req;
  req.command = command;
  req.tol = tol;
  req.tol_given = app.count("--tol") > 0;
  req.seed = static_cast<std::uint64_t>(seed);
  req.samples = samples;

  Json response;
  response["command"] = command;
  response["system"] = Json();
  int code = kOk;
  const auto start = std::chrono::steady_clock::now();
  auto fail = [&](int c, const std::string& type, const std::string& msg,
                  const std::optional<std::string>& pointer) {
    code = c;
    Json e = {{"type", type}, {"message", msg}};
    if (pointer) e["pointer"] = *pointer;
    response["error"] = e;
    err << type << " error: " << msg << (pointer ? " at " + *pointer : "") << "\n";
  };
  try {
    auto it = commands().find(command);
    if (it == commands().end()) {
      throw SchemaError("/command", "unknown command '" + command + "'; expected one of: " + command_list());
    }
    if (system_desc) {
      try {
        req.sys = build_system(*system_desc);
      } catch (const ParseError& e) {
        throw SchemaError("/system", e.what());
      }
      response["system"] = req.sys->descriptor();
    }
    req.load = [&] { return read_input(input, in); };
    response["result"] = it->second(req);
  } catch (const SchemaError& e) {
    fail(kUsage, "schema", e.what(), e.pointer());
  } catch (const ParseError& e) {
    fail(kUsage, "schema", e.what(), std::nullopt);
  } catch (const CapabilityError& e) {
    fail(kCapability, "capability", e.what(), std::nullopt);
  } catch (const LayoutError& e) {
    fail(kDomain, "layout", e.what(), std::nullopt);
  } catch (const PreconditionError& e) {
    fail(kDomain, "precondition", e.what(), std::nullopt);
  } catch (const DomainError& e) {
    fail(kDomain, "domain", e.what(), std::nullopt);
  }
  if (!response.contains("result")) response["result"] = Json();
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  Json diag = {{"elapsed_ms", elapsed}, {"seed", req.seed}, {"tol", req.tol}};
  for (auto& [k, v] : req.extra_diagnostics.items()) diag[k] = v;
  response["diagnostics"] = diag;
  response["status"] = code == kOk ? "ok" : "error";
  // Keep "error" last for readability.
  if (response.contains("error")) {
    Json e = response["error"];
    response.erase("error");
    response["error"] = e;
  }
  out << (out_mode == "pretty" ? response.dump(2) : response.dump()) << "\n";
  return code;
}

}  // namespace ftvn::cli
