// esym: evaluation, derivatives, property verification and Laplace probes
// for entropy and subentropy in elementary symmetric coordinates.
//
// Exit codes: 0 pass, 1 property violation, 2 usage, 3 numerical failure,
// 4 domain.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "esym/bernstein.hpp"
#include "esym/deriv.hpp"
#include "esym/entro.hpp"
#include "esym/monotone.hpp"
#include "esym/poly.hpp"

using nlohmann::json;
using namespace esym;

namespace {

enum Exit { kPass = 0, kViolation = 1, kUsage = 2, kNumerical = 3, kDomain = 4 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return kUsage;
    case ErrorKind::Geometry:
    case ErrorKind::NumericalFailure: return kNumerical;
    case ErrorKind::Domain:
    case ErrorKind::MalformedSpectrum:
    case ErrorKind::DegenerateSpectrum: return kDomain;
  }
  return kNumerical;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json jnum(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

double parse_real(const std::string& tok) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && e[-1] == ' ') --e;
  if (b < e && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e)
    throw Error(ErrorKind::Usage, "cannot parse '" + tok + "' as a real number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_real(tok));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const std::string& tok : split(s, ',')) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
      throw Error(ErrorKind::Usage, "cannot parse '" + tok + "' as an integer");
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

std::string complex_str(const Complex& z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

// One structured result per invocation.
struct Envelope {
  std::string op;
  json input = json::object();
  json result;
  json error_estimate;
  json diagnostics = json::object();
  json report;
  std::vector<std::pair<std::string, std::string>> text;

  void line(const std::string& key, const std::string& value) { text.emplace_back(key, value); }

  void emit(bool as_json) const {
    if (as_json) {
      json j;
      j["op"] = op;
      j["input"] = input;
      j["result"] = result;
      j["error_estimate"] = error_estimate;
      j["diagnostics"] = diagnostics;
      j["report"] = report;
      std::cout << j.dump() << "\n";
      return;
    }
    std::cout << "op: " << op << "\n";
    for (const auto& [k, v] : text) std::cout << k << ": " << v << "\n";
  }
};

struct CoordArgs {
  std::string roots;
  std::string elemsym;
};

void add_coord_options(CLI::App* cmd, CoordArgs& c) {
  cmd->add_option("--roots", c.roots, "comma-separated real roots");
  cmd->add_option("--elemsym", c.elemsym, "comma-separated e_1,...,e_d");
}

ElemSymCoords resolve_coords(const CoordArgs& c, Envelope& env) {
  if (c.roots.empty() == c.elemsym.empty())
    throw Error(ErrorKind::Usage, "give exactly one of --roots or --elemsym");
  if (!c.roots.empty()) {
    const std::vector<double> r = parse_reals(c.roots);
    env.input["roots"] = r;
    return elemsym_from_roots(make_spectrum(r));
  }
  const std::vector<double> e = parse_reals(c.elemsym);
  env.input["elemsym"] = e;
  return ElemSymCoords(e);
}

struct QuadArgs {
  double abs_tol = QuadratureSpec{}.abs_tol;
  double rel_tol = QuadratureSpec{}.rel_tol;
  long max_evals = QuadratureSpec{}.max_evals;
  double margin = QuadratureSpec{}.circle_margin;
};

void add_quad_options(CLI::App* cmd, QuadArgs& q) {
  cmd->add_option("--abs-tol", q.abs_tol, "absolute quadrature tolerance");
  cmd->add_option("--rel-tol", q.rel_tol, "relative quadrature tolerance");
  cmd->add_option("--max-evals", q.max_evals, "integrand evaluation budget");
  cmd->add_option("--circle-margin", q.margin, "contour circle margin in (0,1)");
}

QuadratureSpec to_spec(const QuadArgs& q) {
  QuadratureSpec s;
  s.abs_tol = q.abs_tol;
  s.rel_tol = q.rel_tol;
  s.max_evals = q.max_evals;
  s.circle_margin = q.margin;
  s.validate();
  return s;
}

void put_estimate(Envelope& env, const Estimate& v) {
  env.result = jnum(v.value);
  env.error_estimate = jnum(v.error);
  env.diagnostics["evaluations"] = v.evaluations;
  env.line("value", num(v.value));
  env.line("error_estimate", num(v.error));
}

// ---------------------------------------------------------------- convert

int cmd_convert(const CoordArgs& c, Envelope& env) {
  env.op = "convert";
  const ElemSymCoords e = resolve_coords(c, env);
  const RootSpectrum s = roots_from_elemsym(e);
  const ConeClass cls = cone_membership(e);
  json roots = json::array();
  std::string roots_text;
  for (std::size_t i = 0; i < s.roots.size(); ++i) {
    roots.push_back({{"re", s.roots[i].real()}, {"im", s.roots[i].imag()}});
    roots_text += (i ? "," : "") + complex_str(s.roots[i]);
  }
  const auto ev = e.values();
  const std::vector<double> evec(ev.begin(), ev.end());
  env.result = {{"elemsym", evec},
                {"roots", roots},
                {"spectrum_kind", to_string(s.kind)},
                {"classification", to_string(cls)}};
  env.error_estimate = jnum(s.residual);
  env.diagnostics["reconstruction_residual"] = jnum(s.residual);
  env.line("elemsym", join(evec));
  env.line("roots", roots_text);
  env.line("spectrum_kind", to_string(s.kind));
  env.line("classification", to_string(cls));
  env.line("residual", num(s.residual));
  return kPass;
}

// ---------------------------------------------------------------- eval

int cmd_eval(const CoordArgs& c, const std::string& target, Envelope& env) {
  env.op = "eval";
  env.input["target"] = target;
  const ElemSymCoords e = resolve_coords(c, env);
  const ProbeTarget t = parse_probe_target(target);
  env.line("target", to_string(t));
  env.line("units", "nats");
  const Estimate v = t == ProbeTarget::H ? entropy_from_elemsym(e) : subentropy_from_elemsym(e);
  put_estimate(env, v);
  env.diagnostics["classification"] = to_string(cone_membership(e));
  return kPass;
}

// ---------------------------------------------------------------- deriv

std::string resolved_method(DerivMethod m, const QuadratureSpec& q, int order, int K, bool is_q) {
  if (m != DerivMethod::Auto) return to_string(m);
  if (!is_q && order == 1 && K == 1) return "residue";
  const int n = is_q ? order + 1 : order;
  if (K == 1 && is_q) return "contour";
  if (q.method == QuadratureSpec::Method::CircleTrapezoid) return "contour";
  return n == 1 ? "fannes" : "fannes (repeated-spectrum convolution)";
}

int cmd_deriv(const CoordArgs& c, const std::string& target, const std::string& index,
              const std::string& method, const QuadArgs& qa, Envelope& env) {
  env.op = "deriv";
  env.input["target"] = target;
  env.input["index"] = index;
  env.input["method"] = method;
  const ElemSymCoords e = resolve_coords(c, env);
  const ProbeTarget t = parse_probe_target(target);
  const DerivMethod m = parse_deriv_method(method);
  const QuadratureSpec quad = to_spec(qa);
  if (index.empty()) throw Error(ErrorKind::Usage, "--index is required");
  const MultiIndex idx(parse_ints(index), e.d());
  Estimate v;
  if (t == ProbeTarget::H)
    v = idx.order() == 1 ? dH_dek(e, idx.indices()[0], m, quad) : dH_multi(e, idx, quad, m);
  else
    v = idx.order() == 1 ? dQ_dek(e, idx.indices()[0], quad, m) : dQ_multi(e, idx, quad, m);
  const std::string used = resolved_method(m, quad, idx.order(), idx.index_sum(), t == ProbeTarget::Q);
  env.line("target", to_string(t));
  env.line("index", idx.str());
  env.line("method", used);
  put_estimate(env, v);
  env.diagnostics["method"] = used;
  env.diagnostics["index_sum"] = idx.index_sum();
  return kPass;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string property = "all";
  std::uint64_t seed = 42;
  std::size_t n = 20;
  std::string d = "3";
  std::string strategy = "simplex";
  std::optional<double> tol;
  double fd_tol = 1e-4;
  int max_order = 3;
  int order = 2;
  int k = 2;
  int depth = 3;
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a, const QuadArgs& qa, Envelope& env) {
  env.op = "verify";
  SamplePlan plan;
  plan.seed = a.seed;
  plan.n_points = a.n;
  plan.strategy = parse_strategy(a.strategy);
  const auto range = split(a.d, '.');
  if (range.size() == 1) {
    plan.d_min = plan.d_max = parse_ints(a.d)[0];
  } else if (range.size() == 3 && range[1].empty()) {
    plan.d_min = parse_ints(range[0])[0];
    plan.d_max = parse_ints(range[2])[0];
  } else {
    throw Error(ErrorKind::Usage, "--d takes an integer or a range lo..hi");
  }
  if (plan.d_min < 1 || plan.d_max < plan.d_min)
    throw Error(ErrorKind::Usage, "--d must satisfy 1 <= lo <= hi");
  env.input = {{"property", a.property}, {"seed", a.seed},         {"n", a.n},
               {"d", a.d},               {"strategy", a.strategy}, {"threads", a.threads}};
  CheckOptions opt;
  opt.quad = to_spec(qa);
  opt.threads = a.threads;

  const VerificationReport oracle = validate_fd_oracle();
  if (!oracle.passed()) {
    env.report = json::array({json::parse(report_to_json(oracle))});
    env.line("report", "\n" + report_to_text(oracle));
    throw Error(ErrorKind::NumericalFailure, "finite-difference oracle failed its anchors");
  }

  std::vector<VerificationReport> reports;
  const std::string& p = a.property;
  const bool all = p == "all";
  if (!all && p != "prop1" && p != "prop2" && p != "prop3" && p != "cm" && p != "positivity")
    throw Error(ErrorKind::Usage, "unknown property '" + p + "'");
  if (all || p == "prop1") {
    reports.push_back(check_prop1(plan, a.tol.value_or(1e-6), opt));
    reports.push_back(check_prop1_fd(plan, a.fd_tol, opt));
  }
  if (all || p == "prop2") reports.push_back(check_prop2_signs(plan, a.max_order, a.tol.value_or(1e-9), opt));
  if (all || p == "prop3") {
    if (all) {
      reports.push_back(check_prop3_index_sum(plan, 2, a.tol.value_or(1e-8), opt));
      reports.push_back(check_prop3_index_sum(plan, 3, a.tol.value_or(1e-8), opt));
    } else {
      reports.push_back(check_prop3_index_sum(plan, a.order, a.tol.value_or(1e-8), opt));
    }
  }
  if (all || p == "cm") {
    CheckOptions cm = opt;
    cm.quad.rel_tol = std::min(cm.quad.rel_tol, 1e-12);
    cm.quad.abs_tol = std::min(cm.quad.abs_tol, 1e-13);
    reports.push_back(check_complete_monotonicity(plan, a.k, a.depth, a.tol.value_or(1e-9), cm));
  }
  if (all || p == "positivity") reports.push_back(check_positivity(plan, a.tol.value_or(1e-10), opt));

  std::size_t violations = 0;
  json rj = json::array();
  std::string text;
  for (const auto& r : reports) {
    violations += r.violations;
    rj.push_back(json::parse(report_to_json(r)));
    text += "\n" + report_to_text(r);
  }
  env.report = rj;
  env.result = {{"violations", violations}, {"passed", violations == 0}};
  env.diagnostics["fd_oracle_max_deviation"] = jnum(oracle.max_abs_deviation);
  env.line("violations", std::to_string(violations));
  env.line("status", violations == 0 ? "PASS" : "FAIL");
  env.line("reports", text);
  return violations == 0 ? kPass : kViolation;
}

// ---------------------------------------------------------------- invert

struct InvertArgs {
  std::string target;
  std::string method = "talbot";
  int nodes = 32;
  int order = 14;
  std::string grid = "0.01,100,200,log";
  int m = 2;
  std::string out;
  std::string selftest;
};

std::vector<double> parse_grid(const std::string& g) {
  const auto parts = split(g, ',');
  if (parts.size() != 4) throw Error(ErrorKind::Usage, "--grid takes min,max,count,log|lin");
  const double lo = parse_real(parts[0]), hi = parse_real(parts[1]);
  const int count = parse_ints(parts[2])[0];
  if (count < 1) throw Error(ErrorKind::Usage, "grid count must be positive");
  if (parts[3] != "log" && parts[3] != "lin")
    throw Error(ErrorKind::Usage, "grid spacing must be log or lin");
  return make_grid(lo, hi, static_cast<std::size_t>(count), parts[3] == "log");
}

int cmd_invert(const InvertArgs& a, Envelope& env) {
  env.op = "invert";
  env.input = {{"target", a.target}, {"method", a.method}, {"nodes", a.nodes},
               {"order", a.order},   {"grid", a.grid},     {"m", a.m},
               {"out", a.out},       {"selftest", a.selftest}};
  LaplaceProbeSpec spec;
  spec.method = parse_inversion_method(a.method);
  spec.talbot_nodes = a.nodes;
  spec.gs_order = a.order;
  spec.divisibility_m = a.m;
  const std::vector<double> t_grid = make_grid(0.05, 0.25, 21, false);

  if (!a.selftest.empty()) {
    const PoweredTransform f = calibration_transform(a.selftest);
    spec.s_grid = make_grid(0.1, 10.0, 100, false);
    const DensityResult dens = invert_transform(f, spec);
    double max_err = 0.0, max_delta = 0.0;
    for (std::size_t i = 0; i < dens.s.size(); ++i) {
      double exact = 0.0;
      if (a.selftest == "1over1plusT") exact = std::exp(-dens.s[i]);
      max_err = std::max(max_err, std::abs(dens.mu[i] - exact));
      max_delta = std::max(max_delta, dens.method_delta[i]);
    }
    const bool has_density = a.selftest == "1over1plusT" || a.selftest == "const1";
    env.result = {{"selftest", a.selftest}, {"max_abs_error", has_density ? jnum(max_err) : json()}};
    env.error_estimate = jnum(max_delta);
    env.line("selftest", a.selftest);
    if (has_density) env.line("max_abs_error", num(max_err) + " on s in [0.1, 10]");
    env.line("max_method_delta", num(max_delta));
    env.diagnostics["max_method_delta"] = jnum(max_delta);
    if (a.selftest == "1over1plusT") {
      LaplaceProbeSpec fine = spec;
      fine.s_grid = make_grid(1e-3, 50.0, 1000, true);
      const RoundtripReport rt = roundtrip_from_samples(invert_transform(f, fine), f, t_grid);
      env.diagnostics["roundtrip_max_rel"] = jnum(rt.max_rel_deviation);
      env.line("roundtrip_max_rel", num(rt.max_rel_deviation));
    }
    spec.s_grid = {1.0};
    const DivisibilityReport dv = divisibility_probe_transform(f, spec);
    env.diagnostics["transform_identity_deviation"] = jnum(dv.transform_identity_deviation);
    env.line("transform_identity_deviation", num(dv.transform_identity_deviation));
    return kPass;
  }

  if (a.target.empty()) throw Error(ErrorKind::Usage, "--target is required (or --selftest)");
  if (a.out.empty()) throw Error(ErrorKind::Usage, "--out is required");
  const ProbeTarget target = parse_probe_target(a.target);
  spec.s_grid = parse_grid(a.grid);
  const DensityResult dens = invert_density(spec, target);
  {
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw Error(ErrorKind::Usage, "cannot open '" + a.out + "' for writing");
    os << density_csv(dens);
  }
  const RoundtripReport rt = roundtrip_from_samples(dens, target_transform(target), t_grid);
  const DivisibilityReport dv = divisibility_probe(spec, target);
  double max_delta = 0.0;
  for (double v : dens.method_delta) max_delta = std::max(max_delta, v);

  env.result = {{"rows", dens.s.size()},
                {"grid_mass", jnum(dens.grid_mass)},
                {"negative_points", dens.negative_points.size()},
                {"roundtrip_max_rel", jnum(rt.max_rel_deviation)},
                {"divisibility_m", dv.m},
                {"divisibility_max_abs", jnum(dv.max_abs_deviation)},
                {"transform_identity_deviation", jnum(dv.transform_identity_deviation)}};
  env.error_estimate = jnum(max_delta);
  env.diagnostics = {{"method", to_string(spec.method)},
                     {"max_method_delta", jnum(max_delta)},
                     {"csv", a.out}};
  env.line("target", to_string(target));
  env.line("csv", a.out + " (" + std::to_string(dens.s.size()) + " rows)");
  env.line("grid_mass", num(dens.grid_mass));
  env.line("negative_points", std::to_string(dens.negative_points.size()));
  env.line("max_method_delta", num(max_delta));
  env.line("roundtrip_max_rel", num(rt.max_rel_deviation) + " on t in [0.05, 0.25]");
  env.line("divisibility", "m=" + std::to_string(dv.m) + " max_abs=" + num(dv.max_abs_deviation) +
                               " transform_identity=" + num(dv.transform_identity_deviation));
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy and subentropy in elementary symmetric coordinates (values in nats)"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit one JSON object per invocation");

  CoordArgs coords;
  QuadArgs quad;
  std::string target = "H", index, method = "auto";

  auto* convert = app.add_subcommand("convert", "convert between roots and e-coordinates");
  add_coord_options(convert, coords);
  convert->add_flag("--json", as_json, "emit JSON");

  auto* eval = app.add_subcommand("eval", "evaluate H or Q");
  add_coord_options(eval, coords);
  eval->add_option("--target", target, "H or Q");
  eval->add_flag("--json", as_json, "emit JSON");

  auto* deriv = app.add_subcommand("deriv", "mixed partial derivative of H or Q");
  add_coord_options(deriv, coords);
  deriv->add_option("--target", target, "H or Q");
  deriv->add_option("--index", index, "comma-separated indices i_1,...,i_m")->required();
  deriv->add_option("--method", method, "auto, fannes, residue or contour");
  add_quad_options(deriv, quad);
  deriv->add_flag("--json", as_json, "emit JSON");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "seeded property verification");
  verify->add_option("--property", va.property, "prop1, prop2, prop3, cm, positivity or all");
  verify->add_option("--seed", va.seed, "sampler seed");
  verify->add_option("--n", va.n, "number of samples");
  verify->add_option("--d", va.d, "dimension or range lo..hi");
  verify->add_option("--strategy", va.strategy, "simplex, cone or boundary");
  verify->add_option("--tol", va.tol,
                     "tolerance (default: prop1 1e-6, prop2 1e-9, prop3 1e-8, cm 1e-9, "
                     "positivity 1e-10)");
  verify->add_option("--fd-tol", va.fd_tol, "tolerance against the finite-difference oracle");
  verify->add_option("--max-order", va.max_order, "highest order for prop2");
  verify->add_option("--order", va.order, "derivative order for prop3");
  verify->add_option("--k", va.k, "coordinate for the complete-monotonicity check");
  verify->add_option("--depth", va.depth, "derivative depth for the complete-monotonicity check");
  verify->add_option("--threads", va.threads, "worker threads (0 = hardware)");
  add_quad_options(verify, quad);
  verify->add_flag("--json", as_json, "emit JSON");

  InvertArgs ia;
  auto* invert = app.add_subcommand("invert", "numerical Laplace inversion of exp(-H), exp(-Q)");
  invert->add_option("--target", ia.target, "H or Q");
  invert->add_option("--method", ia.method, "talbot or gaver-stehfest");
  invert->add_option("--nodes", ia.nodes, "Talbot nodes");
  invert->add_option("--order", ia.order, "Gaver-Stehfest order (even, <= 14)");
  invert->add_option("--grid", ia.grid, "s grid min,max,count,log|lin");
  invert->add_option("--m", ia.m, "divisibility order");
  invert->add_option("--out", ia.out, "CSV output path (s, mu, method_delta)");
  invert->add_option("--selftest", ia.selftest, "1over1plusT, const1 or exp<a>");
  invert->add_flag("--json", as_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  Envelope env;
  int code = kPass;
  try {
    if (*convert) code = cmd_convert(coords, env);
    else if (*eval) code = cmd_eval(coords, target, env);
    else if (*deriv) code = cmd_deriv(coords, target, index, method, quad, env);
    else if (*verify) code = cmd_verify(va, quad, env);
    else if (*invert) code = cmd_invert(ia, env);
  } catch (const Error& err) {
    code = exit_code(err.kind());
    env.diagnostics["error"] = {{"kind", to_string(err.kind())}, {"message", err.what()}};
    env.line("error", std::string(to_string(err.kind())) + ": " + err.what());
    if (env.op.empty()) env.op = app.get_subcommands().front()->get_name();
  }
  env.emit(as_json);
  if (code >= kUsage) {
    std::cerr << "error: " << env.diagnostics["error"]["message"].get<std::string>() << "\n";
  }
  return code;
}
