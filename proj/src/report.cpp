#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "esym/monotone.hpp"

namespace esym {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

nlohmann::json jnum(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string coords(const std::vector<double>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? ", " : "") + num(e[i]);
  return s + ")";
}

}  // namespace

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "property: " << r.property << "\n"
     << "plan: seed=" << r.plan.seed << " strategy=" << to_string(r.plan.strategy)
     << " d=" << r.plan.d_min << ".." << r.plan.d_max << " n=" << r.plan.n_points << "\n"
     << "samples: " << r.samples << "\n"
     << "checks: " << r.checks << "\n"
     << "violations: " << r.violations << "\n"
     << "max_abs_deviation: " << num(r.max_abs_deviation) << "\n"
     << "tolerance: " << num(r.tolerance) << "\n"
     << "error_budget: " << num(r.error_budget) << "\n"
     << "status: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  for (std::size_t i = 0; i < r.payload.size(); ++i) {
    const Violation& v = r.payload[i];
    os << "violation[" << i << "]: sample=" << v.sample << " e=" << coords(v.e)
       << " indices=" << v.indices << " lhs=" << num(v.lhs) << " rhs=" << num(v.rhs)
       << " deviation=" << num(v.deviation);
    if (!v.cause.empty()) os << " cause=" << v.cause;
    os << "\n";
  }
  for (const std::string& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string report_to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["property"] = r.property;
  j["plan"] = {{"seed", r.plan.seed},
               {"strategy", to_string(r.plan.strategy)},
               {"d_min", r.plan.d_min},
               {"d_max", r.plan.d_max},
               {"n_points", r.plan.n_points}};
  j["samples"] = r.samples;
  j["checks"] = r.checks;
  j["violations"] = r.violations;
  j["max_abs_deviation"] = jnum(r.max_abs_deviation);
  j["tolerance"] = jnum(r.tolerance);
  j["error_budget"] = jnum(r.error_budget);
  j["passed"] = r.passed();
  nlohmann::json payload = nlohmann::json::array();
  for (const Violation& v : r.payload) {
    nlohmann::json e = nlohmann::json::array();
    for (double x : v.e) e.push_back(jnum(x));
    payload.push_back({{"sample", v.sample},
                       {"e", e},
                       {"indices", v.indices},
                       {"lhs", jnum(v.lhs)},
                       {"rhs", jnum(v.rhs)},
                       {"deviation", jnum(v.deviation)},
                       {"cause", v.cause}});
  }
  j["payload"] = payload;
  j["notes"] = r.notes;
  return j.dump();
}

}  // namespace esym
