#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ppct/cli.hpp"

namespace ppct {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x))
    throw ConfigurationError("key '" + key + "': cannot parse number '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end)
    throw ConfigurationError("key '" + key + "': cannot parse integer '" + v + "'");
  return x;
}

const std::set<std::string> kKeys = {"problem", "nx",          "ny",     "nz",      "t_end",
                                     "gamma",   "q",           "cfl",    "eps_tol", "max_ct_iter",
                                     "safety",  "snapshots",   "out_dir", "mu",     "b0",
                                     "mach"};

}  // namespace

RunPlan parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigurationError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKeys.count(key))
      throw ConfigurationError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (value.empty())
      throw ConfigurationError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    if (!kv.emplace(key, value).second)
      throw ConfigurationError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }

  auto has = [&](const std::string& k) { return kv.count(k) > 0; };
  auto num = [&](const std::string& k, double def) { return has(k) ? to_double(k, kv[k]) : def; };
  auto integer = [&](const std::string& k, int def) { return has(k) ? to_int(k, kv[k]) : def; };

  RunPlan plan;
  if (!has("problem")) throw ConfigurationError("missing required key 'problem'");
  plan.problem_name = kv["problem"];
  const auto names = problem_names();
  if (std::find(names.begin(), names.end(), plan.problem_name) == names.end())
    throw ConfigurationError("unknown problem '" + plan.problem_name + "'");

  const bool is_vortex = plan.problem_name == "vortex";
  const bool is_jet = plan.problem_name == "jet";
  for (const char* k : {"mu"})
    if (has(k) && !is_vortex) throw ConfigurationError(std::string("key '") + k + "' only applies to problem vortex");
  for (const char* k : {"b0", "mach"})
    if (has(k) && !is_jet) throw ConfigurationError(std::string("key '") + k + "' only applies to problem jet");
  plan.params.mu = num("mu", plan.params.mu);
  plan.params.b0 = num("b0", plan.params.b0);
  plan.params.mach = num("mach", plan.params.mach);
  if (has("gamma")) {
    plan.params.gamma = num("gamma", 0.0);
    if (!(plan.params.gamma > 1.0)) throw ConfigurationError("gamma must be > 1, got " + kv["gamma"]);
  }
  if (is_jet && !(plan.params.mach > 0.0)) throw ConfigurationError("mach must be positive");
  plan.problem = make_problem(plan.problem_name, plan.params);

  RunConfig& c = plan.config;
  c.gas = plan.problem.gas;
  c.q = num("q", 3.0);
  if (!(c.q > 2.0)) throw ConfigurationError("q must be > 2, got " + kv["q"]);
  c.cfl = num("cfl", 2.0 / c.q);
  if (!(c.cfl > 0.0) || c.cfl > 2.0 / c.q)
    throw ConfigurationError("cfl must lie in (0, 2/q] = (0, " + fmt(2.0 / c.q) + "], got " + kv["cfl"]);
  c.eps_tol = num("eps_tol", 1e-10);
  c.max_ct_iter = integer("max_ct_iter", 100);
  c.safety = num("safety", 1.0);
  c.t_end = num("t_end", plan.problem.t_end);
  if (has("snapshots")) {
    std::istringstream ss(kv["snapshots"]);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) c.snapshot_times.push_back(to_double("snapshots", item));
    }
  }
  c.validate();

  plan.n = plan.problem.default_n;
  plan.n[0] = integer("nx", plan.n[0]);
  plan.n[1] = integer("ny", plan.n[1]);
  if (plan.problem.dim == 3) plan.n[2] = integer("nz", plan.n[2]);
  else if (has("nz")) throw ConfigurationError("key 'nz' given for 2D problem " + plan.problem_name);
  for (int a = 0; a < plan.problem.dim; ++a)
    if (plan.n[a] < 1) throw ConfigurationError("grid sizes must be positive");
  if (has("out_dir")) plan.output.out_dir = kv["out_dir"];
  return plan;
}

RunPlan load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string manifest_text(const RunPlan& plan) {
  std::ostringstream os;
  const RunConfig& c = plan.config;
  os << "# resolved configuration\n";
  os << "problem = " << plan.problem_name << "\n";
  if (plan.problem_name == "vortex") os << "mu = " << fmt(plan.params.mu) << "\n";
  if (plan.problem_name == "jet") {
    os << "mach = " << fmt(plan.params.mach) << "\n";
    os << "b0 = " << fmt(plan.params.b0) << "\n";
  }
  os << "nx = " << plan.n[0] << "\n";
  os << "ny = " << plan.n[1] << "\n";
  if (plan.problem.dim == 3) os << "nz = " << plan.n[2] << "\n";
  os << "t_end = " << fmt(c.t_end) << "\n";
  os << "gamma = " << fmt(c.gas.gamma()) << "\n";
  os << "q = " << fmt(c.q) << "\n";
  os << "cfl = " << fmt(c.cfl) << "\n";
  os << "eps_tol = " << fmt(c.eps_tol) << "\n";
  os << "max_ct_iter = " << c.max_ct_iter << "\n";
  os << "safety = " << fmt(c.safety) << "\n";
  if (!c.snapshot_times.empty()) {
    os << "snapshots = ";
    for (std::size_t i = 0; i < c.snapshot_times.size(); ++i)
      os << (i ? ", " : "") << fmt(c.snapshot_times[i]);
    os << "\n";
  }
  os << "out_dir = " << plan.output.out_dir << "\n";
  return os.str();
}

}  // namespace ppct
