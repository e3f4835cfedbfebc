#include "lyapcert/config.hpp"

#include "lyapcert/algorithms.hpp"
#include "lyapcert/interpolation.hpp"
#include "lyapcert/lyap_dependent.hpp"
#include "lyapcert/lyap_independent.hpp"
#include "lyapcert/problem.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace lyapcert {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& text, const std::string& what, int line) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used == t.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(what + ": '" + t + "' is not a number", line);
}

int parse_int(const std::string& text, const std::string& what, int line) {
  const double v = parse_double(text, what, line);
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 1e9)
    throw ConfigError(what + ": '" + trim(text) + "' is not an integer", line);
  return static_cast<int>(v);
}

bool parse_bool(const std::string& text, const std::string& what, int line) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(what + ": '" + trim(text) + "' is not a boolean", line);
}

// "name(key=value, ...)" or a bare "name".
struct Call {
  std::string name;
  std::vector<std::pair<std::string, std::string>> args;
};

Call parse_call(const std::string& text, int line) {
  const std::string t = trim(text);
  Call c;
  const auto open = t.find('(');
  if (open == std::string::npos) {
    c.name = t;
  } else {
    if (t.back() != ')') throw ConfigError("missing ')' in '" + t + "'", line);
    c.name = trim(t.substr(0, open));
    const std::string inner = trim(t.substr(open + 1, t.size() - open - 2));
    if (!inner.empty()) {
      for (const auto& part : split(inner, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key=value in '" + part + "'", line);
        c.args.emplace_back(trim(part.substr(0, eq)), trim(part.substr(eq + 1)));
      }
    }
  }
  if (c.name.empty()) throw ConfigError("empty name in '" + t + "'", line);
  return c;
}

RunMode parse_mode(const std::string& text, int line) {
  const std::string t = trim(text);
  if (t == "verify-independent") return RunMode::VerifyIndependent;
  if (t == "bisect-rho") return RunMode::BisectRho;
  if (t == "verify-dependent") return RunMode::VerifyDependent;
  if (t == "sweep") return RunMode::Sweep;
  throw ConfigError("unknown mode '" + t +
                        "' (verify-independent, bisect-rho, verify-dependent, sweep)",
                    line);
}

std::vector<double> parse_axis(const std::string& text, const std::string& what, int line) {
  const std::string t = trim(text);
  std::vector<double> vals;
  if (t.rfind("linspace(", 0) == 0 || t.rfind("range(", 0) == 0) {
    const bool lin = t[0] == 'l';
    if (t.back() != ')') throw ConfigError(what + ": missing ')'", line);
    const auto args = split(t.substr(t.find('(') + 1, t.size() - t.find('(') - 2), ',');
    if (lin) {
      if (args.size() != 3) throw ConfigError(what + ": linspace takes (start, stop, count)", line);
      const double a = parse_double(args[0], what, line), b = parse_double(args[1], what, line);
      const int n = parse_int(args[2], what, line);
      if (!std::isfinite(a) || !std::isfinite(b)) throw ConfigError(what + ": range must be finite", line);
      if (n < 1) throw ConfigError(what + ": linspace count must be >= 1", line);
      for (int r = 0; r < n; ++r) vals.push_back(n == 1 ? a : a + (b - a) * r / (n - 1));
    } else {
      if (args.size() != 2 && args.size() != 3)
        throw ConfigError(what + ": range takes (first, last[, step])", line);
      const int a = parse_int(args[0], what, line), b = parse_int(args[1], what, line);
      const int step = args.size() == 3 ? parse_int(args[2], what, line) : 1;
      if (step < 1) throw ConfigError(what + ": range step must be >= 1", line);
      if (b < a) throw ConfigError(what + ": empty range", line);
      for (int v = a; v <= b; v += step) vals.push_back(v);
    }
  } else {
    for (const auto& part : split(t, ',')) {
      const double v = parse_double(part, what, line);
      if (!std::isfinite(v)) throw ConfigError(what + ": values must be finite", line);
      vals.push_back(v);
    }
  }
  if (vals.empty()) throw ConfigError(what + ": no values", line);
  return vals;
}

// Line numbers of "[section]" headers and "key =" lines.
struct LineIndex {
  std::map<std::string, int> sections;
  std::map<std::string, int> keys;  // "section.key" (root keys have no dot)

  explicit LineIndex(const std::string& text) {
    std::istringstream in(text);
    std::string raw, section;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      const std::string l = trim(raw);
      if (l.empty() || l[0] == ';' || l[0] == '#') continue;
      if (l[0] == '[') {
        section = trim(l.substr(1, l.find(']') - 1));
        sections.emplace(section, n);
        continue;
      }
      const auto eq = l.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(l.substr(0, eq));
      keys.emplace(section.empty() ? key : section + "." + key, n);
    }
  }
  int key(const std::string& section, const std::string& k) const {
    auto it = keys.find(section.empty() ? k : section + "." + k);
    return it == keys.end() ? 0 : it->second;
  }
};

std::string precise(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Sections with the point's axis values substituted.
struct Resolved {
  ConfigSection problem, algorithm, analysis;
};

Resolved resolve(const ExperimentConfig& cfg, const SweepPoint& point) {
  Resolved r{cfg.problem, cfg.algorithm, cfg.analysis};
  for (std::size_t a = 0; a < cfg.axes.size(); ++a) {
    const SweepAxis& ax = cfg.axes[a];
    ConfigSection& sec = ax.section == "problem" ? r.problem : ax.section == "algorithm" ? r.algorithm : r.analysis;
    sec.at(ax.key).value = precise(point.at(a));
  }
  return r;
}

const ConfigEntry* find(const ConfigSection& sec, const std::string& key) {
  auto it = sec.find(key);
  return it == sec.end() ? nullptr : &it->second;
}

double get_double(const ConfigSection& sec, const std::string& section, const std::string& key,
                  double fallback) {
  const ConfigEntry* e = find(sec, key);
  return e ? parse_double(e->value, section + "." + key, e->line) : fallback;
}

int get_int(const ConfigSection& sec, const std::string& section, const std::string& key, int fallback) {
  const ConfigEntry* e = find(sec, key);
  return e ? parse_int(e->value, section + "." + key, e->line) : fallback;
}

bool get_bool(const ConfigSection& sec, const std::string& section, const std::string& key, bool fallback) {
  const ConfigEntry* e = find(sec, key);
  return e ? parse_bool(e->value, section + "." + key, e->line) : fallback;
}

template <class F>
auto as_config_error(int line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what(), line);
  }
}

InclusionProblem build_problem(const ConfigSection& sec) {
  std::vector<Component> comps;
  for (int idx = 1;; ++idx) {
    const ConfigEntry* e = find(sec, "component" + std::to_string(idx));
    if (!e) break;
    std::vector<ComponentClass> classes;
    for (const auto& term : split(e->value, '&')) {
      const Call call = parse_call(term, e->line);
      std::map<std::string, double> params;
      for (const auto& [k, v] : call.args) {
        double value;
        if (!v.empty() && v[0] == '$') {
          const std::string ref = v.substr(1);
          const ConfigEntry* re = find(sec, ref);
          if (!re) throw ConfigError("undefined reference '$" + ref + "'", e->line);
          value = parse_double(re->value, "problem." + ref, re->line);
        } else {
          value = parse_double(v, call.name + "." + k, e->line);
        }
        if (!params.emplace(k, value).second) throw ConfigError("repeated parameter '" + k + "'", e->line);
      }
      classes.push_back(as_config_error(e->line, [&] { return ComponentClass(parse_tag(call.name), params); }));
    }
    comps.push_back(as_config_error(e->line, [&] { return Component(classes); }));
  }
  if (comps.empty()) throw ConfigError("[problem] needs component1 = ...");
  const int line = find(sec, "component1")->line;
  return as_config_error(line, [&] { return make_problem(comps); });
}

AlgorithmSpec build_algorithm(const ConfigSection& sec) {
  const ConfigEntry* name = find(sec, "name");
  if (!name) throw ConfigError("[algorithm] needs name = ...");
  std::map<std::string, double> params;
  std::optional<std::vector<int>> funcs;
  for (const auto& [k, e] : sec) {
    if (k == "name") continue;
    if (k == "functions") {
      std::vector<int> f;
      const std::string t = trim(e.value);
      if (!t.empty() && t != "none")
        for (const auto& part : split(t, ',')) f.push_back(parse_int(part, "algorithm.functions", e.line));
      funcs = f;
      continue;
    }
    params[k] = parse_double(e.value, "algorithm." + k, e.line);
  }
  return as_config_error(name->line, [&] { return make_algorithm(trim(name->value), params, funcs); });
}

IndepParams build_indep_params(const ConfigSection& sec, const AlgorithmSpec& alg, bool need_rho) {
  const ConfigEntry* ctor = find(sec, "params");
  if (!ctor) throw ConfigError("[analysis] needs params = ... for the iteration-independent analysis");
  const std::string s = "analysis";
  const int h = get_int(sec, s, "h", 0), alpha = get_int(sec, s, "alpha", 0);
  const int i = get_int(sec, s, "i", 1), j = get_int(sec, s, "j", 1), tau = get_int(sec, s, "tau", 0);
  const std::string name = trim(ctor->value);
  IndepParams p = as_config_error(ctor->line, [&] {
    if (name == "linear_distance") return params_linear_distance(alg, h, alpha, i, j, tau);
    if (name == "linear_funcval") return params_linear_funcval(alg, h, alpha, j, tau);
    if (name == "sublinear_optimality") return params_sublinear_optimality(alg, h, alpha, tau);
    if (name == "sublinear_fpr") return params_sublinear_fpr(alg, h, alpha, tau);
    if (name == "sublinear_funcval") return params_sublinear_funcval(alg, h, alpha, j, tau);
    throw std::invalid_argument("unknown params '" + name +
                      "' (linear_distance, linear_funcval, sublinear_optimality, sublinear_fpr, "
                      "sublinear_funcval)");
  });
  if (need_rho) p.rho = get_double(sec, s, "rho", 1.0);
  p.remove_C2 = get_bool(sec, s, "remove_C2", p.remove_C2);
  p.remove_C3 = get_bool(sec, s, "remove_C3", p.remove_C3);
  p.remove_C4 = get_bool(sec, s, "remove_C4", p.remove_C4);
  p.Q_equals_P = get_bool(sec, s, "Q_equals_P", p.Q_equals_P);
  p.S_equals_T = get_bool(sec, s, "S_equals_T", p.S_equals_T);
  p.q_equals_p = get_bool(sec, s, "q_equals_p", p.q_equals_p);
  p.s_equals_t = get_bool(sec, s, "s_equals_t", p.s_equals_t);
  return p;
}

StepForm build_step(const ConfigEntry& e, const AlgorithmSpec& alg, int k) {
  const Call call = parse_call(e.value, e.line);
  std::map<std::string, int> args;
  for (const auto& [key, v] : call.args) args[key] = parse_int(v, call.name + "." + key, e.line);
  auto allow = [&](std::set<std::string> keys) {
    for (const auto& [key, v] : args)
      if (!keys.count(key)) throw ConfigError(call.name + " takes no argument '" + key + "'", e.line);
  };
  auto arg = [&](const std::string& key) { return args.count(key) ? args[key] : 1; };
  return as_config_error(e.line, [&] {
    if (call.name == "distance") {
      allow({"i", "j"});
      return dep_params_distance(alg, k, arg("i"), arg("j"));
    }
    if (call.name == "funcval") {
      allow({"j"});
      return dep_params_funcval(alg, k, arg("j"));
    }
    if (call.name == "fpr") {
      allow({});
      return dep_params_fpr(alg, k);
    }
    if (call.name == "optimality") {
      allow({});
      return dep_params_optimality(alg, k);
    }
    throw std::invalid_argument("unknown endpoint '" + call.name + "' (distance, funcval, fpr, optimality)");
  });
}

DepParams build_dep_params(const ConfigSection& sec, const AlgorithmSpec& alg) {
  const ConfigEntry* K = find(sec, "K");
  const ConfigEntry* first = find(sec, "first");
  const ConfigEntry* last = find(sec, "last");
  if (!K || !first || !last) throw ConfigError("[analysis] needs K, first and last for verify-dependent");
  DepParams p;
  p.K = parse_int(K->value, "analysis.K", K->line);
  if (p.K < 1) throw ConfigError("analysis.K must be >= 1", K->line);
  p.first = build_step(*first, alg, 0);
  p.last = build_step(*last, alg, p.K);
  return p;
}

const std::set<std::string> kIndepKeys = {"params",    "h",         "alpha",      "i",          "j",
                                          "tau",       "rho",       "remove_C2",  "remove_C3",  "remove_C4",
                                          "Q_equals_P", "S_equals_T", "q_equals_p", "s_equals_t", "rho_lower",
                                          "rho_upper", "rho_tol"};
const std::set<std::string> kDepKeys = {"K", "first", "last"};

void check_analysis_keys(const ExperimentConfig& cfg) {
  const bool dep = cfg.task == RunMode::VerifyDependent;
  const auto& allowed = dep ? kDepKeys : kIndepKeys;
  for (const auto& [k, e] : cfg.analysis)
    if (!allowed.count(k))
      throw ConfigError("unknown [analysis] key '" + k + "' for " + mode_name(cfg.task), e.line);
}

}  // namespace

std::string mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::VerifyIndependent: return "verify-independent";
    case RunMode::BisectRho: return "bisect-rho";
    case RunMode::VerifyDependent: return "verify-dependent";
    case RunMode::Sweep: return "sweep";
  }
  return "?";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ExperimentConfig parse_config_text(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.message(), static_cast<int>(e.line()));
  }
  const LineIndex lines(text);

  ExperimentConfig cfg;
  bool have_mode = false;
  std::optional<int> sweep_line;
  std::vector<std::pair<std::string, ConfigEntry>> sweep_entries;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      const int line = lines.key("", name);
      const std::string v = node.data();
      if (name == "mode") {
        cfg.mode = parse_mode(v, line);
        have_mode = true;
      } else if (name == "tol") {
        cfg.tol = parse_double(v, "tol", line);
        if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) throw ConfigError("tol must be positive", line);
      } else if (name == "seed") {
        const int s = parse_int(v, "seed", line);
        if (s < 0) throw ConfigError("seed must be >= 0", line);
        cfg.seed = static_cast<std::uint64_t>(s);
      } else if (name == "output") {
        cfg.output = trim(v);
      } else {
        throw ConfigError("unknown key '" + name + "' (mode, tol, seed, output)", line);
      }
      continue;
    }
    const int sline = lines.sections.count(name) ? lines.sections.at(name) : 0;
    ConfigSection* target = nullptr;
    if (name == "problem") target = &cfg.problem;
    else if (name == "algorithm") target = &cfg.algorithm;
    else if (name == "analysis") target = &cfg.analysis;
    else if (name == "sweep") sweep_line = sline;
    else throw ConfigError("unknown section [" + name + "] (problem, algorithm, analysis, sweep)", sline);
    for (const auto& [key, child] : node) {
      if (!child.empty()) throw ConfigError("nested keys are not supported", lines.key(name, key));
      ConfigEntry e{child.data(), lines.key(name, key)};
      if (target) target->emplace(key, e);
      else sweep_entries.emplace_back(key, e);
    }
  }
  if (!have_mode) throw ConfigError("missing 'mode = ...' before the first section");
  if (cfg.problem.empty()) throw ConfigError("missing [problem] section");
  if (cfg.algorithm.empty()) throw ConfigError("missing [algorithm] section");

  cfg.task = cfg.mode;
  if (cfg.mode == RunMode::Sweep) {
    if (!sweep_line) throw ConfigError("mode = sweep needs a [sweep] section");
    bool have_task = false;
    for (const auto& [key, e] : sweep_entries)
      if (key == "task") {
        cfg.task = parse_mode(e.value, e.line);
        if (cfg.task == RunMode::Sweep) throw ConfigError("sweep task must be a single-point mode", e.line);
        have_task = true;
      }
    if (!have_task) throw ConfigError("[sweep] needs task = ...", *sweep_line);
  } else if (sweep_line) {
    throw ConfigError("[sweep] is only read with mode = sweep", *sweep_line);
  }

  std::set<std::string> seen;
  for (const auto& [key, e] : sweep_entries) {
    if (key == "task") continue;
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError("sweep axis '" + key + "' must be section.key", e.line);
    SweepAxis ax;
    ax.section = key.substr(0, dot);
    ax.key = key.substr(dot + 1);
    ax.line = e.line;
    const ConfigSection* sec = ax.section == "problem"     ? &cfg.problem
                               : ax.section == "algorithm" ? &cfg.algorithm
                               : ax.section == "analysis"  ? &cfg.analysis
                                                           : nullptr;
    if (!sec) throw ConfigError("sweep axis '" + key + "' names an unknown section", e.line);
    if (!sec->count(ax.key))
      throw ConfigError("sweep axis '" + key + "' does not name an existing parameter", e.line);
    if (ax.key == "name" || ax.key == "params" || ax.key == "first" || ax.key == "last" ||
        ax.key == "functions" || ax.key.rfind("component", 0) == 0)
      throw ConfigError("sweep axis '" + key + "' is not numeric", e.line);
    if (!seen.insert(key).second) throw ConfigError("repeated sweep axis '" + key + "'", e.line);
    ax.values = parse_axis(e.value, key, e.line);
    cfg.axes.push_back(std::move(ax));
  }
  check_analysis_keys(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& cfg) {
  std::vector<SweepPoint> pts{{}};
  for (const auto& ax : cfg.axes) {
    std::vector<SweepPoint> next;
    next.reserve(pts.size() * ax.values.size());
    for (const auto& p : pts)
      for (double v : ax.values) {
        SweepPoint q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    pts = std::move(next);
  }
  return pts;
}

void validate_point(const ExperimentConfig& cfg, const SweepPoint& point) {
  const Resolved r = resolve(cfg, point);
  const InclusionProblem prob = build_problem(r.problem);
  const AlgorithmSpec alg = build_algorithm(r.algorithm);
  const int aline = find(r.algorithm, "name")->line;
  as_config_error(aline, [&] {
    check_compatible(prob, alg);
    return 0;
  });
  if (cfg.task == RunMode::VerifyDependent) {
    const DepParams p = build_dep_params(r.analysis, alg);
    as_config_error(find(r.analysis, "K")->line, [&] {
      build_dependent_model(prob, alg, p);
      return 0;
    });
  } else {
    IndepParams p = build_indep_params(r.analysis, alg, cfg.task == RunMode::VerifyIndependent);
    const int pline = find(r.analysis, "params")->line;
    if (cfg.task == RunMode::BisectRho) {
      const double lo = get_double(r.analysis, "analysis", "rho_lower", 0.0);
      const double hi = get_double(r.analysis, "analysis", "rho_upper", 1.0);
      const double tol = get_double(r.analysis, "analysis", "rho_tol", 1e-4);
      if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw ConfigError("need 0 <= rho_lower <= rho_upper <= 1", pline);
      if (!(tol > 0.0)) throw ConfigError("rho_tol must be positive", pline);
      p.rho = hi;
    }
    as_config_error(pline, [&] {
      build_independent_model(prob, alg, p);
      return 0;
    });
  }
}

PointResult run_point(const ExperimentConfig& cfg, const SweepPoint& point, const SolverSettings& settings) {
  const Resolved r = resolve(cfg, point);
  const InclusionProblem prob = build_problem(r.problem);
  const AlgorithmSpec alg = build_algorithm(r.algorithm);
  PointResult out;
  switch (cfg.task) {
    case RunMode::VerifyIndependent: {
      const IndepResult res = verify_independent(prob, alg, build_indep_params(r.analysis, alg, true), settings);
      out.status = res.verdict.status;
      if (out.status != VerdictStatus::NumericalFailure) out.feasible = res.verdict.feasible();
      break;
    }
    case RunMode::BisectRho: {
      const double lo = get_double(r.analysis, "analysis", "rho_lower", 0.0);
      const double hi = get_double(r.analysis, "analysis", "rho_upper", 1.0);
      const double tol = get_double(r.analysis, "analysis", "rho_tol", 1e-4);
      const BisectionResult br =
          bisect_rho(prob, alg, build_indep_params(r.analysis, alg, false), lo, hi, tol, settings);
      out.status = br.status;
      out.rho = br.rho;
      break;
    }
    case RunMode::VerifyDependent: {
      const DepResult res = verify_dependent(prob, alg, build_dep_params(r.analysis, alg), settings);
      out.status = res.verdict.status;
      out.c = res.c;
      break;
    }
    case RunMode::Sweep: throw std::logic_error("run_point: sweep is not a point task");
  }
  return out;
}

std::string format_csv(const ExperimentConfig& cfg, const std::vector<SweepPoint>& points,
                       const std::vector<PointResult>& results, const std::optional<std::string>& timestamp) {
  if (points.size() != results.size()) throw std::invalid_argument("format_csv: size mismatch");
  std::ostringstream os;
  if (timestamp) os << "# generated " << *timestamp << "\n";
  for (const auto& ax : cfg.axes) os << ax.name() << ",";
  const char* result = cfg.task == RunMode::BisectRho ? "rho" : cfg.task == RunMode::VerifyDependent ? "c" : "feasible";
  os << result << ",status\n";
  for (std::size_t r = 0; r < points.size(); ++r) {
    for (double v : points[r]) os << format_number(v) << ",";
    const PointResult& pr = results[r];
    if (pr.rho) os << format_number(*pr.rho);
    else if (pr.c) os << format_number(*pr.c);
    else if (pr.feasible) os << (*pr.feasible ? "true" : "false");
    os << "," << status_name(pr.status) << "\n";
  }
  return os.str();
}

int exit_code_for(const std::vector<PointResult>& results) {
  for (const auto& r : results)
    if (r.status == VerdictStatus::NumericalFailure) return 2;
  return 0;
}

}  // namespace lyapcert
