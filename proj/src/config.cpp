#include "zospg/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include <fmt/format.h>

namespace zospg {

namespace {

// ---- flat sectioned key/value text -------------------------------------------------

using Value = std::variant<double, std::string, std::vector<double>, bool>;

struct Entry {
  Value value;
  int line;
};

struct Section {
  std::string name;
  int line;
  std::map<std::string, Entry> entries;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", where, text));
  }
  if (used != text.size()) throw ConfigError(fmt::format("{}: '{}' is not a number", where, text));
  return v;
}

Value parse_value(const std::string& raw, const std::string& where) {
  const std::string text = trim(raw);
  if (text.empty()) throw ConfigError(fmt::format("{}: missing value", where));
  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') {
      throw ConfigError(fmt::format("{}: unterminated string", where));
    }
    return text.substr(1, text.size() - 2);
  }
  if (text.front() == '[') {
    if (text.back() != ']') throw ConfigError(fmt::format("{}: unterminated array", where));
    std::vector<double> values;
    std::stringstream inner(text.substr(1, text.size() - 2));
    std::string item;
    while (std::getline(inner, item, ',')) {
      const std::string t = trim(item);
      if (t.empty()) continue;
      values.push_back(parse_number(t, where));
    }
    return values;
  }
  if (text == "true") return true;
  if (text == "false") return false;
  return parse_number(text, where);
}

std::vector<Section> parse_sections(const std::string& text, const std::string& origin) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const std::string where = fmt::format("{}:{}", origin, lineno);
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(fmt::format("{}: malformed section header", where));
      const std::string name = trim(body.substr(1, body.size() - 2));
      if (name.empty()) throw ConfigError(fmt::format("{}: empty section name", where));
      for (const auto& s : sections) {
        if (s.name == name) throw ConfigError(fmt::format("{}: duplicate section [{}]", where, name));
      }
      sections.push_back({name, lineno, {}});
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("{}: expected 'key = value'", where));
    if (sections.empty()) throw ConfigError(fmt::format("{}: key outside of any section", where));
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError(fmt::format("{}: empty key", where));
    auto& entries = sections.back().entries;
    if (entries.count(key)) throw ConfigError(fmt::format("{}: duplicate key '{}'", where, key));
    entries.emplace(key, Entry{parse_value(body.substr(eq + 1), where), lineno});
  }
  return sections;
}

// Typed access with diagnostics that name the file, line and field.
class SectionReader {
 public:
  SectionReader(const Section* section, std::string origin, std::string name)
      : section_(section), origin_(std::move(origin)), name_(std::move(name)) {}

  bool has(const std::string& key) const { return section_ && section_->entries.count(key); }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    const Entry* e = find(key);
    if (!e) return require(key, fallback);
    if (const auto* v = std::get_if<double>(&e->value)) return *v;
    throw error(*e, key, "expected a number");
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::size_t count(const std::string& key, std::optional<std::size_t> fallback = std::nullopt) {
    const Entry* e = find(key);
    if (!e) {
      if (!fallback) throw missing(key);
      return *fallback;
    }
    const double v = number(key);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) throw error(*e, key, "expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    const Entry* e = find(key);
    if (!e) {
      if (!fallback) throw missing(key);
      return *fallback;
    }
    if (const auto* v = std::get_if<std::string>(&e->value)) return *v;
    throw error(*e, key, "expected a quoted string");
  }

  std::optional<Vector> vector(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    if (const auto* v = std::get_if<std::vector<double>>(&e->value)) {
      return Eigen::Map<const Vector>(v->data(), static_cast<Eigen::Index>(v->size()));
    }
    throw error(*e, key, "expected an array of numbers");
  }

  /// Rejects keys the reader never asked about.
  void finish() const {
    if (!section_) return;
    for (const auto& [key, entry] : section_->entries) {
      if (!seen_.count(key)) throw error(entry, key, "unknown key");
    }
  }

  ConfigError error(const Entry& e, const std::string& key, const std::string& what) const {
    return ConfigError(fmt::format("{}:{}: [{}] {}: {}", origin_, e.line, name_, key, what));
  }
  ConfigError field_error(const std::string& key, const std::string& what) const {
    if (section_) {
      auto it = section_->entries.find(key);
      if (it != section_->entries.end()) return error(it->second, key, what);
    }
    return ConfigError(fmt::format("{}: [{}] {}: {}", origin_, name_, key, what));
  }

 private:
  const Entry* find(const std::string& key) {
    seen_.insert(key);
    if (!section_) return nullptr;
    auto it = section_->entries.find(key);
    return it == section_->entries.end() ? nullptr : &it->second;
  }
  double require(const std::string& key, std::optional<double> fallback) const {
    if (!fallback) throw missing(key);
    return *fallback;
  }
  ConfigError missing(const std::string& key) const {
    return ConfigError(fmt::format("{}: [{}] missing required key '{}'", origin_, name_, key));
  }

  const Section* section_;
  std::string origin_;
  std::string name_;
  std::set<std::string> seen_;
};

const Section* find_section(const std::vector<Section>& sections, const std::string& name) {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace

Objective make_objective(const ProblemSpec& spec) {
  Objective obj;
  if (spec.id == "scaled_quadratic") {
    if (spec.dim != 3) throw ConfigError("[problem] dim: scaled_quadratic is three-dimensional");
    obj = scaled_quadratic();
  } else if (spec.id == "quadratic") {
    if (spec.spectrum.size() == 0) throw ConfigError("[problem] spectrum: required for quadratic");
    const Vector linear =
        spec.linear.size() == 0 ? Vector::Zero(spec.spectrum.size()) : spec.linear;
    try {
      obj = diagonal_quadratic(spec.spectrum, linear);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("[problem] {}", e.what()));
    }
  } else if (spec.id == "quartic") {
    obj = quartic(spec.dim, spec.gamma, spec.domain_radius);
  } else if (spec.id == "convex_quartic") {
    obj = convex_quartic(spec.dim, spec.domain_radius);
  } else {
    throw ConfigError(fmt::format("[problem] id: unknown problem '{}'", spec.id));
  }
  if (spec.holder_L) obj.holder_L = *spec.holder_L;
  return obj;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t method_index, std::size_t trial) {
  return derive_seed(master, {0x6d6574686f64ULL, method_index, trial});
}

MethodPlan plan_method(const ExperimentConfig& cfg, const MethodSpec& method) {
  Objective obj = make_objective(cfg.problem);
  RunConfig run;
  run.beta = method.beta;
  run.sigma = cfg.noise.sigma_effective();
  run.holder_L = method.holder_L.value_or(obj.holder_L);
  run.iterations = cfg.iterations;
  run.tau_override = method.tau_override;
  run.c_star = method.c_star;
  run.checkpoint_stride = cfg.stride;

  double reg_gamma = 0.0;
  if (method.regularized) {
    reg_gamma = regularization_gamma(method.eps, method.radius_R);
    run.gamma = obj.gamma + reg_gamma;
  } else {
    run.gamma = method.gamma.value_or(obj.gamma);
    if (!(run.gamma > 0.0)) {
      throw ConfigError(fmt::format(
          "[method.{}] gamma: problem '{}' is not strongly convex; set gamma or mode = \"regularized\"",
          method.key, obj.name));
    }
  }
  validate(run);

  KernelSpec kernel = build_kernel(method.beta);
  const double tau1 = tau_coefficient(run, kernel, obj.dim);
  const double radius = cfg.set.outer_radius() + tau1;
  double G = obj.gradient_bound(radius);
  if (method.regularized) G += reg_gamma * (radius + cfg.x0.norm());
  return MethodPlan{std::move(obj), std::move(kernel), run, tau1, G, reg_gamma};
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("[experiment] trials: must be >= 1");
  if (cfg.iterations < 1) throw ConfigError("[experiment] iterations: must be >= 1");
  if (cfg.methods.empty()) throw ConfigError("no [method.<name>] sections");
  const Objective obj = make_objective(cfg.problem);
  if (cfg.set.dim() != obj.dim) {
    throw ConfigError(fmt::format("[set] dimension {} does not match problem dimension {}",
                                  cfg.set.dim(), obj.dim));
  }
  if (static_cast<std::size_t>(cfg.x0.size()) != obj.dim) {
    throw ConfigError(fmt::format("[start] point: dimension {} does not match problem dimension {}",
                                  cfg.x0.size(), obj.dim));
  }
  if (!cfg.set.contains(cfg.x0, 1e-9)) throw ConfigError("[start] point: not in the feasible set");
  if (!obj.optimum || !cfg.set.contains(obj.optimum->point, 1e-9)) {
    throw ConfigError("[problem] the problem's minimiser must lie in the feasible set");
  }
  std::set<std::string> keys;
  for (const auto& m : cfg.methods) {
    if (!keys.insert(m.key).second) throw ConfigError(fmt::format("[method.{}] duplicate method", m.key));
    if (!(m.beta >= 2.0)) {
      throw ConfigError(fmt::format(
          "[method.{}] beta: {} is not admissible (beta > 2, or beta = 2 for the baseline)", m.key,
          m.beta));
    }
    if (cfg.noise.sigma_effective() == 0.0 && !m.tau_override) {
      throw ConfigError(fmt::format(
          "[method.{}] tau: noise has sigma = 0, so the smoothing schedule needs an explicit tau",
          m.key));
    }
    if (m.regularized) {
      if (!(m.eps > 0.0)) throw ConfigError(fmt::format("[method.{}] eps: must be > 0", m.key));
      if (!(m.radius_R > 0.0)) throw ConfigError(fmt::format("[method.{}] R: must be > 0", m.key));
      if (!(m.rho > 0.0)) throw ConfigError(fmt::format("[method.{}] rho: must be > 0", m.key));
      const double dist = (cfg.x0 - obj.optimum->point).norm();
      if (dist > m.radius_R * (1.0 + 1e-12)) {
        throw ConfigError(fmt::format("[method.{}] R: {} is below ||x0 - x*|| = {}", m.key,
                                      m.radius_R, dist));
      }
    }
    const MethodPlan plan = plan_method(cfg, m);
    if (plan.tau1 > plan.objective.domain_inflation) {
      throw ConfigError(fmt::format("[method.{}] tau_1 = {} exceeds the problem's domain inflation",
                                    m.key, plan.tau1));
    }
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& origin) {
  const std::vector<Section> sections = parse_sections(text, origin);
  ExperimentConfig cfg;

  for (const auto& s : sections) {
    static const std::set<std::string> known{"experiment", "problem", "set", "start", "noise"};
    if (!known.count(s.name) && s.name.rfind("method.", 0) != 0) {
      throw ConfigError(fmt::format("{}:{}: unknown section [{}]", origin, s.line, s.name));
    }
  }

  SectionReader exp(find_section(sections, "experiment"), origin, "experiment");
  cfg.name = exp.text("name", cfg.name);
  cfg.trials = exp.count("trials", cfg.trials);
  cfg.iterations = exp.count("iterations", cfg.iterations);
  cfg.stride = exp.count("stride", cfg.stride);
  cfg.seed = exp.count("seed", cfg.seed);
  cfg.output_dir = exp.text("output", std::string());
  if (cfg.trials < 1) throw exp.field_error("trials", "must be >= 1");
  if (cfg.iterations < 1) throw exp.field_error("iterations", "must be >= 1");
  exp.finish();

  SectionReader prob(find_section(sections, "problem"), origin, "problem");
  cfg.problem.id = prob.text("id", cfg.problem.id);
  cfg.problem.dim = prob.count("dim", cfg.problem.dim);
  if (auto v = prob.vector("spectrum")) {
    cfg.problem.spectrum = *v;
    if (!prob.has("dim")) cfg.problem.dim = static_cast<std::size_t>(v->size());
  }
  if (auto v = prob.vector("linear")) cfg.problem.linear = *v;
  cfg.problem.gamma = prob.number("gamma", cfg.problem.gamma);
  cfg.problem.domain_radius = prob.number("domain_radius", cfg.problem.domain_radius);
  cfg.problem.holder_L = prob.optional_number("holder_L");
  if (cfg.problem.dim < 1) throw prob.field_error("dim", "must be >= 1");
  if (cfg.problem.holder_L && !(*cfg.problem.holder_L > 0.0)) {
    throw prob.field_error("holder_L", "must be > 0");
  }
  prob.finish();
  const std::size_t n = cfg.problem.id == "quadratic" && cfg.problem.spectrum.size() > 0
                            ? static_cast<std::size_t>(cfg.problem.spectrum.size())
                            : cfg.problem.dim;
  const auto N = static_cast<Eigen::Index>(n);

  SectionReader set(find_section(sections, "set"), origin, "set");
  const std::string kind = set.text("kind", "ball");
  try {
    if (kind == "ball") {
      cfg.set = FeasibleSet::ball(set.vector("center").value_or(Vector::Zero(N)),
                                  set.number("radius", 1.0));
    } else if (kind == "box") {
      auto lo = set.vector("lower");
      auto hi = set.vector("upper");
      if (!lo || !hi) throw set.field_error("kind", "box needs 'lower' and 'upper'");
      cfg.set = FeasibleSet::box(*lo, *hi);
    } else {
      throw set.field_error("kind", fmt::format("unknown set kind '{}'", kind));
    }
  } catch (const std::invalid_argument& e) {
    throw set.field_error("kind", e.what());
  }
  set.finish();

  SectionReader start(find_section(sections, "start"), origin, "start");
  if (auto p = start.vector("point")) {
    cfg.x0 = *p;
  } else {
    cfg.x0 = Vector::Zero(N);
    cfg.x0[0] = 0.5;
  }
  start.finish();

  SectionReader noise(find_section(sections, "noise"), origin, "noise");
  const std::string noise_kind = noise.text("kind", "gaussian");
  try {
    if (noise_kind == "none") {
      cfg.noise = NoiseModel::none();
    } else if (noise_kind == "gaussian") {
      cfg.noise = NoiseModel::gaussian(noise.number("sigma", 0.01));
    } else if (noise_kind == "uniform") {
      cfg.noise = NoiseModel::uniform(noise.number("sigma"));
    } else if (noise_kind == "constant_bias") {
      cfg.noise = NoiseModel::constant_bias(noise.number("bias"));
    } else if (noise_kind == "alternating_bias") {
      cfg.noise = NoiseModel::alternating_bias(noise.number("bias"));
    } else {
      throw noise.field_error("kind", fmt::format("unknown noise kind '{}'", noise_kind));
    }
  } catch (const std::invalid_argument& e) {
    throw noise.field_error("sigma", e.what());
  }
  noise.finish();

  for (const auto& s : sections) {
    if (s.name.rfind("method.", 0) != 0) continue;
    MethodSpec m;
    m.key = s.name.substr(7);
    if (m.key.empty() || m.key.find_first_of("/\\ .") != std::string::npos) {
      throw ConfigError(fmt::format("{}:{}: method name '{}' must be a plain identifier", origin,
                                    s.line, m.key));
    }
    SectionReader r(&s, origin, s.name);
    m.beta = r.number("beta");
    if (!(m.beta >= 2.0) || !std::isfinite(m.beta)) {
      throw r.field_error("beta", fmt::format(
          "{} is not admissible (beta > 2, or beta = 2 for the baseline)", m.beta));
    }
    m.label = r.text("label", m.beta == 2.0 ? std::string(kBaselineLabel)
                                            : fmt::format("beta={}", m.beta));
    if (m.label.find_first_of(",\"\n") != std::string::npos) {
      throw r.field_error("label", "must not contain commas or quotes");
    }
    m.tau_override = r.optional_number("tau");
    m.gamma = r.optional_number("gamma");
    m.holder_L = r.optional_number("holder_L");
    m.c_star = r.number("c_star", 9.0);
    const std::string mode = r.text("mode", "strongly_convex");
    if (mode == "regularized") {
      m.regularized = true;
      m.eps = r.number("eps");
      m.radius_R = r.number("R");
      m.rho = r.number("rho", 0.1);
    } else if (mode != "strongly_convex") {
      throw r.field_error("mode", fmt::format("unknown mode '{}'", mode));
    }
    if (m.tau_override && !(*m.tau_override > 0.0)) throw r.field_error("tau", "must be > 0");
    if (m.gamma && !(*m.gamma > 0.0)) throw r.field_error("gamma", "must be > 0");
    if (m.holder_L && !(*m.holder_L > 0.0)) throw r.field_error("holder_L", "must be > 0");
    if (!(m.c_star > 0.0)) throw r.field_error("c_star", "must be > 0");
    r.finish();
    cfg.methods.push_back(std::move(m));
  }

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig cfg = parse_config(buffer.str(), path.string());
  cfg.source = path;
  return cfg;
}

std::string bound_report(const ExperimentConfig& cfg) {
  std::string out;
  const Objective obj = make_objective(cfg.problem);
  out += fmt::format("experiment {}: problem {} (n = {}), noise {}, N = {}\n", cfg.name, obj.name,
                     obj.dim, cfg.noise.describe(), cfg.iterations);
  for (const auto& m : cfg.methods) {
    const MethodPlan plan = plan_method(cfg, m);
    const auto [A1, A2] = bound_constants(plan.run, plan.kernel, plan.G);
    out += fmt::format("\n[{}] {}\n", m.key, m.label);
    out += fmt::format("  beta = {}  l = {}  kappa = {:.6g}  kappa_beta = {:.6g}\n", m.beta,
                       plan.kernel.order(), plan.kernel.kappa(), plan.kernel.kappa_beta());
    out += fmt::format("  gamma = {:.6g}  sigma = {:.6g}  L = {:.6g}  c* = {:.6g}\n", plan.run.gamma,
                       plan.run.sigma, plan.run.holder_L, plan.run.c_star);
    out += fmt::format("  tau_1 = {:.6g}  G = {:.6g}  A1 = {:.6g}  A2 = {:.6g}\n", plan.tau1, plan.G,
                       A1, A2);
    out += fmt::format("  strongly convex bound at N = {}: {:.6g}\n", cfg.iterations,
                       theoretical_bound(plan.run, plan.kernel, obj.dim, plan.G, cfg.iterations));
    if (m.regularized) {
      const double cp = c_prime(m.rho);
      out += fmt::format("  regularized: eps = {}  R = {}  gamma = eps/R^2 = {:.6g}\n", m.eps,
                         m.radius_R, plan.reg_gamma);
      out += fmt::format("  N(eps) = {:.6g}  (rho = {}, c' = {:.6g})\n",
                         n_epsilon_real(plan.run, plan.kernel, obj.dim, plan.G, m.eps, m.radius_R,
                                        m.rho, cp),
                         m.rho, cp);
    }
  }
  return out;
}

}  // namespace zospg
