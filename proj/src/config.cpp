#include "diracsol/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace diracsol {

namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": not finite");
  return x;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

template <class T, class F>
void opt(const json& j, const char* key, const std::string& where, T& out, F&& conv) {
  if (j.contains(key)) out = conv(j.at(key), where + "." + key);
}

std::vector<std::string> strings(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(text(j[i], where));
  return out;
}

Equation parse_equation(const std::string& s, const std::string& where) {
  if (s == "dirac3d") return Equation::dirac3d;
  if (s == "dirac1d") return Equation::dirac1d;
  if (s == "kgd") return Equation::kgd;
  throw ConfigError(where + ": unknown equation '" + s + "'");
}

}  // namespace

std::string to_string(Equation e) {
  switch (e) {
    case Equation::dirac3d: return "dirac3d";
    case Equation::dirac1d: return "dirac1d";
    case Equation::kgd: return "kgd";
  }
  return "?";
}

NonlinearityModel ModelConfig::model() const {
  switch (parse_nonlinearity_kind(nonlinearity == "soler" ? "soler_linear" : nonlinearity)) {
    case NonlinearityKind::none: return NonlinearityModel::none();
    case NonlinearityKind::soler_linear: return NonlinearityModel::soler(lambda);
    case NonlinearityKind::power: return NonlinearityModel::power(lambda, exponent);
  }
  return NonlinearityModel::none();
}

bool ExperimentConfig::wants(const std::string& check) const {
  for (const auto& c : checks) {
    if (c == check) return true;
  }
  return false;
}

RunConfig parse_config(const json& j) {
  RunConfig c;
  only_keys(j, "config", {"model", "numerics", "experiment", "output"});
  if (j.contains("model")) {
    const json& m = j.at("model");
    only_keys(m, "model", {"equation", "omega", "mass", "M", "eta", "nonlinearity", "family",
                           "nodes"});
    ModelConfig& mc = c.model;
    if (m.contains("equation")) {
      mc.equation = parse_equation(text(m.at("equation"), "model.equation"), "model.equation");
    }
    opt(m, "omega", "model", mc.omega, number);
    opt(m, "mass", "model", mc.mass, number);
    opt(m, "M", "model", mc.meson_mass, number);
    opt(m, "eta", "model", mc.eta, number);
    opt(m, "family", "model", mc.family, integer);
    opt(m, "nodes", "model", mc.nodes, integer);
    if (m.contains("nonlinearity")) {
      const json& n = m.at("nonlinearity");
      only_keys(n, "model.nonlinearity", {"kind", "lambda", "p"});
      opt(n, "kind", "model.nonlinearity", mc.nonlinearity, text);
      opt(n, "lambda", "model.nonlinearity", mc.lambda, number);
      opt(n, "p", "model.nonlinearity", mc.exponent, number);
    }
  }
  if (j.contains("numerics")) {
    const json& n = j.at("numerics");
    only_keys(n, "numerics",
              {"R_max", "step", "ode_rtol", "residual_tol", "quadrature_nodes", "nodes_1d", "boost_tol", "scf_relax",
               "scf_tol", "scf_max_iterations"});
    NumericsConfig& nc = c.numerics;
    opt(n, "R_max", "numerics", nc.r_max, number);
    opt(n, "step", "numerics", nc.step, number);
    opt(n, "ode_rtol", "numerics", nc.ode_rtol, number);
    opt(n, "residual_tol", "numerics", nc.residual_tol, number);
    opt(n, "quadrature_nodes", "numerics", nc.quadrature_nodes, integer);
    opt(n, "nodes_1d", "numerics", nc.nodes_1d, integer);
    opt(n, "boost_tol", "numerics", nc.boost_tol, number);
    opt(n, "scf_relax", "numerics", nc.scf_relax, number);
    opt(n, "scf_tol", "numerics", nc.scf_tol, number);
    opt(n, "scf_max_iterations", "numerics", nc.scf_max_iterations, integer);
  }
  if (j.contains("experiment")) {
    const json& e = j.at("experiment");
    only_keys(e, "experiment", {"velocities", "t_samples", "checks"});
    ExperimentConfig& ec = c.experiment;
    if (e.contains("velocities")) {
      const json& vs = e.at("velocities");
      if (!vs.is_array()) throw ConfigError("experiment.velocities: expected an array");
      ec.velocities.clear();
      for (const json& v : vs) {
        if (v.is_number()) {
          ec.velocities.emplace_back(number(v, "experiment.velocities"), 0.0, 0.0);
        } else if (v.is_array() && v.size() == 3) {
          ec.velocities.emplace_back(number(v[0], "experiment.velocities"),
                                     number(v[1], "experiment.velocities"),
                                     number(v[2], "experiment.velocities"));
        } else {
          throw ConfigError("experiment.velocities: entries are numbers or 3-vectors");
        }
      }
    }
    if (e.contains("t_samples")) {
      const json& ts = e.at("t_samples");
      if (!ts.is_array()) throw ConfigError("experiment.t_samples: expected an array");
      ec.t_samples.clear();
      for (const json& t : ts) ec.t_samples.push_back(number(t, "experiment.t_samples"));
    }
    if (e.contains("checks")) ec.checks = strings(e.at("checks"), "experiment.checks");
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    only_keys(o, "output", {"directory", "formats"});
    opt(o, "directory", "output", c.output.directory, text);
    if (o.contains("formats")) c.output.formats = strings(o.at("formats"), "output.formats");
  }
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  const ModelConfig& m = c.model;
  if (!(m.mass > 0)) throw ConfigError("model.mass must be positive");
  if (!(m.omega > 0 && m.omega < m.mass)) throw ConfigError("model.omega must lie in (0, mass)");
  if (m.family < 1 || m.family > 4) throw ConfigError("model.family must be 1..4");
  if (m.nodes < 0) throw ConfigError("model.nodes must be non-negative");
  if (m.nodes != 0 && m.equation != Equation::dirac3d) {
    throw ConfigError("model.nodes: excited states are dirac3d only");
  }
  if (m.eta < 0) throw ConfigError("model.eta must be non-negative");
  if (m.equation == Equation::kgd && !(m.meson_mass > 0)) {
    throw ConfigError("model.M must be positive");
  }
  try {
    const NonlinearityModel nl = m.model();
    (void)nl;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model.nonlinearity: ") + e.what());
  }
  const NumericsConfig& n = c.numerics;
  if (n.r_max < 0) throw ConfigError("numerics.R_max must be non-negative");
  if (!(n.step > 0 && n.step < 1)) throw ConfigError("numerics.step must lie in (0, 1)");
  if (!(n.ode_rtol > 0) || !(n.residual_tol > 0) ||
      !(n.boost_tol > 0) || !(n.scf_tol > 0)) {
    throw ConfigError("numerics: tolerances must be positive");
  }
  if (n.quadrature_nodes < 16 || n.quadrature_nodes > 384) {
    throw ConfigError("numerics.quadrature_nodes must lie in [16, 384]");
  }
  if (n.nodes_1d < 64) throw ConfigError("numerics.nodes_1d must be at least 64");
  if (!(n.scf_relax > 0 && n.scf_relax <= 1)) throw ConfigError("numerics.scf_relax in (0, 1]");
  if (n.scf_max_iterations < 1) throw ConfigError("numerics.scf_max_iterations must be >= 1");
  for (const Vec3& v : c.experiment.velocities) {
    if (!(v.norm() < 1.0)) throw ConfigError("experiment.velocities: |v| must be below 1");
    if (m.equation == Equation::dirac1d && (v[1] != 0 || v[2] != 0)) {
      throw ConfigError("experiment.velocities: 1D runs take scalar velocities");
    }
  }
  static const std::set<std::string> known{"functionals", "virial", "symmetry", "angular",
                                           "invariants"};
  for (const auto& k : c.experiment.checks) {
    if (!known.count(k)) throw ConfigError("experiment.checks: unknown check '" + k + "'");
  }
  if (c.output.directory.empty()) throw ConfigError("output.directory is empty");
  for (const auto& f : c.output.formats) {
    if (f != "text" && f != "structured") {
      throw ConfigError("output.formats: unknown format '" + f + "'");
    }
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json vel = json::array();
  for (const Vec3& v : c.experiment.velocities) vel.push_back({v[0], v[1], v[2]});
  return {
      {"model",
       {{"equation", to_string(c.model.equation)},
        {"omega", c.model.omega},
        {"mass", c.model.mass},
        {"M", c.model.meson_mass},
        {"eta", c.model.eta},
        {"nonlinearity",
         {{"kind", c.model.nonlinearity}, {"lambda", c.model.lambda}, {"p", c.model.exponent}}},
        {"family", c.model.family},
        {"nodes", c.model.nodes}}},
      {"numerics",
       {{"R_max", c.numerics.r_max},
        {"step", c.numerics.step},
        {"ode_rtol", c.numerics.ode_rtol},
        {"residual_tol", c.numerics.residual_tol},
        {"quadrature_nodes", c.numerics.quadrature_nodes},
        {"nodes_1d", c.numerics.nodes_1d},
        {"boost_tol", c.numerics.boost_tol},
        {"scf_relax", c.numerics.scf_relax},
        {"scf_tol", c.numerics.scf_tol},
        {"scf_max_iterations", c.numerics.scf_max_iterations}}},
      {"experiment",
       {{"velocities", vel},
        {"t_samples", c.experiment.t_samples},
        {"checks", c.experiment.checks}}},
      {"output", {{"directory", c.output.directory}, {"formats", c.output.formats}}}};
}

}  // namespace diracsol
