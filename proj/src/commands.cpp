#include "diracsol/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "diracsol/ansatz.hpp"
#include "diracsol/boostlab.hpp"
#include "diracsol/config.hpp"
#include "diracsol/errors.hpp"
#include "diracsol/functionals.hpp"
#include "diracsol/kgd.hpp"
#include "diracsol/maxwell.hpp"
#include "diracsol/profile.hpp"
#include "diracsol/quadrature.hpp"
#include "diracsol/shooting.hpp"

namespace diracsol {

namespace {

using nlohmann::json;

struct Context {
  RunConfig cfg;
  json config_json;
  std::string dir;
  std::string profile_path;
  bool structured = false;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ShootingOptions shooting_options(const NumericsConfig& n) {
  ShootingOptions so;
  so.r_max = n.r_max;
  so.step = n.step;
  so.rtol = n.ode_rtol;
  so.residual_tol = n.residual_tol;
  return so;
}

QuadratureSpec quadrature(const NumericsConfig& n) {
  QuadratureSpec q;
  q.nodes = n.quadrature_nodes;
  return q;
}

int family_sign(int family) { return family == 2 || family == 4 ? -1 : 1; }

/// Writes the report in every configured format and the primary one to `out`.
int emit(const Context& ctx, const std::string& name, FunctionalReport rep, std::ostream& out,
         const json& rows = json(), const std::string& table = "") {
  rep.meta()["command"] = name;
  rep.meta()["config"] = ctx.config_json;
  json j = rep.to_json();
  if (!rows.is_null()) j["rows"] = rows;
  const std::string text = "# config " + ctx.config_json.dump() + "\n" + table + rep.to_text();
  for (const auto& f : ctx.cfg.output.formats) {
    const bool s = f == "structured";
    std::ofstream file(ctx.dir + "/" + name + (s ? ".json" : ".txt"));
    if (s) {
      file << j.dump(2) << "\n";
    } else {
      file << text;
    }
  }
  if (ctx.structured) {
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
  return rep.all_pass() ? kExitPass : kExitIdentity;
}

void add_profile_values(FunctionalReport& rep, const RadialProfile& p) {
  rep.add_value("omega", p.omega());
  rep.add_value("mass", p.mass());
  rep.add_value("kappa", p.kappa());
  rep.add_value("r_max", p.r_max());
  rep.add_value("points", p.points());
  rep.add_value("amplitude", p.dimension() == 3 || p.kind() == ProfileKind::dirac1d
                                 ? std::max(std::abs(p.u()[0]), std::abs(p.v()[0]))
                                 : 0.0);
}

void certify_profile(FunctionalReport& rep, const RadialProfile& p, double tol) {
  const double res = ode_residual(p);
  const DecayFit fit = decay_rate(p);
  rep.add_value("ode_residual", res);
  rep.add_value("decay_rate", fit.kappa);
  rep.add_value("decay_fit_residual", fit.fit_residual);
  rep.add_value("nodes", p.params().nodes);
  rep.add_check("ode_residual", "profile satisfies the radial system", res, tol);
}

RadialProfile solve_profile(const Context& ctx, FunctionalReport& rep) {
  const ModelConfig& m = ctx.cfg.model;
  const ShootingOptions so = shooting_options(ctx.cfg.numerics);
  ShootingReport sr;
  RadialProfile p = m.equation == Equation::dirac1d
                        ? solve_gross_neveu_1d(m.omega, m.mass, m.model(), so, &sr)
                        : solve_soler_radial(m.omega, m.mass, m.model(), family_sign(m.family),
                                             m.nodes, so, &sr);
  add_profile_values(rep, p);
  rep.add_value("shoot.parameter", sr.parameter);
  rep.add_value("shoot.match_radius", sr.match_radius);
  rep.add_value("shoot.match_mismatch", sr.match_mismatch);
  rep.add_value("shoot.newton_iterations", sr.newton_iterations);
  certify_profile(rep, p, ctx.cfg.numerics.residual_tol);
  return p;
}

KgdState solve_kgd(const Context& ctx, FunctionalReport& rep) {
  const ModelConfig& m = ctx.cfg.model;
  KgdOptions ko;
  ko.relax = ctx.cfg.numerics.scf_relax;
  ko.tolerance = ctx.cfg.numerics.scf_tol;
  ko.max_iterations = ctx.cfg.numerics.scf_max_iterations;
  ko.shooting = shooting_options(ctx.cfg.numerics);
  KgdState st = kgd_scf_solve(m.omega, m.mass, m.meson_mass, m.eta, m.model(), ko);
  add_profile_values(rep, st.profile);
  rep.add_value("scf_iterations", st.scf_iters);
  rep.add_value("scf_residual", st.scf_residual);
  rep.add_value("scf_relax", st.relax);
  rep.add_value("chi0", st.profile.has_chi() ? st.profile.chi()[0] : 0.0);
  rep.meta()["scf_history"] = st.history;
  certify_profile(rep, st.profile, ctx.cfg.numerics.residual_tol);
  if (m.eta != 0.0) rep.merge(kgd_invariants(st), "invariants.");
  return st;
}

int cmd_solve(const Context& ctx, std::ostream& out) {
  FunctionalReport rep("solve");
  if (ctx.cfg.model.equation == Equation::kgd) {
    const KgdState st = solve_kgd(ctx, rep);
    save_profile(ctx.profile_path, st.profile);
  } else {
    const RadialProfile p = solve_profile(ctx, rep);
    save_profile(ctx.profile_path, p);
  }
  rep.meta()["profile"] = ctx.profile_path;
  return emit(ctx, "solve", rep, out);
}

RadialProfile load_compatible(const Context& ctx) {
  const RadialProfile p = load_profile(ctx.profile_path);
  const ModelConfig& m = ctx.cfg.model;
  bool ok = false;
  switch (m.equation) {
    case Equation::dirac3d:
      ok = (p.kind() == ProfileKind::dirac3d_plus || p.kind() == ProfileKind::dirac3d_minus) &&
           p.sign() == family_sign(m.family);
      break;
    case Equation::dirac1d: ok = p.kind() == ProfileKind::dirac1d; break;
    case Equation::kgd: ok = p.kind() == ProfileKind::kgd3d && family_sign(m.family) == 1; break;
  }
  if (!ok) {
    throw FormatError("profile kind " + to_string(p.kind()) + " does not match equation " +
                      to_string(m.equation) + " with family " + std::to_string(m.family));
  }
  if (rel_diff(p.omega(), m.omega) > 1e-12 || rel_diff(p.mass(), m.mass) > 1e-12) {
    throw FormatError("profile omega/mass differ from the config");
  }
  return p;
}

int cmd_verify(const Context& ctx, std::ostream& out) {
  const RadialProfile p = load_compatible(ctx);
  const ModelConfig& m = ctx.cfg.model;
  const ExperimentConfig& ex = ctx.cfg.experiment;
  const QuadratureSpec spec = quadrature(ctx.cfg.numerics);
  FunctionalReport rep("verify");
  certify_profile(rep, p, ctx.cfg.numerics.residual_tol);
  switch (m.equation) {
    case Equation::dirac3d: {
      const FieldPtr f = build_family(p, m.family);
      if (ex.wants("virial")) rep.merge(virial_suite(*f, m.omega, m.mass, m.model(), spec), "virial.");
      if (ex.wants("functionals")) {
        rep.merge(dirac_functionals(*f, m.omega, m.mass, m.model(), spec), "functionals.");
      }
      if (ex.wants("symmetry")) rep.merge(symmetry_report(*f, spec), "symmetry.");
      if (ex.wants("angular")) {
        const AngularReport a = angular_checks(*f);
        rep.add_value("angular.m3", a.m3);
        rep.add_value("angular.kappa", a.kappa);
        rep.add_value("angular.m_squared", a.m_squared);
        rep.add_check("angular.m3", "M3 phi = m3 phi", a.m3_residual, 1e-8);
        rep.add_check("angular.kappa", "K phi = kappa phi", a.kappa_residual, 1e-8);
        rep.add_check("angular.m_squared", "M^2 phi = 3/4 phi", a.m_squared_residual, 1e-8);
        rep.add_check("angular.mk_squared", "M_k^2 phi = 1/4 phi", a.mk_squared_residual, 1e-8);
      }
      break;
    }
    case Equation::dirac1d: {
      const ProfileField1D f(p);
      rep.merge(dirac_functionals_1d(f, m.omega, m.mass, m.model(), ctx.cfg.numerics.nodes_1d),
                "functionals.");
      break;
    }
    case Equation::kgd: {
      const KgdState st = kgd_state_from_profile(p);
      if (ex.wants("functionals")) rep.merge(kgd_functionals(st, spec), "functionals.");
      if (ex.wants("virial")) rep.merge(kgd_virial(st, spec), "virial.");
      if (ex.wants("invariants") && st.eta != 0.0) {
        FunctionalReport inv("invariants");
        inv.add_check("dirac_equation", "shifted radial system", st.dirac_residual,
                      ctx.cfg.numerics.residual_tol);
        inv.add_check("field_equation", "(-Delta + M^2) chi = eta psibar psi", st.field_residual,
                      ctx.cfg.numerics.residual_tol);
        inv.add_check("jacobi_fixed_point", "one undamped sweep leaves chi unchanged",
                      kgd_jacobi_change(st, shooting_options(ctx.cfg.numerics)),
                      ctx.cfg.numerics.residual_tol);
        rep.merge(inv, "invariants.");
      }
      break;
    }
  }
  rep.meta()["profile"] = ctx.profile_path;
  return emit(ctx, "verify", rep, out);
}

json row_json(const RelationRow& r, double E0) {
  return {{"v", {r.v[0], r.v[1], r.v[2]}},
          {"t", r.t},
          {"gamma", r.gamma},
          {"E_v", r.obs.E},
          {"gamma_E0", r.gamma * E0},
          {"P_v", {r.obs.P[0], r.obs.P[1], r.obs.P[2]}},
          {"gamma_v_E0", {r.gamma * r.v[0] * E0, r.gamma * r.v[1] * E0, r.gamma * r.v[2] * E0}},
          {"Q_v", r.obs.Q},
          {"energy_residual", r.energy_residual},
          {"momentum_residual", r.momentum_residual},
          {"charge_residual", r.charge_residual},
          {"nodes", r.obs.nodes},
          {"pass", r.pass},
          {"error", r.error}};
}

std::string failure_note(const std::string& error) {
  if (error.empty()) return "";
  if (error.find("non-convergence") != std::string::npos) return "grid-budget failure: " + error;
  return "error: " + error;
}

int cmd_boost(const Context& ctx, std::ostream& out) {
  const RadialProfile p = load_compatible(ctx);
  const ModelConfig& m = ctx.cfg.model;
  const ExperimentConfig& ex = ctx.cfg.experiment;
  const QuadratureSpec spec = quadrature(ctx.cfg.numerics);
  const double tol = ctx.cfg.numerics.boost_tol;
  std::ostringstream table, dump;
  table << "# v1 v2 v3 t E_v gamma_E0 P1 P2 P3 gvE0_1 gvE0_2 gvE0_3 Q_v res_E res_P res_Q pass\n";
  dump << "# gamma E_v/E0 v1 v2 v3 t\n";
  json rows = json::array();
  FunctionalReport rep("boost");

  auto add_rows = [&](const std::vector<RelationRow>& rs, double E0) {
    for (const RelationRow& r : rs) {
      rows.push_back(row_json(r, E0));
      const Vec3 g = r.gamma * E0 * r.v;
      table << num(r.v[0]) << " " << num(r.v[1]) << " " << num(r.v[2]) << " " << num(r.t) << " "
            << num(r.obs.E) << " " << num(r.gamma * E0) << " " << num(r.obs.P[0]) << " "
            << num(r.obs.P[1]) << " " << num(r.obs.P[2]) << " " << num(g[0]) << " " << num(g[1])
            << " " << num(g[2]) << " " << num(r.obs.Q) << " " << num(r.energy_residual) << " "
            << num(r.momentum_residual) << " " << num(r.charge_residual) << " "
            << (r.pass ? "pass" : "FAIL");
      if (!r.error.empty()) table << "  # " << failure_note(r.error);
      table << "\n";
      if (r.error.empty()) {
        dump << num(r.gamma) << " " << num(r.obs.E / E0) << " " << num(r.v[0]) << " "
             << num(r.v[1]) << " " << num(r.v[2]) << " " << num(r.t) << "\n";
      }
    }
  };

  switch (m.equation) {
    case Equation::dirac3d: {
      const FieldPtr f = build_family(p, m.family);
      const RelationResult res =
          relation_check(f, m.omega, m.mass, m.model(), ex.velocities, ex.t_samples, tol, spec);
      rep.merge(res.report);
      add_rows(res.rows, res.E0);
      break;
    }
    case Equation::kgd: {
      const KgdState st = kgd_state_from_profile(p);
      const KgdRelationResult res = kgd_relation_check(st, ex.velocities, ex.t_samples, tol, spec);
      rep.merge(res.report);
      add_rows(res.rows, res.E0);
      break;
    }
    case Equation::dirac1d: {
      std::vector<double> vs;
      for (const Vec3& v : ex.velocities) vs.push_back(v[0]);
      const Field1DPtr f = std::make_shared<ProfileField1D>(p);
      const RelationResult1D res = relation_check_1d(f, m.omega, m.mass, m.model(), vs,
                                                     ex.t_samples, std::min(tol, 1e-6));
      rep.merge(res.report);
      std::vector<RelationRow> rs;
      for (const RelationRow1D& r : res.rows) {
        RelationRow row;
        row.v = Vec3(r.v, 0, 0);
        row.t = r.t;
        row.gamma = r.gamma;
        row.obs.E = r.obs.E;
        row.obs.P = Vec3(r.obs.P, 0, 0);
        row.obs.Q = r.obs.Q;
        row.energy_residual = r.energy_residual;
        row.momentum_residual = r.momentum_residual;
        row.charge_residual = r.charge_residual;
        row.pass = r.pass;
        rs.push_back(row);
      }
      add_rows(rs, res.E0);
      break;
    }
  }
  std::ofstream(ctx.dir + "/boost_table.txt") << table.str();
  std::ofstream(ctx.dir + "/boost_gamma.dat") << dump.str();
  rep.meta()["profile"] = ctx.profile_path;
  return emit(ctx, "boost", rep, out, rows, table.str());
}

int cmd_md_report(const Context& ctx, std::ostream& out) {
  if (ctx.cfg.model.equation != Equation::dirac3d) {
    throw ConfigError("md-report needs model.equation = dirac3d");
  }
  const RadialProfile p = load_compatible(ctx);
  const ModelConfig& m = ctx.cfg.model;
  const ExperimentConfig& ex = ctx.cfg.experiment;
  const FieldPtr f = build_family(p, m.family);
  const MdPotentials pot = md_potentials(*f);
  FunctionalReport rep("md_report");
  rep.merge(md_functionals(*f, pot, m.omega, m.mass, quadrature(ctx.cfg.numerics)));
  const double t = ex.t_samples.empty() ? 0.0 : ex.t_samples.back();
  rep.merge(md_boost_report(*f, pot, m.omega, ex.velocities, t), "boost.");
  rep.meta()["profile"] = ctx.profile_path;
  return emit(ctx, "md_report", rep, out);
}

void write_error(const Context* ctx, bool structured, const std::string& type,
                 const std::string& kind, const std::string& message,
                 const std::vector<double>& trace, std::ostream& out, std::ostream& err) {
  if (structured) {
    json j = {{"error", {{"type", type}, {"kind", kind}, {"message", message}, {"trace", trace}}}};
    if (ctx) j["config"] = ctx->config_json;
    out << j.dump(2) << "\n";
  } else {
    err << "error [" << type << "]: " << message << "\n";
    if (!trace.empty()) {
      err << "trace:";
      for (double x : trace) err << " " << num(x);
      err << "\n";
    }
  }
}

}  // namespace

int run_command(const std::string& name, const CommandOptions& options, std::ostream& out,
                std::ostream& err) {
  bool structured = options.format == "structured";
  Context ctx;
  Context* cp = nullptr;
  try {
    if (options.format != "" && options.format != "text" && options.format != "structured") {
      throw ConfigError("--format must be text or structured");
    }
    if (options.threads < 0) throw ConfigError("--threads must be non-negative");
    if (options.config_path.empty()) throw ConfigError("--config is required");
    ctx.cfg = load_config(options.config_path);
    if (!options.out_dir.empty()) ctx.cfg.output.directory = options.out_dir;
    if (!options.format.empty()) ctx.cfg.output.formats = {options.format};
    if (ctx.cfg.output.formats.empty()) ctx.cfg.output.formats = {"text"};
    validate(ctx.cfg);
    structured = ctx.cfg.output.formats.front() == "structured";
    ctx.structured = structured;
    ctx.config_json = to_json(ctx.cfg);
    ctx.dir = ctx.cfg.output.directory;
    ctx.profile_path =
        options.profile_path.empty() ? ctx.dir + "/profile.txt" : options.profile_path;
    cp = &ctx;
    if (options.threads > 0) set_default_threads(options.threads);
    std::filesystem::create_directories(ctx.dir);

    if (name == "solve") return cmd_solve(ctx, out);
    if (name == "kgd-solve") {
      if (ctx.cfg.model.equation != Equation::kgd) {
        throw ConfigError("kgd-solve needs model.equation = kgd");
      }
      return cmd_solve(ctx, out);
    }
    if (name == "verify") return cmd_verify(ctx, out);
    if (name == "boost") return cmd_boost(ctx, out);
    if (name == "md-report") return cmd_md_report(ctx, out);
    throw ConfigError("unknown command '" + name + "'");
  } catch (const ConfigError& e) {
    write_error(cp, structured, "config", "config", e.what(), {}, out, err);
    return kExitConfig;
  } catch (const FormatError& e) {
    write_error(cp, structured, "format", "format", e.what(), {}, out, err);
    return kExitConfig;
  } catch (const DomainError& e) {
    write_error(cp, structured, "domain", "domain", e.what(), {}, out, err);
    return kExitConfig;
  } catch (const SolverError& e) {
    write_error(cp, structured, "solver", e.kind(), e.what(), e.trace(), out, err);
    return kExitSolver;
  } catch (const std::exception& e) {
    write_error(cp, structured, "solver", "internal", e.what(), {}, out, err);
    return kExitSolver;
  }
}

}  // namespace diracsol
