#include "diracsol/boostlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diracsol/ansatz.hpp"
#include "diracsol/errors.hpp"

namespace diracsol {

namespace {

const cplx I1(0.0, 1.0);

std::string vec_name(const Vec3& v) {
  std::ostringstream os;
  os << "v(" << v[0] << "," << v[1] << "," << v[2] << ")";
  return os.str();
}

Spinor dirac_operator(const Spinor& psi, const Spinor& dt, const std::array<Spinor, 3>& grad,
                      double mass, double shift) {
  const auto& alg = dirac_algebra();
  Spinor out = I1 * dt;
  for (int k = 0; k < 3; ++k) out += I1 * (alg.alpha[k] * grad[k]);
  out += (shift - mass) * (alg.beta * psi);
  return out;
}

}  // namespace

MovingWave::MovingWave(FieldPtr base, BoostFrame frame, double omega)
    : base_(std::move(base)), frame_(std::move(frame)), omega_(omega) {
  if (!base_) throw DomainError("moving wave needs a base field");
}

MovingWave moving_wave(FieldPtr base, const Vec3& v, double omega) {
  return MovingWave(std::move(base), BoostFrame(v), omega);
}

Spinor MovingWave::evaluate(double t, const Vec3& x) const {
  const Vec3& v = frame_.velocity();
  const double g = frame_.gamma();
  const cplx phase = std::exp(cplx(0.0, -omega_ * g * (t - v.dot(x))));
  return phase * (frame_.s() * base_->value(frame_.comoving(t, x)));
}

WaveJet MovingWave::jet(double t, const Vec3& x) const {
  const Vec3& v = frame_.velocity();
  const double g = frame_.gamma();
  const double kap = frame_.kappa();
  const cplx phase = std::exp(cplx(0.0, -omega_ * g * (t - v.dot(x))));
  const SpinorJet j = base_->jet(frame_.comoving(t, x));
  const Mat4& S = frame_.s();
  Spinor along = Spinor::Zero();
  for (int k = 0; k < 3; ++k) along += v[k] * j.grad[k];
  const Spinor sphi = S * j.value;
  WaveJet w;
  w.value = phase * sphi;
  w.dt = phase * (-I1 * omega_ * g * sphi - g * (S * along));
  for (int k = 0; k < 3; ++k) {
    const Spinor dphi = j.grad[k] + kap * v[k] * along;
    w.grad[k] = phase * (I1 * omega_ * g * v[k] * sphi + S * dphi);
  }
  return w;
}

PdeResidual pde_residual(const MovingWave& wave, double t, const Vec3& x, double mass,
                         const NonlinearityModel& model, const ScalarPotential& potential,
                         double fd_step) {
  const WaveJet w = wave.jet(t, x);
  const double shift = model.g(beta_form(w.value)) + (potential ? potential(t, x) : 0.0);
  PdeResidual r;
  r.residual = dirac_operator(w.value, w.dt, w.grad, mass, shift).norm();
  r.scale = w.dt.norm() + mass * w.value.norm();
  for (int k = 0; k < 3; ++k) r.scale += w.grad[k].norm();

  const double h = fd_step;
  const Spinor dt = (wave.evaluate(t + h, x) - wave.evaluate(t - h, x)) / (2 * h);
  std::array<Spinor, 3> grad;
  double gap = (dt - w.dt).norm();
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = h;
    grad[k] = (wave.evaluate(t, x + e) - wave.evaluate(t, x - e)) / (2 * h);
    gap = std::max(gap, (grad[k] - w.grad[k]).norm());
  }
  r.fd_residual = dirac_operator(w.value, dt, grad, mass, shift).norm();
  r.derivative_gap = gap;
  return r;
}

std::array<Rule1D, 3> boosted_box(const MovingWave& wave, double t, const QuadratureSpec& spec) {
  const Vec3& v = wave.frame().velocity();
  const double speed = v.norm();
  const Vec3 c = wave.center(t);
  std::array<Rule1D, 3> rules;
  for (int k = 0; k < 3; ++k) {
    const double dir = speed > 0.0 ? v[k] / speed : 0.0;
    const double factor = std::sqrt(1.0 - dir * dir * speed * speed);
    rules[k] = field_axis_rule(wave.base(), spec, c[k], factor);
  }
  return rules;
}

namespace {

BoostedObservables observables_at(const MovingWave& wave, double t, double mass,
                                  const NonlinearityModel& model, const QuadratureSpec& spec) {
  const auto box = boosted_box(wave, t, spec);
  const auto sums = integrate3d<5>(box[0], box[1], box[2], [&](const Vec3& x) {
    const WaveJet w = wave.jet(t, x);
    const double s = beta_form(w.value);
    double kinetic = 0;
    std::array<double, 5> out{};
    for (int k = 0; k < 3; ++k) {
      kinetic += (-I1 * alpha_form(k, w.value, w.grad[k])).real();
      out[1 + k] = (-I1 * w.value.dot(w.grad[k])).real();
    }
    out[0] = kinetic + mass * s - model.G(s);
    out[4] = w.value.squaredNorm();
    return out;
  });
  BoostedObservables o;
  o.E = sums[0];
  o.P = Vec3(sums[1], sums[2], sums[3]);
  o.Q = sums[4];
  o.nodes = spec.nodes;
  return o;
}

double change(const BoostedObservables& a, const BoostedObservables& b) {
  const double e = std::max(std::abs(b.E), 1e-300);
  return std::max({std::abs(a.E - b.E) / e, (a.P - b.P).norm() / e,
                   std::abs(a.Q - b.Q) / std::max(std::abs(b.Q), 1e-300)});
}

void push_trace(std::vector<double>& tr, const BoostedObservables& o) {
  tr.insert(tr.end(), {double(o.nodes), o.E, o.P[0], o.P[1], o.P[2], o.Q});
}

}  // namespace

BoostedObservables boosted_observables(const MovingWave& wave, double t, double mass,
                                       const NonlinearityModel& model, const QuadratureSpec& spec,
                                       double convergence_tol, int max_nodes) {
  QuadratureSpec level = spec;
  BoostedObservables prev = observables_at(wave, t, mass, model, level);
  std::vector<double> trace;
  push_trace(trace, prev);
  while (level.nodes * 2 <= max_nodes) {
    level = level.refined();
    BoostedObservables next = observables_at(wave, t, mass, model, level);
    push_trace(trace, next);
    next.refinement_change = change(prev, next);
    if (next.refinement_change <= convergence_tol) {
      next.trace = std::move(trace);
      return next;
    }
    prev = next;
  }
  throw SolverError("quadrature non-convergence",
                    "boosted observables at " + vec_name(wave.frame().velocity()) +
                        " did not settle below the refinement tolerance",
                    trace);
}

FunctionalReport observables_report(const BoostedObservables& obs) {
  FunctionalReport rep("boosted_observables");
  rep.add_value("E", obs.E);
  rep.add_value("P1", obs.P[0]);
  rep.add_value("P2", obs.P[1]);
  rep.add_value("P3", obs.P[2]);
  rep.add_value("Q", obs.Q);
  rep.add_value("nodes", obs.nodes);
  rep.add_value("refinement_change", obs.refinement_change);
  return rep;
}

RelationResult relation_check(FieldPtr base, double omega, double mass,
                              const NonlinearityModel& model, const std::vector<Vec3>& velocities,
                              const std::vector<double>& t_samples, double tol,
                              const QuadratureSpec& spec) {
  RelationResult res;
  res.report = FunctionalReport("relations");
  const BoostedObservables rest =
      boosted_observables(moving_wave(base, Vec3::Zero(), omega), 0.0, mass, model, spec);
  res.E0 = rest.E;
  res.Q0 = rest.Q;
  res.report.add_value("E0", res.E0);
  res.report.add_value("Q0", res.Q0);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < velocities.size(); ++i) {
    const Vec3& v = velocities[i];
    for (std::size_t j = 0; j < t_samples.size(); ++j) {
      RelationRow row;
      row.v = v;
      row.t = t_samples[j];
      try {
        const MovingWave wave = moving_wave(base, v, omega);
        row.gamma = wave.frame().gamma();
        row.obs = boosted_observables(wave, row.t, mass, model, spec);
        row.energy_residual = std::abs(row.obs.E - row.gamma * res.E0) / std::abs(res.E0);
        row.momentum_residual = (row.obs.P - row.gamma * res.E0 * v).norm() / std::abs(res.E0);
        row.charge_residual = std::abs(row.obs.Q - res.Q0) / std::abs(res.Q0);
        row.pass = row.energy_residual <= tol && row.momentum_residual <= tol &&
                   row.charge_residual <= tol;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.energy_residual = row.momentum_residual = row.charge_residual = inf;
      }
      const std::string tag = vec_name(v) + "_t" + std::to_string(j);
      res.report.add_value(tag + ".E", row.obs.E);
      res.report.add_value(tag + ".P1", row.obs.P[0]);
      res.report.add_value(tag + ".P2", row.obs.P[1]);
      res.report.add_value(tag + ".P3", row.obs.P[2]);
      res.report.add_value(tag + ".Q", row.obs.Q);
      res.report.add_check(tag + ".energy", "E_v = gamma E0", row.energy_residual, tol);
      res.report.add_check(tag + ".momentum", "P_v = gamma v E0", row.momentum_residual, tol);
      res.report.add_check(tag + ".charge", "Q_v = Q0", row.charge_residual, tol);
      res.rows.push_back(std::move(row));
    }
  }
  // Conservation in t, per velocity.
  const std::size_t nt = t_samples.size();
  for (std::size_t i = 0; i < velocities.size() && nt > 1; ++i) {
    double worst = 0;
    const RelationRow& first = res.rows[i * nt];
    for (std::size_t j = 1; j < nt; ++j) {
      const RelationRow& r = res.rows[i * nt + j];
      if (!r.error.empty() || !first.error.empty()) {
        worst = inf;
        break;
      }
      worst = std::max({worst, std::abs(r.obs.E - first.obs.E) / std::abs(res.E0),
                        (r.obs.P - first.obs.P).norm() / std::abs(res.E0),
                        std::abs(r.obs.Q - first.obs.Q) / std::abs(res.Q0)});
    }
    res.report.add_check(vec_name(velocities[i]) + ".time_independence",
                         "E_v, P_v, Q_v do not depend on t", worst, tol);
  }
  // Monotonicity of E_v along rays.
  std::vector<bool> used(velocities.size(), false);
  for (std::size_t i = 0; i < velocities.size(); ++i) {
    if (used[i] || velocities[i].norm() == 0.0 || nt == 0) continue;
    const Vec3 dir = velocities[i].normalized();
    std::vector<std::size_t> ray;
    for (std::size_t k = i; k < velocities.size(); ++k) {
      if (velocities[k].norm() > 0.0 && (velocities[k].normalized() - dir).norm() < 1e-12) {
        ray.push_back(k);
        used[k] = true;
      }
    }
    if (ray.size() < 2) continue;
    std::sort(ray.begin(), ray.end(),
              [&](std::size_t a, std::size_t b) { return velocities[a].norm() < velocities[b].norm(); });
    double bad = 0;
    double last = res.E0;
    for (std::size_t k : ray) {
      const double e = res.rows[k * nt].obs.E;
      if (!(e > last)) bad = 1;
      last = e;
    }
    res.report.add_check("ray_" + vec_name(dir) + ".monotone", "E_v increases with |v|", bad,
                         0.5);
  }
  return res;
}

Vec3 track_peak(const MovingWave& wave, double t, int samples) {
  const Vec3& v = wave.frame().velocity();
  const Vec3 dir = v.norm() > 0.0 ? Vec3(v.normalized()) : Vec3(0, 0, 1);
  const Vec3 c = wave.center(t);
  const double half = 2.0 * wave.base().core() / wave.frame().gamma();
  const double h = 2.0 * half / (samples - 1);
  auto dens = [&](double s) { return wave.evaluate(t, c + s * dir).squaredNorm(); };
  int best = 0;
  double top = -1;
  for (int i = 0; i < samples; ++i) {
    const double d = dens(-half + i * h);
    if (d > top) {
      top = d;
      best = i;
    }
  }
  double s = -half + best * h;
  if (best > 0 && best < samples - 1) {
    const double a = dens(s - h), b = top, cc = dens(s + h);
    const double den = a - 2 * b + cc;
    if (den < 0) s += 0.5 * h * (a - cc) / den;
  }
  return c + s * dir;
}

// ---- 1 + 1 dimensions ----

MovingWave1D::MovingWave1D(Field1DPtr base, double v, double omega)
    : base_(std::move(base)), frame_(v), omega_(omega) {
  if (!base_) throw DomainError("moving wave needs a base field");
}

WaveJet1D MovingWave1D::jet(double t, double x) const {
  const double v = frame_.velocity();
  const double g = frame_.gamma();
  const cplx phase = std::exp(cplx(0.0, -omega_ * g * (t - v * x)));
  const SpinorJet1D j = base_->jet(g * (x - v * t));
  const Spinor2 sphi = frame_.s() * j.value;
  const Spinor2 sd = frame_.s() * j.deriv;
  WaveJet1D w;
  w.value = phase * sphi;
  w.dx = phase * (I1 * omega_ * g * v * sphi + g * sd);
  w.dt = phase * (-I1 * omega_ * g * sphi - g * v * sd);
  return w;
}

namespace {

Spinor2 dirac_operator_1d(const Spinor2& psi, const Spinor2& dt, const Spinor2& dx, double mass,
                          double shift) {
  const auto& alg = dirac_algebra();
  return I1 * dt + I1 * (alg.alpha1d * dx) + (shift - mass) * (alg.beta1d * psi);
}

double beta_form_1d(const Spinor2& a) { return std::norm(a[0]) - std::norm(a[1]); }

BoostedObservables1D observables_1d_at(const MovingWave1D& wave, double t, double mass,
                                       const NonlinearityModel& model, int nodes) {
  const double g = wave.frame().gamma();
  const Rule1D rule = sinh_rule(wave.frame().velocity() * t, wave.base().core() / g,
                                wave.base().extent() / g, nodes, 8);
  const Mat2& a = dirac_algebra().alpha1d;
  const auto sums = integrate1d<3>(rule, [&](double x) {
    const WaveJet1D w = wave.jet(t, x);
    const double s = beta_form_1d(w.value);
    return std::array<double, 3>{
        (-I1 * w.value.dot(a * w.dx)).real() + mass * s - model.G(s),
        (-I1 * w.value.dot(w.dx)).real(),
        w.value.squaredNorm(),
    };
  });
  BoostedObservables1D o;
  o.E = sums[0];
  o.P = sums[1];
  o.Q = sums[2];
  o.nodes = nodes;
  return o;
}

}  // namespace

PdeResidual pde_residual_1d(const MovingWave1D& wave, double t, double x, double mass,
                            const NonlinearityModel& model, double fd_step) {
  const WaveJet1D w = wave.jet(t, x);
  const double shift = model.g(beta_form_1d(w.value));
  PdeResidual r;
  r.residual = dirac_operator_1d(w.value, w.dt, w.dx, mass, shift).norm();
  r.scale = w.dt.norm() + w.dx.norm() + mass * w.value.norm();
  const double h = fd_step;
  const Spinor2 dt = (wave.evaluate(t + h, x) - wave.evaluate(t - h, x)) / (2 * h);
  const Spinor2 dx = (wave.evaluate(t, x + h) - wave.evaluate(t, x - h)) / (2 * h);
  r.fd_residual = dirac_operator_1d(w.value, dt, dx, mass, shift).norm();
  r.derivative_gap = std::max((dt - w.dt).norm(), (dx - w.dx).norm());
  return r;
}

BoostedObservables1D boosted_observables_1d(const MovingWave1D& wave, double t, double mass,
                                            const NonlinearityModel& model, int nodes,
                                            double convergence_tol, int max_nodes) {
  BoostedObservables1D prev = observables_1d_at(wave, t, mass, model, nodes);
  std::vector<double> trace{double(nodes), prev.E, prev.P, prev.Q};
  for (int n = 2 * nodes; n <= max_nodes; n *= 2) {
    BoostedObservables1D next = observables_1d_at(wave, t, mass, model, n);
    trace.insert(trace.end(), {double(n), next.E, next.P, next.Q});
    const double e = std::max(std::abs(next.E), 1e-300);
    next.refinement_change = std::max({std::abs(next.E - prev.E) / e,
                                       std::abs(next.P - prev.P) / e,
                                       std::abs(next.Q - prev.Q) / std::max(next.Q, 1e-300)});
    if (next.refinement_change <= convergence_tol) return next;
    prev = next;
  }
  throw SolverError("quadrature non-convergence", "1D boosted observables did not settle", trace);
}

RelationResult1D relation_check_1d(Field1DPtr base, double omega, double mass,
                                   const NonlinearityModel& model,
                                   const std::vector<double>& velocities,
                                   const std::vector<double>& t_samples, double tol) {
  RelationResult1D res;
  res.report = FunctionalReport("relations_1d");
  const auto rest = boosted_observables_1d(MovingWave1D(base, 0.0, omega), 0.0, mass, model);
  res.E0 = rest.E;
  res.Q0 = rest.Q;
  res.report.add_value("E0", res.E0);
  res.report.add_value("Q0", res.Q0);
  for (double v : velocities) {
    for (std::size_t j = 0; j < t_samples.size(); ++j) {
      RelationRow1D row;
      row.v = v;
      row.t = t_samples[j];
      const MovingWave1D wave(base, v, omega);
      row.gamma = wave.frame().gamma();
      row.obs = boosted_observables_1d(wave, row.t, mass, model);
      row.energy_residual = std::abs(row.obs.E - row.gamma * res.E0) / std::abs(res.E0);
      row.momentum_residual = std::abs(row.obs.P - row.gamma * v * res.E0) / std::abs(res.E0);
      row.charge_residual = std::abs(row.obs.Q - res.Q0) / res.Q0;
      row.pass = row.energy_residual <= tol && row.momentum_residual <= tol &&
                 row.charge_residual <= tol;
      std::ostringstream tag;
      tag << "v" << v << "_t" << j;
      res.report.add_value(tag.str() + ".E", row.obs.E);
      res.report.add_value(tag.str() + ".P", row.obs.P);
      res.report.add_value(tag.str() + ".Q", row.obs.Q);
      res.report.add_check(tag.str() + ".energy", "E_v = gamma E0", row.energy_residual, tol);
      res.report.add_check(tag.str() + ".momentum", "P_v = gamma v E0", row.momentum_residual,
                           tol);
      res.report.add_check(tag.str() + ".charge", "Q_v = Q0", row.charge_residual, tol);
      res.rows.push_back(row);
    }
  }
  return res;
}

}  // namespace diracsol
