#include "diracsol/shooting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "diracsol/errors.hpp"

namespace diracsol {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;
using Stepper = odeint::runge_kutta_fehlberg78<State>;
using Controlled = decltype(odeint::make_controlled(1e-30, 1e-12, Stepper()));

constexpr double kOrigin = 1e-6;
constexpr long kMaxSteps = 2000000;

struct Rhs {
  const RadialSystem* sys;

  double shift(double r) const {
    return sys->potential ? sys->potential_scale * sys->potential(r) : 0.0;
  }

  void operator()(const State& x, State& dx, double r) const {
    const double a = x[0];
    const double b = x[1];
    const double sg = sys->sigma;
    const double g = sys->model.g(sg * (a * a - b * b));
    const double p = shift(r);
    const double fb = g - (sys->mass - sg * sys->omega) + p;
    const double fa = g - (sys->mass + sg * sys->omega) + p;
    dx[0] = b * fa;
    dx[1] = a * fb;
    if (sys->dimension == 3) dx[1] -= 2.0 * b / r;
  }
};

class Integrator {
 public:
  Integrator(const RadialSystem& sys, double rtol)
      : rhs_{&sys}, stepper_(odeint::make_controlled(1e-30, rtol, Stepper())) {}

  // Advances (x, r) to `target` exactly. `monitor(r, x)` runs after every
  // accepted step and may return false to stop early.
  template <class Monitor>
  bool run(State& x, double& r, double target, Monitor&& monitor) {
    const double dir = target > r ? 1.0 : -1.0;
    double dt = dir * std::min(1e-2, std::abs(target - r));
    long steps = 0;
    while (dir * (target - r) > 0.0) {
      if (++steps > kMaxSteps) return false;
      double trial = dt;
      bool last = false;
      if (dir * (r + trial - target) >= 0.0) {
        trial = target - r;
        last = true;
      }
      const double before = trial;
      if (stepper_.try_step(rhs_, x, r, trial) == odeint::success) {
        if (last && trial == before) r = target;
        if (!std::isfinite(x[0]) || !std::isfinite(x[1])) return false;
        if (!monitor(r, x)) return true;
        if (!last) dt = trial;
      } else {
        dt = trial;
        if (std::abs(dt) < 1e-15 * (1.0 + std::abs(r))) return false;
      }
    }
    return true;
  }

  bool run(State& x, double& r, double target) {
    return run(x, r, target, [](double, const State&) { return true; });
  }

  const Rhs& rhs() const { return rhs_; }

 private:
  Rhs rhs_;
  Controlled stepper_;
};

struct Shot {
  RadialSystem sys;
  ShootParameter param;
  double fixed_amplitude;
  double rtol;
  double kappa;
  double r_max;

  RadialSystem configured(double q) const {
    RadialSystem s = sys;
    if (param == ShootParameter::potential_scale) s.potential_scale = q;
    return s;
  }
  double amplitude(double q) const { return param == ShootParameter::amplitude ? q : fixed_amplitude; }

  State origin(const RadialSystem& s, double a0, double& r) const {
    const double sg = s.sigma;
    const double g = s.model.g(sg * a0 * a0);
    const double p = s.potential ? s.potential_scale * s.potential(0.0) : 0.0;
    const double fb = g - (s.mass - sg * s.omega) + p;
    const double fa = g - (s.mass + sg * s.omega) + p;
    if (s.dimension == 1) {
      r = 0.0;
      return {a0, 0.0};
    }
    r = kOrigin;
    const double c = a0 * fb / 3.0;
    const double a2 = c * fa / 2.0;
    return {a0 + a2 * r * r, c * r};
  }

  State tail(double amp, double r) const {
    const double e = amp * std::exp(-kappa * r);
    const double denom = sys.mass + sys.sigma * sys.omega;
    if (sys.dimension == 1) return {e, kappa * e / denom};
    return {e / r, e * (kappa * r + 1.0) / (denom * r * r)};
  }

  // Sign changes of a before escape or R_max, capped at `cap`.
  int classify(double q, int cap) const {
    const RadialSystem s = configured(q);
    const double a0 = amplitude(q);
    double r = 0.0;
    State x = origin(s, a0, r);
    Integrator integ(s, std::max(rtol, 1e-10));
    int crossings = 0;
    double prev = x[0];
    const double escape = 4.0 * std::abs(a0) + 1.0;
    const bool ok = integ.run(x, r, r_max, [&](double, const State& y) {
      if (y[0] * prev < 0.0) ++crossings;
      if (y[0] != 0.0) prev = y[0];
      return crossings < cap && std::abs(y[0]) + std::abs(y[1]) < escape;
    });
    if (!ok) return cap;  // blow-up counts as overshoot
    return std::min(crossings, cap);
  }

  // Both legs march node by node so the Newton solve and the final grid
  // assembly perform the identical sequence of steps.
  bool outward(double q, int i_match, double h, std::vector<double>* a, std::vector<double>* b,
               State& out) const {
    const RadialSystem s = configured(q);
    double r = 0.0;
    out = origin(s, amplitude(q), r);
    Integrator integ(s, rtol);
    for (int i = 1; i <= i_match; ++i) {
      if (!integ.run(out, r, i * h)) return false;
      if (a) (*a)[i] = out[0];
      if (b) (*b)[i] = out[1];
    }
    return true;
  }

  bool inward(double q, double amp, int n, int i_match, double h, std::vector<double>* a,
              std::vector<double>* b, State& out) const {
    const RadialSystem s = configured(q);
    double r = n * h;
    out = tail(amp, r);
    if (a) (*a)[n] = out[0];
    if (b) (*b)[n] = out[1];
    Integrator integ(s, rtol);
    for (int i = n - 1; i >= i_match; --i) {
      if (!integ.run(out, r, i * h)) return false;
      if (i > i_match) {
        if (a) (*a)[i] = out[0];
        if (b) (*b)[i] = out[1];
      }
    }
    return true;
  }
};

struct Grid {
  int n;
  int i_match;
  double h;
};

bool mismatch(const Shot& shot, double q, double amp, const Grid& grid, std::array<double, 2>& f,
              double& scale) {
  State o, i;
  if (!shot.outward(q, grid.i_match, grid.h, nullptr, nullptr, o) ||
      !shot.inward(q, amp, grid.n, grid.i_match, grid.h, nullptr, nullptr, i)) {
    return false;
  }
  scale = std::abs(i[0]) + std::abs(i[1]);
  if (!(scale > 0.0)) return false;
  f = {(o[0] - i[0]) / scale, (o[1] - i[1]) / scale};
  return true;
}

struct Matched {
  bool ok = false;
  double q = 0.0;
  double amp = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

Matched newton_match(const Shot& shot, double q, const Grid& grid) {
  Matched m;
  State o;
  if (!shot.outward(q, grid.i_match, grid.h, nullptr, nullptr, o)) return m;
  const double rf = grid.i_match * grid.h;
  const double geo = shot.sys.dimension == 3 ? rf : 1.0;
  double amp = o[0] * geo * std::exp(shot.kappa * rf);
  std::array<double, 2> f{};
  double scale = 0.0;
  if (!mismatch(shot, q, amp, grid, f, scale)) return m;
  double best = std::max(std::abs(f[0]), std::abs(f[1]));
  m.q = q;
  m.amp = amp;
  int stalled = 0;
  for (int it = 1; it <= 40; ++it) {
    m.iterations = it;
    const double dq = 1e-7 * std::max(std::abs(q), 1e-3);
    const double da = 1e-7 * std::max(std::abs(amp), 1e-300);
    std::array<double, 2> fq{}, fa{};
    double s1, s2;
    if (!mismatch(shot, q + dq, amp, grid, fq, s1) || !mismatch(shot, q, amp + da, grid, fa, s2)) {
      return m;
    }
    // Jacobian columns in units of the current scale.
    const double j00 = (fq[0] * s1 - f[0] * scale) / (dq * scale);
    const double j10 = (fq[1] * s1 - f[1] * scale) / (dq * scale);
    const double j01 = (fa[0] * s2 - f[0] * scale) / (da * scale);
    const double j11 = (fa[1] * s2 - f[1] * scale) / (da * scale);
    const double det = j00 * j11 - j01 * j10;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return m;
    double step_q = (j11 * f[0] - j01 * f[1]) / det;
    double step_a = (-j10 * f[0] + j00 * f[1]) / det;
    // Damp steps that would move q by more than 10%.
    const double limit = 0.1 * std::abs(q);
    if (std::abs(step_q) > limit) {
      const double c = limit / std::abs(step_q);
      step_q *= c;
      step_a *= c;
    }
    q -= step_q;
    amp -= step_a;
    if (!mismatch(shot, q, amp, grid, f, scale)) return m;
    const double res = std::max(std::abs(f[0]), std::abs(f[1]));
    // Roundoff amplified by the unstable mode sets a floor near 1e-12;
    // stop once the residual stops improving.
    if (res < best) {
      best = res;
      m.q = q;
      m.amp = amp;
      stalled = 0;
    } else if (++stalled >= 3) {
      break;
    }
    if (res < 1e-14) break;
  }
  m.residual = best;
  m.ok = best < 1e-9;
  return m;
}

}  // namespace

int count_nodes(const std::vector<double>& f) {
  double peak = 0.0;
  for (double x : f) peak = std::max(peak, std::abs(x));
  const double floor = 1e-12 * peak;
  int nodes = 0;
  double prev = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (std::abs(f[i]) <= floor) continue;
    if (prev != 0.0 && f[i] * prev < 0.0) ++nodes;
    prev = f[i];
  }
  return nodes;
}

ShootingSolution shoot(RadialSystem system, ShootParameter parameter, double fixed_amplitude,
                       int nodes, const ShootingOptions& options) {
  if (!(system.mass > 0.0) || !(std::abs(system.omega) < system.mass)) {
    throw DomainError("shooting needs mass > 0 and |omega| < mass");
  }
  if (system.mass + system.sigma * system.omega <= 0.0) {
    throw DomainError("shooting needs m + sign*omega > 0");
  }
  if (nodes < 0) throw DomainError("node count must be nonnegative");
  if (parameter == ShootParameter::amplitude && system.model.is_zero()) {
    throw DomainError("amplitude shooting needs a nonzero nonlinearity");
  }
  if (parameter == ShootParameter::potential_scale && !system.potential) {
    throw DomainError("potential-scale shooting needs a potential");
  }
  if (!(options.step > 0.0)) throw DomainError("grid step must be positive");

  Shot shot{system, parameter, fixed_amplitude, options.rtol, 0.0, 0.0};
  shot.kappa = std::sqrt(system.mass * system.mass - system.omega * system.omega);
  const double requested = options.r_max > 0.0 ? options.r_max : 12.0 / shot.kappa;
  const int n = std::max(16, static_cast<int>(std::ceil(requested / options.step)));
  const double h = options.step;
  shot.r_max = n * h;

  // Parameter sweep.
  double lo_range = options.sweep_min;
  double hi_range = options.sweep_max;
  if (!(hi_range > 0.0)) {
    if (parameter == ShootParameter::amplitude) {
      const double lam = std::abs(system.model.lambda());
      hi_range = 4.0 * std::pow(system.mass / lam, 1.0 / (2.0 * system.model.exponent()));
    } else {
      hi_range = 1e3;
    }
  }
  if (!(lo_range > 0.0)) lo_range = parameter == ShootParameter::amplitude ? 0.0 : 1e-3;
  const int count = std::max(8, options.sweep_points);
  std::vector<double> qs(count);
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k + 1) / count;
    if (parameter == ShootParameter::amplitude) {
      qs[k] = lo_range + (hi_range - lo_range) * t;
    } else {
      qs[k] = lo_range * std::pow(hi_range / lo_range, static_cast<double>(k) / (count - 1));
    }
  }
  ShootingReport report;
  report.swept_min = qs.front();
  report.swept_max = qs.back();
  const int cap = nodes + 2;
  int prev_class = shot.classify(qs[0], cap);
  for (int k = 1; k < count; ++k) {
    const int c = shot.classify(qs[k], cap);
    if (prev_class == nodes && c > nodes) report.brackets.emplace_back(qs[k - 1], qs[k]);
    prev_class = c;
  }

  const int i_match = std::clamp(static_cast<int>(std::lround(options.match_fraction * n)), 4, n - 4);
  const double rf = i_match * h;
  for (const auto& bracket : report.brackets) {
    double lo = bracket.first;
    double hi = bracket.second;
    while (hi - lo > options.bisection_tol * std::abs(hi)) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (shot.classify(mid, cap) > nodes) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const Grid grid{n, i_match, h};
    const Matched m = newton_match(shot, 0.5 * (lo + hi), grid);
    if (!m.ok) continue;
    std::vector<double> a(n + 1), b(n + 1);
    a[0] = shot.amplitude(m.q);
    b[0] = 0.0;
    State joint, x;
    if (!shot.outward(m.q, i_match, h, &a, &b, joint) ||
        !shot.inward(m.q, m.amp, n, i_match, h, &a, &b, x)) {
      continue;
    }
    const double sc = std::abs(x[0]) + std::abs(x[1]);
    report.match_mismatch = std::max(std::abs(joint[0] - x[0]), std::abs(joint[1] - x[1])) / sc;
    report.parameter = m.q;
    report.amplitude = a[0];
    report.tail_amplitude = m.amp;
    report.match_radius = rf;
    report.newton_iterations = m.iterations;
    ShootingSolution sol;
    sol.a = std::move(a);
    sol.b = std::move(b);
    sol.step = h;
    sol.report = report;
    return sol;
  }
  std::vector<double> trace = {report.swept_min, report.swept_max};
  for (const auto& br : report.brackets) {
    trace.push_back(br.first);
    trace.push_back(br.second);
  }
  throw SolverError("no solution in bracket",
                    "no decaying solution with " + std::to_string(nodes) +
                        " nodes in the swept interval [" + std::to_string(report.swept_min) + ", " +
                        std::to_string(report.swept_max) + "]; " +
                        std::to_string(report.brackets.size()) + " candidate bracket(s) rejected",
                    trace);
}

namespace {

RadialProfile certify(ProfileParams params, ShootingSolution sol, const ShootingOptions& options,
                      ShootingReport* report) {
  const bool minus = params.kind == ProfileKind::dirac3d_minus;
  std::vector<double> u = minus ? sol.a : sol.b;
  std::vector<double> v = minus ? sol.b : sol.a;
  params.tail_amplitude = sol.report.tail_amplitude;
  params.nodes = count_nodes(u);
  RadialProfile profile(params, sol.step, std::move(u), std::move(v));
  const double res = ode_residual(profile);
  const DecayFit fit = decay_rate(profile);
  params.residual = res;
  params.decay = fit.kappa;
  sol.report.ode_residual = res;
  sol.report.decay = fit.kappa;
  sol.report.decay_fit_residual = fit.fit_residual;
  if (report) *report = sol.report;
  if (!(res <= options.residual_tol)) {
    throw SolverError("tolerance failure",
                      "ODE residual " + std::to_string(res) + " exceeds " +
                          std::to_string(options.residual_tol),
                      {res, options.residual_tol});
  }
  return profile.with_params(params);
}

}  // namespace

RadialProfile solve_soler_radial(double omega, double mass, const NonlinearityModel& model,
                                 int sign, int nodes, const ShootingOptions& options,
                                 ShootingReport* report) {
  if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  if (model.is_zero()) throw DomainError("the radial solve needs a nonzero nonlinearity");
  if (sign == 1) {
    if (!(omega > 0.0 && omega < mass)) throw DomainError("omega must satisfy 0 < omega < m");
    if (!(model.lambda() > 0.0)) throw DomainError("coupling lambda must be positive");
  } else if (!(std::abs(omega) < mass) || omega == 0.0) {
    throw DomainError("omega must satisfy 0 < |omega| < m");
  }
  RadialSystem sys;
  sys.dimension = 3;
  sys.sigma = sign;
  sys.omega = omega;
  sys.mass = mass;
  sys.model = model;
  ProfileParams params;
  params.kind = sign == 1 ? ProfileKind::dirac3d_plus : ProfileKind::dirac3d_minus;
  params.omega = omega;
  params.mass = mass;
  params.model = model;
  return certify(params, shoot(sys, ShootParameter::amplitude, 0.0, nodes, options), options,
                 report);
}

RadialProfile solve_gross_neveu_1d(double omega, double mass, const NonlinearityModel& model,
                                   const ShootingOptions& options, ShootingReport* report) {
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  if (!(omega > 0.0 && omega < mass)) throw DomainError("omega must satisfy 0 < omega < m");
  if (model.is_zero() || !(model.lambda() > 0.0)) {
    throw DomainError("coupling lambda must be positive");
  }
  RadialSystem sys;
  sys.dimension = 1;
  sys.sigma = 1;
  sys.omega = omega;
  sys.mass = mass;
  sys.model = model;
  ProfileParams params;
  params.kind = ProfileKind::dirac1d;
  params.omega = omega;
  params.mass = mass;
  params.model = model;
  return certify(params, shoot(sys, ShootParameter::amplitude, 0.0, 0, options), options, report);
}

DecayFit decay_rate(const RadialProfile& profile) {
  const int n = profile.points();
  const int first = (2 * (n - 1)) / 3;
  const bool radial = profile.dimension() == 3;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  std::vector<double> xs, ys;
  for (int i = std::max(first, 1); i < n; ++i) {
    const double r = profile.radius(i);
    const double mag = std::abs(profile.u()[i]) + std::abs(profile.v()[i]);
    if (!(mag > 1e-300) || !std::isfinite(mag)) {
      throw SolverError("tail underflow",
                        "profile magnitude vanishes at r = " + std::to_string(r) +
                            " inside the fit window; shrink R_max",
                        {r, mag});
    }
    const double y = std::log(radial ? r * mag : mag);
    xs.push_back(r);
    ys.push_back(y);
    sx += r;
    sy += y;
    sxx += r * r;
    sxy += r * y;
    ++count;
  }
  if (count < 3) throw SolverError("tail underflow", "fit window has fewer than 3 points");
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double icept = (sy - slope * sx) / count;
  double ss = 0;
  for (int k = 0; k < count; ++k) {
    const double d = ys[k] - (icept + slope * xs[k]);
    ss += d * d;
  }
  return {-slope, std::sqrt(ss / count)};
}

double ode_residual(const RadialProfile& profile) {
  const ProfileParams& p = profile.params();
  const bool minus = p.kind == ProfileKind::dirac3d_minus;
  const int d = profile.dimension();
  const double sg = minus ? -1.0 : 1.0;
  const double eta = p.kind == ProfileKind::kgd3d ? p.eta : 0.0;
  const auto& a = minus ? profile.u() : profile.v();
  const auto& b = minus ? profile.v() : profile.u();
  const auto& da = minus ? profile.du() : profile.dv();
  const auto& db = minus ? profile.dv() : profile.du();
  double worst = 0.0;
  for (int i = 1; i < profile.points() - 1; ++i) {
    const double r = profile.radius(i);
    const double g = p.model.g(sg * (a[i] * a[i] - b[i] * b[i]));
    const double shift = profile.has_chi() ? eta * profile.chi()[i] : 0.0;
    const double fb = g - (p.mass - sg * p.omega) + shift;
    const double fa = g - (p.mass + sg * p.omega) + shift;
    const double ra = da[i] - b[i] * fa;
    const double rb = db[i] + (d - 1) * b[i] / r - a[i] * fb;
    const double scale = std::abs(a[i]) + std::abs(b[i]);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::max(std::abs(ra), std::abs(rb)) / scale);
  }
  return worst;
}

}  // namespace diracsol
