#include "diracsol/profile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "diracsol/errors.hpp"

namespace diracsol {

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::dirac3d_plus:
      return "dirac3d_plus";
    case ProfileKind::dirac3d_minus:
      return "dirac3d_minus";
    case ProfileKind::dirac1d:
      return "dirac1d";
    case ProfileKind::kgd3d:
      return "kgd3d";
  }
  return "dirac3d_plus";
}

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "dirac3d_plus") return ProfileKind::dirac3d_plus;
  if (name == "dirac3d_minus") return ProfileKind::dirac3d_minus;
  if (name == "dirac1d") return ProfileKind::dirac1d;
  if (name == "kgd3d") return ProfileKind::kgd3d;
  throw FormatError("unknown profile kind '" + name + "'");
}

std::vector<double> central_derivative(const std::vector<double>& f, double h,
                                       const double (&left)[3], const double (&right)[3]) {
  const int n = static_cast<int>(f.size());
  auto at = [&](int i) {
    if (i < 0) return left[-i - 1];
    if (i >= n) return right[i - n];
    return f[i];
  };
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = (-at(i - 3) + 9.0 * at(i - 2) - 45.0 * at(i - 1) + 45.0 * at(i + 1) -
            9.0 * at(i + 2) + at(i + 3)) /
           (60.0 * h);
  }
  return d;
}

RadialProfile::RadialProfile(ProfileParams params, double step, std::vector<double> u,
                             std::vector<double> v, std::vector<double> chi)
    : params_(std::move(params)), step_(step), u_(std::move(u)), v_(std::move(v)),
      chi_(std::move(chi)) {
  if (!(step_ > 0.0)) throw FormatError("profile grid step must be positive");
  if (u_.size() != v_.size() || u_.size() < 8) {
    throw FormatError("profile needs matching u, v columns with at least 8 samples");
  }
  if (!chi_.empty() && chi_.size() != u_.size()) throw FormatError("chi column length mismatch");
  if (params_.kind == ProfileKind::kgd3d && chi_.empty()) {
    throw FormatError("kgd3d profile requires a chi column");
  }
  if (!(params_.mass > 0.0) || !(std::abs(params_.omega) < params_.mass)) {
    throw FormatError("profile metadata needs mass > 0 and |omega| < mass");
  }
  build_derived();
}

double RadialProfile::kappa() const {
  return std::sqrt(params_.mass * params_.mass - params_.omega * params_.omega);
}

double RadialProfile::support_radius() const { return r_max() + 6.0 / kappa(); }

void RadialProfile::tail(double r, double& u, double& v, double& du, double& dv) const {
  const double k = kappa();
  const double m = params_.mass;
  const double w = params_.omega;
  const double big_r = r_max();
  const int last = points() - 1;
  if (params_.kind == ProfileKind::dirac1d) {
    const double amp = v_[last] * std::exp(k * big_r);
    const double e = amp * std::exp(-k * r);
    v = e;
    dv = -k * e;
    u = tail_u_scale_ * k * e / (m + w);
    du = -k * u;
    return;
  }
  const bool minus = params_.kind == ProfileKind::dirac3d_minus;
  const double fin_last = minus ? u_[last] : v_[last];
  const double amp = fin_last * big_r * std::exp(k * big_r);
  const double e = amp * std::exp(-k * r);
  // finite component A e^{-kr}/r, vanishing one A e^{-kr}(kr+1)/((m + sign w) r^2).
  const double fin = e / r;
  const double dfin = -e * (k * r + 1.0) / (r * r);
  const double denom = minus ? (m - w) : (m + w);
  const double zero = e * (k * r + 1.0) / (denom * r * r);
  const double dzero = -e * (k * k * r * r + 2.0 * k * r + 2.0) / (denom * r * r * r);
  if (minus) {
    u = fin;
    du = dfin;
    v = zero;
    dv = dzero;
  } else {
    v = fin;
    dv = dfin;
    u = tail_u_scale_ * zero;
    du = tail_u_scale_ * dzero;
  }
}

void RadialProfile::chi_tail(double r, double& c, double& dc) const {
  const double big_r = r_max();
  const double mm = params_.meson_mass;
  c = chi_.back() * (big_r / r) * std::exp(-mm * (r - big_r));
  dc = -c * (mm + 1.0 / r);
}

void RadialProfile::build_derived() {
  const int n = points();
  const double h = step_;
  const double big_r = r_max();
  double ul[3], vl[3], ur[3], vr[3];
  for (int k = 0; k < 3; ++k) {
    ul[k] = -u_[k + 1];
    vl[k] = v_[k + 1];
    double du, dv;
    tail(big_r + (k + 1) * h, ur[k], vr[k], du, dv);
  }
  const bool minus = params_.kind == ProfileKind::dirac3d_minus;
  if (minus) {
    // u finite and even, v vanishing and odd.
    for (int k = 0; k < 3; ++k) {
      ul[k] = u_[k + 1];
      vl[k] = -v_[k + 1];
    }
  }
  du_ = central_derivative(u_, h, ul, ur);
  dv_ = central_derivative(v_, h, vl, vr);
  if (has_chi()) {
    double cl[3], cr[3];
    for (int k = 0; k < 3; ++k) {
      cl[k] = chi_[k + 1];
      double dc;
      chi_tail(big_r + (k + 1) * h, cr[k], dc);
    }
    dchi_ = central_derivative(chi_, h, cl, cr);
  }
  if (dimension() == 3) {
    const std::vector<double>& zero = minus ? v_ : u_;
    const std::vector<double>& dzero = minus ? dv_ : du_;
    w_.assign(n, 0.0);
    w_[0] = dzero[0];
    for (int i = 1; i < n; ++i) w_[i] = zero[i] / (h * i);
    double wl[3], wr[3];
    for (int k = 0; k < 3; ++k) {
      wl[k] = w_[k + 1];
      double tu, tv, tdu, tdv;
      const double r = big_r + (k + 1) * h;
      tail(r, tu, tv, tdu, tdv);
      wr[k] = (minus ? tv : tu) / r;
    }
    dw_ = central_derivative(w_, h, wl, wr);
  }
}

namespace {

struct Hermite {
  double h00, h10, h01, h11;  // value basis
  double d00, d10, d01, d11;  // derivative basis (already divided by h)
};

Hermite hermite(double t, double h) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  Hermite b;
  b.h00 = 2 * t3 - 3 * t2 + 1;
  b.h10 = (t3 - 2 * t2 + t) * h;
  b.h01 = -2 * t3 + 3 * t2;
  b.h11 = (t3 - t2) * h;
  b.d00 = (6 * t2 - 6 * t) / h;
  b.d10 = 3 * t2 - 4 * t + 1;
  b.d01 = (-6 * t2 + 6 * t) / h;
  b.d11 = 3 * t2 - 2 * t;
  return b;
}

inline void interp(const Hermite& b, const std::vector<double>& f, const std::vector<double>& df,
                   int i, double& value, double& deriv) {
  value = b.h00 * f[i] + b.h10 * df[i] + b.h01 * f[i + 1] + b.h11 * df[i + 1];
  deriv = b.d00 * f[i] + b.d10 * df[i] + b.d01 * f[i + 1] + b.d11 * df[i + 1];
}

}  // namespace

RadialSample RadialProfile::at(double r) const {
  RadialSample s;
  if (dimension() == 1 && r < 0.0) {
    s = at(-r);
    s.u = -s.u;
    s.dv = -s.dv;
    s.dchi = -s.dchi;
    return s;
  }
  const double big_r = r_max();
  const bool minus = params_.kind == ProfileKind::dirac3d_minus;
  if (r >= big_r) {
    tail(r, s.u, s.v, s.du, s.dv);
    if (dimension() == 3) {
      const double z = minus ? s.v : s.u;
      const double dz = minus ? s.dv : s.du;
      s.w = z / r;
      s.dw = (dz - s.w) / r;
    }
    if (has_chi()) chi_tail(r, s.chi, s.dchi);
    return s;
  }
  const int last = points() - 2;
  int i = static_cast<int>(r / step_);
  if (i > last) i = last;
  const double t = (r - i * step_) / step_;
  const Hermite b = hermite(t, step_);
  interp(b, u_, du_, i, s.u, s.du);
  interp(b, v_, dv_, i, s.v, s.dv);
  if (dimension() == 3) interp(b, w_, dw_, i, s.w, s.dw);
  if (has_chi()) interp(b, chi_, dchi_, i, s.chi, s.dchi);
  return s;
}

RadialProfile RadialProfile::with_params(const ProfileParams& params) const {
  RadialProfile copy = *this;
  copy.params_ = params;
  copy.build_derived();
  return copy;
}

RadialProfile RadialProfile::with_scaled_u(double factor) const {
  RadialProfile copy = *this;
  for (double& x : copy.u_) x *= factor;
  copy.tail_u_scale_ *= factor;
  copy.build_derived();
  return copy;
}

RadialProfile RadialProfile::with_scaled_chi(double factor) const {
  RadialProfile copy = *this;
  for (double& x : copy.chi_) x *= factor;
  copy.build_derived();
  return copy;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_profile(std::ostream& out, const RadialProfile& profile) {
  const ProfileParams& p = profile.params();
  out << "# kind=" << to_string(p.kind) << " omega=" << fmt(p.omega) << " mass=" << fmt(p.mass)
      << " lambda=" << fmt(p.model.lambda()) << "\n";
  out << "# nonlinearity=" << p.model.kind_name() << " exponent=" << fmt(p.model.exponent())
      << " eta=" << fmt(p.eta) << " meson_mass=" << fmt(p.meson_mass) << "\n";
  out << "# step=" << fmt(profile.step()) << " tail_amplitude=" << fmt(p.tail_amplitude)
      << " decay=" << fmt(p.decay) << " residual=" << fmt(p.residual) << " nodes=" << p.nodes
      << "\n";
  out << (profile.has_chi() ? "# r u v chi\n" : "# r u v\n");
  for (int i = 0; i < profile.points(); ++i) {
    out << fmt(profile.radius(i)) << ' ' << fmt(profile.u()[i]) << ' ' << fmt(profile.v()[i]);
    if (profile.has_chi()) out << ' ' << fmt(profile.chi()[i]);
    out << '\n';
  }
}

namespace {

double number(const std::map<std::string, std::string>& keys, const std::string& name,
              double fallback, bool required) {
  auto it = keys.find(name);
  if (it == keys.end()) {
    if (required) throw FormatError("profile header is missing '" + name + "'");
    return fallback;
  }
  char* end = nullptr;
  const double x = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0') {
    throw FormatError("profile header value " + name + "='" + it->second + "' is not a number");
  }
  return x;
}

}  // namespace

RadialProfile read_profile(std::istream& in) {
  std::map<std::string, std::string> keys;
  std::vector<double> r, u, v, chi;
  std::string line;
  int line_no = 0;
  int columns = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream tokens(line.substr(1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos) keys[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      continue;
    }
    std::istringstream row(line);
    std::vector<double> vals;
    std::string tok;
    while (row >> tok) {
      char* end = nullptr;
      const double x = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        throw FormatError("profile line " + std::to_string(line_no) + ": bad number '" + tok + "'");
      }
      vals.push_back(x);
    }
    if (vals.size() != 3 && vals.size() != 4) {
      throw FormatError("profile line " + std::to_string(line_no) + ": expected 3 or 4 columns");
    }
    if (columns < 0) columns = static_cast<int>(vals.size());
    if (static_cast<int>(vals.size()) != columns) {
      throw FormatError("profile line " + std::to_string(line_no) + ": column count changed");
    }
    r.push_back(vals[0]);
    u.push_back(vals[1]);
    v.push_back(vals[2]);
    if (columns == 4) chi.push_back(vals[3]);
  }
  if (keys.find("kind") == keys.end()) throw FormatError("profile header is missing 'kind'");
  ProfileParams p;
  p.kind = parse_profile_kind(keys["kind"]);
  p.omega = number(keys, "omega", 0, true);
  p.mass = number(keys, "mass", 0, true);
  const double lambda = number(keys, "lambda", 0, true);
  const std::string nl = keys.count("nonlinearity") ? keys["nonlinearity"] : "soler_linear";
  const double exponent = number(keys, "exponent", 1.0, false);
  switch (parse_nonlinearity_kind(nl)) {
    case NonlinearityKind::none:
      p.model = NonlinearityModel::none();
      break;
    case NonlinearityKind::soler_linear:
      p.model = NonlinearityModel::soler(lambda);
      break;
    case NonlinearityKind::power:
      p.model = NonlinearityModel::power(lambda, exponent);
      break;
  }
  p.eta = number(keys, "eta", 0, false);
  p.meson_mass = number(keys, "meson_mass", 0, false);
  p.tail_amplitude = number(keys, "tail_amplitude", 0, false);
  p.decay = number(keys, "decay", 0, false);
  p.residual = number(keys, "residual", 0, false);
  p.nodes = static_cast<int>(number(keys, "nodes", 0, false));
  if (r.size() < 8) throw FormatError("profile has fewer than 8 rows");
  if (r[0] != 0.0) throw FormatError("profile grid must start at r = 0");
  const double h = number(keys, "step", (r.back() - r.front()) / (r.size() - 1), false);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::abs(r[i] - h * i) > 1e-9 * (1.0 + h * i)) {
      throw FormatError("profile grid is not uniform at row " + std::to_string(i));
    }
  }
  if ((p.kind == ProfileKind::kgd3d) != !chi.empty()) {
    throw FormatError("chi column present iff kind=kgd3d");
  }
  return RadialProfile(p, h, std::move(u), std::move(v), std::move(chi));
}

void save_profile(const std::string& path, const RadialProfile& profile) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write profile to " + path);
  write_profile(out, profile);
}

RadialProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read profile " + path);
  return read_profile(in);
}

}  // namespace diracsol
