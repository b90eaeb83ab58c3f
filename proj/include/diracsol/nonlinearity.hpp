#pragma once

#include <string>

namespace diracsol {

enum class NonlinearityKind { none, soler_linear, power };

/// g(s) = lambda sign(s) |s|^p and G(s) = lambda |s|^(p+1)/(p+1), so G' = g.
/// `none` is g = G = 0; `soler_linear` is the p = 1 member.
class NonlinearityModel {
 public:
  NonlinearityModel() = default;
  static NonlinearityModel none();
  static NonlinearityModel soler(double lambda);
  static NonlinearityModel power(double lambda, double exponent);

  NonlinearityKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  double exponent() const { return exponent_; }
  bool is_zero() const { return kind_ == NonlinearityKind::none || lambda_ == 0.0; }

  double g(double s) const;
  double G(double s) const;
  /// g(s) s - G(s).
  double excess(double s) const { return g(s) * s - G(s); }
  /// Largest theta with g(s) s >= theta G(s) on s >= 0: p + 1.
  double theta() const { return exponent_ + 1.0; }

  std::string kind_name() const;

 private:
  NonlinearityModel(NonlinearityKind kind, double lambda, double exponent);
  NonlinearityKind kind_ = NonlinearityKind::none;
  double lambda_ = 0.0;
  double exponent_ = 1.0;
};

NonlinearityKind parse_nonlinearity_kind(const std::string& name);

}  // namespace diracsol
