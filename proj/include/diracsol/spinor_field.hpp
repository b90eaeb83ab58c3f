#pragma once

#include <array>
#include <memory>

#include "diracsol/clifford.hpp"
#include "diracsol/profile.hpp"

namespace diracsol {

using Spinor = Eigen::Vector4cd;
using Spinor2 = Eigen::Vector2cd;

/// Value and Cartesian gradient at one point.
struct SpinorJet {
  Spinor value = Spinor::Zero();
  std::array<Spinor, 3> grad = {Spinor::Zero(), Spinor::Zero(), Spinor::Zero()};
};

struct SpinorJet1D {
  Spinor2 value = Spinor2::Zero();
  Spinor2 deriv = Spinor2::Zero();
};

/// Evaluatable map R^3 -> C^4. Implementations are pure and reentrant.
class SpinorField {
 public:
  virtual ~SpinorField() = default;
  virtual SpinorJet jet(const Vec3& x) const = 0;
  virtual Spinor value(const Vec3& x) const { return jet(x).value; }
  /// Half-width of a box outside of which |phi|^2 is negligible.
  virtual double extent() const = 0;
  /// Length scale of the core, used to place quadrature nodes.
  virtual double core() const { return 2.0; }
  /// 1..4 for ansatz fields, 0 otherwise.
  virtual int family() const { return 0; }
  virtual const RadialProfile* profile() const { return nullptr; }
};

class SpinorField1D {
 public:
  virtual ~SpinorField1D() = default;
  virtual SpinorJet1D jet(double x) const = 0;
  virtual double extent() const = 0;
  virtual double core() const { return 2.0; }
  virtual const RadialProfile* profile() const { return nullptr; }
};

using FieldPtr = std::shared_ptr<const SpinorField>;
using Field1DPtr = std::shared_ptr<const SpinorField1D>;

class ZeroField final : public SpinorField {
 public:
  SpinorJet jet(const Vec3&) const override { return {}; }
  double extent() const override { return 10.0; }
};

class ZeroField1D final : public SpinorField1D {
 public:
  SpinorJet1D jet(double) const override { return {}; }
  double extent() const override { return 10.0; }
};

/// phi(x) e^{i k.x}; breaks the reflection symmetries of the ansatz.
class ModulatedField final : public SpinorField {
 public:
  ModulatedField(FieldPtr base, const Vec3& k) : base_(std::move(base)), k_(k) {}
  SpinorJet jet(const Vec3& x) const override;
  double extent() const override { return base_->extent(); }
  double core() const override { return base_->core(); }

 private:
  FieldPtr base_;
  Vec3 k_;
};

/// Two-component field (v(x), u(x)) of the 1D model, v even and u odd.
class ProfileField1D final : public SpinorField1D {
 public:
  explicit ProfileField1D(RadialProfile profile);
  SpinorJet1D jet(double x) const override;
  double extent() const override;
  double core() const override;
  const RadialProfile* profile() const override { return &profile_; }

 private:
  RadialProfile profile_;
};

}  // namespace diracsol

namespace diracsol {

/// a^* alpha_k b, using the block structure directly.
inline cplx alpha_form(int k, const Spinor& a, const Spinor& b) {
  auto sig = [k](cplx x, cplx y, cplx& ox, cplx& oy) {
    switch (k) {
      case 0:
        ox = y;
        oy = x;
        break;
      case 1:
        ox = cplx(0, -1) * y;
        oy = cplx(0, 1) * x;
        break;
      default:
        ox = x;
        oy = -y;
        break;
    }
  };
  cplx l0, l1, u0, u1;
  sig(b[2], b[3], l0, l1);
  sig(b[0], b[1], u0, u1);
  return std::conj(a[0]) * l0 + std::conj(a[1]) * l1 + std::conj(a[2]) * u0 +
         std::conj(a[3]) * u1;
}

/// a^* beta a.
inline double beta_form(const Spinor& a) {
  return std::norm(a[0]) + std::norm(a[1]) - std::norm(a[2]) - std::norm(a[3]);
}

}  // namespace diracsol
