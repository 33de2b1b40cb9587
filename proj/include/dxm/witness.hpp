#ifndef DXM_WITNESS_HPP
#define DXM_WITNESS_HPP

#include <memory>

#include "dxm/domain.hpp"
#include "dxm/jets.hpp"
#include "dxm/rational_map.hpp"

namespace dxm {

// Anything that can hand out derivative jets at points of X.
class JetFunction {
 public:
  virtual ~JetFunction() = default;
  virtual JetCx jet_at(Cx z, int order) const = 0;
  Cx eval(Cx z) const { return jet_at(z, 0).deriv[0]; }
};

// F(z) = 1 / (1 + e^{i theta} R (w0 - z)) for a boundary image point w0.
// With theta from an external tangent witness at w0, |F| peaks at w0 with
// value 1 and the derivative sup has the closed form m! R^m.
class WitnessFR final : public JetFunction {
 public:
  WitnessFR(Cx b_image, double theta, double R);

  JetCx jet_at(Cx z, int order) const override;
  double supnorm_deriv(int m) const;     // m! R^m
  double log_supnorm_deriv(int m) const;
  Cx pole() const;                       // w0 + e^{-i theta} / R
  Cx b_image() const { return b_image_; }
  double R() const { return R_; }
  double theta() const { return theta_; }

 private:
  Cx b_image_;
  double theta_;
  double R_;
  Cx phase_;  // e^{i theta} R
};

// F(z) = 1 / (z - c) for c off X; derivative sup at distance d is n!/d^{n+1}.
class WitnessFc final : public JetFunction {
 public:
  explicit WitnessFc(Cx c);

  JetCx jet_at(Cx z, int order) const override;
  static double supnorm_deriv(int n, double dist);
  static double log_supnorm_deriv(int n, double dist);
  Cx c() const { return c_; }

 private:
  Cx c_;
};

class RationalMapFn final : public JetFunction {
 public:
  explicit RationalMapFn(RationalMap phi) : phi_(std::move(phi)) {}
  JetCx jet_at(Cx z, int order) const override { return phi_.jet_at(z, order); }

 private:
  RationalMap phi_;
};

class ConstantFn final : public JetFunction {
 public:
  explicit ConstantFn(Cx value) : value_(value) {}
  JetCx jet_at(Cx z, int order) const override {
    return JetCx::constant(value_, z, order);
  }

 private:
  Cx value_;
};

// Checked constructor: rejects a pole inside X.
WitnessFR make_witness_FR(Cx b_image, double theta, double R,
                          const DomainSpec& X);

// Checked constructor: rejects c in or touching X; returns the witness and
// the (positive) distance from c to X.
std::pair<WitnessFc, double> make_witness_Fc(Cx c, const DomainSpec& X);

double distance_to_domain(Cx c, const DomainSpec& X);

}  // namespace dxm

#endif  // DXM_WITNESS_HPP
