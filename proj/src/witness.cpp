#include "dxm/witness.hpp"

#include <algorithm>
#include <cmath>

namespace dxm {

WitnessFR::WitnessFR(Cx b_image, double theta, double R)
    : b_image_(b_image), theta_(theta), R_(R) {
  if (!(R > 0)) throw InputError("WitnessFR: R must be positive");
  phase_ = std::polar(R, theta);
}

JetCx WitnessFR::jet_at(Cx z, int order) const {
  // F^{(m)}(z) = m! (e^{i theta} R)^m / u^{m+1},  u = 1 + e^{i theta} R (w0 - z)
  Cx u = 1.0 + phase_ * (b_image_ - z);
  if (std::abs(u) == 0.0)
    throw NumericError("WitnessFR: evaluation at the pole");
  std::vector<Cx> d(order + 1);
  Cx inv_u = 1.0 / u;
  Cx acc = inv_u;  // m!-free running product: phase^m / u^{m+1}
  double fact = 1.0;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) {
      fact *= m;
      acc *= phase_ * inv_u;
    }
    d[m] = fact * acc;
  }
  return JetCx(z, std::move(d));
}

double WitnessFR::supnorm_deriv(int m) const {
  return std::exp(log_supnorm_deriv(m));
}

double WitnessFR::log_supnorm_deriv(int m) const {
  return log_factorial(m) + m * std::log(R_);
}

Cx WitnessFR::pole() const { return b_image_ + std::polar(1.0 / R_, -theta_); }

WitnessFc::WitnessFc(Cx c) : c_(c) {}

JetCx WitnessFc::jet_at(Cx z, int order) const {
  // F^{(n)}(z) = (-1)^n n! / (z - c)^{n+1}
  Cx w = z - c_;
  if (std::abs(w) == 0.0) throw NumericError("WitnessFc: evaluation at c");
  std::vector<Cx> d(order + 1);
  Cx inv = 1.0 / w;
  Cx acc = inv;
  double fact = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) {
      fact *= n;
      acc *= -inv;
    }
    d[n] = fact * acc;
  }
  return JetCx(z, std::move(d));
}

double WitnessFc::supnorm_deriv(int n, double dist) {
  return std::exp(log_supnorm_deriv(n, dist));
}

double WitnessFc::log_supnorm_deriv(int n, double dist) {
  if (!(dist > 0)) throw InputError("WitnessFc: distance must be positive");
  return log_factorial(n) - (n + 1) * std::log(dist);
}

double distance_to_domain(Cx c, const DomainSpec& X) {
  if (X.kind == DomainKind::ClosedDisc) return std::abs(c) - 1.0;
  double x = std::clamp(c.real(), 0.0, 1.0);
  return std::abs(c - Cx(x, 0.0));
}

WitnessFR make_witness_FR(Cx b_image, double theta, double R,
                          const DomainSpec& X) {
  WitnessFR f(b_image, theta, R);
  if (X.contains(f.pole(), 1e-12))
    throw InputError("witness pole lies inside X");
  return f;
}

std::pair<WitnessFc, double> make_witness_Fc(Cx c, const DomainSpec& X) {
  double d = distance_to_domain(c, X);
  if (!(d > 0) || X.contains(c, 1e-12))
    throw InputError("witness pole c must lie strictly off X");
  return {WitnessFc(c), d};
}

}  // namespace dxm
