#ifndef DXM_WEIGHTFORGE_HPP
#define DXM_WEIGHTFORGE_HPP

#include <optional>
#include <string>
#include <vector>

#include "dxm/domain.hpp"
#include "dxm/rational_map.hpp"
#include "dxm/weights.hpp"

namespace dxm {

// One recorded lower bound on log M_n.
struct ForgeConstraint {
  std::string name;   // "(i)", "(ii)", "(iii)", "(iv)", "damping(k)"
  double log_bound;   // the construction keeps log M_n >= log_bound
  bool binding = false;
};

struct ForgeIndexRecord {
  int n = 0;
  std::vector<ForgeConstraint> constraints;
  double log_m = 0.0;
  int k_count = 0;                      // expanding-set sample count (thm3)
  std::optional<double> log_a;          // log A_n estimate (thm3, K nonempty)
  std::optional<Cx> c_n;                // chosen pole (thm5)
  std::optional<double> d_n;            // its distance to X (thm5)
  std::optional<double> growth_ratio;   // certified ratio lower bound (thm5)
};

struct ConstructedWeights {
  std::string name;
  std::string method;  // "thm3" | "thm5"
  std::vector<double> log_m;          // indices 0..n_max
  std::vector<ForgeIndexRecord> provenance;  // indices 2..n_max
  std::vector<Cx> c_points;           // thm5 poles c_0..c_n_max
  std::vector<double> a_trace;        // thm3 log A_n per built index (or -inf)
  Cx b{};                             // thm5 witness point
  double abs_phi_prime_b = 0.0;

  WeightSequence as_weight_sequence() const;
};

// Composition remainder constants: bounds C_{n,m} with
//   |(F o phi)^{(n)}(z)| <= ||F^{(n)}|| |phi'(z)|^n + sum_{m<n} C_{n,m} ||F^{(m)}||,
// assembled from the partition sums over sampled derivative sups.
// Returned raw (no safety factor); index m = 0..n-1.
std::vector<double> faa_di_bruno_constants(const RationalMap& phi, int n,
                                           const DomainSpec& X);

struct CauchyBound {
  double value = 0.0;      // sampled estimate of A_n (lower bound flavor)
  double log_value = 0.0;
  Cx arg_z{};
  Cx arg_omega{};
};

// A_n = (L / 2 pi) sup { |d^n/dz^n (omega - phi(z))^{-1}| } over the unit
// circle and the supplied expanding-set samples. Disc only (the contour is
// the unit circle, L = 2 pi). Throws when phi(K) touches the circle.
CauchyBound cauchy_bound_A(const RationalMap& phi, int n,
                           const std::vector<Cx>& k_points,
                           const DomainSpec& X);

// Builds a rapidly growing weight sequence making phi induce an
// endomorphism, provided |phi'| <= 1 on the boundary preimages of the unit
// circle. Each index takes the max of the recorded lower bounds times a
// 1.01 slack; sampled sups enter with a safety factor 2.
ConstructedWeights construct_thm3(const RationalMap& phi, const DomainSpec& X,
                                  int n_max);

// Builds a weight sequence (and poles c_n approaching phi(b) from outside)
// under which composition with phi inflates norms by at least
// |phi'(b)|^n / 6 at every built index; requires |phi'(b)| > 1 and an
// external tangent at phi(b).
ConstructedWeights construct_thm5(const RationalMap& phi, const DomainSpec& X,
                                  Cx b, int n_max);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> checks;    // human-readable pass lines
  std::vector<std::string> failures;  // failed re-verifications
};

enum class VerifyCheck {
  Constraints,      // recorded lower bounds against the final sequence
  AlgebraCondition, // binomial condition across the built prefix
  TermBound,        // thm3: composed-derivative bound spot check
  GrowthCertificate,// thm5: ratio(n) >= |phi'(b)|^n / 6
  Nonanalyticity,   // trace r_n <= (1/n!)^{1/n}
};

// Independently re-verifies everything the construction recorded. The
// construction itself treats any failure here as fatal; callers probing
// tampered inputs receive the failure list.
VerifyReport verify_construction(const ConstructedWeights& cw,
                                 const RationalMap& phi, const DomainSpec& X,
                                 const std::vector<VerifyCheck>& checks = {
                                     VerifyCheck::Constraints,
                                     VerifyCheck::AlgebraCondition,
                                     VerifyCheck::TermBound,
                                     VerifyCheck::GrowthCertificate,
                                     VerifyCheck::Nonanalyticity});

}  // namespace dxm

#endif  // DXM_WEIGHTFORGE_HPP
