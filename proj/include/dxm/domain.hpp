#ifndef DXM_DOMAIN_HPP
#define DXM_DOMAIN_HPP

#include <functional>
#include <optional>
#include <vector>

#include "dxm/numeric.hpp"

namespace dxm {

enum class DomainKind { Interval01, ClosedDisc };

// The ambient set X: the unit interval on the real axis or the closed unit
// disc, with the sampling resolutions used by every sup estimate.
struct DomainSpec {
  DomainKind kind = DomainKind::ClosedDisc;
  int boundary_samples = 2048;  // >= 64
  int interior_grid = 256;      // per-axis resolution for the disc interior
  int refine_iters = 40;        // local search iterations around sample maxima
  double offset01 = 0.0;        // sampling phase in [0,1), set from DXM_SEED

  static DomainSpec disc(int boundary = 2048, int interior = 256);
  static DomainSpec interval(int boundary = 2048);

  bool contains(Cx z, double tol = 1e-12) const;
  // On the disc every boundary point is e^{i theta}; on the interval the
  // whole set is its own boundary (it has empty planar interior).
  std::vector<Cx> boundary_points() const;
  std::vector<Cx> interior_points() const;
  const char* name() const {
    return kind == DomainKind::ClosedDisc ? "disc" : "interval";
  }
};

struct SupResult {
  double value = 0.0;   // a sampled lower bound of the true sup
  Cx argmax{};
  int samples_used = 0;
};

// Sup of |f| over X by sampling plus local refinement. With analytic_hint on
// the disc only boundary samples are used (maximum modulus); otherwise the
// interior grid is scanned as well. Evaluation failures abort with location.
SupResult sup_norm(const std::function<Cx(Cx)>& f, const DomainSpec& X,
                   bool analytic_hint);

struct TangentWitness {
  bool has_tangent = false;
  Cx center{};       // center of an external disc touching X only at c
  double theta = 0;  // phase making |1 + e^{i theta} R (c - z)| > 1 off c
  double r_min = 1;  // any R >= r_min works for the witness family
};

// External circular tangent predicate at a point c of X. On the disc this is
// exactly the boundary predicate |c| = 1; on the interval every point
// qualifies (touch with a disc below the axis).
TangentWitness external_circular_tangent(const DomainSpec& X, Cx c);

struct RegionDecomposition {
  std::vector<Cx> k_points;    // samples with |phi'| >= 1 - eps
  double eps = 0.0;
  double max_phi_on_k = 0.0;   // max |phi| over k_points (0 when empty)
  double margin = 1.0;         // 1 - max_phi_on_k
  bool passes = false;
  int samples_used = 0;
};

class RationalMap;  // discdyn

// Samples X, collects the near-expanding set, and measures how far its image
// stays from the boundary. Passes when the margin clears `safety`.
// On the interval the planar interior is empty, so only an empty expanding
// set passes.
RegionDecomposition theorem2_decomposition(const RationalMap& phi,
                                           const DomainSpec& X, double eps,
                                           double safety = 1e-3);

// Largest eps in {2^-k : k = 0..max_k} whose decomposition passes.
std::optional<RegionDecomposition> choose_eps_decomposition(
    const RationalMap& phi, const DomainSpec& X, int max_k = 30,
    double safety = 1e-3);

}  // namespace dxm

#endif  // DXM_DOMAIN_HPP
