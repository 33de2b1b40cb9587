#ifndef DXM_DISCDYN_HPP
#define DXM_DISCDYN_HPP

#include <optional>
#include <string>
#include <vector>

#include "dxm/rational_map.hpp"

namespace dxm {

enum class FixedPointLocation { Interior, Boundary };

struct FixedPointInfo {
  Cx z{};
  FixedPointLocation location = FixedPointLocation::Interior;
  Cx multiplier{};
  double abs_multiplier = 0.0;
  int multiplicity = 1;
  double residual = 0.0;  // |phi(z) - z|
};

// All fixed points of phi in (a 1e-7 neighborhood of) the closed disc:
// roots of num(z) - z den(z), cluster-polished, with multipliers from the
// exact derivative of the map.
std::vector<FixedPointInfo> fixed_points(const RationalMap& phi);

// Points of the unit circle where |phi| = 1, located by maximizing
// |phi(e^{i t})|^2 with Newton refinement seeded from the root set of the
// reflected-modulus polynomial. Empty for maps with sup < 1; degenerate
// (whole circle) for inner maps, which is reported separately.
struct BoundaryModulusSet {
  bool whole_circle = false;  // |phi| = 1 identically on the circle
  std::vector<Cx> points;
};
BoundaryModulusSet boundary_unimodular_points(const RationalMap& phi);

// Orbit analysis of the unimodular boundary set under phi: each point either
// falls into the open disc (and never returns to the circle) or lands on a
// finite boundary cycle.
struct BoundaryOrbit {
  Cx start{};
  std::vector<Cx> orbit;          // start, phi(start), ...
  bool stays_unimodular = false;  // whole recorded orbit sits on |z| = 1
  std::optional<int> period;      // set when the orbit closes into a cycle
};
struct BoundaryDynamics {
  bool inner_degenerate = false;
  std::vector<BoundaryOrbit> orbits;
  std::vector<Cx> periodic_points;  // distinct points lying on cycles
  std::vector<int> periods;         // matching periods
};
BoundaryDynamics boundary_dynamics(const RationalMap& phi, int max_steps = 64);

struct DenjoyWolffResult {
  Cx point{};
  Cx multiplier{};
  bool on_boundary = false;
  bool matched_boundary_fixed_point = false;
  int iterations = 0;   // max over seeds
  std::vector<Cx> seed_limits;
};

// The attracting point of iteration from interior seeds. Boundary cases are
// detected by a slowing escape toward |z| = 1 and matched against boundary
// fixed points. Throws NumericError when the seeds disagree or do not
// settle (e.g. elliptic rotation-like maps); rotation inputs are rejected.
DenjoyWolffResult denjoy_wolff(const RationalMap& phi);

struct InnerResult {
  bool inner = false;
  double max_deviation = 0.0;  // max | |phi| - 1 | over boundary samples
  double theta = 0.0;          // unimodular factor when inner
  std::vector<Cx> zeros;       // Blaschke zeros (empty for constants)
  bool reflection_ok = false;  // den roots match reflected zeros
};
InnerResult is_inner(const RationalMap& phi);

// (1/2 pi i) contour integral of phi'/phi over the unit circle by the
// trapezoid rule; counts zeros in the disc for maps free of circle zeros.
double argument_principle_zero_count(const RationalMap& phi);

enum class MapCase {
  Inner,
  NoBoundaryFixedUpToN,
  Case3a_i,
  Case3a_ii,
  Case3b,
  Unknown,
};

std::string to_string(MapCase c);

struct Classification {
  MapCase map_case = MapCase::Unknown;
  std::optional<Cx> denjoy_wolff;
  std::vector<FixedPointInfo> evidence;
  std::vector<Cx> s_n;   // boundary image set at the deciding iterate
  int n_used = 0;        // iterate depth examined / deciding N
  std::string note;
};

// Mutually exclusive trichotomy for analytic self-maps of the closed disc,
// examined up to iterate depth n_max (the all-N statement is not finitely
// decidable, so the no-boundary-fixed-point case is reported as bounded).
Classification classify(const RationalMap& phi, int n_max = 16);

}  // namespace dxm

#endif  // DXM_DISCDYN_HPP
