#ifndef DXM_ROOTS_HPP
#define DXM_ROOTS_HPP

#include <vector>

#include "dxm/numeric.hpp"
#include "dxm/polynomial.hpp"

namespace dxm {

struct RootResult {
  std::vector<Cx> roots;      // all roots, with multiplicity
  bool converged = true;
  int iterations = 0;
};

struct ClusteredRoot {
  Cx z{};
  int multiplicity = 1;
};

// All complex roots by simultaneous (Ehrlich-Aberth) iteration with Newton
// polish. Leading coefficients at or below `coeff_tol` * max|c| are treated
// as zero. Throws NumericError if the iteration stalls, naming the defect
// polynomial; throws InputError on the (near-)zero polynomial.
RootResult find_roots(const std::vector<Cx>& coeffs, double coeff_tol = 1e-13);

// Groups nearby roots and recenters each cluster with multiplicity-aware
// Newton steps, which restores full accuracy at multiple roots.
std::vector<ClusteredRoot> cluster_roots(const std::vector<Cx>& roots,
                                         const std::vector<Cx>& coeffs,
                                         double same_tol = 1e-5);

}  // namespace dxm

#endif  // DXM_ROOTS_HPP
