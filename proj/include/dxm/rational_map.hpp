#ifndef DXM_RATIONAL_MAP_HPP
#define DXM_RATIONAL_MAP_HPP

#include <string>
#include <vector>

#include "dxm/domain.hpp"
#include "dxm/jets.hpp"
#include "dxm/polynomial.hpp"

namespace dxm {

// A self-map of X given as a ratio of complex polynomials. Coefficients are
// kept exactly (binary doubles embed exactly into the rationals), with
// floating mirrors for numerics. Instances are immutable once validated.
class RationalMap {
 public:
  // Unvalidated construction; use validate_self_map for checked inputs.
  RationalMap(Polynomial<RatCx> num, Polynomial<RatCx> den, DomainSpec domain);

  static RationalMap from_doubles(const std::vector<Cx>& num,
                                  const std::vector<Cx>& den,
                                  DomainSpec domain);

  const Polynomial<RatCx>& num_exact() const { return num_; }
  const Polynomial<RatCx>& den_exact() const { return den_; }
  const Polynomial<Cx>& num() const { return numd_; }
  const Polynomial<Cx>& den() const { return dend_; }
  const DomainSpec& domain() const { return domain_; }
  bool is_polynomial() const { return dend_.degree() == 0; }
  int degree() const { return std::max(numd_.degree(), dend_.degree()); }

  Cx eval(Cx z) const;
  Cx deriv_eval(Cx z) const;

  // Jet of phi at z to the requested order (series division of the
  // polynomial jets; den(z) must be nonzero).
  JetCx jet_at(Cx z, int order) const;
  JetRat jet_at_exact(const RatCx& z, int order) const;

  // Exact gcd reduction and a light normalization (monic denominator).
  RationalMap reduced() const;

  std::string to_string() const;

 private:
  Polynomial<RatCx> num_, den_;
  Polynomial<Cx> numd_, dend_, dnumd_, ddend_;
  DomainSpec domain_;
};

struct SelfMapCheck {
  bool ok = false;
  std::string reason;
  double boundary_sup = 0.0;   // sampled sup of |phi| over X
  double min_pole_dist = 0.0;  // distance of nearest den root to X
};

// Checks the self-map contract: no poles of den on (or within 1e-9 of) X and
// sampled sup of |phi| at most 1 + 1e-9 (max modulus extends boundary
// control to all of the disc). Throws InputError when violated.
RationalMap validate_self_map(const Polynomial<RatCx>& num,
                              const Polynomial<RatCx>& den,
                              const DomainSpec& X);
SelfMapCheck check_self_map(const RationalMap& phi);

// Exact composition outer(inner) in the field of rational functions.
RationalMap compose(const RationalMap& outer, const RationalMap& inner);

// n-th iterate by exact coefficient composition; degree-capped.
RationalMap iterate_map(const RationalMap& phi, int n, int degree_cap = 512);

// Structural rotation test: z -> c z with |c| = 1 (identity included).
bool is_rotation(const RationalMap& phi);
bool is_constant(const RationalMap& phi);

// Equality as rational functions (cross-multiplied exact comparison).
bool same_map(const RationalMap& a, const RationalMap& b);

}  // namespace dxm

#endif  // DXM_RATIONAL_MAP_HPP
