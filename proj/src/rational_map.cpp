#include "dxm/rational_map.hpp"

#include <cmath>
#include <sstream>

#include "dxm/roots.hpp"

namespace dxm {

RationalMap::RationalMap(Polynomial<RatCx> num, Polynomial<RatCx> den,
                         DomainSpec domain)
    : num_(std::move(num)), den_(std::move(den)), domain_(domain) {
  if (den_.is_zero()) throw InputError("RationalMap: zero denominator");
  numd_ = to_double_poly(num_);
  dend_ = to_double_poly(den_);
  dnumd_ = numd_.derivative();
  ddend_ = dend_.derivative();
}

RationalMap RationalMap::from_doubles(const std::vector<Cx>& num,
                                      const std::vector<Cx>& den,
                                      DomainSpec domain) {
  std::vector<RatCx> n(num.size()), d(den.size());
  for (size_t i = 0; i < num.size(); ++i) n[i] = rat_cx_from(num[i]);
  for (size_t i = 0; i < den.size(); ++i) d[i] = rat_cx_from(den[i]);
  return RationalMap(Polynomial<RatCx>(std::move(n)),
                     Polynomial<RatCx>(std::move(d)), domain);
}

Cx RationalMap::eval(Cx z) const { return numd_.eval(z) / dend_.eval(z); }

Cx RationalMap::deriv_eval(Cx z) const {
  Cx q = dend_.eval(z);
  return (dnumd_.eval(z) * q - numd_.eval(z) * ddend_.eval(z)) / (q * q);
}

JetCx RationalMap::jet_at(Cx z, int order) const {
  auto p = numd_.derivatives_at(z, order);
  auto q = dend_.derivatives_at(z, order);
  if (std::abs(q[0]) == 0.0)
    throw NumericError("RationalMap::jet_at: pole at evaluation point");
  JetCx pj(z, std::move(p)), qj(z, std::move(q));
  auto t = series_div(jet_to_taylor(pj), jet_to_taylor(qj), order);
  return taylor_to_jet(z, t);
}

JetRat RationalMap::jet_at_exact(const RatCx& z, int order) const {
  auto p = num_.derivatives_at(z, order);
  auto q = den_.derivatives_at(z, order);
  JetRat pj(z, std::move(p)), qj(z, std::move(q));
  auto t = series_div(jet_to_taylor(pj), jet_to_taylor(qj), order);
  return taylor_to_jet(z, t);
}

RationalMap RationalMap::reduced() const {
  Polynomial<RatCx> g = poly_gcd(num_, den_);
  Polynomial<RatCx> n = num_, d = den_;
  if (g.degree() >= 1) {
    n = poly_divide_exact(n, g);
    d = poly_divide_exact(d, g);
  }
  // normalize: monic denominator
  RatCx lead = d.coeffs().back();
  std::vector<RatCx> nc = n.coeffs(), dc = d.coeffs();
  for (auto& v : nc) v /= lead;
  for (auto& v : dc) v /= lead;
  return RationalMap(Polynomial<RatCx>(std::move(nc)),
                     Polynomial<RatCx>(std::move(dc)), domain_);
}

std::string RationalMap::to_string() const {
  auto poly_str = [](const Polynomial<Cx>& p) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    bool first = true;
    for (int k = 0; k <= p.degree(); ++k) {
      Cx c = p[k];
      if (c == Cx(0, 0) && p.degree() > 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c.real();
      if (c.imag() >= 0)
        os << "+" << c.imag() << "i)";
      else
        os << "-" << -c.imag() << "i)";
      if (k >= 1) os << "*z";
      if (k >= 2) os << "^" << k;
    }
    if (first) os << "0";
    os << ")";
    return os.str();
  };
  return poly_str(numd_) + "/" + poly_str(dend_);
}

SelfMapCheck check_self_map(const RationalMap& phi) {
  SelfMapCheck res;
  const DomainSpec& X = phi.domain();

  // pole separation from X
  double min_dist = std::numeric_limits<double>::infinity();
  if (phi.den().degree() >= 1) {
    auto roots = find_roots(phi.den().coeffs());
    for (Cx r : roots.roots) {
      double d;
      if (X.kind == DomainKind::ClosedDisc) {
        d = std::abs(r) - 1.0;
      } else {
        double x = std::clamp(r.real(), 0.0, 1.0);
        d = std::abs(r - Cx(x, 0.0));
      }
      min_dist = std::min(min_dist, d);
    }
  }
  res.min_pole_dist = min_dist;
  if (min_dist < 1e-9) {
    res.reason = "denominator has a root in (or touching) X";
    return res;
  }

  // boundary sup of |phi|
  SupResult sup = sup_norm([&](Cx z) { return phi.eval(z); }, X,
                           /*analytic_hint=*/true);
  res.boundary_sup = sup.value;
  if (sup.value > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "not a self-map: sup |phi| = " << sup.value << " at z = ("
       << sup.argmax.real() << ", " << sup.argmax.imag() << ")";
    res.reason = os.str();
    return res;
  }

  if (X.kind == DomainKind::Interval01) {
    // a self-map of the interval must stay real on it
    for (Cx z : X.boundary_points()) {
      Cx v = phi.eval(z);
      if (std::abs(v.imag()) > 1e-9) {
        res.reason = "map is not real-valued on the interval";
        return res;
      }
      if (v.real() < -1e-9 || v.real() > 1.0 + 1e-9) {
        res.reason = "map leaves the interval";
        return res;
      }
    }
  }
  res.ok = true;
  return res;
}

RationalMap validate_self_map(const Polynomial<RatCx>& num,
                              const Polynomial<RatCx>& den,
                              const DomainSpec& X) {
  if (den.is_zero()) throw InputError("validate_self_map: zero denominator");
  RationalMap phi(num, den, X);
  // drop exact common factors before checking pole positions
  if (num.degree() >= 1 && den.degree() >= 1) phi = phi.reduced();
  SelfMapCheck chk = check_self_map(phi);
  if (!chk.ok) throw InputError("validate_self_map: " + chk.reason);
  return phi;
}

RationalMap compose(const RationalMap& outer, const RationalMap& inner) {
  const Polynomial<RatCx>& p = outer.num_exact();
  const Polynomial<RatCx>& q = outer.den_exact();
  const Polynomial<RatCx>& u = inner.num_exact();
  const Polynomial<RatCx>& v = inner.den_exact();
  const int d = std::max(p.degree(), q.degree());

  // powers of u and v up to d
  std::vector<Polynomial<RatCx>> up(d + 1), vp(d + 1);
  up[0] = Polynomial<RatCx>::constant(ScalarOps<RatCx>::one());
  vp[0] = up[0];
  for (int k = 1; k <= d; ++k) {
    up[k] = up[k - 1] * u;
    vp[k] = vp[k - 1] * v;
  }
  Polynomial<RatCx> num, den;
  for (int k = 0; k <= d; ++k) {
    if (!ScalarOps<RatCx>::is_zero(p.coeff_or_zero(k)))
      num = num + up[k] * vp[d - k] * p.coeff_or_zero(k);
    if (!ScalarOps<RatCx>::is_zero(q.coeff_or_zero(k)))
      den = den + up[k] * vp[d - k] * q.coeff_or_zero(k);
  }
  return RationalMap(std::move(num), std::move(den), outer.domain());
}

RationalMap iterate_map(const RationalMap& phi, int n, int degree_cap) {
  if (n < 1) throw InputError("iterate_map: n must be >= 1");
  RationalMap acc = phi;
  for (int k = 1; k < n; ++k) {
    if (static_cast<long long>(acc.degree()) * phi.degree() > degree_cap) {
      throw NumericError("iterate_map: degree cap " +
                         std::to_string(degree_cap) + " exceeded at iterate " +
                         std::to_string(k + 1));
    }
    acc = compose(phi, acc);
  }
  return acc;
}

bool is_rotation(const RationalMap& phi) {
  if (phi.den().degree() != 0) return false;
  if (phi.num().degree() != 1) return false;
  Cx c0 = phi.num()[0] / phi.den()[0];
  Cx c1 = phi.num()[1] / phi.den()[0];
  return std::abs(c0) == 0.0 && std::abs(std::abs(c1) - 1.0) <= 1e-12;
}

bool is_constant(const RationalMap& phi) {
  return phi.num().degree() == 0 && phi.den().degree() == 0;
}

bool same_map(const RationalMap& a, const RationalMap& b) {
  return a.num_exact() * b.den_exact() == b.num_exact() * a.den_exact();
}

}  // namespace dxm
