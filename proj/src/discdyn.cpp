#include "dxm/discdyn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dxm/roots.hpp"

namespace dxm {

namespace {
constexpr double kPi = std::numbers::pi;

Cx unit(double t) { return Cx(std::cos(t), std::sin(t)); }

// displacement polynomial num(z) - z den(z), exact
Polynomial<RatCx> displacement_poly(const RationalMap& phi) {
  Polynomial<RatCx> shift = Polynomial<RatCx>::identity() * phi.den_exact();
  return phi.num_exact() - shift;
}

double boundary_band(Cx z) { return std::abs(std::abs(z) - 1.0); }

// |phi(e^{i t})|^2 and its first two t-derivatives
struct ModulusDerivs {
  double h, dh, d2h;
};
ModulusDerivs modulus_derivs(const RationalMap& phi, double t) {
  Cx z = unit(t);
  JetCx j = phi.jet_at(z, 2);
  Cx f = j.deriv[0], f1 = j.deriv[1], f2 = j.deriv[2];
  ModulusDerivs m;
  m.h = std::norm(f);
  Cx izf1 = Cx(0, 1) * z * f1;
  m.dh = 2.0 * std::real(izf1 * std::conj(f));
  m.d2h = 2.0 * std::real((-z * f1 - z * z * f2) * std::conj(f)) +
          2.0 * std::norm(f1);
  return m;
}
}  // namespace

std::vector<FixedPointInfo> fixed_points(const RationalMap& phi) {
  Polynomial<RatCx> disp = displacement_poly(phi);
  if (disp.is_zero())
    throw InputError("fixed_points: identity map, every point is fixed");
  Polynomial<Cx> p = to_double_poly(disp);
  if (p.degree() == 0) return {};  // constant nonzero displacement

  auto raw = find_roots(p.coeffs());
  auto clustered = cluster_roots(raw.roots, p.coeffs());

  std::vector<FixedPointInfo> out;
  for (const ClusteredRoot& cr : clustered) {
    if (std::abs(cr.z) > 1.0 + 1e-7) continue;
    FixedPointInfo fp;
    fp.z = cr.z;
    fp.multiplicity = cr.multiplicity;
    fp.location = boundary_band(cr.z) <= 1e-7 ? FixedPointLocation::Boundary
                                              : FixedPointLocation::Interior;
    fp.multiplier = phi.deriv_eval(cr.z);
    fp.abs_multiplier = std::abs(fp.multiplier);
    fp.residual = std::abs(phi.eval(cr.z) - cr.z);
    out.push_back(fp);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::abs(a.z) < std::abs(b.z);
  });
  return out;
}

BoundaryModulusSet boundary_unimodular_points(const RationalMap& phi) {
  BoundaryModulusSet res;
  const int D = std::max(phi.num_exact().degree(), phi.den_exact().degree());
  Polynomial<RatCx> nn =
      phi.num_exact() * phi.num_exact().conj_reflect(D);
  Polynomial<RatCx> dd =
      phi.den_exact() * phi.den_exact().conj_reflect(D);
  Polynomial<RatCx> p_exact = nn - dd;

  double scale = 0.0;
  for (const RatCx& c : nn.coeffs()) scale = std::max(scale, ScalarOps<RatCx>::abs(c));
  for (const RatCx& c : dd.coeffs()) scale = std::max(scale, ScalarOps<RatCx>::abs(c));
  double pmax = 0.0;
  for (const RatCx& c : p_exact.coeffs())
    pmax = std::max(pmax, ScalarOps<RatCx>::abs(c));
  if (pmax <= 1e-12 * std::max(scale, 1e-300)) {
    res.whole_circle = true;
    return res;
  }

  std::vector<Cx> seeds;
  Polynomial<Cx> p = to_double_poly(p_exact);
  if (p.degree() >= 1) {
    auto raw = find_roots(p.coeffs());
    for (Cx r : raw.roots)
      if (boundary_band(r) <= 1e-4) seeds.push_back(r / std::abs(r));
  }

  // refine each seed angle onto a local maximum of |phi|^2 on the circle
  for (Cx s : seeds) {
    double t = std::arg(s);
    for (int it = 0; it < 60; ++it) {
      ModulusDerivs m = modulus_derivs(phi, t);
      if (std::abs(m.d2h) < 1e-14) break;
      double step = m.dh / m.d2h;
      if (!std::isfinite(step)) break;
      step = std::clamp(step, -1e-2, 1e-2);
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    Cx e = unit(t);
    double dev = std::abs(phi.eval(e)) - 1.0;
    if (std::abs(dev) > 2e-9) continue;
    bool dup = false;
    for (Cx q : res.points)
      if (std::abs(q - e) <= 1e-8) dup = true;
    if (!dup) res.points.push_back(e);
  }
  std::sort(res.points.begin(), res.points.end(), [](Cx a, Cx b) {
    return std::arg(a) < std::arg(b);
  });
  return res;
}

BoundaryDynamics boundary_dynamics(const RationalMap& phi, int max_steps) {
  BoundaryDynamics dyn;
  BoundaryModulusSet e = boundary_unimodular_points(phi);
  if (e.whole_circle) {
    dyn.inner_degenerate = true;
    return dyn;
  }
  auto push_periodic = [&](Cx z, int period) {
    for (Cx q : dyn.periodic_points)
      if (std::abs(q - z) <= 1e-8) return;
    dyn.periodic_points.push_back(z);
    dyn.periods.push_back(period);
  };
  for (Cx start : e.points) {
    BoundaryOrbit orb;
    orb.start = start;
    orb.orbit.push_back(start);
    orb.stays_unimodular = true;
    Cx w = start;
    for (int k = 0; k < max_steps; ++k) {
      Cx next = phi.eval(w);
      if (boundary_band(next) > 1e-7) {
        orb.stays_unimodular = false;
        orb.orbit.push_back(next);
        break;
      }
      // cycle: first return to an earlier orbit point
      bool closed = false;
      for (size_t i = 0; i < orb.orbit.size(); ++i) {
        if (std::abs(orb.orbit[i] - next) <= 1e-8) {
          orb.period = static_cast<int>(orb.orbit.size() - i);
          for (size_t j = i; j < orb.orbit.size(); ++j)
            push_periodic(orb.orbit[j], *orb.period);
          closed = true;
          break;
        }
      }
      orb.orbit.push_back(next);
      if (closed) break;
      w = next;
    }
    dyn.orbits.push_back(std::move(orb));
  }
  return dyn;
}

DenjoyWolffResult denjoy_wolff(const RationalMap& phi) {
  if (is_rotation(phi))
    throw InputError("denjoy_wolff: rotations have no attracting point");
  DenjoyWolffResult res;
  if (is_constant(phi)) {
    res.point = phi.eval(Cx(0, 0));
    res.multiplier = Cx(0, 0);
    res.on_boundary = boundary_band(res.point) <= 1e-9;
    res.seed_limits = {res.point};
    return res;
  }

  std::vector<FixedPointInfo> fps;
  try {
    fps = fixed_points(phi);
  } catch (const InputError&) {
    // identity-like: handled by the rotation test above; keep empty
  }

  const std::vector<Cx> seeds = {Cx(0.0, 0.0), Cx(0.3, 0.0), Cx(0.0, 0.5)};
  const int max_iter = 100000;
  std::vector<Cx> limits;
  for (Cx seed : seeds) {
    Cx z = seed;
    Cx prev = z;
    bool converged = false;
    int k = 0;
    std::vector<Cx> tail;
    for (; k < max_iter; ++k) {
      prev = z;
      z = phi.eval(z);
      if (std::abs(z - prev) < 1e-12) {
        converged = true;
        break;
      }
      if (k >= max_iter - 4000 && (k % 1000) == 0) tail.push_back(z);
    }
    res.iterations = std::max(res.iterations, k);
    if (converged) {
      // snap to the nearest polished fixed point when available
      for (const auto& fp : fps)
        if (std::abs(fp.z - z) < 1e-6) z = fp.z;
      limits.push_back(z);
      continue;
    }
    // slow escape toward the circle: match a boundary fixed point
    tail.push_back(z);
    Cx best{};
    bool found = false;
    double best_d = 0.1;
    for (const auto& fp : fps) {
      if (fp.location != FixedPointLocation::Boundary) continue;
      double d = std::abs(fp.z - z);
      if (d < best_d) {
        best_d = d;
        best = fp.z;
        found = true;
      }
    }
    bool trending = found && boundary_band(z) < 5e-2;
    for (size_t i = 1; i < tail.size() && trending; ++i)
      if (std::abs(tail[i] - best) > std::abs(tail[i - 1] - best) + 1e-12)
        trending = false;
    if (!trending)
      throw NumericError(
          "denjoy_wolff: iteration did not settle (rotation-like dynamics or "
          "too slow); map " + phi.to_string());
    res.on_boundary = true;
    res.matched_boundary_fixed_point = true;
    limits.push_back(best);
  }
  for (size_t i = 1; i < limits.size(); ++i)
    if (std::abs(limits[i] - limits[0]) > 1e-8)
      throw NumericError("denjoy_wolff: seeds disagree");
  res.point = limits[0];
  res.seed_limits = limits;
  if (boundary_band(res.point) <= 1e-7) res.on_boundary = true;
  res.multiplier = phi.deriv_eval(res.point);
  return res;
}

InnerResult is_inner(const RationalMap& phi) {
  InnerResult res;
  double dev = 0.0;
  for (Cx z : phi.domain().boundary_points())
    dev = std::max(dev, std::abs(std::abs(phi.eval(z)) - 1.0));
  res.max_deviation = dev;
  res.inner = dev <= 1e-9;
  if (!res.inner) return res;

  if (phi.num().degree() == 0) {  // unimodular constant
    res.theta = std::arg(phi.eval(Cx(0, 0)));
    res.reflection_ok = true;
    return res;
  }
  auto zr = find_roots(phi.num().coeffs());
  res.zeros = zr.roots;
  bool ok = true;
  for (Cx a : res.zeros)
    if (std::abs(a) >= 1.0 - 1e-9) ok = false;
  if (ok && phi.den().degree() >= 1) {
    auto pr = find_roots(phi.den().coeffs());
    for (Cx p : pr.roots) {
      bool matched = false;
      for (Cx a : res.zeros) {
        if (std::abs(a) < 1e-12) continue;
        if (std::abs(p - 1.0 / std::conj(a)) <= 1e-6 * (1.0 + std::abs(p)))
          matched = true;
      }
      if (!matched) ok = false;
    }
  }
  res.reflection_ok = ok;
  // unimodular factor from a boundary point away from the zero directions
  Cx z0 = unit(0.83);
  Cx b(1.0, 0.0);
  for (Cx a : res.zeros) b *= (z0 - a) / (1.0 - std::conj(a) * z0);
  if (std::abs(b) > 1e-12) res.theta = std::arg(phi.eval(z0) / b);
  return res;
}

double argument_principle_zero_count(const RationalMap& phi) {
  const int n = 4096;
  Cx acc(0.0, 0.0);
  for (int k = 0; k < n; ++k) {
    Cx z = unit(2.0 * kPi * k / n);
    acc += z * phi.deriv_eval(z) / phi.eval(z);
  }
  return std::real(acc) / n;
}

std::string to_string(MapCase c) {
  switch (c) {
    case MapCase::Inner: return "Inner";
    case MapCase::NoBoundaryFixedUpToN: return "NoBoundaryFixedUpToN";
    case MapCase::Case3a_i: return "Case3a_i";
    case MapCase::Case3a_ii: return "Case3a_ii";
    case MapCase::Case3b: return "Case3b";
    case MapCase::Unknown: return "Unknown";
  }
  return "Unknown";
}

Classification classify(const RationalMap& phi, int n_max) {
  if (n_max < 1) throw InputError("classify: n_max must be >= 1");
  Classification cls;
  cls.n_used = n_max;

  try {
    cls.evidence = fixed_points(phi);
  } catch (const InputError&) {
    cls.note = "identity map";
  }
  if (!is_rotation(phi)) {
    try {
      DenjoyWolffResult dw = denjoy_wolff(phi);
      cls.denjoy_wolff = dw.point;
    } catch (const std::exception&) {
      // rotation-like inner dynamics; leave unset
    }
  }

  InnerResult inner = is_inner(phi);
  if (inner.inner) {
    cls.map_case = MapCase::Inner;
    return cls;
  }

  BoundaryDynamics dyn = boundary_dynamics(phi);
  bool has_interior_fp = false;
  for (const auto& fp : cls.evidence)
    if (fp.location == FixedPointLocation::Interior) has_interior_fp = true;

  auto phi_iter_eval = [&](Cx z, int n) {
    Cx w = z;
    for (int i = 0; i < n; ++i) w = phi.eval(w);
    return w;
  };

  for (int N = 1; N <= n_max; ++N) {
    // S_N: images under phi_N of boundary points whose first N steps stay
    // unimodular
    std::vector<Cx> s_n;
    for (const auto& orb : dyn.orbits) {
      int recorded = static_cast<int>(orb.orbit.size()) - 1;
      bool alive = orb.period.has_value() ||
                   (orb.stays_unimodular ? N <= recorded : N < recorded);
      if (!alive) continue;
      Cx w = phi_iter_eval(orb.start, N);
      if (boundary_band(w) > 1e-7) continue;
      bool dup = false;
      for (Cx q : s_n)
        if (std::abs(q - w) <= 1e-8) dup = true;
      if (!dup) s_n.push_back(w);
    }
    if (s_n.empty()) {
      cls.map_case = MapCase::NoBoundaryFixedUpToN;
      cls.n_used = n_max;
      cls.note = "boundary-touching orbits die out by depth " +
                 std::to_string(N);
      return cls;
    }
    bool all_fixed = true;
    for (Cx s : s_n)
      if (std::abs(phi_iter_eval(s, N) - s) > 1e-7) all_fixed = false;
    if (!all_fixed) continue;

    cls.s_n = s_n;
    cls.n_used = N;
    if (has_interior_fp) {
      cls.map_case = MapCase::Case3b;
      return cls;
    }
    bool any_parabolic = false, any_attracting = false;
    for (Cx s : s_n) {
      Cx d = phi.deriv_eval(s);
      if (std::abs(d - Cx(1.0, 0.0)) <= kDeadZone) any_parabolic = true;
      else if (std::abs(d) < 1.0 - kDeadZone) any_attracting = true;
    }
    if (any_parabolic)
      cls.map_case = MapCase::Case3a_ii;
    else if (any_attracting)
      cls.map_case = MapCase::Case3a_i;
    else {
      cls.map_case = MapCase::Unknown;
      cls.note = "boundary fixed points found but every multiplier exceeds 1";
    }
    return cls;
  }

  cls.map_case = MapCase::Unknown;
  cls.note = "boundary orbits persist without becoming fixed up to depth " +
             std::to_string(n_max);
  return cls;
}

}  // namespace dxm
