#include "dxm/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dxm/rational_map.hpp"

namespace dxm {

namespace {
constexpr double kPi = std::numbers::pi;

Cx unit(double theta) { return Cx(std::cos(theta), std::sin(theta)); }

double wrap_unit(double t) { return t - std::floor(t); }

// golden-section maximization of g on [lo, hi]
template <class G>
std::pair<double, double> refine_max(const G& g, double lo, double hi,
                                     int iters) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = g(x1), f2 = g(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g(x1);
    }
  }
  return f1 > f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}
}  // namespace

DomainSpec DomainSpec::disc(int boundary, int interior) {
  DomainSpec d;
  d.kind = DomainKind::ClosedDisc;
  d.boundary_samples = std::max(64, boundary);
  d.interior_grid = std::max(8, interior);
  return d;
}

DomainSpec DomainSpec::interval(int boundary) {
  DomainSpec d;
  d.kind = DomainKind::Interval01;
  d.boundary_samples = std::max(64, boundary);
  d.interior_grid = 0;
  return d;
}

bool DomainSpec::contains(Cx z, double tol) const {
  if (kind == DomainKind::ClosedDisc) return std::abs(z) <= 1.0 + tol;
  return std::abs(z.imag()) <= tol && z.real() >= -tol && z.real() <= 1.0 + tol;
}

std::vector<Cx> DomainSpec::boundary_points() const {
  std::vector<Cx> pts;
  pts.reserve(boundary_samples);
  if (kind == DomainKind::ClosedDisc) {
    for (int k = 0; k < boundary_samples; ++k)
      pts.push_back(unit(2.0 * kPi * (k + offset01) / boundary_samples));
  } else {
    for (int k = 0; k < boundary_samples; ++k) {
      double frac = (k + wrap_unit(offset01)) / boundary_samples;
      pts.push_back(Cx(std::min(frac, 1.0), 0.0));
    }
    pts.push_back(Cx(1.0, 0.0));  // always include the right endpoint
    pts.push_back(Cx(0.0, 0.0));
  }
  return pts;
}

std::vector<Cx> DomainSpec::interior_points() const {
  std::vector<Cx> pts;
  if (kind != DomainKind::ClosedDisc || interior_grid <= 0) return pts;
  const int g = interior_grid;
  pts.reserve(static_cast<size_t>(g) * g);
  for (int i = 0; i < g; ++i) {
    double x = -1.0 + 2.0 * (i + 0.5) / g;
    for (int j = 0; j < g; ++j) {
      double y = -1.0 + 2.0 * (j + 0.5) / g;
      Cx z(x, y);
      if (std::abs(z) <= 1.0) pts.push_back(z);
    }
  }
  return pts;
}

SupResult sup_norm(const std::function<Cx(Cx)>& f, const DomainSpec& X,
                   bool analytic_hint) {
  auto eval_abs = [&](Cx z) -> double {
    Cx v = f(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "sup_norm: evaluation failed at z = (" << z.real() << ", "
         << z.imag() << ")";
      throw NumericError(os.str());
    }
    return std::abs(v);
  };

  SupResult res;
  std::vector<Cx> boundary = X.boundary_points();
  std::vector<double> bvals(boundary.size());
  for (size_t i = 0; i < boundary.size(); ++i) {
    bvals[i] = eval_abs(boundary[i]);
    if (bvals[i] > res.value) {
      res.value = bvals[i];
      res.argmax = boundary[i];
    }
  }
  res.samples_used = static_cast<int>(boundary.size());

  const bool scan_interior =
      X.kind == DomainKind::ClosedDisc && !analytic_hint;
  if (scan_interior) {
    for (Cx z : X.interior_points()) {
      double v = eval_abs(z);
      ++res.samples_used;
      if (v > res.value) {
        res.value = v;
        res.argmax = z;
      }
    }
  }

  // refine every local maximum of the boundary samples
  const int n = static_cast<int>(boundary.size());
  if (X.kind == DomainKind::ClosedDisc) {
    const double step = 2.0 * kPi / X.boundary_samples;
    auto g = [&](double t) { return eval_abs(unit(t)); };
    for (int i = 0; i < n; ++i) {
      double prev = bvals[(i + n - 1) % n], next = bvals[(i + 1) % n];
      if (bvals[i] < prev || bvals[i] < next) continue;
      double t0 = 2.0 * kPi * (i + X.offset01) / X.boundary_samples;
      auto [t, v] = refine_max(g, t0 - step, t0 + step, X.refine_iters);
      if (v > res.value) {
        res.value = v;
        res.argmax = unit(t);
      }
    }
  } else {
    auto g = [&](double x) {
      return eval_abs(Cx(std::clamp(x, 0.0, 1.0), 0.0));
    };
    const double step = 1.0 / X.boundary_samples;
    for (int i = 0; i < n; ++i) {
      double here = bvals[i];
      double prev = (i > 0) ? bvals[i - 1] : -1.0;
      double next = (i + 1 < n) ? bvals[i + 1] : -1.0;
      if (here < prev || here < next) continue;
      double x0 = boundary[i].real();
      auto [x, v] = refine_max(g, std::max(0.0, x0 - step),
                               std::min(1.0, x0 + step), X.refine_iters);
      if (v > res.value) {
        res.value = v;
        res.argmax = Cx(std::clamp(x, 0.0, 1.0), 0.0);
      }
    }
  }
  return res;
}

TangentWitness external_circular_tangent(const DomainSpec& X, Cx c) {
  if (!X.contains(c, 1e-9))
    throw InputError("external_circular_tangent: point is not in X");
  TangentWitness w;
  if (X.kind == DomainKind::ClosedDisc) {
    if (std::abs(std::abs(c) - 1.0) > 1e-12) return w;  // interior: none
    Cx dir = c / std::abs(c);
    w.has_tangent = true;
    w.center = dir * 1.5;           // disc of radius 1/2 touching at c
    w.theta = -std::arg(dir);       // e^{i theta} = conj(c)
    w.r_min = 1.0;
    return w;
  }
  // every point of the interval: touch with a disc below the axis
  w.has_tangent = true;
  w.center = c - Cx(0.0, 0.5);
  w.theta = kPi / 2.0;
  w.r_min = 1.0;
  return w;
}

RegionDecomposition theorem2_decomposition(const RationalMap& phi,
                                           const DomainSpec& X, double eps,
                                           double safety) {
  if (!(eps > 0)) throw InputError("theorem2_decomposition: eps must be > 0");
  RegionDecomposition rd;
  rd.eps = eps;

  std::vector<Cx> pts = X.boundary_points();
  if (X.kind == DomainKind::ClosedDisc) {
    auto inner = X.interior_points();
    pts.insert(pts.end(), inner.begin(), inner.end());
  }
  rd.samples_used = static_cast<int>(pts.size());
  for (Cx z : pts) {
    if (std::abs(phi.deriv_eval(z)) >= 1.0 - eps) rd.k_points.push_back(z);
  }
  if (rd.k_points.empty()) {
    rd.max_phi_on_k = 0.0;
    rd.margin = 1.0;
    rd.passes = true;
    return rd;
  }
  if (X.kind == DomainKind::Interval01) {
    // the interval has empty planar interior: a nonempty expanding set
    // cannot map into it
    rd.max_phi_on_k = 1.0;
    rd.margin = 0.0;
    rd.passes = false;
    return rd;
  }
  double mx = 0.0;
  for (Cx z : rd.k_points) mx = std::max(mx, std::abs(phi.eval(z)));
  rd.max_phi_on_k = mx;
  rd.margin = 1.0 - mx;
  rd.passes = rd.margin > safety;
  return rd;
}

std::optional<RegionDecomposition> choose_eps_decomposition(
    const RationalMap& phi, const DomainSpec& X, int max_k, double safety) {
  for (int k = 0; k <= max_k; ++k) {
    RegionDecomposition rd =
        theorem2_decomposition(phi, X, std::ldexp(1.0, -k), safety);
    if (rd.passes) return rd;
  }
  return std::nullopt;
}

}  // namespace dxm
