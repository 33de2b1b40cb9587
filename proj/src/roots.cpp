#include "dxm/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dxm {

namespace {

Cx poly_eval(const std::vector<Cx>& c, Cx z) {
  Cx acc(0.0, 0.0);
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) acc = acc * z + c[k];
  return acc;
}

std::vector<Cx> poly_deriv(const std::vector<Cx>& c) {
  if (c.size() <= 1) return {Cx(0.0, 0.0)};
  std::vector<Cx> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return d;
}

std::string poly_to_string(const std::vector<Cx>& c) {
  std::ostringstream os;
  os << "[";
  for (size_t k = 0; k < c.size(); ++k) {
    if (k) os << ", ";
    os << c[k].real() << (c[k].imag() < 0 ? "-" : "+") << std::abs(c[k].imag())
       << "i";
  }
  os << "]";
  return os.str();
}

}  // namespace

RootResult find_roots(const std::vector<Cx>& coeffs, double coeff_tol) {
  RootResult res;
  std::vector<Cx> c = coeffs;

  double maxc = 0.0;
  for (Cx v : c) maxc = std::max(maxc, std::abs(v));
  if (maxc == 0.0) throw InputError("find_roots: zero polynomial");
  while (c.size() > 1 && std::abs(c.back()) <= coeff_tol * maxc) c.pop_back();
  if (c.size() <= 1) throw InputError("find_roots: (near-)zero polynomial");

  // exact zeros at the origin
  size_t zero_count = 0;
  while (zero_count + 1 < c.size() && std::abs(c[zero_count]) == 0.0)
    ++zero_count;
  for (size_t i = 0; i < zero_count; ++i) res.roots.push_back(Cx(0.0, 0.0));
  if (zero_count) c.erase(c.begin(), c.begin() + zero_count);

  const int n = static_cast<int>(c.size()) - 1;
  if (n == 0) return res;
  if (n == 1) {
    res.roots.push_back(-c[0] / c[1]);
    return res;
  }
  if (n == 2) {
    Cx a = c[2], b = c[1], d = c[0];
    Cx disc = std::sqrt(b * b - 4.0 * a * d);
    // pick the sign that avoids cancellation
    Cx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                   : -0.5 * (b - disc);
    Cx r1 = q / a;
    Cx r2 = (std::abs(q) > 0.0) ? d / q : Cx(0.0, 0.0);
    res.roots.push_back(r1);
    res.roots.push_back(r2);
    return res;
  }

  // initial guesses on a circle from the Cauchy bound, slightly de-phased
  double radius = 0.0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::abs(c[k] / c[n]));
  radius = 1.0 + radius;
  std::vector<Cx> z(n);
  for (int j = 0; j < n; ++j) {
    double t = 2.0 * std::numbers::pi * j / n + 0.3972;
    z[j] = radius * Cx(std::cos(t), std::sin(t)) * (0.85 + 0.3 * (j % 2));
  }

  std::vector<Cx> dc = poly_deriv(c);
  const int max_iter = 400;
  bool done = false;
  int it = 0;
  for (; it < max_iter && !done; ++it) {
    done = true;
    for (int j = 0; j < n; ++j) {
      Cx p = poly_eval(c, z[j]);
      if (std::abs(p) == 0.0) continue;
      Cx dp = poly_eval(dc, z[j]);
      Cx newton = (std::abs(dp) > 0.0) ? p / dp : Cx(1e-3, 1e-3);
      Cx sum(0.0, 0.0);
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        Cx diff = z[j] - z[k];
        if (std::abs(diff) < 1e-300) diff = Cx(1e-300, 0.0);
        sum += 1.0 / diff;
      }
      Cx denom = 1.0 - newton * sum;
      Cx step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
      z[j] -= step;
      if (std::abs(step) > 1e-14 * (1.0 + std::abs(z[j]))) done = false;
    }
  }
  res.iterations = it;

  // Newton polish
  for (int j = 0; j < n; ++j) {
    for (int s = 0; s < 8; ++s) {
      Cx p = poly_eval(c, z[j]);
      Cx dp = poly_eval(dc, z[j]);
      if (std::abs(dp) == 0.0) break;
      Cx step = p / dp;
      if (!(std::abs(step) < 1.0)) break;  // diverging or NaN: keep Aberth value
      z[j] -= step;
      if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z[j]))) break;
    }
  }

  // residual sanity: relative to the coefficient scale at the root
  if (!done) {
    for (int j = 0; j < n; ++j) {
      double scale = 0.0, zp = 1.0, az = std::abs(z[j]);
      for (size_t k = 0; k < c.size(); ++k) {
        scale += std::abs(c[k]) * zp;
        zp *= az;
      }
      if (std::abs(poly_eval(c, z[j])) > 1e-8 * scale) {
        res.converged = false;
        throw NumericError("find_roots: no convergence for polynomial " +
                           poly_to_string(coeffs));
      }
    }
  }

  res.roots.insert(res.roots.end(), z.begin(), z.end());
  return res;
}

std::vector<ClusteredRoot> cluster_roots(const std::vector<Cx>& roots,
                                         const std::vector<Cx>& coeffs,
                                         double same_tol) {
  std::vector<ClusteredRoot> out;
  std::vector<bool> used(roots.size(), false);
  std::vector<Cx> dc = poly_deriv(coeffs);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Cx sum = roots[i];
    int count = 1;
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <=
          same_tol * (1.0 + std::abs(roots[i]))) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    ClusteredRoot cr;
    cr.z = sum / static_cast<double>(count);
    cr.multiplicity = count;
    // multiplicity-aware Newton recenters clusters onto the true root
    for (int s = 0; s < 6 && count > 1; ++s) {
      Cx p = poly_eval(coeffs, cr.z);
      Cx dp = poly_eval(dc, cr.z);
      if (std::abs(dp) == 0.0) break;
      Cx step = static_cast<double>(count) * p / dp;
      if (!(std::abs(step) < 1.0)) break;
      cr.z -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(cr.z))) break;
    }
    out.push_back(cr);
  }
  return out;
}

}  // namespace dxm
