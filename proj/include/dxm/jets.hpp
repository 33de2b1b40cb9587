#ifndef DXM_JETS_HPP
#define DXM_JETS_HPP

#include <vector>

#include "dxm/numeric.hpp"
#include "dxm/partitions.hpp"
#include "dxm/polynomial.hpp"

namespace dxm {

// Derivative tuple (f(a), f'(a), ..., f^{(N)}(a)) at a base point.
// Derivative convention throughout: deriv[k] = f^{(k)}(a), not the Taylor
// coefficient f^{(k)}(a)/k!.
template <class S>
struct Jet {
  S base{};
  std::vector<S> deriv;  // length = order + 1

  Jet() = default;
  Jet(S base_point, std::vector<S> derivatives)
      : base(std::move(base_point)), deriv(std::move(derivatives)) {}

  int order() const { return static_cast<int>(deriv.size()) - 1; }

  static Jet identity(const S& at, int order) {
    std::vector<S> d(order + 1, ScalarOps<S>::zero());
    d[0] = at;
    if (order >= 1) d[1] = ScalarOps<S>::one();
    return Jet(at, std::move(d));
  }
  static Jet constant(const S& value, const S& at, int order) {
    std::vector<S> d(order + 1, ScalarOps<S>::zero());
    d[0] = value;
    return Jet(at, std::move(d));
  }
};

using JetCx = Jet<Cx>;
using JetRat = Jet<RatCx>;

template <class S>
std::vector<S> jet_to_taylor(const Jet<S>& j) {
  std::vector<S> t(j.deriv.size());
  Int fact = 1;
  for (size_t k = 0; k < t.size(); ++k) {
    if (k > 0) fact *= static_cast<long>(k);
    t[k] = j.deriv[k] / ScalarOps<S>::from_big(fact);
  }
  return t;
}

template <class S>
Jet<S> taylor_to_jet(const S& base, const std::vector<S>& taylor) {
  std::vector<S> d(taylor.size());
  Int fact = 1;
  for (size_t k = 0; k < d.size(); ++k) {
    if (k > 0) fact *= static_cast<long>(k);
    d[k] = taylor[k] * ScalarOps<S>::from_big(fact);
  }
  return Jet<S>(base, std::move(d));
}

// --- truncated Taylor-series kernels (coefficient convention) ---

template <class S>
std::vector<S> series_mul(const std::vector<S>& a, const std::vector<S>& b,
                          int trunc) {
  std::vector<S> c(trunc + 1, ScalarOps<S>::zero());
  for (int i = 0; i <= trunc && i < static_cast<int>(a.size()); ++i) {
    if (ScalarOps<S>::is_zero(a[i])) continue;
    int jmax = std::min(trunc - i, static_cast<int>(b.size()) - 1);
    for (int j = 0; j <= jmax; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// 1/a as a truncated series; requires a[0] != 0.
template <class S>
std::vector<S> series_reciprocal(const std::vector<S>& a, int trunc) {
  if (a.empty() || ScalarOps<S>::is_zero(a[0]))
    throw NumericError("series_reciprocal: zero constant term");
  std::vector<S> r(trunc + 1, ScalarOps<S>::zero());
  r[0] = ScalarOps<S>::one() / a[0];
  for (int n = 1; n <= trunc; ++n) {
    S acc = ScalarOps<S>::zero();
    for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k)
      acc += a[k] * r[n - k];
    r[n] = -acc / a[0];
  }
  return r;
}

template <class S>
std::vector<S> series_div(const std::vector<S>& a, const std::vector<S>& b,
                          int trunc) {
  return series_mul(a, series_reciprocal(b, trunc), trunc);
}

namespace detail {
template <class S>
void check_base_match(const Jet<S>& outer, const Jet<S>& inner) {
  if (outer.order() < inner.order())
    throw InputError("compose_jets: outer jet order too small");
  if constexpr (ScalarOps<S>::exact) {
    if (!(outer.base == inner.deriv[0]))
      throw InputError("compose_jets: outer base != inner value");
  } else {
    double scale = 1.0 + ScalarOps<S>::abs(inner.deriv[0]);
    if (ScalarOps<S>::abs(outer.base - inner.deriv[0]) > 1e-12 * scale)
      throw InputError("compose_jets: outer base != inner value");
  }
}
}  // namespace detail

// Jet of F(phi(.)) at phi's base point, by the partition-sum expansion of the
// n-th derivative of a composition:
//   (F o phi)^{(n)} = sum_m F^{(m)}(phi) * sum coeff * prod (phi^{(i)})^{a_i}.
// Exact when both jets are exact. Orders are limited by the partition cap.
template <class S>
Jet<S> compose_jets(const Jet<S>& outer, const Jet<S>& inner) {
  detail::check_base_match(outer, inner);
  const int n_out = inner.order();
  std::vector<S> d(n_out + 1, ScalarOps<S>::zero());
  d[0] = outer.deriv[0];
  for (int n = 1; n <= n_out; ++n) {
    S total = ScalarOps<S>::zero();
    for (int m = 1; m <= n; ++m) {
      S inner_sum = ScalarOps<S>::zero();
      for (const PartitionTerm& t : partition_terms(n, m)) {
        S prod = ScalarOps<S>::from_big(t.coeff);
        for (int i = 1; i <= n; ++i) {
          for (int rep = 0; rep < t.counts[i - 1]; ++rep)
            prod *= inner.deriv[i];
        }
        inner_sum += prod;
      }
      total += outer.deriv[m] * inner_sum;
    }
    d[n] = total;
  }
  return Jet<S>(inner.base, std::move(d));
}

// Fast twin of compose_jets: series composition by Horner on truncated
// Taylor series (O(N^3), no order cap). Same mathematical object.
template <class S>
Jet<S> compose_jets_series(const Jet<S>& outer, const Jet<S>& inner) {
  detail::check_base_match(outer, inner);
  const int n = inner.order();
  std::vector<S> f = jet_to_taylor(outer);
  std::vector<S> g = jet_to_taylor(inner);
  g[0] = ScalarOps<S>::zero();  // compose with the centered series
  std::vector<S> acc(n + 1, ScalarOps<S>::zero());
  acc[0] = f[n];
  for (int k = n - 1; k >= 0; --k) {
    acc = series_mul(acc, g, n);
    acc[0] += f[k];
  }
  return taylor_to_jet(inner.base, acc);
}

// Verifies the generating identity behind the composition calculus:
//   m! * sum_{n>=m} t^n/n! * B_{n,m}(x) == (sum_{k>=1} x_k t^k / k!)^m
// as truncated formal power series over the rationals.
bool exponential_formula_check(const std::vector<Rat>& x, int m, int trunc);

}  // namespace dxm

#endif  // DXM_JETS_HPP
