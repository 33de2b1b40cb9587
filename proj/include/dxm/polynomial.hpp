#ifndef DXM_POLYNOMIAL_HPP
#define DXM_POLYNOMIAL_HPP

#include <algorithm>
#include <vector>

#include "dxm/numeric.hpp"

namespace dxm {

// Dense univariate polynomial, coefficients in ascending degree.
// S is Cx (floating) or RatCx (exact field); the zero polynomial is {0}.
template <class S>
class Polynomial {
 public:
  Polynomial() : coeffs_{ScalarOps<S>::zero()} {}
  explicit Polynomial(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(ScalarOps<S>::zero());
    trim();
  }
  static Polynomial constant(const S& c) { return Polynomial(std::vector<S>{c}); }
  static Polynomial identity() {
    return Polynomial(std::vector<S>{ScalarOps<S>::zero(), ScalarOps<S>::one()});
  }

  const std::vector<S>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const {
    return coeffs_.size() == 1 && ScalarOps<S>::is_zero(coeffs_[0]);
  }
  const S& operator[](int k) const { return coeffs_[k]; }
  S coeff_or_zero(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k]
                                                            : ScalarOps<S>::zero();
  }

  S eval(const S& z) const {
    S acc = ScalarOps<S>::zero();
    for (int k = degree(); k >= 0; --k) acc = acc * z + coeffs_[k];
    return acc;
  }

  Polynomial derivative() const {
    if (degree() == 0) return Polynomial();
    std::vector<S> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k)
      d[k - 1] = coeffs_[k] * ScalarOps<S>::from_int(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  // Derivatives f(z), f'(z), ..., f^{(order)}(z) by repeated synthetic
  // division: the j-th remainder is the Taylor coefficient at z.
  std::vector<S> derivatives_at(const S& z, int order) const {
    std::vector<S> out(order + 1, ScalarOps<S>::zero());
    std::vector<S> cur(coeffs_);
    Int fact = 1;
    for (int j = 0; j <= order; ++j) {
      const int d = static_cast<int>(cur.size()) - 1;
      std::vector<S> quot(std::max(d, 0));
      S rem = cur[d];
      for (int k = d - 1; k >= 0; --k) {
        quot[k] = rem;
        rem = cur[k] + z * rem;
      }
      out[j] = rem * ScalarOps<S>::from_big(fact);
      fact *= (j + 1);
      if (quot.empty()) break;
      cur = std::move(quot);
    }
    return out;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<S> c(std::max(a.coeffs_.size(), b.coeffs_.size()),
                     ScalarOps<S>::zero());
    for (size_t k = 0; k < c.size(); ++k)
      c[k] = a.coeff_or_zero(static_cast<int>(k)) +
             b.coeff_or_zero(static_cast<int>(k));
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<S> c(std::max(a.coeffs_.size(), b.coeffs_.size()),
                     ScalarOps<S>::zero());
    for (size_t k = 0; k < c.size(); ++k)
      c[k] = a.coeff_or_zero(static_cast<int>(k)) -
             b.coeff_or_zero(static_cast<int>(k));
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<S> c(a.coeffs_.size() + b.coeffs_.size() - 1,
                     ScalarOps<S>::zero());
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (ScalarOps<S>::is_zero(a.coeffs_[i])) continue;
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const S& s) {
    std::vector<S> c(a.coeffs_);
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
  }

  Polynomial pow(int e) const {
    Polynomial r = constant(ScalarOps<S>::one());
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  // this(inner): polynomial composition by Horner.
  Polynomial compose(const Polynomial& inner) const {
    Polynomial acc = constant(coeffs_.back());
    for (int k = degree() - 1; k >= 0; --k)
      acc = acc * inner + constant(coeffs_[k]);
    return acc;
  }

  // conj-reflected companion: for q of padded degree D, returns
  // q~(z) = sum_k conj(q_{D-k}) z^k, so that on |z|=1
  // z^D * conj(q(z)) = q~(z).
  Polynomial conj_reflect(int padded_degree) const {
    std::vector<S> c(padded_degree + 1, ScalarOps<S>::zero());
    for (int k = 0; k <= padded_degree; ++k)
      c[k] = ScalarOps<S>::conj(coeff_or_zero(padded_degree - k));
    return Polynomial(std::move(c));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim() {
    while (coeffs_.size() > 1 && ScalarOps<S>::is_zero(coeffs_.back()))
      coeffs_.pop_back();
  }
  std::vector<S> coeffs_;
};

// Euclidean gcd over an exact field, monic-normalized each step.
inline Polynomial<RatCx> poly_gcd(Polynomial<RatCx> a, Polynomial<RatCx> b) {
  auto make_monic = [](Polynomial<RatCx> p) {
    if (p.is_zero()) return p;
    RatCx lead = p.coeffs().back();
    std::vector<RatCx> c = p.coeffs();
    for (auto& v : c) v /= lead;
    return Polynomial<RatCx>(std::move(c));
  };
  a = make_monic(std::move(a));
  b = make_monic(std::move(b));
  while (!b.is_zero()) {
    // remainder of a by b
    Polynomial<RatCx> r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int shift = r.degree() - b.degree();
      RatCx q = r.coeffs().back() / b.coeffs().back();
      std::vector<RatCx> sub(shift + b.degree() + 1, RatCx());
      for (int k = 0; k <= b.degree(); ++k) sub[k + shift] = b[k] * q;
      r = r - Polynomial<RatCx>(std::move(sub));
      if (r.degree() == shift + b.degree() &&
          !ScalarOps<RatCx>::is_zero(r.coeffs().back())) {
        throw NumericError("poly_gcd: cancellation failed");
      }
    }
    a = b;
    b = make_monic(std::move(r));
  }
  return a;
}

inline Polynomial<RatCx> poly_divide_exact(const Polynomial<RatCx>& a,
                                           const Polynomial<RatCx>& b) {
  if (b.is_zero()) throw NumericError("poly_divide_exact: zero divisor");
  Polynomial<RatCx> r = a;
  std::vector<RatCx> q(std::max(0, a.degree() - b.degree()) + 1, RatCx());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    RatCx c = r.coeffs().back() / b.coeffs().back();
    q[shift] = c;
    std::vector<RatCx> sub(shift + b.degree() + 1, RatCx());
    for (int k = 0; k <= b.degree(); ++k) sub[k + shift] = b[k] * c;
    r = r - Polynomial<RatCx>(std::move(sub));
  }
  if (!r.is_zero()) throw NumericError("poly_divide_exact: nonzero remainder");
  return Polynomial<RatCx>(std::move(q));
}

inline Polynomial<Cx> to_double_poly(const Polynomial<RatCx>& p) {
  std::vector<Cx> c(p.coeffs().size());
  for (size_t k = 0; k < c.size(); ++k) c[k] = to_cx(p.coeffs()[k]);
  return Polynomial<Cx>(std::move(c));
}

}  // namespace dxm

#endif  // DXM_POLYNOMIAL_HPP
