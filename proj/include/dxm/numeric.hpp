#ifndef DXM_NUMERIC_HPP
#define DXM_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dxm {

using Cx = std::complex<double>;
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when a numeric routine cannot produce a trustworthy result
// (root-finder stall, degree cap, pole inside the domain, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on bad arguments (violated preconditions, malformed input).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Dead zone for strict inequalities: quantities this close to the decision
// boundary make a rule abstain instead of firing.
inline constexpr double kDeadZone = 1e-7;

// Tolerance for membership / unimodularity checks.
inline constexpr double kBoundaryTol = 1e-9;

// Gaussian rational: exact complex arithmetic over cpp_rational.
// std::complex is only specified for the builtin floating types, so we
// carry our own minimal field type for the exact backend.
struct RatCx {
  Rat re{};
  Rat im{};

  RatCx() = default;
  RatCx(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit RatCx(Rat r) : re(std::move(r)) {}
  RatCx(int r) : re(r) {}  // NOLINT: implicit for scalar literals in templates

  static RatCx from_double(double r, double i = 0.0) {
    return RatCx(Rat(r), Rat(i));
  }

  bool is_zero() const { return re == 0 && im == 0; }

  RatCx conj() const { return RatCx(re, -im); }

  Rat norm_sq() const { return re * re + im * im; }

  friend RatCx operator+(const RatCx& a, const RatCx& b) {
    return RatCx(a.re + b.re, a.im + b.im);
  }
  friend RatCx operator-(const RatCx& a, const RatCx& b) {
    return RatCx(a.re - b.re, a.im - b.im);
  }
  friend RatCx operator-(const RatCx& a) { return RatCx(-a.re, -a.im); }
  friend RatCx operator*(const RatCx& a, const RatCx& b) {
    return RatCx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend RatCx operator/(const RatCx& a, const RatCx& b) {
    Rat n = b.norm_sq();
    if (n == 0) throw NumericError("RatCx: division by zero");
    return RatCx((a.re * b.re + a.im * b.im) / n,
                 (a.im * b.re - a.re * b.im) / n);
  }
  RatCx& operator+=(const RatCx& o) { return *this = *this + o; }
  RatCx& operator-=(const RatCx& o) { return *this = *this - o; }
  RatCx& operator*=(const RatCx& o) { return *this = *this * o; }
  RatCx& operator/=(const RatCx& o) { return *this = *this / o; }
  friend bool operator==(const RatCx& a, const RatCx& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const RatCx& a, const RatCx& b) { return !(a == b); }
};

inline Cx to_cx(const RatCx& v) {
  return Cx(v.re.convert_to<double>(), v.im.convert_to<double>());
}
inline Cx to_cx(const Cx& v) { return v; }

inline RatCx rat_cx_from(const Cx& v) { return RatCx::from_double(v.real(), v.imag()); }

// Scalar adaptors so Polynomial/Jet templates can treat the two backends
// uniformly.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Cx> {
  static constexpr bool exact = false;
  static Cx zero() { return Cx(0.0, 0.0); }
  static Cx one() { return Cx(1.0, 0.0); }
  static Cx from_int(long v) { return Cx(static_cast<double>(v), 0.0); }
  static Cx from_big(const Int& v) { return Cx(v.convert_to<double>(), 0.0); }
  static Cx conj(const Cx& v) { return std::conj(v); }
  static bool is_zero(const Cx& v) { return v == Cx(0.0, 0.0); }
  static double abs(const Cx& v) { return std::abs(v); }
};

template <>
struct ScalarOps<RatCx> {
  static constexpr bool exact = true;
  static RatCx zero() { return RatCx(); }
  static RatCx one() { return RatCx(Rat(1)); }
  static RatCx from_int(long v) { return RatCx(Rat(v)); }
  static RatCx from_big(const Int& v) { return RatCx(Rat(v)); }
  static RatCx conj(const RatCx& v) { return v.conj(); }
  static bool is_zero(const RatCx& v) { return v.is_zero(); }
  static double abs(const RatCx& v) { return std::abs(to_cx(v)); }
};

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline Int factorial_int(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Int binomial_int(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int v = 1;
  for (int i = 1; i <= k; ++i) {
    v *= (n - k + i);
    v /= i;
  }
  return v;
}

// log(sum exp(L_i)) without overflow; empty input -> -inf.
inline double log_sum_exp(const std::vector<double>& logs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : logs) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : logs) s += std::exp(v - m);
  return m + std::log(s);
}

}  // namespace dxm

#endif  // DXM_NUMERIC_HPP
