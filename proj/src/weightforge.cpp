#include "dxm/weightforge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dxm/discdyn.hpp"
#include "dxm/endocheck.hpp"
#include "dxm/jets.hpp"
#include "dxm/partitions.hpp"
#include "dxm/witness.hpp"

namespace dxm {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Cx unit(double t) { return Cx(std::cos(t), std::sin(t)); }

// log of the partition-sum constant C_{n,m} given log ||phi^{(i)}||
double log_faa_constant(const std::vector<double>& log_sups, int n, int m) {
  std::vector<double> terms;
  for (const PartitionTerm& t : partition_terms(n, m)) {
    double lt = std::log(t.coeff.convert_to<double>());
    bool dead = false;
    for (int i = 1; i <= n && !dead; ++i) {
      if (t.counts[i - 1] == 0) continue;
      if (log_sups[i] == kNegInf) dead = true;
      else lt += t.counts[i - 1] * log_sups[i];
    }
    if (!dead) terms.push_back(lt);
  }
  return log_sum_exp(terms);
}

std::vector<double> log_derivative_sups(const RationalMap& phi,
                                        const DomainSpec& X, int k_max) {
  std::vector<double> sups = derivative_sup_norms(phi, X, k_max);
  std::vector<double> logs(sups.size());
  for (size_t i = 0; i < sups.size(); ++i)
    logs[i] = sups[i] > 0 ? std::log(sups[i]) : kNegInf;
  return logs;
}

// log(n!/d^{n+1})
double log_fc_deriv(int n, double d) {
  return log_factorial(n) - (n + 1) * std::log(d);
}

double pow_int(double b, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// scaled composed derivative: (F_c o phi)^{(n)}(b) * d^{n+1} / n! for the
// pole c = phi(b) + d * normal. Bounded for small d (the raw jet values
// overflow); the leading term has magnitude |phi'(b)|^n.
Cx scaled_composed_deriv(const RationalMap& phi, Cx b, Cx normal, double d,
                         int n) {
  JetCx jp = phi.jet_at(b, n);
  // F^{(m)}(w) d^{n+1} / n! = -(m!/n!) d^{n-m} normal^{-(m+1)},
  // since w - c = -d * normal at w = phi(b)
  std::vector<Cx> scaled(n + 1);
  Cx inv_normal = 1.0 / normal;
  Cx acc = -inv_normal;
  for (int m = 0; m <= n; ++m) {
    double mag = std::exp(log_factorial(m) - log_factorial(n)) * pow_int(d, n - m);
    if (m > 0) acc *= inv_normal;
    scaled[m] = mag * acc;
  }
  JetCx jf(jp.deriv[0], std::move(scaled));
  JetCx g = compose_jets_series(jf, jp);
  return g.deriv[n];
}
}  // namespace

WeightSequence ConstructedWeights::as_weight_sequence() const {
  return WeightSequence::from_table(name, log_m);
}

std::vector<double> faa_di_bruno_constants(const RationalMap& phi, int n,
                                           const DomainSpec& X) {
  if (n < 1) throw InputError("faa_di_bruno_constants: n must be >= 1");
  std::vector<double> log_sups = log_derivative_sups(phi, X, n);
  std::vector<double> out(n);
  for (int m = 0; m < n; ++m) {
    double lv = (m == 0 && n > 0) ? kNegInf : log_faa_constant(log_sups, n, m);
    out[m] = std::isfinite(lv) ? std::exp(lv) : 0.0;
  }
  return out;
}

CauchyBound cauchy_bound_A(const RationalMap& phi, int n,
                           const std::vector<Cx>& k_points,
                           const DomainSpec& X) {
  if (X.kind != DomainKind::ClosedDisc)
    throw InputError("cauchy_bound_A: the contour machinery uses the disc");
  if (k_points.empty())
    throw InputError("cauchy_bound_A: empty expanding-set sample");

  CauchyBound best;
  best.log_value = kNegInf;
  const int omega_coarse = 16;
  for (Cx z : k_points) {
    JetCx jp = phi.jet_at(z, n);
    Cx w = jp.deriv[0];
    if (std::abs(w) >= 1.0 - 1e-9)
      throw NumericError("cauchy_bound_A: phi(K) touches the contour");
    std::vector<Cx> omegas;
    omegas.reserve(omega_coarse + 1);
    for (int k = 0; k < omega_coarse; ++k)
      omegas.push_back(unit(2.0 * kPi * k / omega_coarse));
    if (std::abs(w) > 1e-12) omegas.push_back(w / std::abs(w));
    for (Cx omega : omegas) {
      // u(z) = omega - phi(z); n-th derivative of 1/u via series reciprocal
      std::vector<Cx> u(n + 1);
      u[0] = omega - w;
      for (int k = 1; k <= n; ++k) u[k] = -jp.deriv[k];
      JetCx uj(z, std::move(u));
      auto rec = series_reciprocal(jet_to_taylor(uj), n);
      double v = std::abs(rec[n]) * std::exp(log_factorial(n));
      if (v > 0 && std::log(v) > best.log_value) {
        best.log_value = std::log(v);
        best.value = v;
        best.arg_z = z;
        best.arg_omega = omega;
      }
    }
  }
  // L / 2 pi = 1 for the unit circle
  return best;
}

namespace {

// shared scaffolding: (ii)-type binomial lower bound
double binomial_bound(const std::vector<double>& log_m, int n) {
  double b = kNegInf;
  for (int k = 1; k <= n - 1; ++k)
    b = std::max(b, log_binomial(n, k) + log_m[k] + log_m[n - k]);
  return b;
}

ForgeIndexRecord choose_log_m(std::vector<ForgeConstraint> constraints, int n) {
  ForgeIndexRecord rec;
  rec.n = n;
  double mx = kNegInf;
  for (const auto& c : constraints) mx = std::max(mx, c.log_bound);
  if (!std::isfinite(mx)) mx = 0.0;  // no active constraint: M_n = 1.01
  rec.log_m = std::log(1.01) + mx;
  for (auto& c : constraints)
    c.binding = std::isfinite(c.log_bound) && c.log_bound == mx;
  rec.constraints = std::move(constraints);
  return rec;
}
}  // namespace

ConstructedWeights construct_thm3(const RationalMap& phi, const DomainSpec& X,
                                  int n_max) {
  if (X.kind != DomainKind::ClosedDisc)
    throw InputError("construct_thm3: supported on the disc only");
  if (n_max < 2) throw InputError("construct_thm3: n_max must be >= 2");

  // hypothesis gate: |phi'| <= 1 wherever |phi| reaches the circle
  BoundaryModulusSet e = boundary_unimodular_points(phi);
  if (e.whole_circle) {
    SupResult s = sup_norm([&](Cx z) { return phi.deriv_eval(z); }, X, true);
    if (s.value > 1.0 + kDeadZone)
      throw InputError(
          "construct_thm3: inner map with |phi'| > 1 on the circle at z = (" +
          std::to_string(s.argmax.real()) + ", " +
          std::to_string(s.argmax.imag()) + ")");
  } else {
    for (Cx p : e.points) {
      double d = std::abs(phi.deriv_eval(p));
      if (d > 1.0 + kDeadZone)
        throw InputError(
            "construct_thm3: |phi'| > 1 at a boundary preimage, z = (" +
            std::to_string(p.real()) + ", " + std::to_string(p.imag()) +
            "), |phi'| = " + std::to_string(d));
    }
  }

  std::vector<double> log_sups = log_derivative_sups(phi, X, n_max);

  // samples of X with their |phi'|, for the per-n expanding sets
  std::vector<Cx> samples = X.boundary_points();
  {
    auto inner_pts = X.interior_points();
    samples.insert(samples.end(), inner_pts.begin(), inner_pts.end());
  }
  std::vector<double> dmod(samples.size());
  for (size_t i = 0; i < samples.size(); ++i)
    dmod[i] = std::abs(phi.deriv_eval(samples[i]));

  ConstructedWeights cw;
  cw.method = "thm3";
  cw.name = "thm3[" + phi.to_string() + "]";
  cw.log_m = {0.0, 0.0};  // M_0 = M_1 = 1

  for (int n = 2; n <= n_max; ++n) {
    const double cutoff = std::pow(2.0, 1.0 / n);
    std::vector<Cx> k_pts;
    for (size_t i = 0; i < samples.size(); ++i)
      if (dmod[i] > cutoff) k_pts.push_back(samples[i]);

    std::vector<ForgeConstraint> cons;
    cons.push_back({"(i)", 2.0 * log_factorial(n), false});
    cons.push_back({"(ii)", binomial_bound(cw.log_m, n), false});
    // (iii): M_n >= 2^n * sum_{m<n} 2 C_{n,m} M_m   (safety 2 on sampled C)
    std::vector<double> terms;
    for (int m = 1; m < n; ++m) {
      double lc = log_faa_constant(log_sups, n, m);
      if (std::isfinite(lc))
        terms.push_back(std::log(2.0) + lc + cw.log_m[m]);
    }
    cons.push_back({"(iii)", n * std::log(2.0) + log_sum_exp(terms), false});

    ForgeIndexRecord rec;
    if (!k_pts.empty()) {
      // decimate for the contour scan: strongest images plus a spread
      std::sort(k_pts.begin(), k_pts.end(), [&](Cx a, Cx b) {
        return std::abs(phi.eval(a)) > std::abs(phi.eval(b));
      });
      std::vector<Cx> probe;
      for (size_t i = 0; i < k_pts.size() && probe.size() < 256; ++i)
        probe.push_back(k_pts[i]);
      size_t stride = std::max<size_t>(1, k_pts.size() / 256);
      for (size_t i = 0; i < k_pts.size(); i += stride) probe.push_back(k_pts[i]);
      CauchyBound a = cauchy_bound_A(phi, n, probe, X);
      cons.push_back(
          {"(iv)", n * std::log(2.0) + std::log(2.0) + a.log_value, false});
      rec = choose_log_m(std::move(cons), n);
      rec.log_a = a.log_value;
      cw.a_trace.push_back(a.log_value);
    } else {
      rec = choose_log_m(std::move(cons), n);
      cw.a_trace.push_back(kNegInf);
    }
    rec.k_count = static_cast<int>(k_pts.size());
    cw.log_m.push_back(rec.log_m);
    cw.provenance.push_back(std::move(rec));
  }

  VerifyReport rep = verify_construction(cw, phi, X);
  if (!rep.ok)
    throw NumericError("construct_thm3: self-verification failed: " +
                       rep.failures.front());
  return cw;
}

ConstructedWeights construct_thm5(const RationalMap& phi, const DomainSpec& X,
                                  Cx b, int n_max) {
  if (n_max < 2) throw InputError("construct_thm5: n_max must be >= 2");
  if (!X.contains(b, 1e-9)) throw InputError("construct_thm5: b not in X");

  ConstructedWeights cw;
  cw.method = "thm5";
  cw.name = "thm5[" + phi.to_string() + "]";
  cw.b = b;
  Cx phi_b = phi.eval(b);
  cw.abs_phi_prime_b = std::abs(phi.deriv_eval(b));
  if (cw.abs_phi_prime_b <= 1.0 + kDeadZone)
    throw InputError("construct_thm5: |phi'(b)| must exceed 1, got " +
                     std::to_string(cw.abs_phi_prime_b));
  TangentWitness tw = external_circular_tangent(X, phi_b);
  if (!tw.has_tangent)
    throw InputError("construct_thm5: phi(b) has no external circular tangent");
  const Cx normal = std::polar(1.0, -tw.theta);  // outward direction at phi(b)

  std::vector<double> log_sups = log_derivative_sups(phi, X, n_max);

  cw.log_m = {0.0, 0.0};
  cw.c_points = {phi_b + normal, phi_b + normal};  // c_0, c_1: any points off X
  std::vector<double> log_d = {0.0, 0.0};          // log d_k for the poles

  for (int n = 2; n <= n_max; ++n) {
    std::vector<ForgeConstraint> cons;
    // (i): M_n > ||phi^{(n)}|| / 2^n, sampled sup with safety 2
    double li = log_sups[n] == kNegInf
                    ? kNegInf
                    : std::log(2.0) + log_sups[n] - n * std::log(2.0);
    cons.push_back({"(i)", li, false});
    cons.push_back({"(ii)", 2.0 * log_factorial(n), false});
    cons.push_back({"(iii)", binomial_bound(cw.log_m, n), false});
    // damping of every earlier pole: M_n > 2^n ||F_k^{(n)}|| M_k / ||F_k^{(k)}||
    for (int k = 0; k < n; ++k) {
      double dk = std::exp(log_d[k]);
      double bound = n * std::log(2.0) + log_fc_deriv(n, dk) -
                     log_fc_deriv(k, dk) + cw.log_m[k];
      cons.push_back({"damping(" + std::to_string(k) + ")", bound, false});
    }
    ForgeIndexRecord rec = choose_log_m(std::move(cons), n);

    // choose the pole: halve d until the composed-derivative lower bound and
    // the dominance inequality both hold
    double d = std::ldexp(1.0, -n);
    bool placed = false;
    std::string binding = "";
    for (int h = 0; h < 60 && !placed; ++h, d *= 0.5) {
      // (A): |(F_c o phi)^{(n)}(b)| >= 1/2 ||F_c^{(n)}|| |phi'(b)|^n
      Cx c = phi_b + d * normal;
      Cx ratio = scaled_composed_deriv(phi, b, normal, d, n);
      double lead = pow_int(cw.abs_phi_prime_b, n);
      if (std::abs(ratio) < 0.5 * lead) {
        binding = "composed-derivative lower bound";
        continue;
      }
      // (B): ||F_c^{(n)}||/M_n >= sum_{m<n} ||F_c^{(m)}||/M_m
      std::vector<double> lows;
      lows.push_back(-std::log(d) - cw.log_m[0]);  // m = 0: ||F_c|| = 1/d
      for (int m = 1; m < n; ++m)
        lows.push_back(log_fc_deriv(m, d) - cw.log_m[m]);
      if (log_fc_deriv(n, d) - rec.log_m < log_sum_exp(lows)) {
        binding = "dominance over lower orders";
        continue;
      }
      placed = true;
      rec.c_n = c;
      rec.d_n = d;
      rec.growth_ratio = std::abs(ratio) / 3.0;
      cw.c_points.push_back(c);
      log_d.push_back(std::log(d));
    }
    if (!placed)
      throw NumericError(
          "construct_thm5: pole placement failed at n = " + std::to_string(n) +
          " after 60 halvings; binding constraint: " + binding);
    cw.log_m.push_back(rec.log_m);
    cw.provenance.push_back(std::move(rec));
  }

  VerifyReport rep = verify_construction(cw, phi, X);
  if (!rep.ok)
    throw NumericError("construct_thm5: self-verification failed: " +
                       rep.failures.front());
  return cw;
}

VerifyReport verify_construction(const ConstructedWeights& cw,
                                 const RationalMap& phi, const DomainSpec& X,
                                 const std::vector<VerifyCheck>& checks) {
  VerifyReport rep;
  auto want = [&](VerifyCheck c) {
    return std::find(checks.begin(), checks.end(), c) != checks.end();
  };
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  auto pass = [&](const std::string& s) { rep.checks.push_back(s); };
  const int n_max = static_cast<int>(cw.log_m.size()) - 1;
  const double tol = 1e-9;

  if (std::abs(cw.log_m[0]) > tol || std::abs(cw.log_m[1]) > tol)
    fail("M_0 = M_1 = 1 violated");

  if (want(VerifyCheck::Constraints)) {
    for (const auto& rec : cw.provenance) {
      if (rec.n > n_max) continue;
      for (const auto& c : rec.constraints) {
        if (!std::isfinite(c.log_bound)) continue;
        if (cw.log_m[rec.n] < c.log_bound - tol)
          fail("constraint " + c.name + " fails at n = " +
               std::to_string(rec.n));
      }
    }
    // thm5 damping involves later indices against earlier poles; re-derive
    if (cw.method == "thm5") {
      for (const auto& rec : cw.provenance) {
        if (!rec.d_n) continue;
        int k = rec.n;
        for (int n = k + 1; n <= n_max; ++n) {
          double lhs = log_fc_deriv(n, *rec.d_n) - cw.log_m[n];
          double rhs = -n * std::log(2.0) + log_fc_deriv(k, *rec.d_n) -
                       cw.log_m[k];
          if (lhs > rhs + tol)
            fail("pole damping fails for k = " + std::to_string(k) +
                 " at n = " + std::to_string(n));
        }
      }
    }
    if (rep.ok) pass("recorded constraints re-verified");
  }

  if (want(VerifyCheck::AlgebraCondition)) {
    WeightSequence w = cw.as_weight_sequence();
    AlgebraCheckResult a = check_algebra_condition(w, n_max);
    if (!a.ok)
      fail("algebra condition fails at (" + std::to_string(a.violation->first) +
           ", " + std::to_string(a.violation->second) + ")");
    else
      pass("algebra condition holds to n = " + std::to_string(n_max));
  }

  if (want(VerifyCheck::Nonanalyticity)) {
    bool ok = true;
    for (int n = 2; n <= n_max; ++n) {
      double r = std::exp((log_factorial(n) - cw.log_m[n]) / n);
      double cap = std::exp(-log_factorial(n) / n);  // (1/n!)^{1/n}
      if (r > cap * (1.0 + 1e-9)) {
        fail("nonanalyticity trace exceeds (1/n!)^{1/n} at n = " +
             std::to_string(n));
        ok = false;
      }
    }
    if (ok) pass("nonanalyticity trace within the factorial-square envelope");
  }

  if (cw.method == "thm3" && want(VerifyCheck::TermBound)) {
    // spot check: ||(F o phi)^{(n)}|| / M_n <= 2 ||F^{(n)}|| / M_n
    //                                         + 2^{-n} ||F||_D
    WeightSequence w = cw.as_weight_sequence();
    const std::vector<Cx> cs = {Cx(1.5, 0.0), Cx(0.0, 2.0), Cx(-1.3, -0.4)};
    bool ok = true;
    for (Cx c : cs) {
      auto [fc, dist] = make_witness_Fc(c, X);
      int n_hi = std::min(n_max, 12);
      NormReport nr = composed_norm(fc, phi, X, w, n_hi);
      double norm_fc = 0.0;
      for (int m = 0; m <= n_hi; ++m)
        norm_fc += std::exp(WitnessFc::log_supnorm_deriv(m, dist) - cw.log_m[m]);
      for (int n = 2; n <= n_hi; ++n) {
        double lhs = nr.terms[n];
        double rhs = 2.0 * std::exp(WitnessFc::log_supnorm_deriv(n, dist) -
                                    cw.log_m[n]) +
                     std::ldexp(norm_fc, -n);
        if (lhs > rhs * (1.0 + 1e-6) + 1e-300) {
          fail("term bound fails for pole at (" + std::to_string(c.real()) +
               ", " + std::to_string(c.imag()) + "), n = " + std::to_string(n));
          ok = false;
        }
      }
    }
    if (ok) pass("composed-derivative term bound spot checks hold");
  }

  if (cw.method == "thm5" && want(VerifyCheck::GrowthCertificate)) {
    bool ok = true;
    for (const auto& rec : cw.provenance) {
      if (!rec.growth_ratio) continue;
      double target = pow_int(cw.abs_phi_prime_b, rec.n) / 6.0;
      if (*rec.growth_ratio < target * (1.0 - 1e-9)) {
        fail("growth certificate below |phi'(b)|^n / 6 at n = " +
             std::to_string(rec.n));
        ok = false;
      }
      // re-derive the composed lower bound from the recorded pole
      if (rec.c_n && rec.d_n) {
        Cx normal = (*rec.c_n - phi.eval(cw.b)) / *rec.d_n;
        Cx ratio = scaled_composed_deriv(phi, cw.b, normal, *rec.d_n, rec.n);
        if (std::abs(ratio) / 3.0 < target * (1.0 - 1e-9)) {
          fail("re-derived growth ratio below target at n = " +
               std::to_string(rec.n));
          ok = false;
        }
      }
    }
    if (ok) pass("growth certificates meet |phi'(b)|^n / 6");
  }

  return rep;
}

}  // namespace dxm
