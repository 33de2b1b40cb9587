#include "dxm/endocheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dxm {

namespace {
constexpr double kPi = std::numbers::pi;

Cx unit(double t) { return Cx(std::cos(t), std::sin(t)); }

Json cx_json(Cx z) { return Json::array({z.real(), z.imag()}); }

double golden_max(const std::function<double(double)>& g, double lo, double hi,
                  int iters) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
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
  return std::max(f1, f2);
}

Verdict abstain(const std::string& rule, const std::string& why) {
  Verdict v;
  v.rule = rule;
  v.notes.push_back(why);
  return v;
}

bool weight_ready(const WeightSequence& w, int need, std::string* why) {
  if (auto ts = w.table_size(); ts && *ts <= need) {
    *why = "weight table too short for truncation " + std::to_string(need);
    return false;
  }
  if (!w.nonanalytic_consistent()) {
    *why = "weight is not nonanalytic-consistent (trace heuristic)";
    return false;
  }
  return true;
}

std::vector<double> limsup_trace(const std::vector<double>& sups) {
  std::vector<double> t;
  for (size_t k = 1; k < sups.size(); ++k)
    t.push_back(std::pow(sups[k] / std::exp(log_factorial(static_cast<int>(k))),
                         1.0 / static_cast<double>(k)));
  return t;
}
}  // namespace

std::string to_string(VerdictResult r) {
  switch (r) {
    case VerdictResult::Endomorphism: return "Endomorphism";
    case VerdictResult::NotEndomorphism: return "NotEndomorphism";
    case VerdictResult::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<double> derivative_sup_norms(const RationalMap& phi,
                                         const DomainSpec& X, int k_max) {
  std::vector<Cx> pts = X.boundary_points();
  std::vector<double> best(k_max + 1, 0.0);
  std::vector<double> best_t(k_max + 1, 0.0);

  auto angle_of = [&](Cx z) {
    return X.kind == DomainKind::ClosedDisc ? std::arg(z) : z.real();
  };
  auto point_at = [&](double t) {
    return X.kind == DomainKind::ClosedDisc ? unit(t)
                                            : Cx(std::clamp(t, 0.0, 1.0), 0.0);
  };

  for (Cx z : pts) {
    JetCx j = phi.jet_at(z, k_max);
    for (int k = 0; k <= k_max; ++k) {
      double v = std::abs(j.deriv[k]);
      if (v > best[k]) {
        best[k] = v;
        best_t[k] = angle_of(z);
      }
    }
  }
  const double step = X.kind == DomainKind::ClosedDisc
                          ? 2.0 * kPi / X.boundary_samples
                          : 1.0 / X.boundary_samples;
  for (int k = 0; k <= k_max; ++k) {
    auto g = [&](double t) {
      return std::abs(phi.jet_at(point_at(t), k).deriv[k]);
    };
    double lo = best_t[k] - step, hi = best_t[k] + step;
    if (X.kind == DomainKind::Interval01) {
      lo = std::max(0.0, lo);
      hi = std::min(1.0, hi);
    }
    best[k] = std::max(best[k], golden_max(g, lo, hi, X.refine_iters));
  }
  return best;
}

Verdict q_criterion(const RationalMap& phi, const DomainSpec& X,
                    const WeightSequence& w, int k_max) {
  const char* rule = "q_criterion";
  std::string why;
  if (!weight_ready(w, 1, &why)) return abstain(rule, why);

  std::vector<double> sups = derivative_sup_norms(phi, X, k_max);
  if (sups[1] >= 1.0 - kDeadZone)
    return abstain(rule, "||phi'|| >= 1, contraction criterion cannot fire");

  for (int j = 0; j <= 40; ++j) {
    const double eps = std::ldexp(1.0, -j);
    double q = 0.0;
    double t_prev = 0.0, ratio = 0.0;
    for (int k = 1; k <= k_max; ++k) {
      double t = sups[k] * std::pow(eps, k - 1) /
                 std::exp(log_factorial(k));
      q += t;
      if (k > k_max - 5 && t_prev > 0.0) ratio = std::max(ratio, t / t_prev);
      t_prev = t;
    }
    double tail = 0.0;
    if (t_prev > 0.0) {
      if (ratio >= 0.9) continue;  // tail not under control at this eps
      tail = t_prev * ratio / (1.0 - ratio);
    }
    double q_tot = q + tail;
    if (q_tot <= 1.0 - kDeadZone) {
      Verdict v;
      v.result = VerdictResult::Endomorphism;
      v.rule = rule;
      v.certificate = {{"eps", eps},
                       {"q", q_tot},
                       {"tail_bound", tail},
                       {"sup_phi_prime", sups[1]},
                       {"limsup_trace", limsup_trace(sups)}};
      return v;
    }
  }
  return abstain(rule, "no eps on the grid gives q < 1");
}

Verdict thm1b_criterion(const RationalMap& phi, const DomainSpec& X,
                        const WeightSequence& w, int k_max) {
  const char* rule = "thm1b";
  std::string why;
  if (!weight_ready(w, 1, &why)) return abstain(rule, why);

  int scan = 30;
  if (auto ts = w.table_size()) scan = std::min(scan, *ts - 1);
  if (scan < 2) return abstain(rule, "weight table too short for the scan");
  Thm1bResult cond = check_thm1b_condition(w, scan);
  if (!cond.ok)
    return abstain(rule, "weight fails the ratio-growth condition");

  std::vector<double> sups = derivative_sup_norms(phi, X, k_max);
  if (sups[1] > 1.0 + kBoundaryTol)
    return abstain(rule, "||phi'|| exceeds 1");

  // bounded-trace heuristic on ||phi^{(k)}||/k!
  std::vector<double> trace;
  for (int k = 1; k <= k_max; ++k)
    trace.push_back(sups[k] / std::exp(log_factorial(k)));
  bool bounded = true;
  for (int k = (3 * k_max) / 4; k + 1 < static_cast<int>(trace.size()); ++k)
    if (trace[k + 1] > trace[k] + 1e-12) bounded = false;
  if (!bounded)
    return abstain(rule, "derivative trace ||phi^{(k)}||/k! looks unbounded");

  Verdict v;
  v.result = VerdictResult::Endomorphism;
  v.rule = rule;
  v.certificate = {{"B", cond.bound},
                   {"sup_phi_prime", sups[1]},
                   {"trace", trace}};
  return v;
}

Verdict thm2_criterion(const RationalMap& phi, const DomainSpec& X,
                       const WeightSequence& w) {
  const char* rule = "thm2";
  std::string why;
  if (!weight_ready(w, 1, &why)) return abstain(rule, why);

  auto rd = choose_eps_decomposition(phi, X);
  if (!rd)
    return abstain(rule,
                   "no eps gives a safe margin for the expanding-set image");
  Verdict v;
  v.result = VerdictResult::Endomorphism;
  v.rule = rule;
  v.certificate = {{"eps", rd->eps},
                   {"margin", rd->margin},
                   {"max_phi_on_K", rd->max_phi_on_k},
                   {"k_points", rd->k_points.size()},
                   {"samples", rd->samples_used}};
  return v;
}

Verdict thm4_refutation(const RationalMap& phi, const DomainSpec& X,
                        const WeightSequence& w) {
  const char* rule = "thm4";
  std::string why;
  if (!weight_ready(w, 1, &why)) return abstain(rule, why);

  struct Candidate {
    Cx b;
    double dval;
  };
  std::vector<Candidate> cands;

  if (X.kind == DomainKind::Interval01) {
    SupResult s = sup_norm([&](Cx z) { return phi.deriv_eval(z); }, X, false);
    if (s.value >= 1.0 + kDeadZone) cands.push_back({s.argmax, s.value});
  } else {
    InnerResult inner = is_inner(phi);
    if (inner.inner) {
      SupResult s = sup_norm([&](Cx z) { return phi.deriv_eval(z); }, X, true);
      if (s.value >= 1.0 + kDeadZone) cands.push_back({s.argmax, s.value});
    } else {
      BoundaryModulusSet e = boundary_unimodular_points(phi);
      for (Cx b : e.points) {
        double d = std::abs(phi.deriv_eval(b));
        if (d >= 1.0 + kDeadZone) cands.push_back({b, d});
      }
    }
  }
  if (cands.empty())
    return abstain(rule,
                   "no boundary witness with |phi'(b)| > 1 and a tangent at "
                   "phi(b)");

  // deterministic pick: largest |phi'(b)|, then realest, then rightmost
  std::sort(cands.begin(), cands.end(), [](const Candidate& a,
                                           const Candidate& b) {
    if (a.dval != b.dval) return a.dval > b.dval;
    double ia = std::abs(a.b.imag()), ib = std::abs(b.b.imag());
    if (ia != ib) return ia < ib;
    return a.b.real() < b.b.real();
  });
  Cx b = cands.front().b;
  Cx phi_b = phi.eval(b);
  TangentWitness tw = external_circular_tangent(X, phi_b);
  if (!tw.has_tangent)
    return abstain(rule, "image of the witness lost its tangent");

  Verdict v;
  v.result = VerdictResult::NotEndomorphism;
  v.rule = rule;
  v.certificate = {{"b", cx_json(b)},
                   {"phi_b", cx_json(phi_b)},
                   {"abs_phi_prime_b", cands.front().dval},
                   {"theta", tw.theta}};
  return v;
}

Verdict thm6_inner_rule(const RationalMap& phi, const DomainSpec& X,
                        const WeightSequence& w) {
  const char* rule = "thm6";
  if (X.kind != DomainKind::ClosedDisc)
    return abstain(rule, "inner rule applies on the disc only");
  InnerResult inner = is_inner(phi);
  if (!inner.inner) return abstain(rule, "map is not inner");

  if (is_rotation(phi)) {
    Verdict v;
    v.result = VerdictResult::Endomorphism;
    v.rule = "thm6/rotation";
    v.certificate = {{"theta", inner.theta},
                     {"isometric", true}};
    return v;
  }
  if (is_constant(phi)) {
    Verdict v;
    v.result = VerdictResult::Endomorphism;
    v.rule = "thm6/constant";
    v.certificate = {{"value", cx_json(phi.eval(Cx(0, 0)))}};
    return v;
  }

  std::string why;
  if (!weight_ready(w, 1, &why)) return abstain(rule, why);

  // non-rotation inner: refuted; attach the boundary witness
  SupResult s = sup_norm([&](Cx z) { return phi.deriv_eval(z); }, X, true);
  Json zeros = Json::array();
  for (Cx z : inner.zeros) zeros.push_back(cx_json(z));
  Verdict v;
  v.result = VerdictResult::NotEndomorphism;
  v.rule = rule;
  v.certificate = {{"blaschke_theta", inner.theta},
                   {"blaschke_zeros", zeros},
                   {"reflection_ok", inner.reflection_ok},
                   {"b", cx_json(s.argmax)},
                   {"abs_phi_prime_b", s.value}};
  return v;
}

IterateRulesResult iterate_rules(const RationalMap& phi, const DomainSpec& X,
                                 const WeightSequence& w, int n_max) {
  const char* rule = "iterate_rules";
  IterateRulesResult out;
  if (X.kind != DomainKind::ClosedDisc) {
    out.phi_verdict = abstain(rule, "iterate patterns apply on the disc only");
    return out;
  }

  InnerResult inner = is_inner(phi);
  std::vector<FixedPointInfo> fps;
  try {
    fps = fixed_points(phi);
  } catch (const InputError&) {
    out.phi_verdict = abstain(rule, "identity map");
    return out;
  }
  bool has_interior = false;
  std::optional<FixedPointInfo> interior_fp;
  std::vector<FixedPointInfo> boundary_fps;
  for (const auto& fp : fps) {
    if (fp.location == FixedPointLocation::Interior) {
      has_interior = true;
      interior_fp = fp;
    } else {
      boundary_fps.push_back(fp);
    }
  }
  out.evidence["fixed_points"] = Json::array();
  for (const auto& fp : fps)
    out.evidence["fixed_points"].push_back(
        {{"z", cx_json(fp.z)},
         {"location",
          fp.location == FixedPointLocation::Boundary ? "Boundary" : "Interior"},
         {"abs_multiplier", fp.abs_multiplier},
         {"multiplicity", fp.multiplicity}});

  if (inner.inner) {
    if (is_rotation(phi) || is_constant(phi)) {
      out.phi_verdict = thm6_inner_rule(phi, X, w);
      return out;
    }
    // the map itself is inner and not a rotation: refuted at depth 1;
    // record the first iterate that is a rotation when one exists
    out.phi_verdict = thm6_inner_rule(phi, X, w);
    try {
      RationalMap it = phi;
      for (int n = 2; n <= n_max; ++n) {
        it = compose(phi, it).reduced();
        if (is_rotation(it)) {
          out.evidence["rotation_iterate"] = n;
          break;
        }
      }
    } catch (const NumericError&) {
      // degree cap: fine, evidence stays partial
    }
    return out;
  }

  BoundaryDynamics dyn = boundary_dynamics(phi);

  // interior + boundary fixed points cannot coexist with boundedness
  if (has_interior && !dyn.periodic_points.empty()) {
    Verdict v;
    v.rule = "thm8";
    v.result = VerdictResult::NotEndomorphism;
    v.certificate = {{"interior_fixed_point", cx_json(interior_fp->z)},
                     {"boundary_fixed_point", cx_json(dyn.periodic_points[0])},
                     {"period", dyn.periods[0]}};
    out.phi_verdict = v;
    return out;
  }
  // several boundary fixed points of some iterate
  if (!has_interior && dyn.periodic_points.size() >= 2) {
    Verdict v;
    v.rule = "thm9i";
    v.result = VerdictResult::NotEndomorphism;
    Json pts = Json::array();
    for (Cx z : dyn.periodic_points) pts.push_back(cx_json(z));
    v.certificate = {{"boundary_periodic_points", pts}};
    out.phi_verdict = v;
    return out;
  }

  // unresolved pattern: a single parabolic boundary fixed point while the
  // derivative exceeds 1 somewhere
  std::vector<double> sups = derivative_sup_norms(phi, X, 1);
  if (!has_interior && dyn.periodic_points.size() == 1 &&
      dyn.periods[0] == 1) {
    Cx z1 = dyn.periodic_points[0];
    Cx d = phi.deriv_eval(z1);
    if (std::abs(d - Cx(1.0, 0.0)) <= kDeadZone &&
        sups[1] >= 1.0 + kDeadZone) {
      out.unresolved_pattern = true;
      out.evidence["unresolved"] = {{"z1", cx_json(z1)},
                                    {"multiplier", cx_json(d)},
                                    {"sup_phi_prime", sups[1]}};
    }
  }

  // search for the first certified iterate
  bool no_boundary_orbits = dyn.periodic_points.empty();
  bool single_attracting_boundary =
      !has_interior && dyn.periodic_points.size() == 1 && dyn.periods[0] == 1 &&
      std::abs(phi.deriv_eval(dyn.periodic_points[0])) < 1.0 - kDeadZone;
  if (no_boundary_orbits || single_attracting_boundary) {
    try {
      RationalMap it = phi;
      for (int n = 1; n <= n_max; ++n) {
        if (n > 1) it = compose(phi, it);
        SupResult sup_val =
            sup_norm([&](Cx z) { return it.eval(z); }, X, true);
        if (sup_val.value < 1.0 - kDeadZone) {
          out.n1 = n;
          out.n1_route = "sup_phi_n";
          out.n1_value = sup_val.value;
          break;
        }
        SupResult sup_d =
            sup_norm([&](Cx z) { return it.deriv_eval(z); }, X, true);
        if (sup_d.value < 1.0 - kDeadZone) {
          out.n1 = n;
          out.n1_route = "sup_phi_n_prime";
          out.n1_value = sup_d.value;
          break;
        }
      }
    } catch (const NumericError& e) {
      out.evidence["iterate_stop"] = e.what();
    }
    if (out.n1) {
      out.evidence["n1"] = *out.n1;
      out.evidence["n1_route"] = out.n1_route;
      out.evidence["n1_value"] = out.n1_value;
    }
  }

  out.phi_verdict = abstain(rule, "no iterate pattern is decisive for phi");
  out.phi_verdict.certificate = out.evidence;
  return out;
}

NormReport composed_norm(const JetFunction& F, const RationalMap& phi,
                         const DomainSpec& X, const WeightSequence& w, int N) {
  if (auto ts = w.table_size(); ts && *ts <= N)
    throw InputError("composed_norm: weight table shorter than truncation");

  std::vector<Cx> pts = X.boundary_points();
  std::vector<double> sup(N + 1, 0.0);
  std::vector<double> sup_t(N + 1, 0.0);

  auto angle_of = [&](Cx z) {
    return X.kind == DomainKind::ClosedDisc ? std::arg(z) : z.real();
  };
  auto point_at = [&](double t) {
    return X.kind == DomainKind::ClosedDisc ? unit(t)
                                            : Cx(std::clamp(t, 0.0, 1.0), 0.0);
  };
  auto composed_jet = [&](Cx z) {
    JetCx jp = phi.jet_at(z, N);
    JetCx jf = F.jet_at(jp.deriv[0], N);
    return compose_jets_series(jf, jp);
  };

  for (Cx z : pts) {
    JetCx g = composed_jet(z);
    for (int n = 0; n <= N; ++n) {
      double v = std::abs(g.deriv[n]);
      if (v > sup[n]) {
        sup[n] = v;
        sup_t[n] = angle_of(z);
      }
    }
  }
  const double step = X.kind == DomainKind::ClosedDisc
                          ? 2.0 * kPi / X.boundary_samples
                          : 1.0 / X.boundary_samples;
  for (int n = 0; n <= N; ++n) {
    auto g = [&](double t) {
      return std::abs(composed_jet(point_at(t)).deriv[n]);
    };
    double lo = sup_t[n] - step, hi = sup_t[n] + step;
    if (X.kind == DomainKind::Interval01) {
      lo = std::max(0.0, lo);
      hi = std::min(1.0, hi);
    }
    sup[n] = std::max(sup[n], golden_max(g, lo, hi, X.refine_iters));
  }

  NormReport rep;
  rep.truncation = N;
  double acc = 0.0, prev_term = 0.0;
  for (int n = 0; n <= N; ++n) {
    double term = sup[n] * std::exp(-w.log_m(n));
    acc += term;
    rep.terms.push_back(term);
    rep.partial_sums.push_back(acc);
    if (n == N && prev_term > 0.0) rep.tail_ratio = term / prev_term;
    prev_term = term;
  }
  return rep;
}

NormReport witness_norm_closed(const WeightSequence& w, double R, int N) {
  if (auto ts = w.table_size(); ts && *ts <= N)
    throw InputError("witness_norm_closed: weight table shorter than truncation");
  NormReport rep;
  rep.truncation = N;
  double acc = 0.0, prev = 0.0;
  for (int m = 0; m <= N; ++m) {
    double term =
        std::exp(log_factorial(m) + m * std::log(R) - w.log_m(m));
    acc += term;
    rep.terms.push_back(term);
    rep.partial_sums.push_back(acc);
    if (m == N && prev > 0.0) rep.tail_ratio = term / prev;
    prev = term;
  }
  return rep;
}

WitnessGrowthTable witness_growth_experiment(const RationalMap& phi,
                                             const DomainSpec& X,
                                             const WeightSequence& w, Cx b,
                                             const std::vector<double>& r_list,
                                             int truncation) {
  WitnessGrowthTable table;
  table.b = b;
  table.phi_b = phi.eval(b);
  table.abs_phi_prime_b = std::abs(phi.deriv_eval(b));
  if (table.abs_phi_prime_b <= 1.0 + kDeadZone)
    throw InputError("witness_growth_experiment: |phi'(b)| must exceed 1");
  TangentWitness tw = external_circular_tangent(X, table.phi_b);
  if (!tw.has_tangent)
    throw InputError(
        "witness_growth_experiment: phi(b) has no external circular tangent");
  table.theta = tw.theta;

  for (double R : r_list) {
    WitnessFR f = make_witness_FR(table.phi_b, tw.theta, R, X);
    NormReport nf = witness_norm_closed(w, R, truncation);
    NormReport nc = composed_norm(f, phi, X, w, truncation);
    WitnessGrowthRow row;
    row.R = R;
    row.norm_f = nf.total();
    row.norm_f_phi = nc.total();
    row.ratio = row.norm_f_phi / row.norm_f;
    row.tail_ratio_f = nf.tail_ratio;
    row.tail_ratio_f_phi = nc.tail_ratio;
    if (row.tail_ratio_f > 0.5 || row.tail_ratio_f_phi > 0.5)
      table.under_truncated = true;
    table.rows.push_back(row);
  }
  table.growth_demonstrated = table.rows.size() >= 2;
  for (size_t i = 1; i < table.rows.size(); ++i)
    if (table.rows[i].ratio <= table.rows[i - 1].ratio)
      table.growth_demonstrated = false;
  return table;
}

Verdict full_verdict(const RationalMap& phi, const DomainSpec& X,
                     const WeightSequence& w, const EndoOptions& opts) {
  std::vector<Verdict> attempts;
  attempts.push_back(thm6_inner_rule(phi, X, w));
  if (!attempts.back().decisive())
    attempts.push_back(thm4_refutation(phi, X, w));
  if (!attempts.back().decisive())
    attempts.push_back(q_criterion(phi, X, w, opts.k_max));
  if (!attempts.back().decisive())
    attempts.push_back(thm1b_criterion(phi, X, w, opts.k_max));
  if (!attempts.back().decisive())
    attempts.push_back(thm2_criterion(phi, X, w));

  IterateRulesResult iter;
  if (!attempts.back().decisive() && X.kind == DomainKind::ClosedDisc) {
    iter = iterate_rules(phi, X, w, opts.n_max);
    attempts.push_back(iter.phi_verdict);
  }

  for (auto& v : attempts) {
    if (v.decisive()) {
      v.truncation = opts.truncation;
      return v;
    }
  }

  Verdict unknown;
  unknown.rule = "none";
  unknown.truncation = opts.truncation;
  Json tried = Json::array();
  for (const auto& v : attempts) {
    Json t = {{"rule", v.rule}, {"notes", v.notes}};
    tried.push_back(t);
  }
  unknown.certificate["attempted"] = tried;
  unknown.certificate["evidence"] = iter.evidence;
  if (iter.unresolved_pattern) {
    unknown.certificate["label"] = "unresolved-case";
    unknown.notes.push_back(
        "single parabolic boundary fixed point with ||phi'|| > 1: open case");
  }
  if (iter.n1) {
    unknown.certificate["n1"] = *iter.n1;
    unknown.certificate["n1_route"] = iter.n1_route;
  }
  return unknown;
}

}  // namespace dxm
