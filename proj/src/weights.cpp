#include "dxm/weights.hpp"

#include <algorithm>
#include <cmath>

namespace dxm {

namespace {
constexpr double kLogTol = 1e-9;

bool is_small_integer(double v) {
  return std::abs(v - std::round(v)) < 1e-12 && std::abs(v) < 64;
}
}  // namespace

WeightSequence::WeightSequence(std::string name, WeightKind kind, double alpha,
                               std::vector<double> table)
    : name_(std::move(name)),
      kind_(kind),
      alpha_(alpha),
      table_(std::move(table)),
      certified_prefix_(std::make_shared<std::atomic<int>>(0)) {
  exact_ = (kind_ == WeightKind::FactorialPower && is_small_integer(alpha_));
}

WeightSequence WeightSequence::factorial_power(double alpha) {
  if (!(alpha >= 1.0))
    throw InputError("factorial_power: alpha must be >= 1 (algebra condition "
                     "can fail below 1)");
  std::string nm = "n!^" + std::to_string(alpha);
  // prettify common cases
  if (is_small_integer(alpha))
    nm = "n!^" + std::to_string(static_cast<long>(std::llround(alpha)));
  return WeightSequence(nm, WeightKind::FactorialPower, alpha, {});
}

WeightSequence WeightSequence::factorial_log_power() {
  return WeightSequence("n!log^n", WeightKind::FactorialLogPower, 0.0, {});
}

WeightSequence WeightSequence::factorial_superexp() {
  return WeightSequence("n!n^n2", WeightKind::FactorialSuperExp, 0.0, {});
}

WeightSequence WeightSequence::from_table(std::string name,
                                          std::vector<double> log_m) {
  if (log_m.empty()) throw InputError("weight table is empty");
  if (std::abs(log_m[0]) > 1e-12)
    throw InputError("weight table must have M_0 = 1 (log 0)");
  log_m[0] = 0.0;
  for (double v : log_m)
    if (!std::isfinite(v)) throw InputError("weight table has non-finite entry");
  return WeightSequence(std::move(name), WeightKind::Table, 0.0, std::move(log_m));
}

double WeightSequence::log_m(int n) const {
  if (n < 0) throw InputError("log_m: negative index");
  if (n == 0) return 0.0;
  switch (kind_) {
    case WeightKind::FactorialPower:
      return alpha_ * log_factorial(n);
    case WeightKind::FactorialLogPower:
      return log_factorial(n) + n * std::log(std::log(n + 1.0));
    case WeightKind::FactorialSuperExp:
      return log_factorial(n) + static_cast<double>(n) * n * std::log(n);
    case WeightKind::Table:
      if (n >= static_cast<int>(table_.size()))
        throw InputError("weight table '" + name_ + "' has " +
                         std::to_string(table_.size()) +
                         " entries; index " + std::to_string(n) + " requested");
      return table_[n];
  }
  throw InputError("log_m: bad kind");
}

Rat WeightSequence::exact_m(int n) const {
  if (!exact_) throw InputError("exact_m: no exact evaluator for " + name_);
  Int f = factorial_int(n);
  Int p = 1;
  for (long i = 0; i < std::llround(alpha_); ++i) p *= f;
  return Rat(p);
}

std::optional<int> WeightSequence::table_size() const {
  if (kind_ == WeightKind::Table) return static_cast<int>(table_.size());
  return std::nullopt;
}

void WeightSequence::note_certified(int upto) const {
  int cur = certified_prefix_->load();
  while (cur < upto && !certified_prefix_->compare_exchange_weak(cur, upto)) {
  }
}

bool WeightSequence::nonanalytic_consistent(int upto, double threshold) const {
  int last = upto;
  if (auto ts = table_size()) last = std::min(last, *ts - 1);
  if (last < 1) return false;
  double r = std::exp((log_factorial(last) - log_m(last)) / last);
  return r < threshold;
}

AlgebraCheckResult check_algebra_condition(const WeightSequence& w, int upto) {
  if (upto < 1) throw InputError("check_algebra_condition: upto must be >= 1");
  if (auto ts = w.table_size(); ts && upto >= *ts)
    throw InputError("check_algebra_condition: upto exceeds weight table");

  AlgebraCheckResult res;
  res.max_checked = upto;
  if (w.has_exact()) {
    std::vector<Rat> m(upto + 1);
    for (int n = 0; n <= upto; ++n) m[n] = w.exact_m(n);
    for (int s = 2; s <= upto; ++s) {
      for (int a = 1; a + a <= s; ++a) {
        int b = s - a;
        if (Rat(binomial_int(s, a)) * m[a] * m[b] > m[s]) {
          res.ok = false;
          res.violation = {a, b};
          return res;
        }
      }
    }
  } else {
    std::vector<double> lm(upto + 1);
    for (int n = 0; n <= upto; ++n) lm[n] = w.log_m(n);
    for (int s = 2; s <= upto; ++s) {
      for (int a = 1; a + a <= s; ++a) {
        int b = s - a;
        double gap = lm[s] - lm[a] - lm[b] - log_binomial(s, a);
        if (gap < -kLogTol) {
          res.ok = false;
          res.violation = {a, b};
          return res;
        }
        if (gap < kLogTol) ++res.marginal_pairs;
      }
    }
  }
  res.ok = true;
  w.note_certified(upto);
  return res;
}

std::vector<std::pair<int, double>> nonanalyticity_trace(const WeightSequence& w,
                                                         int upto) {
  if (upto < 1) throw InputError("nonanalyticity_trace: upto must be >= 1");
  std::vector<std::pair<int, double>> out;
  out.reserve(upto);
  for (int n = 1; n <= upto; ++n) {
    double r = std::exp((log_factorial(n) - w.log_m(n)) / n);
    out.emplace_back(n, r);
  }
  return out;
}

std::vector<double> quasi_analytic_partial_sums(const WeightSequence& w,
                                                int upto) {
  if (upto < 1) throw InputError("quasi_analytic_partial_sums: upto >= 1");
  std::vector<double> sums;
  sums.reserve(upto);
  double acc = 0.0;
  for (int n = 0; n < upto; ++n) {
    acc += std::exp(w.log_m(n) - w.log_m(n + 1));
    sums.push_back(acc);
  }
  return sums;
}

Thm1bResult check_thm1b_condition(const WeightSequence& w, int upto) {
  if (upto < 2) throw InputError("check_thm1b_condition: upto must be >= 2");
  Thm1bResult res;
  res.row_max.assign(upto, -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  std::pair<int, int> best_pair{1, 1};
  std::vector<double> lm(upto + 1);
  for (int n = 0; n <= upto; ++n) lm[n] = w.log_m(n);
  for (int n = 1; n <= upto; ++n) {
    double row = -std::numeric_limits<double>::infinity();
    for (int m = 1; m <= n; ++m) {
      double lt = (lm[m] - log_factorial(m)) + (log_factorial(n) - lm[n]) +
                  (n - m) * std::log(static_cast<double>(m));
      row = std::max(row, lt);
      if (lt > best) {
        best = lt;
        best_pair = {m, n};
      }
    }
    res.row_max[n - 1] = row;
  }
  // finite-looking: row maxima non-increasing over the last quartile
  int start = std::max(1, (3 * upto) / 4);
  bool nonincreasing = true;
  for (int n = start; n < upto; ++n) {
    if (res.row_max[n] > res.row_max[n - 1] + 1e-12) {
      nonincreasing = false;
      break;
    }
  }
  if (nonincreasing) {
    res.ok = true;
    res.bound = std::exp(best);
  } else {
    res.ok = false;
    res.worst_pair = best_pair;
    res.bound = std::exp(best);
  }
  return res;
}

WeightReport make_weight_report(const WeightSequence& w, int upto,
                                double nonanalytic_threshold) {
  WeightReport rep;
  rep.weight_name = w.name();
  rep.algebra = check_algebra_condition(w, upto);
  rep.nonanalytic_trace = nonanalyticity_trace(w, upto);
  rep.nonanalytic_threshold = nonanalytic_threshold;
  rep.nonanalytic_consistent =
      rep.nonanalytic_trace.back().second < nonanalytic_threshold;
  rep.quasi_partial_sums = quasi_analytic_partial_sums(
      w, w.table_size() ? std::min(upto, *w.table_size() - 1) : upto);
  rep.thm1b = check_thm1b_condition(w, std::max(2, upto));
  return rep;
}

}  // namespace dxm
