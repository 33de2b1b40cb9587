#ifndef DXM_WEIGHTS_HPP
#define DXM_WEIGHTS_HPP

#include <atomic>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dxm/numeric.hpp"

namespace dxm {

enum class WeightKind {
  FactorialPower,     // M_n = (n!)^alpha, alpha >= 1
  FactorialLogPower,  // M_n = n! * log(n+1)^n
  FactorialSuperExp,  // M_n = n! * n^(n^2)
  Table,              // user-supplied log values
};

// A weight sequence M_n held in log form (the canonical representation:
// sup-exponential families overflow any fixed-width float almost
// immediately, and every formula using M_n is a product or ratio).
// Immutable after construction; the certified prefix is a monotone cache.
class WeightSequence {
 public:
  static WeightSequence factorial_power(double alpha);
  static WeightSequence factorial_log_power();
  static WeightSequence factorial_superexp();
  static WeightSequence from_table(std::string name, std::vector<double> log_m);

  const std::string& name() const { return name_; }
  WeightKind kind() const { return kind_; }

  // natural log of M_n; throws InputError past the end of a table.
  double log_m(int n) const;

  // Exact values exist only for integer-alpha factorial powers.
  bool has_exact() const { return exact_; }
  Rat exact_m(int n) const;

  // Largest index N such that the algebra condition has been verified for
  // all m + n <= N. Starts at 0 and only grows.
  int certified_prefix() const { return certified_prefix_->load(); }

  // Number of tabulated entries, or nullopt for closed-form families.
  std::optional<int> table_size() const;

  // Trace heuristic: (n!/M_n)^{1/n} at the last checkable index below
  // `upto` compared against `threshold`. Not a proof of the limit.
  bool nonanalytic_consistent(int upto = 60, double threshold = 0.5) const;

 private:
  WeightSequence(std::string name, WeightKind kind, double alpha,
                 std::vector<double> table);
  void note_certified(int upto) const;
  friend AlgebraCheckResult check_algebra_condition(const WeightSequence&, int);

  std::string name_;
  WeightKind kind_;
  double alpha_ = 0.0;
  bool exact_ = false;
  std::vector<double> table_;
  std::shared_ptr<std::atomic<int>> certified_prefix_;
};

struct AlgebraCheckResult {
  bool ok = false;
  int max_checked = 0;
  std::optional<std::pair<int, int>> violation;  // first failing (m, n)
  int marginal_pairs = 0;  // log-domain violations within tolerance
};

struct Thm1bResult {
  bool ok = false;
  double bound = 0.0;                              // best constant when ok
  std::optional<std::pair<int, int>> worst_pair;   // maximizer when not ok
  std::vector<double> row_max;                     // per-n row maxima of the scan
};

struct WeightReport {
  std::string weight_name;
  AlgebraCheckResult algebra;
  std::vector<std::pair<int, double>> nonanalytic_trace;  // (n, r_n)
  bool nonanalytic_consistent = false;
  double nonanalytic_threshold = 0.0;
  std::vector<double> quasi_partial_sums;
  Thm1bResult thm1b;
};

// Exhaustive check of C(m+n, n) <= M_{m+n} / (M_m M_n) over all pairs with
// m + n <= upto. Exact arithmetic when available, otherwise log-domain with
// absolute tolerance 1e-9; sub-tolerance violations count as marginal, not
// failures. Extends the certified prefix on success.
AlgebraCheckResult check_algebra_condition(const WeightSequence& w, int upto);

// (n, r_n) with r_n = (n!/M_n)^{1/n}, computed in log domain.
std::vector<std::pair<int, double>> nonanalyticity_trace(const WeightSequence& w,
                                                         int upto);

// Partial sums of M_n/M_{n+1} for n = 0..upto-1. Trace only: divergence of
// the series is not finitely decidable, so no verdict is attached.
std::vector<double> quasi_analytic_partial_sums(const WeightSequence& w,
                                                int upto);

// Scans (M_m/m!)(n!/M_n) m^{n-m} over 1 <= m <= n <= upto. The sup is
// reported as a bound when the per-n row maxima look non-increasing over the
// last quartile of the scan; otherwise the maximizing pair is returned.
Thm1bResult check_thm1b_condition(const WeightSequence& w, int upto);

WeightReport make_weight_report(const WeightSequence& w, int upto,
                                double nonanalytic_threshold = 0.5);

}  // namespace dxm

#endif  // DXM_WEIGHTS_HPP
