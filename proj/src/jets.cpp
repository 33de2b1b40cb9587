#include "dxm/jets.hpp"

namespace dxm {

bool exponential_formula_check(const std::vector<Rat>& x, int m, int trunc) {
  if (m < 0) throw InputError("exponential_formula_check: m < 0");
  if (trunc < m) throw InputError("exponential_formula_check: trunc < m");

  auto x_at = [&](int k) -> Rat {  // x_k, 1-based, zero beyond the list
    return (k >= 1 && k <= static_cast<int>(x.size())) ? x[k - 1] : Rat(0);
  };

  // left side: coefficient of t^n is (m!/n!) * B_{n,m}(x)
  std::vector<Rat> lhs(trunc + 1, Rat(0));
  for (int n = m; n <= trunc; ++n) {
    Rat bell_sum(0);
    for (const PartitionTerm& t : partition_terms(n, m)) {
      Rat prod(t.coeff);
      bool zero = false;
      for (int i = 1; i <= n && !zero; ++i) {
        for (int rep = 0; rep < t.counts[i - 1]; ++rep) {
          Rat xi = x_at(i);
          if (xi == 0) {
            zero = true;
            break;
          }
          prod *= xi;
        }
      }
      if (!zero) bell_sum += prod;
    }
    lhs[n] = Rat(factorial_int(m)) / Rat(factorial_int(n)) * bell_sum;
  }

  // right side: (sum_k x_k t^k / k!)^m truncated
  std::vector<Rat> base(trunc + 1, Rat(0));
  for (int k = 1; k <= trunc; ++k) base[k] = x_at(k) / Rat(factorial_int(k));
  std::vector<Rat> rhs(trunc + 1, Rat(0));
  rhs[0] = 1;
  for (int rep = 0; rep < m; ++rep) {
    std::vector<Rat> next(trunc + 1, Rat(0));
    for (int i = 0; i <= trunc; ++i) {
      if (rhs[i] == 0) continue;
      for (int j = 0; i + j <= trunc; ++j) {
        if (base[j] == 0) continue;
        next[i + j] += rhs[i] * base[j];
      }
    }
    rhs = std::move(next);
  }

  return lhs == rhs;
}

}  // namespace dxm
