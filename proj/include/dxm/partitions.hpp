#ifndef DXM_PARTITIONS_HPP
#define DXM_PARTITIONS_HPP

#include <vector>

#include "dxm/numeric.hpp"

namespace dxm {

// One block-size profile (a_1,...,a_n) with sum a_i = m and sum i*a_i = n.
// coeff = n! / (a_1!...a_n! * 1!^{a_1}...n!^{a_n}) counts the set partitions
// of {1..n} having a_i blocks of size i; it is always a positive integer.
struct PartitionTerm {
  std::vector<int> counts;  // counts[i-1] = a_i, length n (n = 0 -> empty)
  int m = 0;
  int n = 0;
  Int coeff = 1;
};

// Default cap on the composition order; the term count grows like the
// partition function, so callers must opt in to higher orders.
int partition_order_cap();
void set_partition_order_cap(int cap);

// Complete, duplicate-free enumeration of profiles for (n, m).
// Tables are memoized and immutable once built. Rejects m > n, negatives,
// and n beyond the order cap.
const std::vector<PartitionTerm>& partition_terms(int n, int m);

}  // namespace dxm

#endif  // DXM_PARTITIONS_HPP
