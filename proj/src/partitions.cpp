#include "dxm/partitions.hpp"

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace dxm {

namespace {

std::atomic<int> g_order_cap{24};

std::mutex g_table_mutex;
std::map<std::pair<int, int>, std::unique_ptr<const std::vector<PartitionTerm>>>
    g_tables;

Int profile_coefficient(const std::vector<int>& counts, int n) {
  Int denom = 1;
  for (int i = 1; i <= n; ++i) {
    int a = counts[i - 1];
    if (a == 0) continue;
    denom *= factorial_int(a);
    Int fi = factorial_int(i);
    for (int j = 0; j < a; ++j) denom *= fi;
  }
  Int num = factorial_int(n);
  Int q = num / denom;
  if (q * denom != num)
    throw NumericError("partition coefficient is not an integer");
  return q;
}

// Enumerate partitions of `remaining` into `parts` parts, each of size
// between 1 and `max_part`, writing multiplicities into `counts`.
void enumerate(int remaining, int parts, int max_part, std::vector<int>& counts,
               int n, std::vector<PartitionTerm>& out) {
  if (parts == 0) {
    if (remaining != 0) return;
    PartitionTerm t;
    t.counts = counts;
    t.n = n;
    for (int i = 1; i <= n; ++i) t.m += counts[i - 1];
    t.coeff = profile_coefficient(counts, n);
    out.push_back(std::move(t));
    return;
  }
  if (remaining < parts) return;
  // largest part first keeps profiles canonical
  for (int s = std::min(max_part, remaining - (parts - 1)); s >= 1; --s) {
    // all remaining parts are <= s, so parts*s must still reach `remaining`
    if (static_cast<long long>(s) * parts < remaining) break;
    counts[s - 1] += 1;
    enumerate(remaining - s, parts - 1, s, counts, n, out);
    counts[s - 1] -= 1;
  }
}

}  // namespace

int partition_order_cap() { return g_order_cap.load(); }

void set_partition_order_cap(int cap) {
  if (cap < 1) throw InputError("partition order cap must be >= 1");
  g_order_cap.store(cap);
}

const std::vector<PartitionTerm>& partition_terms(int n, int m) {
  if (n < 0 || m < 0) throw InputError("partition_terms: negative index");
  if (m > n) throw InputError("partition_terms: m > n has no profiles");
  if (n > g_order_cap.load())
    throw InputError("partition_terms: order " + std::to_string(n) +
                     " exceeds cap " + std::to_string(g_order_cap.load()));

  std::lock_guard<std::mutex> lock(g_table_mutex);
  auto key = std::make_pair(n, m);
  auto it = g_tables.find(key);
  if (it != g_tables.end()) return *it->second;

  auto table = std::make_unique<std::vector<PartitionTerm>>();
  if (n == 0) {
    // the empty profile: one term with coefficient 1
    PartitionTerm t;
    t.n = 0;
    t.m = 0;
    table->push_back(std::move(t));
  } else {
    std::vector<int> counts(n, 0);
    enumerate(n, m, n, counts, n, *table);
  }
  auto* ptr = table.get();
  g_tables.emplace(key, std::move(table));
  return *ptr;
}

}  // namespace dxm
