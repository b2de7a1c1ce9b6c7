#pragma once

// Involvement counts, (k,n)-balance, horizon-bounded relative
// Wilf-equivalence partitions, the Wilf-sequence, and the uniquely-Wilf
// predicate. True relative Wilf-equivalence quantifies over all sizes;
// everything here is equivalence-through-horizon-N and says so.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wilf/finite_class.hpp"
#include "wilf/permutation.hpp"

namespace wilf {

struct BalanceReport {
  int k = 0;
  int n = 0;
  std::map<Permutation, long long> counts;  // per pattern in C_k
  bool balanced = true;
};

struct WilfPartition {
  int k = 0;
  int horizon = 0;
  std::vector<PermSet> blocks;  // sorted by least member
};

// |{sigma in C_n : pi <= sigma}|. Memoized per class.
inline long long inv_count(const FiniteClass& C, const Permutation& pi, int n) {
  if (!C.member(pi))
    throw std::domain_error("inv_count: " + pi.str() + " is not in the class");
  if (n < 1 || n > C.max_size())
    throw std::domain_error("inv_count: size out of range: " + std::to_string(n));

  auto& memo = C.memo();
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto it = memo.counts.find(pi);
    if (it != memo.counts.end() && it->second[n] >= 0) return it->second[n];
  }
  long long count = 0;
  for (const Permutation& s : C.level(n))
    if (contains(s, pi)) ++count;
  {
    std::lock_guard<std::mutex> lock(memo.mu);
    auto& row = memo.counts[pi];
    if (row.empty()) row.assign(C.max_size() + 1, -1);
    row[n] = count;
  }
  return count;
}

inline BalanceReport balance_report(const FiniteClass& C, int k, int n) {
  if (k < 1 || k > n || n > C.max_size())
    throw std::invalid_argument("balance_report needs 1 <= k <= n <= max_size");
  BalanceReport rep;
  rep.k = k;
  rep.n = n;
  bool first = true;
  long long common = 0;
  for (const Permutation& pi : C.level(k)) {
    long long c = inv_count(C, pi, n);
    rep.counts.emplace(pi, c);
    if (first) {
      common = c;
      first = false;
    } else if (c != common) {
      rep.balanced = false;
    }
  }
  return rep;
}

// Groups C_k by the full count vector (|C_n ∩ Inv(.)|)_{n=k..N}. Blocks can
// only split, never merge, as the horizon N grows.
inline WilfPartition wilf_partition(const FiniteClass& C, int k, int N) {
  if (k < 1 || k > N || N > C.max_size())
    throw std::invalid_argument("wilf_partition needs 1 <= k <= N <= max_size");
  WilfPartition part;
  part.k = k;
  part.horizon = N;
  std::map<std::vector<long long>, PermSet> groups;
  for (const Permutation& pi : C.level(k)) {
    std::vector<long long> vec;
    vec.reserve(N - k + 1);
    for (int n = k; n <= N; ++n) vec.push_back(inv_count(C, pi, n));
    groups[std::move(vec)].insert(pi);
  }
  for (auto& [vec, block] : groups) part.blocks.push_back(std::move(block));
  std::sort(part.blocks.begin(), part.blocks.end(),
            [](const PermSet& a, const PermSet& b) { return *a.begin() < *b.begin(); });
  return part;
}

// w_k = number of horizon-N equivalence blocks among C_k, for k = 1..N.
// Empty levels contribute 0.
inline std::vector<long long> wilf_sequence(const FiniteClass& C, int N) {
  if (N < 1 || N > C.max_size())
    throw std::invalid_argument("wilf_sequence needs 1 <= N <= max_size");
  std::vector<long long> w(N);
  for (int k = 1; k <= N; ++k)
    w[k - 1] = (long long)wilf_partition(C, k, N).blocks.size();
  return w;
}

// True iff C is (k,n)-balanced for all 1 <= k < n <= N. Cross-checked
// against the Wilf-sequence: each nonempty level must form a single block.
inline bool is_uniquely_wilf(const FiniteClass& C, int N) {
  if (N < 1 || N > C.max_size())
    throw std::invalid_argument("is_uniquely_wilf needs 1 <= N <= max_size");
  bool balanced = true;
  for (int k = 1; k < N && balanced; ++k)
    for (int n = k + 1; n <= N; ++n)
      if (!balance_report(C, k, n).balanced) {
        balanced = false;
        break;
      }
  const auto w = wilf_sequence(C, N);
  bool single_blocks = true;
  for (int k = 1; k <= N; ++k)
    if (!C.level(k).empty() && w[k - 1] != 1) single_blocks = false;
  if (balanced != single_blocks)
    throw std::logic_error("uniquely-Wilf definitions disagree");
  return balanced;
}

}  // namespace wilf
