#pragma once

// Finite, level-stored permutation classes: enumeration from a basis,
// upward closure, basis extraction, and the Erdos-Szekeres bound.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wilf/permutation.hpp"

namespace wilf {

using LevelMap = std::map<int, PermSet>;

namespace detail {

// Involvement-count cache shared by all copies of a class (the class value
// is immutable, so cached counts stay valid). Fills are idempotent.
struct InvMemo {
  std::mutex mu;
  std::unordered_map<Permutation, std::vector<long long>> counts;  // per (pi, n)
};

}  // namespace detail

// True iff every one-point deletion of every member is itself a member.
inline bool is_downward_closed(const LevelMap& levels) {
  for (const auto& [k, perms] : levels) {
    for (const Permutation& p : perms) {
      if (p.size() != k) return false;
      if (k == 1) continue;
      auto below = levels.find(k - 1);
      for (const Permutation& q : one_point_deletions(p)) {
        if (below == levels.end() || !below->second.count(q)) return false;
      }
    }
  }
  return true;
}

class FiniteClass {
public:
  static FiniteClass from_levels(int max_size, LevelMap levels) {
    if (max_size < 1) throw std::invalid_argument("class max_size must be >= 1");
    for (const auto& [k, perms] : levels) {
      if (k < 1 || k > max_size)
        throw std::domain_error("class level outside 1..max_size: " + std::to_string(k));
      for (const Permutation& p : perms)
        if (p.size() != k)
          throw std::domain_error("permutation " + p.str() + " stored at wrong level");
    }
    if (!is_downward_closed(levels))
      throw std::domain_error("level set is not downward closed");
    FiniteClass out;
    out.max_size_ = max_size;
    out.levels_.assign(max_size + 1, PermSet{});
    for (auto& [k, perms] : levels) out.levels_[k] = std::move(perms);
    return out;
  }

  int max_size() const { return max_size_; }

  const PermSet& level(int k) const {
    static const PermSet empty;
    if (k < 1 || k > max_size_) return empty;
    return levels_[k];
  }

  bool member(const Permutation& p) const {
    return p.size() <= max_size_ && level(p.size()).count(p) > 0;
  }

  bool empty() const {
    for (int k = 1; k <= max_size_; ++k)
      if (!levels_[k].empty()) return false;
    return true;
  }

  std::vector<long long> level_counts() const {
    std::vector<long long> out(max_size_);
    for (int k = 1; k <= max_size_; ++k) out[k - 1] = (long long)levels_[k].size();
    return out;
  }

  long long total_count() const {
    long long t = 0;
    for (int k = 1; k <= max_size_; ++k) t += (long long)levels_[k].size();
    return t;
  }

  friend bool operator==(const FiniteClass& a, const FiniteClass& b) {
    return a.max_size_ == b.max_size_ && a.levels_ == b.levels_;
  }

  detail::InvMemo& memo() const { return *memo_; }

private:
  FiniteClass() = default;
  int max_size_ = 0;
  std::vector<PermSet> levels_;  // index = size, [0] unused
  std::shared_ptr<detail::InvMemo> memo_ = std::make_shared<detail::InvMemo>();
};

struct Basis {
  PermSet patterns;
};

inline Basis parse_basis(std::string_view text) {
  Basis b;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (!tok.empty()) b.patterns.insert(Permutation::parse(tok));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (b.patterns.empty()) throw std::invalid_argument("empty basis");
  return b;
}

// Levels 1..N of Av(basis). Level m+1 is grown from level m: a one-point
// extension sigma of a member is accepted iff all its one-point deletions
// lie in level m and sigma is not itself a basis pattern. (Any basis element
// of size <= m contained in sigma is contained in some deletion of sigma,
// so the deletion-closure test is exact.)
inline FiniteClass enumerate_av(const Basis& basis, int N) {
  if (N < 1) throw std::invalid_argument("enumerate_av needs N >= 1");
  LevelMap levels;
  const Permutation one = Permutation::identity(1);
  if (!basis.patterns.count(one)) levels[1].insert(one);
  for (int m = 1; m < N; ++m) {
    if (!levels.count(m) || levels[m].empty()) break;
    PermSet next;
    for (const Permutation& p : levels[m]) {
      for (const Permutation& s : one_point_extensions(p)) {
        if (next.count(s) || basis.patterns.count(s)) continue;
        bool closed = true;
        for (const Permutation& d : one_point_deletions(s)) {
          if (!levels[m].count(d)) {
            closed = false;
            break;
          }
        }
        if (closed) next.insert(s);
      }
    }
    if (next.empty()) break;
    levels[m + 1] = std::move(next);
  }
  return FiniteClass::from_levels(N, std::move(levels));
}

// The minimal permutations of size <= max_size not in F: every one-point
// deletion lies in F. Satisfies enumerate_av(basis_of(F), max_size) == F.
inline PermSet basis_of(const FiniteClass& F) {
  PermSet out;
  if (F.level(1).empty()) {
    out.insert(Permutation::identity(1));
    return out;
  }
  for (int k = 2; k <= F.max_size(); ++k) {
    for (const Permutation& p : F.level(k - 1)) {
      for (const Permutation& s : one_point_extensions(p)) {
        if (F.level(k).count(s) || out.count(s)) continue;
        bool minimal = true;
        for (const Permutation& d : one_point_deletions(s)) {
          if (!F.level(k - 1).count(d)) {
            minimal = false;
            break;
          }
        }
        if (minimal) out.insert(s);
      }
    }
  }
  return out;
}

// Truncation to size M of the maximum class agreeing with F up to its
// max_size, namely Av(S_{<=n} \ F).
inline FiniteClass upward_closure(const FiniteClass& F, int M) {
  if (M < F.max_size())
    throw std::invalid_argument("upward_closure horizon below class max_size");
  return enumerate_av(Basis{basis_of(F)}, M);
}

// Erdos-Szekeres: if F contains neither monotone permutation of size k, no
// member can have size greater than (k-1)^2. Returns nullopt (the unbounded
// signal) when either monotone is present.
inline std::optional<int> finiteness_bound(const FiniteClass& F, int k) {
  if (k < 2) throw std::invalid_argument("finiteness_bound needs k >= 2");
  if (F.member(Permutation::identity(k)) || F.member(Permutation::decreasing(k)))
    return std::nullopt;
  return (k - 1) * (k - 1);
}

// All of S_{<=N} as a finite class.
inline FiniteClass full_class(int N) {
  return enumerate_av(Basis{PermSet{}}, N);
}

}  // namespace wilf
