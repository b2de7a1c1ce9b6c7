#pragma once

// The bottom-up search for potential extensions of a finite uniquely-Wilf
// class F with members of size at most n: all X inside (F^)_{n+1} such
// that F u X is (k, n+1)-balanced for every k <= n. Solutions come from a
// small backtracking solver over the indicator bits x_pi, with the balance
// equalities expressed in any of three forms (difference of involvement
// sums, restricted difference, or per-level targets); the forms have
// identical solution sets.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wilf/finite_class.hpp"
#include "wilf/permutation.hpp"
#include "wilf/symmetry.hpp"
#include "wilf/wilf_metrics.hpp"

namespace wilf {

enum class ConstraintForm {
  difference,
  restricted_difference,
  target,
};

enum class SymmetryScope {
  root_only,
  every_node,
};

struct SearchOptions {
  bool require_monotone = true;
  ConstraintForm constraint_form = ConstraintForm::restricted_difference;
  std::map<int, long long> targets;  // pinned t_k for the target form
  bool symmetry_reduction = true;
  SymmetryScope symmetry_scope = SymmetryScope::every_node;
  bool filter_lower_levels = false;  // solve (n,n+1) only, filter k < n after
  int max_size = 0;                  // search horizon
  long long branch_cap = 1000000;    // node-expansion budget
  int threads = 1;
};

struct ExtensionVector {
  std::vector<Permutation> candidates;  // (F^)_{n+1} in canonical order
  std::vector<std::uint8_t> bits;       // x_pi per candidate
  long long orbit_size = 1;

  std::size_t chosen_count() const {
    std::size_t c = 0;
    for (auto b : bits) c += b;
    return c;
  }
  bool is_full() const { return chosen_count() == bits.size(); }
  PermSet chosen() const {
    PermSet out;
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) out.insert(candidates[i]);
    return out;
  }
};

// The subgroup of the eight symmetries mapping every level of F to itself
// setwise.
inline std::vector<Symmetry> stabilizer(const FiniteClass& F) {
  std::vector<Symmetry> out;
  for (Symmetry g : kAllSymmetries) {
    bool fixes = true;
    for (int k = 1; k <= F.max_size() && fixes; ++k)
      fixes = apply_symmetry(g, F.level(k)) == F.level(k);
    if (fixes) out.push_back(g);
  }
  return out;
}

namespace detail {

// One linear balance equality: sum over plus minus sum over minus == target.
struct SumConstraint {
  std::vector<int> plus, minus;
  long long target = 0;
  // solver state
  long long done = 0;
  int free_plus = 0, free_minus = 0;
};

// Exhaustive enumeration of 0/1 assignments satisfying every constraint.
// Chronological backtracking over a fixed variable order with interval
// propagation: a constraint whose reachable interval pins the target forces
// all of its free variables.
class BalanceSolver {
public:
  BalanceSolver(int nvars, std::vector<SumConstraint> cons, std::vector<int> order)
      : nvars_(nvars), cons_(std::move(cons)), order_(std::move(order)) {
    assign_.assign(nvars_, -1);
    incid_.assign(nvars_, {});
    for (std::size_t c = 0; c < cons_.size(); ++c) {
      cons_[c].done = 0;
      cons_[c].free_plus = (int)cons_[c].plus.size();
      cons_[c].free_minus = (int)cons_[c].minus.size();
      for (int v : cons_[c].plus) incid_[v].push_back({(int)c, +1});
      for (int v : cons_[c].minus) incid_[v].push_back({(int)c, -1});
    }
  }

  // pins are applied before branching; emit receives each solution as a bit
  // vector indexed by variable.
  void solve(const std::vector<std::pair<int, int>>& pins,
             const std::function<void(const std::vector<std::uint8_t>&)>& emit) {
    for (const auto& c : cons_)
      if (c.target < -(long long)c.minus.size() || c.target > (long long)c.plus.size())
        return;
    const std::size_t mark = trail_.size();
    bool ok = true;
    for (const auto& [v, b] : pins)
      if (!propagate(v, b)) {
        ok = false;
        break;
      }
    if (ok) dfs(0, emit);
    undo(mark);
  }

private:
  int nvars_;
  std::vector<SumConstraint> cons_;
  std::vector<int> order_;
  std::vector<std::int8_t> assign_;
  std::vector<std::vector<std::pair<int, int>>> incid_;
  std::vector<int> trail_;
  std::vector<std::pair<int, int>> queue_;

  bool apply(int v, int b) {
    assign_[v] = (std::int8_t)b;
    trail_.push_back(v);
    for (const auto& [ci, role] : incid_[v]) {
      auto& c = cons_[ci];
      if (role > 0) {
        --c.free_plus;
        if (b) ++c.done;
      } else {
        --c.free_minus;
        if (b) --c.done;
      }
      const long long lo = c.done - c.free_minus;
      const long long hi = c.done + c.free_plus;
      if (c.target < lo || hi < c.target) return false;
      if (c.free_plus + c.free_minus > 0) {
        if (lo == c.target) {
          for (int p : c.plus)
            if (assign_[p] < 0) queue_.push_back({p, 0});
          for (int m : c.minus)
            if (assign_[m] < 0) queue_.push_back({m, 1});
        } else if (hi == c.target) {
          for (int p : c.plus)
            if (assign_[p] < 0) queue_.push_back({p, 1});
          for (int m : c.minus)
            if (assign_[m] < 0) queue_.push_back({m, 0});
        }
      }
    }
    return true;
  }

  bool propagate(int v, int b) {
    std::size_t qhead = queue_.size();
    if (assign_[v] >= 0) return assign_[v] == b;
    if (!apply(v, b)) {
      queue_.resize(qhead);
      return false;
    }
    while (qhead < queue_.size()) {
      auto [x, bx] = queue_[qhead++];
      if (assign_[x] >= 0) {
        if (assign_[x] != bx) {
          queue_.resize(qhead > queue_.size() ? queue_.size() : qhead);
          queue_.clear();
          return false;
        }
        continue;
      }
      if (!apply(x, bx)) {
        queue_.clear();
        return false;
      }
    }
    queue_.clear();
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const int v = trail_.back();
      trail_.pop_back();
      const int b = assign_[v];
      for (const auto& [ci, role] : incid_[v]) {
        auto& c = cons_[ci];
        if (role > 0) {
          ++c.free_plus;
          if (b) --c.done;
        } else {
          ++c.free_minus;
          if (b) ++c.done;
        }
      }
      assign_[v] = -1;
    }
  }

  void dfs(std::size_t pos, const std::function<void(const std::vector<std::uint8_t>&)>& emit) {
    while (pos < order_.size() && assign_[order_[pos]] >= 0) ++pos;
    if (pos == order_.size()) {
      std::vector<std::uint8_t> bits(nvars_);
      for (int v = 0; v < nvars_; ++v) bits[v] = (std::uint8_t)assign_[v];
      emit(bits);
      return;
    }
    const int v = order_[pos];
    for (int b : {1, 0}) {
      const std::size_t mark = trail_.size();
      if (propagate(v, b)) dfs(pos + 1, emit);
      undo(mark);
    }
  }
};

// Involvement rows: for each size k and member sigma of F_k, the candidate
// indices whose permutation contains sigma.
struct InvolverRows {
  std::map<int, std::vector<std::pair<Permutation, std::vector<int>>>> by_size;
};

inline InvolverRows build_rows(const FiniteClass& F,
                               const std::vector<Permutation>& candidates, int threads) {
  InvolverRows rows;
  std::vector<const Permutation*> members;
  std::vector<int> member_size;
  for (int k = 2; k <= F.max_size(); ++k)
    for (const Permutation& s : F.level(k)) {
      members.push_back(&s);
      member_size.push_back(k);
    }
  // matrix[j][i] = candidate i contains member j
  std::vector<std::vector<std::uint8_t>> matrix(
      members.size(), std::vector<std::uint8_t>(candidates.size(), 0));
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < members.size(); ++j)
        matrix[j][i] = contains(candidates[i], *members[j]) ? 1 : 0;
  };
  if (threads > 1 && candidates.size() > 1) {
    const std::size_t nth = std::min<std::size_t>(threads, candidates.size());
    std::vector<std::thread> pool;
    const std::size_t chunk = (candidates.size() + nth - 1) / nth;
    for (std::size_t t = 0; t < nth; ++t)
      pool.emplace_back(work, t * chunk, std::min(candidates.size(), (t + 1) * chunk));
    for (auto& th : pool) th.join();
  } else {
    work(0, candidates.size());
  }
  for (std::size_t j = 0; j < members.size(); ++j) {
    std::vector<int> row;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (matrix[j][i]) row.push_back((int)i);
    rows.by_size[member_size[j]].emplace_back(*members[j], std::move(row));
  }
  return rows;
}

inline std::vector<int> set_difference_sorted(const std::vector<int>& a,
                                              const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Difference or restricted-difference constraints for the given sizes.
inline std::vector<SumConstraint> compile_difference(const InvolverRows& rows,
                                                     const std::vector<int>& sizes,
                                                     bool restricted) {
  std::vector<SumConstraint> cons;
  for (int k : sizes) {
    auto it = rows.by_size.find(k);
    if (it == rows.by_size.end()) continue;
    const auto& level_rows = it->second;
    for (std::size_t j = 0; j + 1 < level_rows.size(); ++j) {
      SumConstraint c;
      if (restricted) {
        c.plus = set_difference_sorted(level_rows[j].second, level_rows[j + 1].second);
        c.minus = set_difference_sorted(level_rows[j + 1].second, level_rows[j].second);
      } else {
        c.plus = level_rows[j].second;
        c.minus = level_rows[j + 1].second;
      }
      c.target = 0;
      cons.push_back(std::move(c));
    }
  }
  return cons;
}

// Target constraints for the sizes whose target is pinned.
inline std::vector<SumConstraint> compile_targets(const InvolverRows& rows,
                                                  const std::map<int, long long>& targets) {
  std::vector<SumConstraint> cons;
  for (const auto& [k, t] : targets) {
    auto it = rows.by_size.find(k);
    if (it == rows.by_size.end()) continue;
    for (const auto& [member, row] : it->second) {
      SumConstraint c;
      c.plus = row;
      c.target = t;
      cons.push_back(std::move(c));
    }
  }
  return cons;
}

}  // namespace detail

// All potential extensions of F to size n+1. With require_monotone only the
// X containing both monotone permutations of size n+1 are returned; with
// symmetry_reduction one representative per orbit of the setwise stabilizer
// of F, annotated with its orbit size.
inline std::vector<ExtensionVector> potential_extensions(const FiniteClass& F,
                                                         const SearchOptions& opts) {
  if (!is_uniquely_wilf(F, F.max_size()))
    throw std::domain_error("potential_extensions: class is not uniquely-Wilf at its horizon");
  const int n = F.max_size();
  const FiniteClass up = upward_closure(F, n + 1);
  const std::vector<Permutation> candidates(up.level(n + 1).begin(), up.level(n + 1).end());
  const int nvars = (int)candidates.size();

  std::vector<std::pair<int, int>> pins;
  if (opts.require_monotone) {
    const Permutation inc = Permutation::identity(n + 1);
    const Permutation dec = Permutation::decreasing(n + 1);
    int inc_idx = -1, dec_idx = -1;
    for (int i = 0; i < nvars; ++i) {
      if (candidates[i] == inc) inc_idx = i;
      if (candidates[i] == dec) dec_idx = i;
    }
    if (inc_idx < 0 || dec_idx < 0) return {};
    pins = {{inc_idx, 1}, {dec_idx, 1}};
  }

  for (const auto& [k, t] : opts.targets)
    if (k < 2 || k > n || t < 0 || t > nvars)
      throw std::invalid_argument("pinned target out of range for level " + std::to_string(k));

  const detail::InvolverRows rows = detail::build_rows(F, candidates, opts.threads);

  // Branch on candidates containing the most size-n members of F first.
  std::vector<int> order(nvars);
  for (int i = 0; i < nvars; ++i) order[i] = i;
  {
    std::vector<int> weight(nvars, 0);
    auto it = rows.by_size.find(n);
    if (it != rows.by_size.end())
      for (const auto& [member, row] : it->second)
        for (int i : row) ++weight[i];
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return weight[a] > weight[b]; });
  }

  std::vector<int> constrained_sizes;
  for (int k = opts.filter_lower_levels ? n : 2; k <= n; ++k) constrained_sizes.push_back(k);

  std::set<std::vector<std::uint8_t>> solutions;
  auto collect = [&](const std::vector<std::uint8_t>& bits) { solutions.insert(bits); };

  if (nvars == 0) {
    solutions.insert({});
  } else if (opts.constraint_form != ConstraintForm::target) {
    const bool restricted = opts.constraint_form == ConstraintForm::restricted_difference;
    detail::BalanceSolver solver(
        nvars, detail::compile_difference(rows, constrained_sizes, restricted), order);
    solver.solve(pins, collect);
  } else {
    // Pinned targets are used as given; each remaining constrained size with
    // at least two members is enumerated over its feasible target range.
    std::vector<int> free_sizes;
    std::vector<long long> bounds;
    std::map<int, long long> pinned = opts.targets;
    for (int k : constrained_sizes) {
      if (pinned.count(k)) continue;
      auto it = rows.by_size.find(k);
      if (it == rows.by_size.end() || it->second.size() < 2) continue;
      long long cap = nvars;
      for (const auto& [member, row] : it->second)
        cap = std::min(cap, (long long)row.size());
      free_sizes.push_back(k);
      bounds.push_back(cap);
    }
    std::vector<long long> pick(free_sizes.size(), 0);
    for (;;) {
      std::map<int, long long> t = pinned;
      for (std::size_t j = 0; j < free_sizes.size(); ++j) t[free_sizes[j]] = pick[j];
      detail::BalanceSolver solver(nvars, detail::compile_targets(rows, t), order);
      solver.solve(pins, collect);
      std::size_t j = 0;
      while (j < pick.size() && pick[j] == bounds[j]) pick[j++] = 0;
      if (j == pick.size()) break;
      ++pick[j];
    }
  }

  // Optional filtering pass: keep only solutions balanced at every k < n.
  if (opts.filter_lower_levels) {
    for (auto it = solutions.begin(); it != solutions.end();) {
      bool ok = true;
      for (const auto& [k, level_rows] : rows.by_size) {
        if (k >= n || level_rows.size() < 2) continue;
        long long first = -1;
        for (const auto& [member, row] : level_rows) {
          long long c = 0;
          for (int i : row) c += (*it)[i];
          if (first < 0)
            first = c;
          else if (c != first) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      it = ok ? std::next(it) : solutions.erase(it);
    }
  }

  std::vector<ExtensionVector> out;
  if (!opts.symmetry_reduction) {
    for (const auto& bits : solutions) {
      ExtensionVector x;
      x.candidates = candidates;
      x.bits = bits;
      out.push_back(std::move(x));
    }
  } else {
    const std::vector<Symmetry> group = stabilizer(F);
    std::map<Permutation, int> index;
    for (int i = 0; i < nvars; ++i) index.emplace(candidates[i], i);
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& bits : solutions) {
      PermSet chosen;
      for (int i = 0; i < nvars; ++i)
        if (bits[i]) chosen.insert(candidates[i]);
      std::set<std::vector<std::uint8_t>> images;
      for (Symmetry g : group) {
        std::vector<std::uint8_t> im(nvars, 0);
        for (const Permutation& p : chosen) im[index.at(apply_symmetry(g, p))] = 1;
        images.insert(std::move(im));
      }
      const PermSet rep = canonical_orbit_representative(chosen, group);
      std::vector<std::uint8_t> rep_bits(nvars, 0);
      for (const Permutation& p : rep) rep_bits[index.at(p)] = 1;
      if (!seen.insert(rep_bits).second) continue;
      ExtensionVector x;
      x.candidates = candidates;
      x.bits = std::move(rep_bits);
      x.orbit_size = (long long)images.size();
      out.push_back(std::move(x));
    }
  }

  std::sort(out.begin(), out.end(), [](const ExtensionVector& a, const ExtensionVector& b) {
    const auto ca = a.chosen_count(), cb = b.chosen_count();
    if (ca != cb) return ca > cb;
    return a.bits > b.bits;
  });
  return out;
}

// F u X as a class of max size n+1. X must have been computed against the
// current candidate list.
inline FiniteClass extend(const FiniteClass& F, const ExtensionVector& X) {
  const int n = F.max_size();
  const FiniteClass up = upward_closure(F, n + 1);
  const std::vector<Permutation> expect(up.level(n + 1).begin(), up.level(n + 1).end());
  if (expect != X.candidates)
    throw std::domain_error("extend: stale extension vector (candidate list mismatch)");
  if (X.bits.size() != X.candidates.size())
    throw std::domain_error("extend: extension vector bits do not match candidates");
  LevelMap levels;
  for (int k = 1; k <= n; ++k)
    if (!F.level(k).empty()) levels[k] = F.level(k);
  PermSet top = X.chosen();
  if (!top.empty()) levels[n + 1] = std::move(top);
  return FiniteClass::from_levels(n + 1, std::move(levels));
}

enum class SearchStatus {
  dead,
  unique_full,
  unresolved,
  budget_exhausted,
};

inline std::string_view search_status_label(SearchStatus s) {
  switch (s) {
    case SearchStatus::dead: return "dead";
    case SearchStatus::unique_full: return "unique-full";
    case SearchStatus::unresolved: return "unresolved";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
  }
  return "unknown";
}

struct SearchNode {
  enum class Kind { interior, dead_end, survivor, cut };

  int size = 0;  // class max_size at this node
  std::vector<long long> level_counts;
  bool via_full = true;  // every extension on the path here was full
  Kind kind = Kind::interior;

  struct Branch {
    ExtensionVector ext;
    std::unique_ptr<SearchNode> child;
    bool expanded = false;
  };
  std::vector<Branch> branches;
};

struct FrontierEntry {
  FiniteClass cls;
  bool all_full = true;
};

struct LevelLog {
  int size = 0;
  long long found = 0;
  long long expanded = 0;
};

struct SearchResolution {
  SearchStatus status = SearchStatus::dead;
  std::vector<LevelLog> log;
  std::vector<std::unique_ptr<SearchNode>> roots;
  std::vector<FrontierEntry> frontier;
  long long expansions = 0;
};

namespace detail {

struct SearchDriver {
  const SearchOptions& opts;
  long long expansions = 0;
  bool budget_hit = false;
  bool have_survivor = false;
  bool all_survivors_full = true;
  std::map<int, LevelLog> log;
  std::vector<FrontierEntry> frontier;

  explicit SearchDriver(const SearchOptions& o) : opts(o) {}

  std::unique_ptr<SearchNode> expand(const FiniteClass& cls, bool all_full, bool is_root) {
    auto node = std::make_unique<SearchNode>();
    node->size = cls.max_size();
    node->level_counts = cls.level_counts();
    node->via_full = all_full;

    if (cls.max_size() >= opts.max_size) {
      node->kind = SearchNode::Kind::survivor;
      have_survivor = true;
      if (!all_full) all_survivors_full = false;
      return node;
    }
    if (budget_hit || expansions >= opts.branch_cap) {
      budget_hit = true;
      node->kind = SearchNode::Kind::cut;
      frontier.push_back({cls, all_full});
      return node;
    }
    ++expansions;

    SearchOptions sub = opts;
    sub.require_monotone = true;  // the search hunts infinite classes
    sub.symmetry_reduction =
        opts.symmetry_reduction &&
        (opts.symmetry_scope == SymmetryScope::every_node || is_root);
    const auto exts = potential_extensions(cls, sub);

    auto& entry = log[cls.max_size() + 1];
    entry.size = cls.max_size() + 1;
    entry.found += (long long)exts.size();

    if (exts.empty()) {
      node->kind = SearchNode::Kind::dead_end;
      return node;
    }
    for (const ExtensionVector& ext : exts) {
      SearchNode::Branch branch;
      branch.ext = ext;
      const FiniteClass child = extend(cls, ext);
      branch.child = expand(child, all_full && ext.is_full(), false);
      branch.expanded = branch.child->kind != SearchNode::Kind::cut;
      if (branch.expanded) ++entry.expanded;
      node->branches.push_back(std::move(branch));
    }
    node->kind = SearchNode::Kind::interior;
    return node;
  }
};

}  // namespace detail

// Depth-first expansion of extend(.) over monotone-containing potential
// extensions up to opts.max_size. Status is unique-full when the only chain
// surviving to the horizon takes the full extension at every step, dead when
// no chain survives, budget-exhausted (with the frontier recorded) when the
// expansion budget ran out.
inline SearchResolution search(const FiniteClass& F, const SearchOptions& opts) {
  if (opts.max_size <= F.max_size())
    throw std::invalid_argument("search max_size must exceed the class max_size");
  if (!is_uniquely_wilf(F, F.max_size()))
    throw std::domain_error("search: class is not uniquely-Wilf at its horizon");
  detail::SearchDriver driver(opts);
  SearchResolution res;
  res.roots.push_back(driver.expand(F, true, true));
  res.expansions = driver.expansions;
  for (const auto& [size, entry] : driver.log) res.log.push_back(entry);
  res.frontier = std::move(driver.frontier);
  if (driver.budget_hit)
    res.status = SearchStatus::budget_exhausted;
  else if (!driver.have_survivor)
    res.status = SearchStatus::dead;
  else if (driver.all_survivors_full)
    res.status = SearchStatus::unique_full;
  else
    res.status = SearchStatus::unresolved;
  return res;
}

// Continues a search from a previously emitted frontier.
inline SearchResolution search_resume(const std::vector<FrontierEntry>& entries,
                                      const SearchOptions& opts) {
  SearchResolution agg;
  bool any_budget = false, any_survivor = false, all_full = true;
  std::map<int, LevelLog> log;
  for (const FrontierEntry& entry : entries) {
    if (entry.cls.max_size() >= opts.max_size) {
      any_survivor = true;
      if (!entry.all_full) all_full = false;
      auto node = std::make_unique<SearchNode>();
      node->size = entry.cls.max_size();
      node->level_counts = entry.cls.level_counts();
      node->via_full = entry.all_full;
      node->kind = SearchNode::Kind::survivor;
      agg.roots.push_back(std::move(node));
      continue;
    }
    detail::SearchDriver driver(opts);
    agg.roots.push_back(driver.expand(entry.cls, entry.all_full, true));
    agg.expansions += driver.expansions;
    for (const auto& [size, e] : driver.log) {
      auto& slot = log[size];
      slot.size = size;
      slot.found += e.found;
      slot.expanded += e.expanded;
    }
    for (auto& f : driver.frontier) agg.frontier.push_back(std::move(f));
    if (driver.budget_hit) any_budget = true;
    if (driver.have_survivor) {
      any_survivor = true;
      if (!driver.all_survivors_full) all_full = false;
    }
  }
  for (const auto& [size, entry] : log) agg.log.push_back(entry);
  if (any_budget)
    agg.status = SearchStatus::budget_exhausted;
  else if (!any_survivor)
    agg.status = SearchStatus::dead;
  else if (all_full)
    agg.status = SearchStatus::unique_full;
  else
    agg.status = SearchStatus::unresolved;
  return agg;
}

}  // namespace wilf
