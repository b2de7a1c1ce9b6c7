#pragma once

// Peg permutations: a permutation whose points carry decorations in
// {+, -, .} prescribing inflation by an increasing interval, a decreasing
// interval, or at most one point. Grid(peg) is the set of all inflations;
// Grid^f(peg) requires +/- cells to take at least two points and . cells
// exactly one.

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wilf/permutation.hpp"

namespace wilf {

enum class Peg : char {
  plus = '+',
  minus = '-',
  dot = '.',
};

struct PegPermutation {
  Permutation underlying;
  std::vector<Peg> decorations;  // one per point

  PegPermutation(Permutation rho, std::vector<Peg> decs)
      : underlying(std::move(rho)), decorations(std::move(decs)) {
    if ((int)decorations.size() != underlying.size())
      throw std::invalid_argument("peg permutation needs one decoration per point");
  }

  int size() const { return underlying.size(); }

  // Text format: whitespace-separated value+symbol tokens, e.g. "2- 3- 1.".
  static PegPermutation parse(std::string_view text) {
    std::vector<int> vals;
    std::vector<Peg> decs;
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      if (i >= text.size()) break;
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == i || j >= text.size())
        throw std::invalid_argument("bad peg token in: " + std::string(text));
      int v = 0;
      for (std::size_t t = i; t < j; ++t) v = v * 10 + (text[t] - '0');
      const char sym = text[j];
      if (sym != '+' && sym != '-' && sym != '.')
        throw std::invalid_argument(std::string("bad peg decoration: ") + sym);
      vals.push_back(v);
      decs.push_back((Peg)sym);
      i = j + 1;
      if (i < text.size() && text[i] != ' ' && text[i] != '\t')
        throw std::invalid_argument("bad peg token in: " + std::string(text));
    }
    if (vals.empty()) throw std::invalid_argument("empty peg permutation");
    return PegPermutation(Permutation(std::move(vals)), std::move(decs));
  }

  std::string str() const {
    std::string out;
    for (int j = 0; j < size(); ++j) {
      if (j) out.push_back(' ');
      out += std::to_string(underlying[j]);
      out.push_back((char)decorations[j]);
    }
    return out;
  }

  friend bool operator==(const PegPermutation& a, const PegPermutation& b) {
    return a.underlying == b.underlying && a.decorations == b.decorations;
  }
};

// A peg permutation is properly pegged when it contains no two-element
// monotone interval (adjacent positions, consecutive values) decorated as
// one of: 1+2+, 1.2+, 1+2., 2-1-, 2.1-, 2-1. .
inline bool is_properly_pegged(const PegPermutation& peg) {
  for (int j = 0; j + 1 < peg.size(); ++j) {
    const int a = peg.underlying[j], b = peg.underlying[j + 1];
    const Peg da = peg.decorations[j], db = peg.decorations[j + 1];
    if (b == a + 1) {  // ascending interval
      const bool bad = (da == Peg::plus && db == Peg::plus) ||
                       (da == Peg::dot && db == Peg::plus) ||
                       (da == Peg::plus && db == Peg::dot);
      if (bad) return false;
    } else if (b == a - 1) {  // descending interval
      const bool bad = (da == Peg::minus && db == Peg::minus) ||
                       (da == Peg::dot && db == Peg::minus) ||
                       (da == Peg::minus && db == Peg::dot);
      if (bad) return false;
    }
  }
  return true;
}

namespace detail {

// Membership by assigning sigma's points, in position order, to contiguous
// cell segments. Cell sizes are chosen left to right; each segment must be
// monotone per its decoration with a contiguous value range, and segments
// must be ordered value-wise like the underlying permutation.
inline bool grid_member(const PegPermutation& peg, const Permutation& sigma, bool filled) {
  const int m = peg.size();
  const int n = sigma.size();

  // seg[j] = [start, end) of sigma positions taken by cell j
  std::vector<int> seg_start(m), seg_end(m);
  std::vector<int> val_lo(m), val_hi(m);  // value range per used cell

  auto segment_ok = [&](int j) {
    const int s = seg_start[j], e = seg_end[j];
    if (s == e) return true;
    const Peg d = peg.decorations[j];
    int lo = sigma[s], hi = sigma[s];
    for (int t = s + 1; t < e; ++t) {
      const bool up = sigma[t] == sigma[t - 1] + 1;
      const bool down = sigma[t] == sigma[t - 1] - 1;
      if (d == Peg::plus && !up) return false;
      if (d == Peg::minus && !down) return false;
      if (d == Peg::dot) return false;  // at most one point
      lo = std::min(lo, sigma[t]);
      hi = std::max(hi, sigma[t]);
    }
    if (hi - lo + 1 != e - s) return false;  // contiguous values
    val_lo[j] = lo;
    val_hi[j] = hi;
    return true;
  };

  auto ordered_vs_earlier = [&](int j) {
    if (seg_start[j] == seg_end[j]) return true;
    for (int t = 0; t < j; ++t) {
      if (seg_start[t] == seg_end[t]) continue;
      if (peg.underlying[t] < peg.underlying[j]) {
        if (!(val_hi[t] < val_lo[j])) return false;
      } else {
        if (!(val_lo[t] > val_hi[j])) return false;
      }
    }
    return true;
  };

  std::function<bool(int, int)> choose = [&](int j, int used) {
    if (j == m) return used == n;
    int min_size = 0, max_size = n - used;
    if (peg.decorations[j] == Peg::dot) {
      min_size = filled ? 1 : 0;
      max_size = std::min(max_size, 1);
    } else if (filled) {
      min_size = 2;
    }
    for (int c = min_size; c <= max_size; ++c) {
      seg_start[j] = used;
      seg_end[j] = used + c;
      if (!segment_ok(j) || !ordered_vs_earlier(j)) continue;
      if (choose(j + 1, used + c)) return true;
    }
    return false;
  };
  return choose(0, 0);
}

}  // namespace detail

inline bool grid_contains(const PegPermutation& peg, const Permutation& sigma) {
  return detail::grid_member(peg, sigma, false);
}

inline bool grid_filled_contains(const PegPermutation& peg, const Permutation& sigma) {
  return detail::grid_member(peg, sigma, true);
}

// All size-n members of Grid(peg), or of Grid^f(peg) when filled: enumerate
// the admissible cell-size compositions of n and build the inflation each
// one determines.
inline PermSet grid_enumerate(const PegPermutation& peg, int n, bool filled) {
  if (n < 1) throw std::invalid_argument("grid_enumerate needs n >= 1");
  const int m = peg.size();
  PermSet out;
  std::vector<int> sizes(m, 0);

  // cells sorted by underlying value decide the value ranges
  std::vector<int> by_value(m);
  for (int j = 0; j < m; ++j) by_value[peg.underlying[j] - 1] = j;

  auto emit = [&]() {
    std::vector<int> range_lo(m);
    int next = 1;
    for (int r = 0; r < m; ++r) {
      const int cell = by_value[r];
      range_lo[cell] = next;
      next += sizes[cell];
    }
    std::vector<int> vals;
    vals.reserve(n);
    for (int j = 0; j < m; ++j) {
      if (peg.decorations[j] == Peg::minus) {
        for (int t = sizes[j] - 1; t >= 0; --t) vals.push_back(range_lo[j] + t);
      } else {
        for (int t = 0; t < sizes[j]; ++t) vals.push_back(range_lo[j] + t);
      }
    }
    out.insert(Permutation(std::move(vals)));
  };

  std::function<void(int, int)> choose = [&](int j, int left) {
    if (j == m) {
      if (left == 0) emit();
      return;
    }
    int min_size = 0, max_size = left;
    if (peg.decorations[j] == Peg::dot) {
      min_size = filled ? 1 : 0;
      max_size = std::min(max_size, 1);
    } else if (filled) {
      min_size = 2;
    }
    for (int c = min_size; c <= max_size; ++c) {
      sizes[j] = c;
      choose(j + 1, left - c);
    }
    sizes[j] = 0;
  };
  choose(0, n);
  return out;
}

}  // namespace wilf
