#pragma once

// Permutations in one-line notation over {1..n}, classical pattern
// containment, and the cover relation (one-point extensions/deletions).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wilf {

class Permutation {
public:
  explicit Permutation(std::vector<int> values) : vals_(std::move(values)) {
    validate();
  }

  static Permutation identity(int n) {
    std::vector<int> v(check_size(n));
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return Permutation(std::move(v));
  }

  static Permutation decreasing(int n) {
    std::vector<int> v(check_size(n));
    for (int i = 0; i < n; ++i) v[i] = n - i;
    return Permutation(std::move(v));
  }

  // Text format: digit string when every value fits in one digit (n <= 9),
  // comma-separated integers otherwise.
  static Permutation parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty permutation text");
    std::vector<int> v;
    if (text.find(',') == std::string_view::npos) {
      for (char ch : text) {
        if (ch < '0' || ch > '9')
          throw std::invalid_argument("bad permutation text: " + std::string(text));
        v.push_back(ch - '0');
      }
    } else {
      std::size_t pos = 0;
      for (;;) {
        std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(
            pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (tok.empty() || tok.size() > 9 ||
            tok.find_first_not_of("0123456789") != std::string_view::npos)
          throw std::invalid_argument("bad permutation text: " + std::string(text));
        int x = 0;
        for (char ch : tok) x = x * 10 + (ch - '0');
        v.push_back(x);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
    return Permutation(std::move(v));
  }

  int size() const { return (int)vals_.size(); }
  const std::vector<int>& values() const { return vals_; }
  int operator[](int i) const { return vals_[i]; }

  std::string str() const {
    std::string out;
    if (size() <= 9) {
      for (int v : vals_) out.push_back((char)('0' + v));
    } else {
      for (std::size_t i = 0; i < vals_.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(vals_[i]);
      }
    }
    return out;
  }

  // Canonical order: size first, then one-line values lexicographically.
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.vals_.begin(), a.vals_.end(),
                                                  b.vals_.begin(), b.vals_.end());
  }
  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.vals_ == b.vals_;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : vals_) {
      h ^= (std::uint64_t)v;
      h *= 1099511628211ull;
    }
    return (std::size_t)h;
  }

private:
  std::vector<int> vals_;

  static int check_size(int n) {
    if (n < 1) throw std::invalid_argument("permutation size must be >= 1");
    return n;
  }

  void validate() const {
    const int n = size();
    if (n < 1) throw std::invalid_argument("empty permutation");
    std::vector<bool> seen(n + 1, false);
    for (int v : vals_) {
      if (v < 1 || v > n)
        throw std::invalid_argument("value out of range in permutation: " + std::to_string(v));
      if (seen[v])
        throw std::invalid_argument("repeated value in permutation: " + std::to_string(v));
      seen[v] = true;
    }
  }
};

using PermSet = std::set<Permutation>;

// Renormalizes a sequence of distinct integers to the permutation with the
// same relative order.
inline Permutation pattern_of(const std::vector<int>& seq) {
  const int n = (int)seq.size();
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return seq[a] < seq[b]; });
  std::vector<int> out(n);
  for (int r = 0; r < n; ++r) out[idx[r]] = r + 1;
  return Permutation(std::move(out));
}

// Classical pattern containment: true iff haystack has a subsequence
// order-isomorphic to needle. Backtracking over positions, left to right,
// pruning with the value interval forced by the points chosen so far.
inline bool contains(const Permutation& haystack, const Permutation& needle) {
  const int n = haystack.size();
  const int k = needle.size();
  if (k > n) return false;
  std::vector<int> chosen(k, 0);  // haystack positions, 0-based

  auto fits = [&](int j, int pos) {
    int lo = 0, hi = n + 1;  // value interval forced by placed points
    for (int t = 0; t < j; ++t) {
      const int hv = haystack[chosen[t]];
      if (needle[t] < needle[j]) {
        if (hv > lo) lo = hv;
      } else {
        if (hv < hi) hi = hv;
      }
    }
    const int v = haystack[pos];
    return lo < v && v < hi;
  };

  std::function<bool(int, int)> place = [&](int j, int from) {
    if (j == k) return true;
    for (int pos = from; pos <= n - (k - j); ++pos) {
      if (!fits(j, pos)) continue;
      chosen[j] = pos;
      if (place(j + 1, pos + 1)) return true;
    }
    return false;
  };
  return place(0, 0);
}

// All permutations of size n+1 covering pi: every value/position insertion,
// deduplicated. Exhaustive for the cover relation.
inline PermSet one_point_extensions(const Permutation& pi) {
  const int n = pi.size();
  PermSet out;
  std::vector<int> w(n + 1);
  for (int pos = 0; pos <= n; ++pos) {
    for (int v = 1; v <= n + 1; ++v) {
      int t = 0;
      for (int i = 0; i < pos; ++i) w[t++] = pi[i] >= v ? pi[i] + 1 : pi[i];
      w[t++] = v;
      for (int i = pos; i < n; ++i) w[t++] = pi[i] >= v ? pi[i] + 1 : pi[i];
      out.insert(Permutation(w));
    }
  }
  return out;
}

// Distinct patterns of size n-1 obtained by deleting one point.
inline PermSet one_point_deletions(const Permutation& pi) {
  const int n = pi.size();
  if (n < 2) throw std::domain_error("one_point_deletions needs size >= 2");
  PermSet out;
  for (int skip = 0; skip < n; ++skip) {
    std::vector<int> w;
    w.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
      if (i == skip) continue;
      w.push_back(pi[i] > pi[skip] ? pi[i] - 1 : pi[i]);
    }
    out.insert(Permutation(std::move(w)));
  }
  return out;
}

inline bool is_increasing(const Permutation& p) {
  for (int i = 0; i + 1 < p.size(); ++i)
    if (p[i] > p[i + 1]) return false;
  return true;
}

inline bool is_decreasing(const Permutation& p) {
  for (int i = 0; i + 1 < p.size(); ++i)
    if (p[i] < p[i + 1]) return false;
  return true;
}

}  // namespace wilf

template <>
struct std::hash<wilf::Permutation> {
  std::size_t operator()(const wilf::Permutation& p) const { return p.hash(); }
};
