#pragma once

// The eight containment-order automorphisms generated by reverse (r),
// complement (c) and inverse (i). Elements are named by reduced words with
// the i part applied first: "rci" means reverse(complement(inverse(pi))).
//
// Encoding: bit 0 = r, bit 1 = c, bit 2 = i. The composition table follows
// from r^2 = c^2 = i^2 = e, rc = cr, and i.r = c.i (so moving i past the
// r/c part swaps r and c).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wilf/permutation.hpp"

namespace wilf {

enum class Symmetry : std::uint8_t {
  e = 0,
  r = 1,
  c = 2,
  rc = 3,
  i = 4,
  ri = 5,
  ci = 6,
  rci = 7,
};

inline constexpr std::array<Symmetry, 8> kAllSymmetries = {
    Symmetry::e,  Symmetry::r,  Symmetry::c,  Symmetry::rc,
    Symmetry::i,  Symmetry::ri, Symmetry::ci, Symmetry::rci,
};

inline std::string_view symmetry_label(Symmetry g) {
  static constexpr std::array<std::string_view, 8> labels = {
      "e", "r", "c", "rc", "i", "ri", "ci", "rci"};
  return labels[(int)g];
}

inline Symmetry parse_symmetry(std::string_view text) {
  for (Symmetry g : kAllSymmetries)
    if (symmetry_label(g) == text) return g;
  throw std::invalid_argument("unknown symmetry label: " + std::string(text));
}

// g after h: compose(g, h)(pi) = g(h(pi)).
inline Symmetry compose(Symmetry g, Symmetry h) {
  const int a1 = (int)g & 3, b1 = ((int)g >> 2) & 1;
  int a2 = (int)h & 3;
  const int b2 = ((int)h >> 2) & 1;
  if (b1) a2 = ((a2 & 1) << 1) | ((a2 >> 1) & 1);  // i past r/c swaps them
  return (Symmetry)((a1 ^ a2) | ((b1 ^ b2) << 2));
}

inline Symmetry inverse_of(Symmetry g) {
  const int a = (int)g & 3, b = ((int)g >> 2) & 1;
  const int ai = b ? (((a & 1) << 1) | ((a >> 1) & 1)) : a;
  return (Symmetry)(ai | (b << 2));
}

inline Permutation reverse_perm(const Permutation& p) {
  std::vector<int> v(p.values().rbegin(), p.values().rend());
  return Permutation(std::move(v));
}

inline Permutation complement_perm(const Permutation& p) {
  const int n = p.size();
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) v[j] = n + 1 - p[j];
  return Permutation(std::move(v));
}

inline Permutation inverse_perm(const Permutation& p) {
  const int n = p.size();
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) v[p[j] - 1] = j + 1;
  return Permutation(std::move(v));
}

inline Permutation apply_symmetry(Symmetry g, const Permutation& p) {
  Permutation out = p;
  const int bits = (int)g;
  if (bits & 4) out = inverse_perm(out);
  if (bits & 2) out = complement_perm(out);
  if (bits & 1) out = reverse_perm(out);
  return out;
}

inline PermSet apply_symmetry(Symmetry g, const PermSet& s) {
  PermSet out;
  for (const Permutation& p : s) out.insert(apply_symmetry(g, p));
  return out;
}

// Comparison key for sets of permutations: the sorted list of
// (size, one-line text) pairs.
inline std::vector<std::pair<int, std::string>> set_key(const PermSet& s) {
  std::vector<std::pair<int, std::string>> key;
  key.reserve(s.size());
  for (const Permutation& p : s) key.emplace_back(p.size(), p.str());
  std::sort(key.begin(), key.end());
  return key;
}

// The lexicographically least image of s over all g in group. Two sets have
// equal representatives iff they lie in the same orbit.
inline PermSet canonical_orbit_representative(const PermSet& s,
                                              const std::vector<Symmetry>& group) {
  if (group.empty()) throw std::invalid_argument("empty symmetry group");
  bool have = false;
  PermSet best;
  std::vector<std::pair<int, std::string>> best_key;
  for (Symmetry g : group) {
    PermSet image = apply_symmetry(g, s);
    auto key = set_key(image);
    if (!have || key < best_key) {
      have = true;
      best = std::move(image);
      best_key = std::move(key);
    }
  }
  return best;
}

inline std::vector<Symmetry> full_symmetry_group() {
  return std::vector<Symmetry>(kAllSymmetries.begin(), kAllSymmetries.end());
}

}  // namespace wilf
