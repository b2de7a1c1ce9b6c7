#pragma once

// The {L,R}-word encoding of Av(213,312) and the constructive
// length-preserving bijection between {words containing alpha} and
// {words containing beta} for |alpha| = |beta|.
//
// Encoding convention: reading values bottom to top, value v (v < n) emits
// L if its position is left of the position of the maximum, else R; the
// maximum emits nothing. This gives exactly the 2^(n-1) words of length
// n-1 and turns pattern containment into subsequence containment.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wilf/permutation.hpp"

namespace wilf {

struct LRWord {
  std::string letters;  // only 'L' and 'R'

  LRWord() = default;
  explicit LRWord(std::string s) : letters(std::move(s)) {
    for (char ch : letters)
      if (ch != 'L' && ch != 'R')
        throw std::invalid_argument("LR word may only contain L and R: " + letters);
  }

  int size() const { return (int)letters.size(); }
  bool empty() const { return letters.empty(); }
  char back() const { return letters.back(); }

  friend auto operator<=>(const LRWord&, const LRWord&) = default;
};

inline bool is_wedge(const Permutation& p) {
  static const Permutation p213 = Permutation::parse("213");
  static const Permutation p312 = Permutation::parse("312");
  return !contains(p, p213) && !contains(p, p312);
}

inline LRWord encode_wedge(const Permutation& p) {
  if (!is_wedge(p))
    throw std::domain_error("encode_wedge: " + p.str() + " contains 213 or 312");
  const int n = p.size();
  std::vector<int> pos(n + 1);  // pos[v] = position of value v
  for (int j = 0; j < n; ++j) pos[p[j]] = j;
  std::string out;
  out.reserve(n - 1);
  for (int v = 1; v < n; ++v) out.push_back(pos[v] < pos[n] ? 'L' : 'R');
  return LRWord(std::move(out));
}

// The unique wedge permutation encoding to w: L-values in increasing order,
// then the maximum, then R-values in decreasing order.
inline Permutation decode_word(const LRWord& w) {
  const int n = w.size() + 1;
  std::vector<int> vals;
  vals.reserve(n);
  for (int v = 1; v < n; ++v)
    if (w.letters[v - 1] == 'L') vals.push_back(v);
  vals.push_back(n);
  for (int v = n - 1; v >= 1; --v)
    if (w.letters[v - 1] == 'R') vals.push_back(v);
  return Permutation(std::move(vals));
}

// u is a (not necessarily contiguous) subsequence of w.
inline bool word_contains(const LRWord& w, const LRWord& u) {
  std::size_t j = 0;
  for (char ch : w.letters) {
    if (j < u.letters.size() && ch == u.letters[j]) ++j;
  }
  return j == u.letters.size();
}

// Length of the shortest prefix of w containing u, via greedy leftmost
// matching; nullopt when w does not contain u.
inline std::optional<int> minimal_prefix(const LRWord& w, const LRWord& u) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (j < u.letters.size() && w.letters[i] == u.letters[j]) ++j;
    if (j == u.letters.size()) return (int)i + 1;
  }
  if (u.empty()) return 0;
  return std::nullopt;
}

namespace detail {

// Maps the minimal words containing alpha onto the minimal words containing
// beta. A word minimally contains alpha = alpha0.L exactly when it has the
// form A R^k L with A minimal for alpha0; it is sent to Psi(A) L^k R when
// beta = beta0.R, and likewise for the other letter pairs. The proof's
// symmetry is broken, so all four pairs are written out.
inline std::string wedge_map_minimal(std::string_view alpha, std::string_view beta,
                                     std::string_view m) {
  if (alpha.empty()) {
    if (!m.empty()) throw std::logic_error("minimal word for empty pattern must be empty");
    return std::string();
  }
  const char a = alpha.back();
  const char b = beta.back();
  if (m.empty() || m.back() != a)
    throw std::logic_error("minimal word does not end with the pattern's last letter");

  std::string_view body = m.substr(0, m.size() - 1);
  // Split body = A . y^k with y the letter opposite to a.
  LRWord body_word{std::string(body)};
  LRWord head{std::string(alpha.substr(0, alpha.size() - 1))};
  auto alen = minimal_prefix(body_word, head);
  if (!alen) throw std::logic_error("minimal-word factorization failed");
  std::string_view A = body.substr(0, *alen);
  const std::size_t k = body.size() - *alen;
  for (std::size_t i = *alen; i < body.size(); ++i)
    if (body[i] == a) throw std::logic_error("minimal-word factorization failed");

  std::string mapped = wedge_map_minimal(alpha.substr(0, alpha.size() - 1),
                                         beta.substr(0, beta.size() - 1), A);
  if (a == 'L' && b == 'L') {
    mapped.append(k, 'R');
    mapped.push_back('L');
  } else if (a == 'L' && b == 'R') {
    mapped.append(k, 'L');
    mapped.push_back('R');
  } else if (a == 'R' && b == 'L') {
    mapped.append(k, 'R');
    mapped.push_back('L');
  } else {  // a == 'R' && b == 'R'
    mapped.append(k, 'L');
    mapped.push_back('R');
  }
  return mapped;
}

}  // namespace detail

// The length-preserving bijection from {w : w contains alpha} onto
// {w' : w' contains beta}, for |alpha| = |beta|: transform the minimal
// prefix containing alpha, reattach the untouched suffix.
inline LRWord wedge_bijection(const LRWord& alpha, const LRWord& beta, const LRWord& w) {
  if (alpha.size() != beta.size())
    throw std::invalid_argument("wedge_bijection needs |alpha| == |beta|");
  auto mlen = minimal_prefix(w, alpha);
  if (!mlen) throw std::domain_error("wedge_bijection: word does not contain alpha");
  std::string_view word(w.letters);
  std::string out = detail::wedge_map_minimal(alpha.letters, beta.letters,
                                              word.substr(0, *mlen));
  out.append(word.substr(*mlen));
  return LRWord(std::move(out));
}

}  // namespace wilf
