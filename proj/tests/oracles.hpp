// Test-only reference implementations. These work on plain integer words
// (+k / -k for generator k, 1-based) and share no code with the library's
// Word arithmetic.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <vector>

#include "magnus/freegroup.hpp"

namespace oracle {

using IntWord = std::vector<int>;

/// Repeated single-pass cancellation until nothing changes.
inline IntWord naive_reduce(IntWord w) {
  bool changed = true;
  while (changed) {
    changed = false;
    IntWord next;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i + 1 < w.size() && w[i] == -w[i + 1]) {
        ++i;
        changed = true;
      } else {
        next.push_back(w[i]);
      }
    }
    w = std::move(next);
  }
  return w;
}

inline bool is_reduced(const IntWord& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == -w[i + 1]) return false;
  return true;
}

inline bool is_cyclically_reduced(const IntWord& w) {
  return is_reduced(w) && (w.size() < 2 || w.front() != -w.back());
}

/// Strips mutually inverse first/last letters of the reduced word.
inline IntWord naive_cyclic_core(IntWord w) {
  w = naive_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) w = IntWord(w.begin() + 1, w.end() - 1);
  return w;
}

inline IntWord inverse(const IntWord& w) {
  IntWord out(w.rbegin(), w.rend());
  for (auto& x : out) x = -x;
  return out;
}

/// All words of length exactly n over k generators.
inline void for_each_word(int k, std::size_t n, const std::function<void(const IntWord&)>& f) {
  IntWord w(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      f(w);
      return;
    }
    for (int g = 1; g <= k; ++g)
      for (int s : {1, -1}) {
        w[i] = s * g;
        rec(i + 1);
      }
  };
  rec(0);
}

/// Expansion of a subscripted word: each (base, subscript, sign) becomes
/// t^subscript base^sign t^-subscript, then the whole word is reduced.
struct Subscripted {
  int base;
  std::int64_t subscript;
  int sign;
};

inline IntWord expand(const std::vector<Subscripted>& s, int t) {
  IntWord out;
  for (const auto& x : s) {
    for (std::int64_t i = 0; i < std::abs(x.subscript); ++i) out.push_back(x.subscript > 0 ? t : -t);
    out.push_back(x.sign * x.base);
    for (std::int64_t i = 0; i < std::abs(x.subscript); ++i) out.push_back(x.subscript > 0 ? -t : t);
  }
  return naive_reduce(out);
}

// Conversions between library words and integer words, relative to an
// ordered generator list.

inline IntWord to_ints(const magnus::Word& w, const std::vector<magnus::GeneratorId>& gens) {
  IntWord out;
  for (const auto& l : w.letters()) {
    const auto k = static_cast<int>(std::find(gens.begin(), gens.end(), l.gen) - gens.begin()) + 1;
    out.push_back(l.sign * k);
  }
  return out;
}

inline magnus::Word from_ints(const IntWord& w, const std::vector<magnus::GeneratorId>& gens) {
  std::vector<magnus::Letter> out;
  for (int x : w) out.push_back({gens[static_cast<std::size_t>(std::abs(x) - 1)], x > 0 ? 1 : -1});
  return magnus::Word(std::move(out));
}

}  // namespace oracle
