// Seeded generation of random one-relator presentations for property sweeps.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "magnus/freegroup.hpp"
#include "magnus/presentation.hpp"

namespace magnus {

/// Default generator names: a, b, c, ... then g26, g27, ...
inline std::string generator_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "g" + std::to_string(i);
}

inline std::vector<GeneratorId> declare_generators(GeneratorRegistry& registry, std::size_t count) {
  std::vector<GeneratorId> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(registry.declare(generator_name(i)));
  return out;
}

/// Uniformly random freely reduced word of exactly `length` letters: each
/// letter is drawn from the letters that do not cancel its predecessor.
template <class Rng>
Word random_reduced_word(std::span<const GeneratorId> gens, std::size_t length, Rng& rng) {
  std::vector<Letter> out;
  const std::size_t alphabet = 2 * gens.size();
  while (out.size() < length) {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet - 1 - (out.empty() ? 0 : 1));
    std::size_t k = pick(rng);
    if (!out.empty()) {
      const auto& prev = out.back();
      const auto pos = static_cast<std::size_t>(std::find(gens.begin(), gens.end(), prev.gen) - gens.begin());
      const std::size_t banned = 2 * pos + (prev.sign > 0 ? 1 : 0);
      if (k >= banned) ++k;
    }
    out.push_back({gens[k / 2], (k % 2 == 0) ? 1 : -1});
  }
  return Word(std::move(out));
}

/// Random cyclically reduced word of exactly `length` letters (rejection
/// sampling over random reduced words).
template <class Rng>
Word random_cyclically_reduced_word(std::span<const GeneratorId> gens, std::size_t length, Rng& rng) {
  while (true) {
    Word w = random_reduced_word(gens, length, rng);
    if (is_cyclically_reduced(w)) return w;
  }
}

/// `count` presentations over `generators` generators with relator length
/// drawn uniformly from [1, max_length]. Fully determined by `seed`.
inline std::vector<Presentation> random_presentations(GeneratorRegistry& registry, std::size_t count,
                                                      std::size_t max_length, std::size_t generators,
                                                      std::uint64_t seed) {
  if (generators == 0) throw Error("need at least one generator");
  if (max_length == 0) throw Error("maximum relator length must be positive");
  std::mt19937_64 rng(seed);
  const auto gens = declare_generators(registry, generators);
  std::uniform_int_distribution<std::size_t> length(1, max_length);
  std::vector<Presentation> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.emplace_back(gens, random_cyclically_reduced_word(std::span<const GeneratorId>(gens), length(rng), rng));
  return out;
}

}  // namespace magnus
