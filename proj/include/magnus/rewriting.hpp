// Single decomposition steps of the one-relator induction: splitting off the
// free factor, eliminating a generator that occurs once, the t-conjugate
// rewriting for a zero exponent-sum generator, and the embedding substitution
// used when no generator has exponent sum zero.

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magnus/freegroup.hpp"
#include "magnus/presentation.hpp"

namespace magnus {

class PreconditionError : public Error {
 public:
  using Error::Error;
};

struct FreeSplitResult {
  Presentation core;
  std::vector<GeneratorId> free_generators;
};

inline FreeSplitResult split_free_part(const Presentation& p) {
  FreeSplitResult out;
  std::vector<GeneratorId> core_gens;
  for (const auto& g : p.generators()) {
    if (occurrence_count(p.relator(), g) > 0)
      core_gens.push_back(g);
    else
      out.free_generators.push_back(g);
  }
  out.core = Presentation(std::move(core_gens), p.relator());
  return out;
}

inline std::optional<GeneratorId> find_single_occurrence(const Presentation& p) {
  for (const auto& g : p.generators())
    if (occurrence_count(p.relator(), g) == 1) return g;
  return std::nullopt;
}

inline std::optional<GeneratorId> find_zero_exponent(const Presentation& p) {
  for (const auto& g : p.generators())
    if (occurrence_count(p.relator(), g) > 0 && exponent_sum(p.relator(), g) == 0) return g;
  return std::nullopt;
}

/// One row of the Case 1 renaming: `fresh` stands for t^subscript base t^-subscript.
struct RenamingEntry {
  GeneratorId fresh;
  GeneratorId base;
  std::int64_t subscript = 0;
  bool operator==(const RenamingEntry&) const = default;
};

struct Case1Result {
  GeneratorId pivot_t;
  GeneratorId pivot_b;
  /// The letter-by-letter image of the relator before any reduction; its
  /// expansion under the renaming is the relator itself.
  Word emitted;
  /// s: the cyclically reduced form of `emitted`.
  Word rewritten;
  std::int64_t subscript_min = 0;
  std::int64_t subscript_max = 0;
  /// Sorted by (base declaration position, subscript).
  std::vector<RenamingEntry> renaming;
  Presentation child;

  bool operator==(const Case1Result&) const = default;
};

/// Rewrites the relator over the conjugates x_i = t^i x t^-i by a running
/// prefix exponent of t. No rotation is applied, so expanding `emitted`
/// reproduces the relator exactly.
inline Case1Result case1_rewrite(const Presentation& p, const GeneratorId& t,
                                 GeneratorRegistry& registry) {
  const Word& r = p.relator();
  if (!p.has_generator(t)) throw PreconditionError("pivot '" + t.name() + "' is not a generator");
  if (exponent_sum(r, t) != 0)
    throw PreconditionError("nonzero exponent sum of pivot '" + t.name() + "'");
  if (occurrence_count(r, t) < 2)
    throw PreconditionError("fewer than two occurrences of pivot '" + t.name() + "'");
  if (occurrence_count(r, t) == r.size())
    throw PreconditionError("relator is a pure power of pivot '" + t.name() + "'");

  // Pass 1: subscripts of every non-t letter.
  struct Emit {
    GeneratorId base;
    std::int64_t subscript;
    int sign;
  };
  std::vector<Emit> emits;
  std::int64_t acc = 0;
  for (const auto& l : r.letters()) {
    if (l.gen == t)
      acc += l.sign;
    else
      emits.push_back({l.gen, acc, l.sign});
  }

  auto position = [&p](const GeneratorId& g) {
    const auto& gs = p.generators();
    return static_cast<std::size_t>(std::find(gs.begin(), gs.end(), g) - gs.begin());
  };
  std::map<std::pair<std::size_t, std::int64_t>, GeneratorId> fresh_of;
  for (const auto& e : emits) fresh_of.emplace(std::pair{position(e.base), e.subscript}, e.base);

  // Allocate fresh symbols in sorted order so names and uids are deterministic.
  Case1Result out{t, emits.front().base, {}, {}, 0, 0, {}, {}};
  for (auto& [key, g] : fresh_of) {
    const GeneratorId base = g;
    g = registry.subscripted(base, key.second);
    out.renaming.push_back({g, base, key.second});
  }

  std::vector<Letter> emitted;
  emitted.reserve(emits.size());
  for (const auto& e : emits)
    emitted.push_back({fresh_of.at({position(e.base), e.subscript}), e.sign});
  out.emitted = Word(std::move(emitted));
  out.rewritten = cyclic_reduce(out.emitted).core;

  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = std::numeric_limits<std::int64_t>::min();
  for (const auto& entry : out.renaming) {
    if (entry.base != out.pivot_b || occurrence_count(out.rewritten, entry.fresh) == 0) continue;
    lo = std::min(lo, entry.subscript);
    hi = std::max(hi, entry.subscript);
  }
  if (lo > hi) throw Error("internal: pivot family vanished from the rewritten relator");
  out.subscript_min = lo;
  out.subscript_max = hi;

  std::vector<GeneratorId> child_gens;
  for (const auto& entry : out.renaming)
    if (occurrence_count(out.rewritten, entry.fresh) > 0) child_gens.push_back(entry.fresh);
  out.child = Presentation(std::move(child_gens), out.rewritten);
  return out;
}

struct Case2Pair {
  GeneratorId u;
  GeneratorId v;
  bool operator==(const Case2Pair&) const = default;
};

/// Ordered pairs of distinct occurring generators in declaration order.
inline std::vector<Case2Pair> case2_candidates(const Presentation& p) {
  const auto occurring = letters_of(p);
  std::vector<Case2Pair> out;
  for (const auto& u : occurring)
    for (const auto& v : occurring)
      if (u != v) out.push_back({u, v});
  return out;
}

/// Picks the pair minimizing |alpha * beta|; ties go to declaration order.
inline Case2Pair choose_case2_pair(const Presentation& p) {
  const auto candidates = case2_candidates(p);
  if (candidates.empty())
    throw PreconditionError("fewer than two distinct generators in the relator");
  const Case2Pair* best = nullptr;
  std::int64_t best_cost = 0;
  for (const auto& c : candidates) {
    const std::int64_t alpha = exponent_sum(p.relator(), c.u);
    const std::int64_t beta = exponent_sum(p.relator(), c.v);
    if (alpha == 0 || beta == 0)
      throw PreconditionError("generator with zero exponent sum; Case 1 applies");
    const std::int64_t cost = std::llabs(alpha * beta);
    if (best == nullptr || cost < best_cost) {
      best = &c;
      best_cost = cost;
    }
  }
  return *best;
}

struct Case2Result {
  GeneratorId u;
  GeneratorId v;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  GeneratorId fresh_t;
  GeneratorId fresh_b;
  /// p: cyclically reduced image of the relator under u -> b t^-beta, v -> t^alpha.
  Word image_relator;
  /// C = <t, b, S \ {u, v} | p>
  Presentation embedded;

  bool operator==(const Case2Result&) const = default;
};

/// The substitution u -> b t^-beta, v -> t^alpha, identity elsewhere.
inline Substitution case2_map(const Presentation& p, const GeneratorId& u, const GeneratorId& v,
                              std::int64_t alpha, std::int64_t beta, const GeneratorId& t,
                              const GeneratorId& b) {
  Substitution psi;
  for (const auto& g : p.generators()) psi.emplace(g, Word({{g, 1}}));
  psi[u] = Word({{b, 1}}) * Word::power(t, -beta);
  psi[v] = Word::power(t, alpha);
  return psi;
}

inline Case2Result case2_substitute(const Presentation& p, const GeneratorId& u,
                                    const GeneratorId& v, GeneratorRegistry& registry) {
  const Word& r = p.relator();
  if (u == v) throw PreconditionError("Case 2 pair must be two distinct generators");
  if (!p.has_generator(u) || !p.has_generator(v))
    throw PreconditionError("Case 2 pair must consist of generators of the presentation");
  const std::int64_t alpha = exponent_sum(r, u);
  const std::int64_t beta = exponent_sum(r, v);
  if (alpha == 0) throw PreconditionError("zero exponent sum of '" + u.name() + "'");
  if (beta == 0) throw PreconditionError("zero exponent sum of '" + v.name() + "'");
  for (const auto& g : letters_of(p))
    if (occurrence_count(r, g) < 2)
      throw PreconditionError("generator '" + g.name() + "' occurs once; eliminate it first");

  const auto k = registry.next_fresh_index();
  const GeneratorId t = registry.fresh("t", k, "stable letter of the Case 2 embedding");
  const GeneratorId b = registry.fresh("b", k, "image generator of the Case 2 embedding");

  const Word p_word = cyclic_reduce(substitute(r, case2_map(p, u, v, alpha, beta, t, b))).core;
  if (exponent_sum(p_word, t) != 0)
    throw Error("internal: stable letter has nonzero exponent sum in the embedded relator");
  if (occurrence_count(p_word, b) == 0)
    throw Error("internal: image generator vanished from the embedded relator");

  std::vector<GeneratorId> gens{t, b};
  for (const auto& g : p.generators())
    if (g != u && g != v) gens.push_back(g);
  return {u, v, alpha, beta, t, b, p_word, Presentation(std::move(gens), p_word)};
}

}  // namespace magnus
