// The recursive decomposition driver. build_tower() applies the guards
//
//   1. empty relator                      -> free leaf of rank |S|
//   2. some generator absent from r       -> free split, recurse on the core
//   3. |r| = 1                            -> free leaf of rank |S| - 1
//   4. a generator occurring exactly once -> elimination, free leaf of rank |S| - 1
//   5. r = a^n on a single generator      -> finite cyclic leaf of order |n|
//   6. a generator with exponent sum 0    -> HNN step, recurse on the rewritten child
//   7. otherwise                          -> embedding step, recurse on the embedded group
//
// in that order, each guard establishing the preconditions of the next. The
// asdim bound is propagated with: free -> 1 (0 if trivial), finite -> 0,
// HNN -> 1 + base, free product -> max(factors, 1), subgroup -> over-group.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "magnus/freegroup.hpp"
#include "magnus/presentation.hpp"
#include "magnus/rewriting.hpp"

namespace magnus {

namespace step {

struct FreeSplit {
  std::vector<GeneratorId> free_generators;
  std::size_t split_off_rank = 0;
  bool operator==(const FreeSplit&) const = default;
};

struct SingleElim {
  GeneratorId eliminated;
  std::size_t resulting_rank = 0;
  bool operator==(const SingleElim&) const = default;
};

struct Case1HNN {
  Case1Result data;
  bool operator==(const Case1HNN&) const = default;
};

struct Case2Embed {
  Case2Result data;
  bool operator==(const Case2Embed&) const = default;
};

struct FreeLeaf {
  std::size_t rank = 0;
  bool operator==(const FreeLeaf&) const = default;
};

struct CyclicLeaf {
  std::size_t order = 0;
  bool operator==(const CyclicLeaf&) const = default;
};

}  // namespace step

using Step = std::variant<step::FreeSplit, step::SingleElim, step::Case1HNN, step::Case2Embed,
                          step::FreeLeaf, step::CyclicLeaf>;

/// One node of the decomposition certificate. Inner nodes own exactly one
/// child: the core of a free split, the free group left by an elimination,
/// the HNN base, or the embedding's over-group.
struct CertificateNode {
  Presentation input;
  Step step;
  int bound = 0;
  std::vector<CertificateNode> children;

  const CertificateNode* child() const { return children.empty() ? nullptr : &children.front(); }
  CertificateNode* child() { return children.empty() ? nullptr : &children.front(); }

  bool operator==(const CertificateNode&) const = default;
};

inline std::string_view kind_name(const Step& s) {
  struct Visitor {
    std::string_view operator()(const step::FreeSplit&) const { return "free_split"; }
    std::string_view operator()(const step::SingleElim&) const { return "single_elim"; }
    std::string_view operator()(const step::Case1HNN&) const { return "case1_hnn"; }
    std::string_view operator()(const step::Case2Embed&) const { return "case2_embed"; }
    std::string_view operator()(const step::FreeLeaf&) const { return "free_leaf"; }
    std::string_view operator()(const step::CyclicLeaf&) const { return "cyclic_leaf"; }
  };
  return std::visit(Visitor{}, s);
}

inline int ceil_half(std::size_t n) { return static_cast<int>((n + 1) / 2); }

inline int free_group_bound(std::size_t rank) { return rank == 0 ? 0 : 1; }

/// Bound of a node given the bound of its child (ignored for leaves).
inline int local_bound(const Step& s, int child_bound) {
  struct Visitor {
    int child;
    int operator()(const step::FreeSplit& n) const {
      return n.split_off_rank == 0 ? child : std::max(child, 1);
    }
    int operator()(const step::SingleElim& n) const { return free_group_bound(n.resulting_rank); }
    int operator()(const step::Case1HNN&) const { return 1 + child; }
    int operator()(const step::Case2Embed&) const { return child; }
    int operator()(const step::FreeLeaf& n) const { return free_group_bound(n.rank); }
    int operator()(const step::CyclicLeaf&) const { return 0; }
  };
  return std::visit(Visitor{child_bound}, s);
}

/// Recomputes the bound from the tree structure, ignoring stored bounds.
inline int bound_of(const CertificateNode& node) {
  const int child = node.child() != nullptr ? bound_of(*node.child()) : 0;
  return local_bound(node.step, child);
}

namespace detail {

inline CertificateNode make_node(const Presentation& input, Step s, std::vector<CertificateNode> kids) {
  CertificateNode n{input, std::move(s), 0, std::move(kids)};
  n.bound = local_bound(n.step, n.child() != nullptr ? n.child()->bound : 0);
  return n;
}

inline CertificateNode free_leaf(const Presentation& input, std::size_t rank) {
  return make_node(input, step::FreeLeaf{rank}, {});
}

/// Chooses among the admissible HNN pivots or embedding pairs. The default
/// policy takes the first choice; the exhaustive policy keeps the subtree
/// with the smallest bound (earliest on ties).
template <bool Exhaustive>
CertificateNode build(const Presentation& p, GeneratorRegistry& registry) {
  const Word& r = p.relator();
  if (r.empty()) return free_leaf(p, p.generators().size());

  auto split = split_free_part(p);
  if (!split.free_generators.empty()) {
    const std::size_t rank = split.free_generators.size();
    return make_node(p, step::FreeSplit{std::move(split.free_generators), rank},
                     {build<Exhaustive>(split.core, registry)});
  }

  if (r.size() == 1) return free_leaf(p, p.generators().size() - 1);

  if (auto g = find_single_occurrence(p)) {
    std::vector<GeneratorId> rest;
    for (const auto& x : p.generators())
      if (x != *g) rest.push_back(x);
    const std::size_t rank = rest.size();
    return make_node(p, step::SingleElim{*g, rank},
                     {free_leaf(Presentation(std::move(rest), Word()), rank)});
  }

  if (p.generators().size() == 1)
    return make_node(p, step::CyclicLeaf{r.size()}, {});

  auto keep_best = [](std::optional<CertificateNode>& best, CertificateNode candidate) {
    if (!best || candidate.bound < best->bound) best = std::move(candidate);
  };

  if (auto t = find_zero_exponent(p)) {
    if constexpr (!Exhaustive) {
      auto data = case1_rewrite(p, *t, registry);
      auto child = build<Exhaustive>(data.child, registry);
      return make_node(p, step::Case1HNN{std::move(data)}, {std::move(child)});
    } else {
      std::optional<CertificateNode> best;
      for (const auto& g : p.generators()) {
        if (exponent_sum(r, g) != 0) continue;
        auto data = case1_rewrite(p, g, registry);
        auto child = build<Exhaustive>(data.child, registry);
        keep_best(best, make_node(p, step::Case1HNN{std::move(data)}, {std::move(child)}));
      }
      return std::move(*best);
    }
  }

  auto embed = [&](const Case2Pair& pair) {
    auto data = case2_substitute(p, pair.u, pair.v, registry);
    auto inner = build<Exhaustive>(data.embedded, registry);
    return make_node(p, step::Case2Embed{std::move(data)}, {std::move(inner)});
  };
  if constexpr (!Exhaustive) {
    return embed(choose_case2_pair(p));
  } else {
    // Heuristic choice first so that it wins ties.
    const Case2Pair preferred = choose_case2_pair(p);
    std::optional<CertificateNode> best;
    keep_best(best, embed(preferred));
    for (const auto& pair : case2_candidates(p))
      if (pair != preferred) keep_best(best, embed(pair));
    return std::move(*best);
  }
}

}  // namespace detail

/// Builds the decomposition tower using the deterministic default choices.
inline CertificateNode build_tower(const Presentation& p, GeneratorRegistry& registry) {
  return detail::build<false>(p, registry);
}

/// Tries every admissible pivot and embedding pair at every level and
/// returns a tower with the smallest bound found. Exponential in depth.
inline CertificateNode build_best_tower(const Presentation& p, GeneratorRegistry& registry) {
  return detail::build<true>(p, registry);
}

struct BoundReport {
  int paper_bound = 0;
  int tower_bound = 0;
  std::size_t hnn_steps = 0;
  std::size_t node_count = 0;
};

inline BoundReport report(const CertificateNode& root) {
  BoundReport out{ceil_half(root.input.relator_length()), bound_of(root), 0, 0};
  for (const CertificateNode* n = &root; n != nullptr; n = n->child()) {
    ++out.node_count;
    if (std::holds_alternative<step::Case1HNN>(n->step)) ++out.hnn_steps;
  }
  return out;
}

/// Number of HNN and embedding steps along the tower.
inline std::size_t rewriting_depth(const CertificateNode& root) {
  std::size_t d = 0;
  for (const CertificateNode* n = &root; n != nullptr; n = n->child())
    if (std::holds_alternative<step::Case1HNN>(n->step) ||
        std::holds_alternative<step::Case2Embed>(n->step))
      ++d;
  return d;
}

}  // namespace magnus
