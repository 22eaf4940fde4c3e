// Independent re-verification of a decomposition certificate.
//
// Every recorded claim is re-derived from free-group primitives only. The
// step functions that built the tree are never called, so a builder bug
// cannot certify itself.

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "magnus/freegroup.hpp"
#include "magnus/presentation.hpp"
#include "magnus/tower.hpp"

namespace magnus {

struct Violation {
  std::size_t depth = 0;
  std::string kind;
  std::string check;
  std::string detail;
};

struct VerificationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view check) const {
    for (const auto& v : violations)
      if (v.check == check) return true;
    return false;
  }
};

namespace detail {

class Verifier {
 public:
  VerificationReport run(const CertificateNode& root) {
    visit(root, 0);
    return std::move(report_);
  }

 private:
  void fail(std::string check, std::string detail) {
    report_.violations.push_back({depth_, kind_, std::move(check), std::move(detail)});
  }

  void expect(bool cond, const char* check, const std::string& detail) {
    if (!cond) fail(check, detail);
  }

  void visit(const CertificateNode& node, std::size_t depth) {
    depth_ = depth;
    kind_ = std::string(kind_name(node.step));
    const Word& r = node.input.relator();

    expect(is_cyclically_reduced(r), "presentation", "relator is not cyclically reduced");
    expect(node.bound == bound_of(node), "bound arithmetic",
           "stored bound " + std::to_string(node.bound) + ", recomputed " +
               std::to_string(bound_of(node)));

    const bool leaf = std::holds_alternative<step::FreeLeaf>(node.step) ||
                      std::holds_alternative<step::CyclicLeaf>(node.step);
    if (node.children.size() != (leaf ? 0u : 1u)) {
      fail("tree shape", "node has " + std::to_string(node.children.size()) + " children");
    } else {
      std::visit([&](const auto& s) { check(node, s); }, node.step);
    }

    for (const auto& c : node.children) visit(c, depth + 1);
  }

  void check(const CertificateNode& node, const step::FreeSplit& s) {
    const auto& in = node.input;
    const auto& child = node.children.front().input;
    expect(s.split_off_rank == s.free_generators.size(), "free split",
           "split-off rank does not match the split-off generators");
    std::set<GeneratorId> seen;
    for (const auto& g : s.free_generators) {
      expect(in.has_generator(g), "free split", "'" + g.name() + "' is not a generator");
      expect(occurrence_count(in.relator(), g) == 0, "free split",
             "'" + g.name() + "' occurs in the relator");
      expect(seen.insert(g).second, "free split", "'" + g.name() + "' listed twice");
    }
    std::vector<GeneratorId> rest;
    for (const auto& g : in.generators())
      if (seen.count(g) == 0) rest.push_back(g);
    expect(child.generators() == rest, "free split", "core generators do not match");
    expect(child.relator() == in.relator(), "free split", "core relator differs from the parent");
  }

  void check(const CertificateNode& node, const step::SingleElim& s) {
    const auto& in = node.input;
    const auto& child = node.children.front();
    expect(in.has_generator(s.eliminated), "single occurrence",
           "'" + s.eliminated.name() + "' is not a generator");
    expect(occurrence_count(in.relator(), s.eliminated) == 1, "single occurrence",
           "'" + s.eliminated.name() + "' does not occur exactly once");
    expect(s.resulting_rank + 1 == in.generators().size(), "single occurrence",
           "resulting rank is not |S| - 1");
    std::vector<GeneratorId> rest;
    for (const auto& g : in.generators())
      if (g != s.eliminated) rest.push_back(g);
    expect(std::holds_alternative<step::FreeLeaf>(child.step) && child.input.relator().empty() &&
               child.input.generators() == rest,
           "single occurrence", "child is not the free group on the remaining generators");
  }

  void check(const CertificateNode& node, const step::FreeLeaf& s) {
    const auto& in = node.input;
    const bool empty_relator = in.relator().empty() && s.rank == in.generators().size();
    const bool primitive = in.relator().size() == 1 && s.rank + 1 == in.generators().size();
    expect(empty_relator || primitive, "leaf shape",
           "free leaf of rank " + std::to_string(s.rank) + " does not match " + to_string(in));
  }

  void check(const CertificateNode& node, const step::CyclicLeaf& s) {
    const auto& in = node.input;
    const Word& r = in.relator();
    bool ok = in.generators().size() == 1 && r.size() >= 2 && s.order == r.size();
    for (const auto& l : r.letters()) ok = ok && l == r[0];
    expect(ok, "leaf shape",
           "cyclic leaf of order " + std::to_string(s.order) + " does not match " + to_string(in));
  }

  void check(const CertificateNode& node, const step::Case1HNN& s) {
    const auto& d = s.data;
    const auto& in = node.input;
    const Word& r = in.relator();
    const GeneratorId& t = d.pivot_t;

    expect(in.has_generator(t), "pivot", "'" + t.name() + "' is not a generator");
    expect(exponent_sum(r, t) == 0, "pivot exponent sum", "exponent sum of the pivot is nonzero");
    expect(occurrence_count(r, t) >= 2, "pivot occurrences", "pivot occurs fewer than twice");
    // The base group only carries the conjugates that occur in s, which is
    // the whole base only when no generator is absent from r.
    for (const auto& g : in.generators())
      expect(occurrence_count(r, g) > 0, "generators occur",
             "'" + g.name() + "' is absent from the relator; split it off first");

    Substitution expansion;
    std::set<std::pair<GeneratorId, std::int64_t>> pairs;
    for (const auto& e : d.renaming) {
      expect(!in.has_generator(e.fresh), "renaming", "'" + e.fresh.name() + "' is not fresh");
      expect(in.has_generator(e.base) && e.base != t, "renaming",
             "base '" + e.base.name() + "' is not a non-pivot generator");
      expect(pairs.insert({e.base, e.subscript}).second, "renaming",
             "conjugate of '" + e.base.name() + "' listed twice");
      expect(occurrence_count(d.emitted, e.fresh) > 0, "renaming",
             "'" + e.fresh.name() + "' is unused");
      expect(expansion.emplace(e.fresh, Word::power(t, e.subscript) * Word({{e.base, 1}}) *
                                            Word::power(t, -e.subscript))
                 .second,
             "renaming", "'" + e.fresh.name() + "' renamed twice");
    }

    try {
      expect(substitute(d.emitted, expansion) == r, "expansion mismatch",
             "expanding the emitted word does not reproduce the relator");
    } catch (const MissingImageError& e) {
      fail("expansion mismatch", e.what());
    }
    const Word core = cyclic_reduce(d.emitted).core;
    expect(core == d.rewritten, "expansion mismatch",
           "rewritten relator is not the cyclic reduction of the emitted word");
    expect(d.rewritten.size() + 2 <= r.size(), "length decrease",
           "|s| = " + std::to_string(d.rewritten.size()) + " exceeds |r| - 2");

    const RenamingEntry* first = nullptr;
    if (!d.emitted.empty())
      for (const auto& e : d.renaming)
        if (e.fresh == d.emitted[0].gen) first = &e;
    expect(first != nullptr && first->base == d.pivot_b, "pivot_b",
           "pivot_b is not the base of the first emitted letter");

    bool any = false;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    for (const auto& e : d.renaming) {
      if (e.base != d.pivot_b || occurrence_count(d.rewritten, e.fresh) == 0) continue;
      lo = any ? std::min(lo, e.subscript) : e.subscript;
      hi = any ? std::max(hi, e.subscript) : e.subscript;
      any = true;
    }
    expect(any && lo == d.subscript_min && hi == d.subscript_max, "subscript range",
           "recorded m = " + std::to_string(d.subscript_min) + ", M = " +
               std::to_string(d.subscript_max) + " do not match s");

    std::vector<GeneratorId> gens;
    for (const auto& e : d.renaming)
      if (occurrence_count(d.rewritten, e.fresh) > 0) gens.push_back(e.fresh);
    const auto& child = node.children.front().input;
    expect(d.child == child && child.relator() == d.rewritten && child.generators() == gens,
           "child presentation", "child presentation does not match s");
  }

  void check(const CertificateNode& node, const step::Case2Embed& s) {
    const auto& d = s.data;
    const auto& in = node.input;
    const Word& r = in.relator();

    expect(in.has_generator(d.u) && in.has_generator(d.v) && d.u != d.v, "embedding pair",
           "u and v must be distinct generators");
    expect(d.alpha == exponent_sum(r, d.u) && d.alpha != 0, "exponent sums",
           "alpha = " + std::to_string(d.alpha) + " does not match");
    expect(d.beta == exponent_sum(r, d.v) && d.beta != 0, "exponent sums",
           "beta = " + std::to_string(d.beta) + " does not match");
    expect(d.fresh_t != d.fresh_b && !in.has_generator(d.fresh_t) && !in.has_generator(d.fresh_b),
           "fresh generators", "t and b must be new, distinct generators");

    // u -> b t^-beta, v -> t^alpha
    Substitution psi;
    for (const auto& g : in.generators()) psi.emplace(g, Word({{g, 1}}));
    psi[d.u] = Word({{d.fresh_b, 1}}) * Word::power(d.fresh_t, -d.beta);
    psi[d.v] = Word::power(d.fresh_t, d.alpha);
    const Word image = substitute(r, psi);
    const Word& p = d.image_relator;
    expect(is_cyclically_reduced(p) && equal_as_cyclic_words(p, image), "image relator",
           "p is not the cyclic reduction of the image of r");
    expect(exponent_sum(p, d.fresh_t) == 0, "stable letter exponent sum",
           "exponent sum of t in p is nonzero");
    expect(occurrence_count(p, d.fresh_b) >= 1, "image relator", "b does not occur in p");
    expect(p.size() - occurrence_count(p, d.fresh_t) + 2 <= r.size(), "length decrease",
           "p has more than |r| - 2 letters other than t");

    std::vector<GeneratorId> gens{d.fresh_t, d.fresh_b};
    for (const auto& g : in.generators())
      if (g != d.u && g != d.v) gens.push_back(g);
    const auto& child = node.children.front().input;
    expect(d.embedded.generators() == gens && d.embedded.relator() == p && child == d.embedded,
           "embedded presentation", "embedded presentation does not match p");
  }

  VerificationReport report_;
  std::size_t depth_ = 0;
  std::string kind_;
};

}  // namespace detail

inline VerificationReport verify_certificate(const CertificateNode& root) {
  return detail::Verifier().run(root);
}

/// As above, and the root must certify exactly `claimed`. Generators are
/// compared by name, so `claimed` may come from a different registry.
inline VerificationReport verify_certificate(const CertificateNode& root, const Presentation& claimed) {
  auto rep = verify_certificate(root);
  if (to_string(root.input) != to_string(claimed))
    rep.violations.insert(rep.violations.begin(),
                          {0, std::string(kind_name(root.step)), "claimed presentation",
                           "root certifies " + to_string(root.input) + ", not " + to_string(claimed)});
  return rep;
}

}  // namespace magnus
