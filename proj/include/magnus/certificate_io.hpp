// Certificate documents (JSON, schema_version 1) and plain-text tree
// rendering.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "json.hpp"

#include "magnus/freegroup.hpp"
#include "magnus/presentation.hpp"
#include "magnus/tower.hpp"
#include "magnus/verify.hpp"

namespace magnus {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline void collect_generators(const CertificateNode& node, std::map<std::uint64_t, GeneratorId>& out) {
  auto add = [&out](const GeneratorId& g) { out.emplace(g.uid(), g); };
  for (const auto& g : node.input.generators()) add(g);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, step::FreeSplit>) {
          for (const auto& g : s.free_generators) add(g);
        } else if constexpr (std::is_same_v<T, step::SingleElim>) {
          add(s.eliminated);
        } else if constexpr (std::is_same_v<T, step::Case1HNN>) {
          add(s.data.pivot_t);
          add(s.data.pivot_b);
          for (const auto& e : s.data.renaming) {
            add(e.fresh);
            add(e.base);
          }
        } else if constexpr (std::is_same_v<T, step::Case2Embed>) {
          add(s.data.u);
          add(s.data.v);
          add(s.data.fresh_t);
          add(s.data.fresh_b);
        }
      },
      node.step);
  for (const auto& c : node.children) collect_generators(c, out);
}

inline Json generator_json(const GeneratorId& g) {
  Json j;
  j["uid"] = g.uid();
  j["name"] = g.name();
  if (const auto* s = std::get_if<origin::Subscripted>(&g.origin())) {
    j["origin"] = "subscripted";
    j["base"] = s->base->name();
    j["subscript"] = s->subscript;
  } else if (const auto* f = std::get_if<origin::Fresh>(&g.origin())) {
    j["origin"] = "fresh";
    j["reason"] = f->reason;
  } else {
    j["origin"] = "declared";
  }
  return j;
}

inline Json node_json(const CertificateNode& node) {
  Json j;
  j["kind"] = std::string(kind_name(node.step));
  j["input"] = to_string(node.input);
  j["bound"] = node.bound;
  struct Visitor {
    Json& j;
    void operator()(const step::FreeSplit& s) const {
      j["split_off_rank"] = s.split_off_rank;
      Json names = Json::array();
      for (const auto& g : s.free_generators) names.push_back(g.name());
      j["free_generators"] = names;
    }
    void operator()(const step::SingleElim& s) const {
      j["eliminated"] = s.eliminated.name();
      j["resulting_rank"] = s.resulting_rank;
    }
    void operator()(const step::Case1HNN& s) const {
      const auto& d = s.data;
      j["pivot_t"] = d.pivot_t.name();
      j["pivot_b"] = d.pivot_b.name();
      j["emitted"] = to_string(d.emitted);
      j["s"] = to_string(d.rewritten);
      j["m"] = d.subscript_min;
      j["M"] = d.subscript_max;
      Json rows = Json::array();
      for (const auto& e : d.renaming) rows.push_back(Json::array({e.fresh.name(), e.base.name(), e.subscript}));
      j["renaming"] = rows;
    }
    void operator()(const step::Case2Embed& s) const {
      const auto& d = s.data;
      j["u"] = d.u.name();
      j["v"] = d.v.name();
      j["alpha"] = d.alpha;
      j["beta"] = d.beta;
      j["t"] = d.fresh_t.name();
      j["b"] = d.fresh_b.name();
      j["p"] = to_string(d.image_relator);
    }
    void operator()(const step::FreeLeaf& s) const { j["rank"] = s.rank; }
    void operator()(const step::CyclicLeaf& s) const { j["order"] = s.order; }
  };
  std::visit(Visitor{j}, node.step);
  if (const auto* c = node.child()) j["child"] = node_json(*c);
  return j;
}

class CertificateReader {
 public:
  explicit CertificateReader(GeneratorRegistry& registry) : registry_(registry) {}

  CertificateNode read(const Json& doc) {
    if (!doc.is_object() || doc.value("schema_version", 0) != kSchemaVersion)
      throw Error("unsupported certificate schema_version");
    for (const auto& g : doc.at("generators")) {
      const auto name = g.at("name").get<std::string>();
      const auto kind = g.at("origin").get<std::string>();
      Origin org = origin::Declared{};
      if (kind == "subscripted") {
        org = origin::Subscripted{std::make_shared<const GeneratorId>(lookup(g.at("base").get<std::string>())),
                                  g.at("subscript").get<std::int64_t>()};
      } else if (kind == "fresh") {
        org = origin::Fresh{g.at("reason").get<std::string>()};
      } else if (kind != "declared") {
        throw Error("unknown generator origin '" + kind + "'");
      }
      names_.emplace(name, registry_.adopt(g.at("uid").get<std::uint64_t>(), name, std::move(org)));
    }
    return node(doc.at("root"));
  }

 private:
  GeneratorId lookup(const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end()) throw Error("certificate references unknown generator '" + name + "'");
    return it->second;
  }

  Word word(const Json& j) const {
    return PresentationParser(j.get<std::string>(), true)
        .parse_word([this](const std::string& name, std::size_t) { return lookup(name); });
  }

  Presentation presentation(const Json& j) const {
    return PresentationParser(j.get<std::string>(), true)
        .parse([this](const std::string& name) -> std::optional<GeneratorId> { return lookup(name); });
  }

  CertificateNode node(const Json& j) {
    CertificateNode n;
    n.input = presentation(j.at("input"));
    n.bound = j.at("bound").get<int>();
    if (j.contains("child")) n.children.push_back(node(j.at("child")));
    const auto kind = j.at("kind").get<std::string>();
    auto child_input = [&n]() -> const Presentation& {
      if (n.children.empty()) throw Error("certificate node is missing its child");
      return n.children.front().input;
    };

    if (kind == "free_split") {
      step::FreeSplit s;
      for (const auto& g : j.at("free_generators")) s.free_generators.push_back(lookup(g.get<std::string>()));
      s.split_off_rank = j.at("split_off_rank").get<std::size_t>();
      n.step = std::move(s);
    } else if (kind == "single_elim") {
      n.step = step::SingleElim{lookup(j.at("eliminated").get<std::string>()),
                                j.at("resulting_rank").get<std::size_t>()};
    } else if (kind == "case1_hnn") {
      std::vector<RenamingEntry> renaming;
      for (const auto& row : j.at("renaming"))
        renaming.push_back({lookup(row.at(0).get<std::string>()), lookup(row.at(1).get<std::string>()),
                            row.at(2).get<std::int64_t>()});
      n.step = step::Case1HNN{{lookup(j.at("pivot_t").get<std::string>()),
                               lookup(j.at("pivot_b").get<std::string>()), word(j.at("emitted")),
                               word(j.at("s")), j.at("m").get<std::int64_t>(),
                               j.at("M").get<std::int64_t>(), std::move(renaming), child_input()}};
    } else if (kind == "case2_embed") {
      n.step = step::Case2Embed{{lookup(j.at("u").get<std::string>()), lookup(j.at("v").get<std::string>()),
                                 j.at("alpha").get<std::int64_t>(), j.at("beta").get<std::int64_t>(),
                                 lookup(j.at("t").get<std::string>()), lookup(j.at("b").get<std::string>()),
                                 word(j.at("p")), child_input()}};
    } else if (kind == "free_leaf") {
      n.step = step::FreeLeaf{j.at("rank").get<std::size_t>()};
    } else if (kind == "cyclic_leaf") {
      n.step = step::CyclicLeaf{j.at("order").get<std::size_t>()};
    } else {
      throw Error("unknown certificate node kind '" + kind + "'");
    }
    return n;
  }

  GeneratorRegistry& registry_;
  std::map<std::string, GeneratorId> names_;
};

}  // namespace detail

inline Json report_json(const BoundReport& r) {
  Json j;
  j["paper_bound"] = r.paper_bound;
  j["tower_bound"] = r.tower_bound;
  j["hnn_steps"] = r.hnn_steps;
  j["node_count"] = r.node_count;
  return j;
}

inline Json certificate_json(const CertificateNode& root) {
  std::map<std::uint64_t, GeneratorId> gens;
  detail::collect_generators(root, gens);
  Json table = Json::array();
  for (const auto& [uid, g] : gens) table.push_back(detail::generator_json(g));

  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["presentation"] = to_string(root.input);
  doc["report"] = report_json(report(root));
  doc["generators"] = table;
  doc["root"] = detail::node_json(root);
  return doc;
}

/// Deterministic pretty-printed certificate document.
inline std::string emit_certificate(const CertificateNode& root) {
  return certificate_json(root).dump(2) + "\n";
}

/// Rebuilds a certificate tree, adopting its generators into `registry`
/// (which should be empty). Stored bounds and step data are taken as-is;
/// run verify_certificate() on the result.
inline CertificateNode parse_certificate(const std::string& text, GeneratorRegistry& registry) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed certificate document: ") + e.what());
  }
  try {
    return detail::CertificateReader(registry).read(doc);
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed certificate document: ") + e.what());
  }
}

/// Parses a document and checks it end to end: the tree, the top-level
/// presentation it claims, and the stored report. Throws Error when the
/// document cannot be read at all.
inline VerificationReport verify_document(const std::string& text, GeneratorRegistry& registry) {
  const CertificateNode root = parse_certificate(text, registry);
  const Json doc = Json::parse(text);
  VerificationReport rep = verify_certificate(root);
  const std::string kind(kind_name(root.step));
  const auto claimed = doc.value("presentation", Json());
  if (!claimed.is_string() || claimed.get<std::string>() != to_string(root.input))
    rep.violations.push_back({0, kind, "claimed presentation", "top-level presentation does not match the root"});
  if (doc.value("report", Json()) != report_json(report(root)))
    rep.violations.push_back({0, kind, "report", "stored report does not match the tree"});
  return rep;
}

/// Indented, one line per node.
inline std::string render_tree(const CertificateNode& root) {
  std::ostringstream out;
  std::size_t depth = 0;
  for (const CertificateNode* n = &root; n != nullptr; n = n->child(), ++depth) {
    out << std::string(2 * depth, ' ') << kind_name(n->step) << "  " << to_string(n->input)
        << "  [bound " << n->bound << "]";
    struct Visitor {
      std::ostringstream& out;
      void operator()(const step::FreeSplit& s) const {
        out << "  split off " << s.split_off_rank << ":";
        for (const auto& g : s.free_generators) out << ' ' << g.name();
      }
      void operator()(const step::SingleElim& s) const {
        out << "  eliminate " << s.eliminated.name() << ", free of rank " << s.resulting_rank;
      }
      void operator()(const step::Case1HNN& s) const {
        out << "  t = " << s.data.pivot_t.name() << ", b = " << s.data.pivot_b.name()
            << ", s = " << to_string(s.data.rewritten) << ", m = " << s.data.subscript_min
            << ", M = " << s.data.subscript_max;
      }
      void operator()(const step::Case2Embed& s) const {
        out << "  " << s.data.u.name() << " -> " << s.data.fresh_b.name() << ' '
            << s.data.fresh_t.name() << "^" << -s.data.beta << ", " << s.data.v.name() << " -> "
            << s.data.fresh_t.name() << "^" << s.data.alpha << ", p = " << to_string(s.data.image_relator);
      }
      void operator()(const step::FreeLeaf& s) const { out << "  free of rank " << s.rank; }
      void operator()(const step::CyclicLeaf& s) const { out << "  cyclic of order " << s.order; }
    };
    std::visit(Visitor{out}, n->step);
    out << '\n';
  }
  return out.str();
}

}  // namespace magnus
