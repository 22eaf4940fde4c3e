// Command-line front end. run_cli() is the whole program; tools/magnus.cpp
// only forwards argv and the standard streams.
//
// Exit status: 0 success, 1 usage or parse error, 2 verification failure.

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "magnus/certificate_io.hpp"
#include "magnus/presentation.hpp"
#include "magnus/random.hpp"
#include "magnus/tower.hpp"
#include "magnus/verify.hpp"

namespace magnus {

enum ExitCode : int { kExitOk = 0, kExitParseError = 1, kExitVerifyFailed = 2 };

namespace detail {

struct Decomposition {
  CertificateNode tower;
  std::optional<CertificateNode> best;  // only with --all-pivots
};

inline Decomposition decompose(const Presentation& p, GeneratorRegistry& registry, bool all_pivots) {
  Decomposition d{build_tower(p, registry), std::nullopt};
  if (all_pivots) d.best = build_best_tower(p, registry);
  return d;
}

inline Json bound_json(const Presentation& p, const Decomposition& d) {
  Json j;
  j["presentation"] = to_string(p);
  j["relator_length"] = p.relator_length();
  const Json rep = report_json(report(d.tower));
  for (const auto& [k, v] : rep.items()) j[k] = v;
  if (d.best) j["best_tower_bound"] = d.best->bound;
  return j;
}

inline void print_violations(const VerificationReport& r, std::ostream& err) {
  for (const auto& v : r.violations)
    err << "violation at depth " << v.depth << " (" << v.kind << "): " << v.check << ": " << v.detail
        << '\n';
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct BatchRow {
  std::string input;
  std::optional<std::size_t> length;
  std::optional<int> paper_bound;
  std::optional<int> tower_bound;
  std::optional<int> best_tower_bound;
  bool verified = false;
  std::string error;
};

/// `given` presentations must have been built in `shared`; text lines get a
/// registry of their own.
inline BatchRow batch_row(const std::string& line, const std::optional<Presentation>& given,
                          GeneratorRegistry& shared, bool all_pivots) {
  BatchRow row{line, {}, {}, {}, {}, false, {}};
  try {
    GeneratorRegistry own;
    GeneratorRegistry& registry = given ? shared : own;
    const Presentation p = given ? *given : parse_presentation(line, registry);
    const auto d = decompose(p, registry, all_pivots);
    const auto rep = report(d.tower);
    row.input = to_string(p);
    row.length = p.relator_length();
    row.paper_bound = rep.paper_bound;
    row.tower_bound = rep.tower_bound;
    if (d.best) row.best_tower_bound = d.best->bound;
    const auto v = verify_certificate(d.tower);
    row.verified = v.ok();
    if (!v.ok()) row.error = v.violations.front().check;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decompose one-relator group presentations and certify asdim bounds", "magnus"};
  app.require_subcommand(1);

  std::string text;
  std::string path;
  bool json = false;
  bool all_pivots = false;
  std::uint64_t seed = 1;
  std::vector<std::size_t> random_spec;

  auto* bound_cmd = app.add_subcommand("bound", "Print the ceil(|r|/2) bound and the tower bound");
  auto* tree_cmd = app.add_subcommand("tree", "Print the decomposition tree");
  auto* certify_cmd = app.add_subcommand("certify", "Emit a certificate document and verify it");
  for (auto* cmd : {bound_cmd, tree_cmd, certify_cmd}) {
    cmd->add_option("presentation", text, "e.g. \"<a, b | [a,b]>\"")->required();
    cmd->add_flag("--all-pivots", all_pivots, "Try every pivot and pair choice; report the best bound");
  }
  bound_cmd->add_flag("--json", json, "Structured output");
  tree_cmd->add_flag("--json", json, "Emit the certificate document instead of the text tree");

  auto* verify_cmd = app.add_subcommand("verify", "Re-verify a certificate document");
  verify_cmd->add_option("file", path, "Certificate document")->required();

  auto* batch_cmd = app.add_subcommand("batch", "One presentation per line; tabular results");
  batch_cmd->add_option("file", path, "Input file ('#' starts a comment line)");
  batch_cmd->add_option("--random", random_spec, "Generate <count> <maxlen> <gens> random relators")
      ->expected(3);
  batch_cmd->add_option("--seed", seed, "Seed for --random");
  batch_cmd->add_flag("--json", json, "Structured output");
  batch_cmd->add_flag("--all-pivots", all_pivots, "Also report the best tower bound over all choices");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParseError;
  }

  try {
    if (bound_cmd->parsed() || tree_cmd->parsed() || certify_cmd->parsed()) {
      GeneratorRegistry registry;
      const Presentation p = parse_presentation(text, registry);
      const auto d = detail::decompose(p, registry, all_pivots);
      const CertificateNode& shown = d.best ? *d.best : d.tower;

      if (bound_cmd->parsed()) {
        const auto j = detail::bound_json(p, d);
        if (json) {
          out << j.dump(2) << '\n';
        } else {
          for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        }
        return kExitOk;
      }
      if (tree_cmd->parsed()) {
        out << (json ? emit_certificate(shown) : render_tree(shown));
        return kExitOk;
      }
      out << emit_certificate(shown);
      const auto v = verify_certificate(shown);
      if (!v.ok()) {
        detail::print_violations(v, err);
        return kExitVerifyFailed;
      }
      err << "certificate verified: asdim <= " << shown.bound;
      // The ceil(|r|/2) bound is only claimed for a nontrivial relator.
      if (p.relator_length() > 0) err << " <= " << ceil_half(p.relator_length());
      err << '\n';
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const std::string text = detail::read_file(path);
      GeneratorRegistry registry;
      const auto v = verify_document(text, registry);
      GeneratorRegistry scratch;
      const auto root = parse_certificate(text, scratch);
      if (!v.ok()) {
        detail::print_violations(v, err);
        out << "FAILED\n";
        return kExitVerifyFailed;
      }
      out << "ok: " << to_string(root.input) << " has asdim <= " << root.bound << '\n';
      return kExitOk;
    }

    // batch
    std::vector<std::string> lines;
    std::vector<std::optional<Presentation>> given;
    GeneratorRegistry random_registry;
    if (!random_spec.empty()) {
      for (auto& p : random_presentations(random_registry, random_spec[0], random_spec[1], random_spec[2], seed)) {
        lines.push_back(to_string(p));
        given.emplace_back(std::move(p));
      }
    } else if (!path.empty()) {
      std::istringstream in(detail::read_file(path));
      for (std::string line; std::getline(in, line);) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        line.erase(line.find_last_not_of(" \t\r") + 1);
        lines.push_back(line);
        given.emplace_back(std::nullopt);
      }
    } else {
      err << "batch: give an input file or --random <count> <maxlen> <gens>\n";
      return kExitParseError;
    }

    int status = kExitOk;
    Json rows = Json::array();
    if (!json) {
      out << "presentation\tlength\tpaper_bound\ttower_bound\t";
      if (all_pivots) out << "best_tower_bound\t";
      out << "verified\n";
    }
    auto field = [](const auto& o) { return o ? std::to_string(*o) : std::string("-"); };
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto row = detail::batch_row(lines[i], given[i], random_registry, all_pivots);
      if (!row.length) status = std::max<int>(status, kExitParseError);
      else if (!row.verified) status = kExitVerifyFailed;
      if (json) {
        Json j;
        j["presentation"] = row.input;
        if (row.length) {
          j["relator_length"] = *row.length;
          j["paper_bound"] = *row.paper_bound;
          j["tower_bound"] = *row.tower_bound;
          if (row.best_tower_bound) j["best_tower_bound"] = *row.best_tower_bound;
          j["verified"] = row.verified;
        }
        if (!row.error.empty()) j["error"] = row.error;
        rows.push_back(j);
      } else {
        out << row.input << '\t' << field(row.length) << '\t' << field(row.paper_bound) << '\t'
            << field(row.tower_bound) << '\t';
        if (all_pivots) out << field(row.best_tower_bound) << '\t';
        if (!row.length) out << "error: " << row.error;
        else out << (row.verified ? "yes" : "NO (" + row.error + ")");
        out << '\n';
      }
    }
    if (json) out << rows.dump(2) << '\n';
    return status;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParseError;
  }
}

}  // namespace magnus
