// One-relator presentations <S | r> and their text grammar:
//
//   presentation := "<"? genlist "|" word ">"?
//   genlist      := ident ("," ident)*
//   word         := term+ | "1"
//   term         := ident power? | "[" ident "," ident "]" power?
//   power        := "^" "-"? digits
//
// Whitespace between tokens is ignored.

#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magnus/freegroup.hpp"

namespace magnus {

class Presentation {
 public:
  Presentation() = default;

  /// Stores the cyclically reduced core of `relator`. Throws if generators
  /// repeat or the relator uses a generator not in the list.
  Presentation(std::vector<GeneratorId> generators, const Word& relator)
      : generators_(std::move(generators)), relator_(cyclic_reduce(relator).core) {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = i + 1; j < generators_.size(); ++j)
        if (generators_[i] == generators_[j])
          throw Error("duplicate generator '" + generators_[i].name() + "'");
    for (const auto& l : relator_.letters())
      if (!has_generator(l.gen))
        throw Error("relator uses undeclared generator '" + l.gen.name() + "'");
  }

  const std::vector<GeneratorId>& generators() const { return generators_; }
  const Word& relator() const { return relator_; }
  std::size_t relator_length() const { return relator_.size(); }

  bool has_generator(const GeneratorId& g) const {
    return std::find(generators_.begin(), generators_.end(), g) != generators_.end();
  }

  bool operator==(const Presentation&) const = default;

 private:
  std::vector<GeneratorId> generators_;
  Word relator_;
};

/// Generators occurring in the relator, in declaration order.
inline std::vector<GeneratorId> letters_of(const Presentation& p) {
  std::vector<GeneratorId> out;
  for (const auto& g : p.generators())
    if (occurrence_count(p.relator(), g) > 0) out.push_back(g);
  return out;
}

/// Runs of equal letters are written as powers; the empty word is "1".
inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  const auto ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const auto run = static_cast<std::int64_t>(j - i) * ls[i].sign;
    if (!out.empty()) out += ' ';
    out += ls[i].gen.name();
    if (run != 1) out += "^" + std::to_string(run);
    i = j;
  }
  return out;
}

inline std::string to_string(const Presentation& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.generators().size(); ++i) {
    if (i != 0) out += ", ";
    out += p.generators()[i].name();
  }
  out += " | " + to_string(p.relator()) + ">";
  return out;
}

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error("parse error at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

using NameResolver = std::function<std::optional<GeneratorId>(const std::string&)>;

/// Recursive-descent parser shared by user input and certificate loading.
/// In extended mode identifiers may also contain the '@', '#', '~' characters
/// used by fresh generator names (with '-' allowed directly after '@'), and
/// the generator list may be empty.
class PresentationParser {
 public:
  PresentationParser(std::string_view text, bool extended) : text_(text), extended_(extended) {}

  /// Parses a presentation, resolving generator list names with `declare` and
  /// relator names against the declared list.
  Presentation parse(const NameResolver& declare) {
    skip_ws();
    const bool bracketed = accept('<');
    std::vector<GeneratorId> gens;
    if (peek() == '|' && !extended_) throw ParseError("empty generator list", pos_);
    if (peek() != '|') {
      do {
        const auto at = skip_ws();
        const std::string name = ident();
        auto g = declare(name);
        if (!g) throw ParseError("cannot declare generator '" + name + "'", at);
        if (std::find(gens.begin(), gens.end(), *g) != gens.end())
          throw ParseError("duplicate generator '" + name + "'", at);
        gens.push_back(*g);
      } while (accept(','));
    }
    expect('|');
    Word w = word([&](const std::string& name, std::size_t at) {
      for (const auto& g : gens)
        if (g.name() == name) return g;
      throw ParseError("unknown generator '" + name + "'", at);
    });
    if (bracketed) expect('>');
    else accept('>');
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return Presentation(std::move(gens), w);
  }

  /// Parses a bare word (no presentation brackets) to the end of input.
  Word parse_word(const std::function<GeneratorId(const std::string&, std::size_t)>& lookup) {
    Word w = word(lookup);
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return w;
  }

 private:
  static constexpr std::int64_t kMaxPower = 1'000'000;

  std::size_t skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      const std::string found = pos_ < text_.size() ? std::string("'") + text_[pos_] + "'" : "end of input";
      throw ParseError(std::string("expected '") + c + "', found " + found, pos_);
    }
  }

  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

  bool is_ident_char(char c) const {
    if (std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_') return true;
    return extended_ && (c == '@' || c == '#' || c == '~');
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_]))
      throw ParseError("expected generator name", pos_);
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (is_ident_char(c)) {
        ++pos_;
      } else if (extended_ && c == '-' && text_[pos_ - 1] == '@') {
        ++pos_;
      } else {
        break;
      }
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t power() {
    if (!accept('^')) return 1;
    const bool negative = accept('-');
    skip_ws();
    const std::size_t start = pos_;
    std::int64_t n = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      n = n * 10 + (text_[pos_] - '0');
      if (n > kMaxPower) throw ParseError("exponent too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected exponent digits", pos_);
    return negative ? -n : n;
  }

  template <class Lookup>
  Word word(const Lookup& lookup) {
    skip_ws();
    if (accept('1')) return Word();
    std::vector<Letter> out;
    auto append_power = [&out](const Word& base, std::int64_t n) {
      const Word unit = n < 0 ? base.inverse() : base;
      for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i)
        out.insert(out.end(), unit.letters().begin(), unit.letters().end());
    };
    do {
      if (accept('[')) {
        const auto at_x = skip_ws();
        const GeneratorId x = lookup(ident(), at_x);
        expect(',');
        const auto at_y = skip_ws();
        const GeneratorId y = lookup(ident(), at_y);
        expect(']');
        append_power(Word({{x, 1}, {y, 1}, {x, -1}, {y, -1}}), power());
      } else {
        const auto at = skip_ws();
        const GeneratorId g = lookup(ident(), at);
        append_power(Word({{g, 1}}), power());
      }
      const char c = peek();
      if (c == '\0' || c == '>') break;
    } while (true);
    return Word(std::move(out));
  }

  std::string_view text_;
  bool extended_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses user input, declaring generators in `registry`.
inline Presentation parse_presentation(std::string_view text, GeneratorRegistry& registry) {
  return detail::PresentationParser(text, false).parse(
      [&registry](const std::string& name) -> std::optional<GeneratorId> {
        return registry.declare(name);
      });
}

}  // namespace magnus
