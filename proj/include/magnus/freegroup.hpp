// Free-group arithmetic: generators, letters, words, and the reductions the
// decomposition engine is built on.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace magnus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeneratorId;

namespace origin {

struct Declared {
  bool operator==(const Declared&) const = default;
};

/// x_i = t^i x t^{-i}
struct Subscripted {
  std::shared_ptr<const GeneratorId> base;
  std::int64_t subscript = 0;
};

struct Fresh {
  std::string reason;
  bool operator==(const Fresh&) const = default;
};

}  // namespace origin

using Origin = std::variant<origin::Declared, origin::Subscripted, origin::Fresh>;

/// Handle to an immutable generator record. Identity is the uid alone; names
/// are for display and may be reused across registries.
class GeneratorId {
 public:
  std::uint64_t uid() const { return rec_->uid; }
  const std::string& name() const { return rec_->name; }
  const Origin& origin() const { return rec_->origin; }

  bool operator==(const GeneratorId& o) const { return uid() == o.uid(); }
  auto operator<=>(const GeneratorId& o) const { return uid() <=> o.uid(); }

 private:
  friend class GeneratorRegistry;

  struct Record {
    std::uint64_t uid;
    std::string name;
    Origin origin;
  };

  explicit GeneratorId(std::shared_ptr<const Record> rec) : rec_(std::move(rec)) {}

  std::shared_ptr<const Record> rec_;
};

/// Issues generator uids. Thread-safe; decompositions that must not share
/// state should use separate registries.
class GeneratorRegistry {
 public:
  /// Returns the declared generator with this name, creating it on first use.
  GeneratorId declare(const std::string& name) {
    std::lock_guard lock(mu_);
    if (auto it = declared_.find(name); it != declared_.end()) return it->second;
    auto g = make_locked(name, origin::Declared{});
    declared_.emplace(name, g);
    return g;
  }

  /// Allocates x_i standing for t^i x t^{-i}; displayed as "x@i".
  GeneratorId subscripted(const GeneratorId& base, std::int64_t subscript) {
    std::lock_guard lock(mu_);
    return make_locked(base.name() + "@" + std::to_string(subscript),
                       origin::Subscripted{std::make_shared<const GeneratorId>(base), subscript});
  }

  /// Allocates a fresh generator displayed as "<stem>#k". All fresh symbols
  /// created by one call to next_fresh_index() share k.
  GeneratorId fresh(const std::string& stem, std::uint64_t index, std::string reason) {
    std::lock_guard lock(mu_);
    return make_locked(stem + "#" + std::to_string(index), origin::Fresh{std::move(reason)});
  }

  std::uint64_t next_fresh_index() {
    std::lock_guard lock(mu_);
    return ++fresh_counter_;
  }

  /// Re-creates a generator with a known uid and name (used when loading
  /// serialized certificates). Throws if the uid or name is taken.
  GeneratorId adopt(std::uint64_t uid, const std::string& name, Origin org) {
    std::lock_guard lock(mu_);
    if (by_uid_.count(uid) != 0) throw Error("duplicate generator uid " + std::to_string(uid));
    if (names_.count(name) != 0) throw Error("duplicate generator name '" + name + "'");
    GeneratorId g(std::make_shared<const GeneratorId::Record>(
        GeneratorId::Record{uid, name, std::move(org)}));
    by_uid_.emplace(uid, g);
    names_.insert(name);
    if (std::holds_alternative<origin::Declared>(g.origin())) declared_.emplace(name, g);
    next_uid_ = std::max(next_uid_, uid + 1);
    return g;
  }

  std::optional<GeneratorId> find_by_name(const std::string& name) const {
    std::lock_guard lock(mu_);
    for (const auto& [uid, g] : by_uid_)
      if (g.name() == name) return g;
    return std::nullopt;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return by_uid_.size();
  }

 private:
  GeneratorId make_locked(std::string name, Origin org) {
    if (names_.count(name) != 0) {
      std::string base = name;
      for (std::uint64_t k = 1;; ++k) {
        name = base + "~" + std::to_string(k);
        if (names_.count(name) == 0) break;
      }
    }
    GeneratorId g(std::make_shared<const GeneratorId::Record>(
        GeneratorId::Record{next_uid_++, name, std::move(org)}));
    by_uid_.emplace(g.uid(), g);
    names_.insert(g.name());
    return g;
  }

  mutable std::mutex mu_;
  std::uint64_t next_uid_ = 0;
  std::uint64_t fresh_counter_ = 0;
  std::map<std::uint64_t, GeneratorId> by_uid_;
  std::map<std::string, GeneratorId> declared_;
  std::set<std::string> names_;
};

struct Letter {
  GeneratorId gen;
  int sign = 1;  // +1 or -1

  Letter inverse() const { return {gen, -sign}; }
  bool cancels(const Letter& o) const { return gen == o.gen && sign == -o.sign; }
  bool operator==(const Letter&) const = default;
};

class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (const auto& l : letters_)
      if (l.sign != 1 && l.sign != -1) throw Error("letter sign must be +1 or -1");
    reduced_ = std::adjacent_find(letters_.begin(), letters_.end(),
                                  [](const Letter& a, const Letter& b) { return a.cancels(b); }) ==
               letters_.end();
  }

  static Word power(const GeneratorId& g, std::int64_t n) {
    std::vector<Letter> ls;
    const int sign = n < 0 ? -1 : 1;
    for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) ls.push_back({g, sign});
    return Word(std::move(ls));
  }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool reduced() const { return reduced_; }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const {
    std::vector<Letter> ls;
    ls.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) ls.push_back(it->inverse());
    return Word(std::move(ls));
  }

  /// Left rotation by k positions.
  Word rotated(std::size_t k) const {
    if (letters_.empty()) return *this;
    std::vector<Letter> ls = letters_;
    std::rotate(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(k % ls.size()), ls.end());
    return Word(std::move(ls));
  }

  /// Unreduced concatenation.
  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> ls = a.letters_;
    ls.insert(ls.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(ls));
  }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }

 private:
  std::vector<Letter> letters_;
  bool reduced_ = true;
};

/// Free reduction by a single stack scan.
inline Word reduce(const Word& w) {
  if (w.reduced()) return w;
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const auto& l : w.letters()) {
    if (!out.empty() && out.back().cancels(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// w = conjugator * core * conjugator^{-1} in the free group, with core
/// cyclically reduced.
inline CyclicReduction cyclic_reduce(const Word& w) {
  const Word r = reduce(w);
  const auto ls = r.letters();
  std::size_t lo = 0;
  std::size_t hi = ls.size();
  while (hi - lo >= 2 && ls[lo].cancels(ls[hi - 1])) {
    ++lo;
    --hi;
  }
  return {Word(std::vector<Letter>(ls.begin() + lo, ls.begin() + hi)),
          Word(std::vector<Letter>(ls.begin(), ls.begin() + lo))};
}

inline bool is_cyclically_reduced(const Word& w) {
  return w.reduced() && (w.size() < 2 || !w[0].cancels(w[w.size() - 1]));
}

inline std::int64_t exponent_sum(const Word& w, const GeneratorId& g) {
  std::int64_t s = 0;
  for (const auto& l : w.letters())
    if (l.gen == g) s += l.sign;
  return s;
}

inline std::size_t occurrence_count(const Word& w, const GeneratorId& g) {
  return static_cast<std::size_t>(std::count_if(
      w.letters().begin(), w.letters().end(), [&](const Letter& l) { return l.gen == g; }));
}

class MissingImageError : public Error {
 public:
  explicit MissingImageError(const GeneratorId& g)
      : Error("substitution has no image for generator '" + g.name() + "'"), generator_(g) {}
  const GeneratorId& generator() const { return generator_; }

 private:
  GeneratorId generator_;
};

using Substitution = std::map<GeneratorId, Word>;

/// Applies the homomorphism g -> images[g] and freely reduces.
inline Word substitute(const Word& w, const Substitution& images) {
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    auto it = images.find(l.gen);
    if (it == images.end()) throw MissingImageError(l.gen);
    const Word& img = it->second;
    if (l.sign > 0) {
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto j = img.size(); j-- > 0;) out.push_back(img[j].inverse());
    }
  }
  return reduce(Word(std::move(out)));
}

inline bool equal_as_cyclic_words(const Word& a, const Word& b) {
  const Word ca = cyclic_reduce(a).core;
  const Word cb = cyclic_reduce(b).core;
  if (ca.size() != cb.size()) return false;
  if (ca.empty()) return true;
  for (std::size_t k = 0; k < ca.size(); ++k)
    if (ca.rotated(k) == cb) return true;
  return false;
}

/// Distinct generators of w in order of first occurrence.
inline std::vector<GeneratorId> generators_in(const Word& w) {
  std::vector<GeneratorId> out;
  for (const auto& l : w.letters())
    if (std::find(out.begin(), out.end(), l.gen) == out.end()) out.push_back(l.gen);
  return out;
}

}  // namespace magnus
