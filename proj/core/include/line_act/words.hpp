#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace lineact {

/// A generator or its inverse. Codes 2*gen and 2*gen+1 give the shortlex
/// order a < a^-1 < b < b^-1 < ...
struct Letter {
  unsigned gen = 0;
  bool inv = false;

  unsigned code() const { return 2 * gen + (inv ? 1 : 0); }
  static Letter from_code(unsigned c) { return {c / 2, (c % 2) == 1}; }
  Letter inverse() const { return {gen, !inv}; }
  bool operator==(const Letter&) const = default;
};

struct Syllable {
  unsigned gen = 0;
  long exp = 0;
  bool operator==(const Syllable&) const = default;
};

/// Affine pair (m, t) denoting x -> n^m x + t.
struct BsPair {
  long m = 0;
  mpq_class t;
  bool operator==(const BsPair& o) const { return m == o.m && t == o.t; }
};

/// Exponent vector (free abelian and ladder groups) or affine pair.
using CanonicalForm = std::variant<std::monostate, std::vector<long>, BsPair>;

class Presentation {
 public:
  enum class Kind { Free, FreeAbelian, BaumslagSolitar, Ladder };

  static Presentation free(unsigned rank);
  static Presentation free_abelian(unsigned rank);
  /// <a, b | b a = a^n b>, n != 0.
  static Presentation baumslag_solitar(long n);
  /// Generators f0 .. f_{k-1}, name entries +-1, k = name.size() + 1.
  static Presentation ladder(std::vector<int> name);

  Kind kind() const { return kind_; }
  unsigned rank() const { return static_cast<unsigned>(labels_.size()); }
  long bs_n() const { return bs_n_; }
  const std::vector<int>& ladder_name() const { return name_; }

  const std::vector<std::string>& labels() const { return labels_; }
  /// Replaces the labels; `aliases` (optional, same length) are accepted when parsing.
  Presentation with_labels(std::vector<std::string> labels, std::vector<std::string> aliases = {}) const;
  std::optional<unsigned> generator_index(std::string_view label) const;

  /// True when elements have a canonical form that decides equality.
  bool has_normal_form() const;

  /// Header form used by action files, e.g. `bs 1 -2` or `ladder -1 -1`.
  std::string to_string() const;

  bool same_group(const Presentation& other) const;

 private:
  Kind kind_ = Kind::Free;
  long bs_n_ = 0;
  std::vector<int> name_;
  std::vector<std::string> labels_;
  std::vector<std::string> aliases_;
};

/// A freely reduced word, optionally carrying its canonical form.
class GroupElement {
 public:
  GroupElement() = default;

  const std::vector<Syllable>& syllables() const { return word_; }
  std::vector<Letter> letters() const;
  std::size_t length() const;
  bool is_empty_word() const { return word_.empty(); }

  const std::optional<CanonicalForm>& canonical() const { return canonical_; }

  /// Word equality only (free reduction, no relations).
  bool operator==(const GroupElement& o) const { return word_ == o.word_; }

 private:
  std::vector<Syllable> word_;
  std::optional<CanonicalForm> canonical_;

  friend GroupElement reduce(const Presentation&, const std::vector<Letter>&);
  friend GroupElement normal_form(const Presentation&, const GroupElement&);
};

/// Free reduction; throws unknown-generator for out-of-range letters.
GroupElement reduce(const Presentation& p, const std::vector<Letter>& letters);

/// Attaches the canonical form (Free returns the reduced word unchanged).
/// Throws unsupported-presentation for ladders with k > 3.
GroupElement normal_form(const Presentation& p, const GroupElement& w);

CanonicalForm canonical_of_letter(const Presentation& p, Letter l);
CanonicalForm canonical_identity(const Presentation& p);
/// Product x * y of canonical forms.
CanonicalForm canonical_multiply(const Presentation& p, const CanonicalForm& x, const CanonicalForm& y);
CanonicalForm canonical_form(const Presentation& p, const std::vector<Letter>& letters);
bool is_canonical_identity(const CanonicalForm& c);
/// Deterministic text key for a canonical form.
std::string canonical_key(const CanonicalForm& c);
std::string canonical_to_string(const CanonicalForm& c);

/// Product u * v, freely reduced; the canonical form is refreshed when available.
GroupElement multiply(const Presentation& p, const GroupElement& u, const GroupElement& v);
GroupElement inverse(const Presentation& p, const GroupElement& w);
GroupElement letter_element(const Presentation& p, Letter l);
GroupElement power(const Presentation& p, unsigned gen, long exp);

/// True when u and v denote the same element (canonical forms when available,
/// reduced words otherwise).
bool same_element(const Presentation& p, const GroupElement& u, const GroupElement& v);

/// `a^2 b^-1 a`; the empty word prints as `e`.
std::string word_to_string(const Presentation& p, const GroupElement& w);
/// Accepts whitespace- or `*`-separated tokens `label` or `label^exp`, and
/// juxtaposed labels; `e` or an empty string is the identity.
GroupElement parse_word(const Presentation& p, std::string_view text);

struct Relation {
  GroupElement lhs;
  GroupElement rhs;
};

/// Defining relations; throws unsupported-presentation for ladders with k > 3.
std::vector<Relation> relations(const Presentation& p);

/// The word ball of radius L in shortlex order, deduplicated by canonical form
/// when one exists and by reduced word otherwise. In ReducedWords mode every
/// freely reduced word is kept (canonical forms are still attached).
class Ball {
 public:
  enum class Mode { Elements, ReducedWords };

  Ball(const Presentation& p, unsigned radius, Mode mode = Mode::Elements);

  /// Appends the next layer; returns the number of nodes added.
  std::size_t grow();

  const Presentation& presentation() const { return presentation_; }
  unsigned radius() const { return radius_; }
  std::size_t size() const { return nodes_.size(); }

  /// Index of the element at which layer `len` (word length) begins; layer_begin(radius+1) == size().
  std::size_t layer_begin(unsigned len) const { return len <= radius_ ? layers_.at(len) : nodes_.size(); }
  unsigned length_of(std::size_t i) const { return nodes_[i].length; }
  /// Parent index (the word with the first letter removed); the identity is its own parent.
  std::size_t parent(std::size_t i) const { return nodes_[i].parent; }
  Letter first_letter(std::size_t i) const { return Letter::from_code(nodes_[i].letter); }

  GroupElement element(std::size_t i) const;
  std::vector<Letter> letters(std::size_t i) const;
  const CanonicalForm& canonical(std::size_t i) const { return canonical_.at(i); }
  bool has_canonical() const { return !canonical_.empty(); }

  /// True when dedup fell back to reduced words for a presentation whose
  /// words may still represent equal elements.
  bool possible_duplicates() const { return possible_duplicates_; }

 private:
  struct NodeRec {
    std::uint32_t parent;
    std::uint16_t letter;
    std::uint16_t length;
  };

  Presentation presentation_;
  unsigned radius_;
  std::vector<NodeRec> nodes_;
  std::vector<CanonicalForm> canonical_;
  std::vector<std::size_t> layers_;  // layers_[len] = first node of length len
  bool possible_duplicates_ = false;
  bool use_canonical_ = false;
  Mode mode_;
  std::unordered_set<std::string> seen_;
  std::vector<CanonicalForm> letter_forms_;
};

/// Elements of the ball as a list (convenience over Ball).
std::vector<GroupElement> ball(const Presentation& p, unsigned radius);

}  // namespace lineact
