#include "line_act/words.hpp"

#include <cctype>
#include <limits>

#include "line_act/error.hpp"

namespace lineact {

namespace {

std::vector<std::string> alphabetic_labels(unsigned rank) {
  std::vector<std::string> out;
  for (unsigned i = 0; i < rank; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i));
  }
  return out;
}

long sign_power(long n, long e) { return (n == -1 && (e % 2 != 0)) ? -1 : 1; }

mpq_class int_power(long n, long e) {
  mpz_class z;
  mpz_class base(n);
  if (e >= 0) {
    mpz_pow_ui(z.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return mpq_class(z);
  }
  mpz_pow_ui(z.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(-e));
  mpq_class q(1, z);
  q.canonicalize();
  return q;
}

bool ladder_supported(const Presentation& p) { return p.ladder_name().size() <= 2; }

}  // namespace

// ---------------------------------------------------------------- Presentation

Presentation Presentation::free(unsigned rank) {
  if (rank == 0) throw Error(ErrorCode::BadParameter, "rank must be positive");
  Presentation p;
  p.kind_ = Kind::Free;
  p.labels_ = alphabetic_labels(rank);
  return p;
}

Presentation Presentation::free_abelian(unsigned rank) {
  Presentation p = free(rank);
  p.kind_ = Kind::FreeAbelian;
  return p;
}

Presentation Presentation::baumslag_solitar(long n) {
  if (n == 0) throw Error(ErrorCode::BadParameter, "Baumslag-Solitar parameter must be nonzero");
  Presentation p;
  p.kind_ = Kind::BaumslagSolitar;
  p.bs_n_ = n;
  p.labels_ = {"a", "b"};
  return p;
}

Presentation Presentation::ladder(std::vector<int> name) {
  for (int v : name) {
    if (v != 1 && v != -1) throw Error(ErrorCode::BadParameter, "ladder name entries must be +1 or -1");
  }
  Presentation p;
  p.kind_ = Kind::Ladder;
  for (std::size_t i = 0; i <= name.size(); ++i) p.labels_.push_back("f" + std::to_string(i));
  p.name_ = std::move(name);
  return p;
}

Presentation Presentation::with_labels(std::vector<std::string> labels, std::vector<std::string> aliases) const {
  if (labels.size() != labels_.size()) throw Error(ErrorCode::BadParameter, "label count does not match rank");
  if (!aliases.empty() && aliases.size() != labels.size()) {
    throw Error(ErrorCode::BadParameter, "alias count does not match rank");
  }
  Presentation p = *this;
  p.labels_ = std::move(labels);
  p.aliases_ = std::move(aliases);
  return p;
}

std::optional<unsigned> Presentation::generator_index(std::string_view label) const {
  for (unsigned i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  for (unsigned i = 0; i < aliases_.size(); ++i) {
    if (aliases_[i] == label) return i;
  }
  return std::nullopt;
}

bool Presentation::has_normal_form() const { return kind_ != Kind::Ladder || ladder_supported(*this); }

std::string Presentation::to_string() const {
  switch (kind_) {
    case Kind::Free: return "free " + std::to_string(rank());
    case Kind::FreeAbelian: return "abelian " + std::to_string(rank());
    case Kind::BaumslagSolitar: return "bs 1 " + std::to_string(bs_n_);
    case Kind::Ladder: {
      std::string out = "ladder";
      for (int v : name_) out += v > 0 ? " 1" : " -1";
      return out;
    }
  }
  return "";
}

bool Presentation::same_group(const Presentation& other) const {
  return kind_ == other.kind_ && bs_n_ == other.bs_n_ && name_ == other.name_ && rank() == other.rank();
}

// ---------------------------------------------------------------- GroupElement

std::vector<Letter> GroupElement::letters() const {
  std::vector<Letter> out;
  for (const auto& s : word_) {
    const Letter l{s.gen, s.exp < 0};
    for (long i = 0; i < std::labs(s.exp); ++i) out.push_back(l);
  }
  return out;
}

std::size_t GroupElement::length() const {
  std::size_t n = 0;
  for (const auto& s : word_) n += static_cast<std::size_t>(std::labs(s.exp));
  return n;
}

GroupElement reduce(const Presentation& p, const std::vector<Letter>& letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.gen >= p.rank()) {
      throw Error(ErrorCode::UnknownGenerator, "generator index " + std::to_string(l.gen) + " out of range");
    }
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  GroupElement out;
  for (const Letter& l : stack) {
    const long step = l.inv ? -1 : 1;
    if (!out.word_.empty() && out.word_.back().gen == l.gen) {
      out.word_.back().exp += step;
    } else {
      out.word_.push_back({l.gen, step});
    }
  }
  return out;
}

CanonicalForm canonical_identity(const Presentation& p) {
  switch (p.kind()) {
    case Presentation::Kind::Free: return std::monostate{};
    case Presentation::Kind::FreeAbelian:
    case Presentation::Kind::Ladder: return std::vector<long>(p.rank(), 0);
    case Presentation::Kind::BaumslagSolitar: return BsPair{};
  }
  return std::monostate{};
}

CanonicalForm canonical_of_letter(const Presentation& p, Letter l) {
  const long sign = l.inv ? -1 : 1;
  switch (p.kind()) {
    case Presentation::Kind::Free: return std::monostate{};
    case Presentation::Kind::FreeAbelian:
    case Presentation::Kind::Ladder: {
      std::vector<long> v(p.rank(), 0);
      v.at(l.gen) = sign;
      return v;
    }
    case Presentation::Kind::BaumslagSolitar:
      return l.gen == 0 ? BsPair{0, mpq_class(sign)} : BsPair{sign, mpq_class(0)};
  }
  return std::monostate{};
}

CanonicalForm canonical_multiply(const Presentation& p, const CanonicalForm& x, const CanonicalForm& y) {
  switch (p.kind()) {
    case Presentation::Kind::Free:
      return std::monostate{};
    case Presentation::Kind::FreeAbelian: {
      std::vector<long> v = std::get<std::vector<long>>(x);
      const auto& w = std::get<std::vector<long>>(y);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
      return v;
    }
    case Presentation::Kind::Ladder: {
      if (!ladder_supported(p)) {
        throw Error(ErrorCode::UnsupportedPresentation, "ladder groups are supported for k <= 3 only");
      }
      const auto& a = std::get<std::vector<long>>(x);
      const auto& b = std::get<std::vector<long>>(y);
      std::vector<long> v(a.size());
      v[0] = a[0] + b[0];
      for (std::size_t i = 1; i < v.size(); ++i) {
        v[i] = a[i] * sign_power(p.ladder_name()[i - 1], b[i - 1]) + b[i];
      }
      return v;
    }
    case Presentation::Kind::BaumslagSolitar: {
      const auto& a = std::get<BsPair>(x);
      const auto& b = std::get<BsPair>(y);
      BsPair r;
      r.m = a.m + b.m;
      r.t = a.t + int_power(p.bs_n(), a.m) * b.t;
      r.t.canonicalize();
      return r;
    }
  }
  return std::monostate{};
}

CanonicalForm canonical_form(const Presentation& p, const std::vector<Letter>& letters) {
  if (p.kind() == Presentation::Kind::Ladder && !ladder_supported(p)) {
    throw Error(ErrorCode::UnsupportedPresentation, "ladder groups are supported for k <= 3 only");
  }
  CanonicalForm c = canonical_identity(p);
  for (const Letter& l : letters) c = canonical_multiply(p, c, canonical_of_letter(p, l));
  return c;
}

bool is_canonical_identity(const CanonicalForm& c) {
  if (std::holds_alternative<BsPair>(c)) {
    const auto& b = std::get<BsPair>(c);
    return b.m == 0 && sgn(b.t) == 0;
  }
  if (std::holds_alternative<std::vector<long>>(c)) {
    for (long v : std::get<std::vector<long>>(c)) {
      if (v != 0) return false;
    }
  }
  return true;
}

std::string canonical_key(const CanonicalForm& c) {
  if (std::holds_alternative<BsPair>(c)) {
    const auto& b = std::get<BsPair>(c);
    return std::to_string(b.m) + ":" + b.t.get_str();
  }
  std::string out;
  if (std::holds_alternative<std::vector<long>>(c)) {
    for (long v : std::get<std::vector<long>>(c)) {
      out += std::to_string(v);
      out += ',';
    }
  }
  return out;
}

std::string canonical_to_string(const CanonicalForm& c) {
  if (std::holds_alternative<BsPair>(c)) {
    const auto& b = std::get<BsPair>(c);
    return "(" + std::to_string(b.m) + ", " + b.t.get_str() + ")";
  }
  if (std::holds_alternative<std::vector<long>>(c)) {
    std::string out = "(";
    const auto& v = std::get<std::vector<long>>(c);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(v[i]);
    }
    return out + ")";
  }
  return "word";
}

GroupElement normal_form(const Presentation& p, const GroupElement& w) {
  GroupElement out = w;
  if (p.kind() == Presentation::Kind::Free) return out;
  out.canonical_ = canonical_form(p, w.letters());
  return out;
}

GroupElement multiply(const Presentation& p, const GroupElement& u, const GroupElement& v) {
  std::vector<Letter> letters = u.letters();
  const std::vector<Letter> tail = v.letters();
  letters.insert(letters.end(), tail.begin(), tail.end());
  GroupElement r = reduce(p, letters);
  if (p.kind() != Presentation::Kind::Free && p.has_normal_form()) r = normal_form(p, r);
  return r;
}

GroupElement inverse(const Presentation& p, const GroupElement& w) {
  std::vector<Letter> letters = w.letters();
  std::vector<Letter> inv(letters.rbegin(), letters.rend());
  for (auto& l : inv) l = l.inverse();
  GroupElement r = reduce(p, inv);
  if (p.kind() != Presentation::Kind::Free && p.has_normal_form()) r = normal_form(p, r);
  return r;
}

GroupElement letter_element(const Presentation& p, Letter l) { return reduce(p, {l}); }

GroupElement power(const Presentation& p, unsigned gen, long exp) {
  std::vector<Letter> letters(static_cast<std::size_t>(std::labs(exp)), Letter{gen, exp < 0});
  return reduce(p, letters);
}

bool same_element(const Presentation& p, const GroupElement& u, const GroupElement& v) {
  if (p.kind() == Presentation::Kind::Free || !p.has_normal_form()) return u == v;
  return canonical_key(canonical_form(p, u.letters())) == canonical_key(canonical_form(p, v.letters()));
}

std::string word_to_string(const Presentation& p, const GroupElement& w) {
  if (w.is_empty_word()) return "e";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += p.labels().at(s.gen);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

GroupElement parse_word(const Presentation& p, std::string_view text) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  auto is_sep = [&](std::size_t i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    return std::isspace(c) || c == '*' || c == '.';
  };
  while (pos < text.size()) {
    if (is_sep(pos)) {
      ++pos;
      continue;
    }
    if (text.compare(pos, 2, "\xC2\xB7") == 0) {
      pos += 2;
      continue;
    }
    // Longest label (or alias) match at pos.
    std::size_t best_len = 0;
    unsigned best_gen = 0;
    for (std::size_t len = 1; pos + len <= text.size(); ++len) {
      if (auto g = p.generator_index(text.substr(pos, len))) {
        best_len = len;
        best_gen = *g;
      }
    }
    if (best_len == 0) {
      if (text[pos] == 'e' && (pos + 1 == text.size() || is_sep(pos + 1))) {
        ++pos;
        continue;
      }
      std::size_t end = pos;
      while (end < text.size() && !is_sep(end) && text[end] != '^') ++end;
      throw Error(ErrorCode::UnknownGenerator, "unknown generator '" + std::string(text.substr(pos, end - pos)) + "'");
    }
    pos += best_len;
    long exp = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      bool wrapped = pos < text.size() && text[pos] == '(';
      if (wrapped) ++pos;
      const std::size_t start = pos;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      const std::string digits(text.substr(start, pos - start));
      if (digits.empty() || digits == "-" || digits == "+") {
        throw Error(ErrorCode::Parse, "malformed exponent in word '" + std::string(text) + "'");
      }
      exp = std::stol(digits);
      if (wrapped) {
        if (pos >= text.size() || text[pos] != ')') {
          throw Error(ErrorCode::Parse, "unbalanced exponent in word '" + std::string(text) + "'");
        }
        ++pos;
      }
    }
    for (long i = 0; i < std::labs(exp); ++i) letters.push_back({best_gen, exp < 0});
  }
  return reduce(p, letters);
}

std::vector<Relation> relations(const Presentation& p) {
  std::vector<Relation> out;
  auto word = [&p](std::vector<Letter> ls) { return reduce(p, ls); };
  switch (p.kind()) {
    case Presentation::Kind::Free:
      break;
    case Presentation::Kind::FreeAbelian:
      for (unsigned i = 0; i < p.rank(); ++i) {
        for (unsigned j = i + 1; j < p.rank(); ++j) {
          out.push_back({word({{i, false}, {j, false}}), word({{j, false}, {i, false}})});
        }
      }
      break;
    case Presentation::Kind::BaumslagSolitar: {
      std::vector<Letter> rhs(static_cast<std::size_t>(std::labs(p.bs_n())), Letter{0, p.bs_n() < 0});
      rhs.push_back({1, false});
      out.push_back({word({{1, false}, {0, false}}), word(rhs)});
      break;
    }
    case Presentation::Kind::Ladder: {
      if (!ladder_supported(p)) {
        throw Error(ErrorCode::UnsupportedPresentation, "ladder groups are supported for k <= 3 only");
      }
      const unsigned k = p.rank();
      for (unsigned i = 0; i + 1 < k; ++i) {
        const int n = p.ladder_name()[i];
        out.push_back({word({{i, false}, {i + 1, false}, {i, true}}), word({{i + 1, n < 0}})});
        for (unsigned j = i + 2; j < k; ++j) {
          out.push_back({word({{i, false}, {j, false}, {i, true}}), word({{j, false}})});
        }
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- Ball

Ball::Ball(const Presentation& p, unsigned radius, Mode mode) : presentation_(p), radius_(0), mode_(mode) {
  use_canonical_ = p.kind() != Presentation::Kind::Free && p.has_normal_form();
  possible_duplicates_ = mode == Mode::Elements && !p.has_normal_form();
  nodes_.push_back({0, std::numeric_limits<std::uint16_t>::max(), 0});
  if (use_canonical_) {
    canonical_.push_back(canonical_identity(p));
    seen_.insert(canonical_key(canonical_.back()));
    for (unsigned c = 0; c < 2 * p.rank(); ++c) letter_forms_.push_back(canonical_of_letter(p, Letter::from_code(c)));
  }
  layers_.push_back(0);
  for (unsigned len = 1; len <= radius; ++len) grow();
}

std::size_t Ball::grow() {
  if (radius_ + 1 > std::numeric_limits<std::uint16_t>::max()) throw Error(ErrorCode::BadParameter, "radius too large");
  const unsigned len = radius_ + 1;
  const std::size_t prev_begin = layers_[len - 1];
  const std::size_t prev_end = nodes_.size();
  layers_.push_back(prev_end);
  const bool dedup = use_canonical_ && mode_ == Mode::Elements;
  for (unsigned code = 0; code < 2 * presentation_.rank(); ++code) {
    const unsigned cancel = Letter::from_code(code).inverse().code();
    for (std::size_t i = prev_begin; i < prev_end; ++i) {
      if (len > 1 && nodes_[i].letter == cancel) continue;
      if (nodes_.size() >= std::numeric_limits<std::uint32_t>::max()) {
        throw Error(ErrorCode::BadParameter, "word ball too large");
      }
      if (use_canonical_) {
        CanonicalForm c = canonical_multiply(presentation_, letter_forms_[code], canonical_[i]);
        if (dedup && !seen_.insert(canonical_key(c)).second) continue;
        canonical_.push_back(std::move(c));
      }
      nodes_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint16_t>(code),
                        static_cast<std::uint16_t>(len)});
    }
  }
  radius_ = len;
  return nodes_.size() - prev_end;
}

std::vector<Letter> Ball::letters(std::size_t i) const {
  std::vector<Letter> out;
  while (nodes_[i].length > 0) {
    out.push_back(Letter::from_code(nodes_[i].letter));
    i = nodes_[i].parent;
  }
  return out;
}

GroupElement Ball::element(std::size_t i) const {
  GroupElement g = reduce(presentation_, letters(i));
  if (has_canonical()) g = normal_form(presentation_, g);
  return g;
}

std::vector<GroupElement> ball(const Presentation& p, unsigned radius) {
  const Ball b(p, radius);
  std::vector<GroupElement> out;
  out.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out.push_back(b.element(i));
  return out;
}

}  // namespace lineact
