#include <doctest.h>

#include "line_act/error.hpp"
#include "line_act/words.hpp"
#include "support/bs_rewrite.hpp"
#include "support/klein_rewrite.hpp"

using namespace lineact;

namespace {

std::string nf(const Presentation& p, const std::string& word) {
  return canonical_to_string(canonical_form(p, parse_word(p, word).letters()));
}

std::vector<Letter> letters_of(const std::vector<unsigned>& codes) {
  std::vector<Letter> out;
  for (unsigned c : codes) out.push_back(Letter::from_code(c));
  return out;
}

}  // namespace

TEST_CASE("free reduction") {
  const Presentation p = Presentation::free(2);
  CHECK(parse_word(p, "a a^-1").is_empty_word());
  CHECK(word_to_string(p, parse_word(p, "a b b^-1 a")) == "a^2");
  CHECK(word_to_string(p, parse_word(p, "b a")) == "b a");
  CHECK(word_to_string(p, multiply(p, parse_word(p, "a"), parse_word(p, "a^-1"))) == "e");
  CHECK_THROWS_AS(parse_word(p, "a c"), Error);
}

TEST_CASE("BS(1,n) affine pairs") {
  const Presentation bs2 = Presentation::baumslag_solitar(2);
  CHECK(nf(bs2, "b a") == "(1, 2)");
  CHECK(nf(bs2, "a^2 b") == "(1, 2)");
  CHECK(same_element(bs2, parse_word(bs2, "b a"), parse_word(bs2, "a^2 b")));
  CHECK(nf(bs2, "b^-1 a b") == "(0, 1/2)");
  CHECK(nf(bs2, "") == "(0, 0)");
  const Presentation klein = Presentation::baumslag_solitar(-1);
  CHECK(nf(klein, "b^2 a") == "(2, 1)");
  CHECK(nf(klein, "a b^2") == "(2, 1)");
}

TEST_CASE("free abelian exponent vectors") {
  const Presentation p = Presentation::free_abelian(2);
  CHECK(nf(p, "a b a^-1") == "(0, 1)");
}

TEST_CASE("ladder presentations beyond three generators are rejected") {
  CHECK_NOTHROW(Presentation::ladder({-1, -1}));
  CHECK_THROWS_AS(relations(Presentation::ladder({-1, -1, -1})), Error);
}

TEST_CASE("ball sizes") {
  CHECK(Ball(Presentation::free(2), 1).size() == 5);
  CHECK(Ball(Presentation::free(2), 2).size() == 17);
  CHECK(Ball(Presentation::free_abelian(2), 2).size() == 13);
  // Reduced words of length <= 4 in two generators.
  CHECK(Ball(Presentation::baumslag_solitar(-1), 4, Ball::Mode::ReducedWords).size() == 161);
}

TEST_CASE("balls grow monotonically and start at the identity") {
  const Presentation p = Presentation::baumslag_solitar(2);
  Ball small(p, 3);
  Ball big(p, 4);
  CHECK(small.element(0).is_empty_word());
  std::set<std::string> keys;
  for (std::size_t i = 0; i < big.size(); ++i) keys.insert(canonical_key(big.canonical(i)));
  CHECK(keys.size() == big.size());  // distinct elements, distinct pairs
  for (std::size_t i = 0; i < small.size(); ++i) CHECK(keys.count(canonical_key(small.canonical(i))) == 1);
  Ball lazy(p, 3);
  const std::size_t added = lazy.grow();
  CHECK(lazy.size() == big.size());
  CHECK(added == big.size() - small.size());
}

TEST_CASE("normal forms are invariant under relation rewriting") {
  for (long n : {2L, 3L, -1L, -2L}) {
    const Presentation p = Presentation::baumslag_solitar(n);
    Ball words(p, 4, Ball::Mode::ReducedWords);
    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::string key = canonical_key(canonical_form(p, words.letters(i)));
      for (const auto& w : testing::bs_rewrites(words.letters(i), n, 6)) {
        CAPTURE(n);
        CAPTURE(word_to_string(p, words.element(i)));
        REQUIRE(canonical_key(canonical_form(p, letters_of(w))) == key);
      }
    }
  }
}

TEST_CASE("Klein normal forms agree with confluent rewriting") {
  const Presentation p = Presentation::baumslag_solitar(-1);
  Ball words(p, 4, Ball::Mode::ReducedWords);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i; j < words.size(); ++j) {
      const bool rewrite_equal =
          testing::klein_rewrite(words.letters(i)) == testing::klein_rewrite(words.letters(j));
      REQUIRE(same_element(p, words.element(i), words.element(j)) == rewrite_equal);
    }
  }
}

TEST_CASE("words with zero b-component have zero b-exponent sum") {
  const Presentation p = Presentation::baumslag_solitar(-1);
  Ball words(p, 6, Ball::Mode::ReducedWords);
  std::size_t zero = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto pair = std::get<BsPair>(canonical_form(p, words.letters(i)));
    if (pair.m != 0) continue;
    ++zero;
    long sum = 0;
    for (const Letter& l : words.letters(i)) {
      if (l.gen == 1) sum += l.inv ? -1 : 1;
    }
    CHECK(sum == 0);
  }
  CHECK(zero > 100);
}

TEST_CASE("inverse and power") {
  const Presentation p = Presentation::baumslag_solitar(2);
  const GroupElement w = parse_word(p, "b^-1 a^3 b^2");
  CHECK(is_canonical_identity(canonical_form(p, multiply(p, w, inverse(p, w)).letters())));
  CHECK(word_to_string(p, power(p, 0, -3)) == "a^-3");
}
