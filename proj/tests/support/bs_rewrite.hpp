#pragma once

#include <set>
#include <vector>

#include "line_act/words.hpp"

namespace lineact::testing {

/// Every word reachable from `start` in at most `depth` steps, where a step
/// rewrites one occurrence of b a <-> a^n b or a^-1 b^-1 <-> b^-1 a^-n
/// (generator 0 is a, generator 1 is b). Words longer than `max_len` are cut off.
inline std::set<std::vector<unsigned>> bs_rewrites(const std::vector<Letter>& start, long n, unsigned depth,
                                                   std::size_t max_len = 16) {
  using Word = std::vector<unsigned>;
  const unsigned a = 0, ai = 1, b = 2, bi = 3;
  auto power = [&](long e) { return Word(static_cast<std::size_t>(e < 0 ? -e : e), e < 0 ? ai : a); };
  std::vector<std::pair<Word, Word>> rules;
  auto both = [&](Word l, Word r) {
    rules.emplace_back(l, r);
    rules.emplace_back(r, l);
  };
  Word lhs1 = {b, a};
  Word rhs1 = power(n);
  rhs1.push_back(b);
  both(lhs1, rhs1);
  Word lhs2 = {ai, bi};
  Word rhs2 = {bi};
  for (unsigned c : power(-n)) rhs2.push_back(c);
  both(lhs2, rhs2);

  Word first;
  for (const Letter& l : start) first.push_back(l.code());
  std::set<Word> seen = {first};
  std::vector<Word> frontier = {first};
  for (unsigned step = 0; step < depth; ++step) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (const auto& [from, to] : rules) {
        for (std::size_t i = 0; i + from.size() <= w.size(); ++i) {
          if (!std::equal(from.begin(), from.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) continue;
          Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
          out.insert(out.end(), to.begin(), to.end());
          out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(i + from.size()), w.end());
          if (out.size() <= max_len && seen.insert(out).second) next.push_back(std::move(out));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace lineact::testing
