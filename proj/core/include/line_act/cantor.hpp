#pragma once

#include <optional>
#include <string>
#include <vector>

#include "line_act/action.hpp"

namespace lineact {

struct CantorLevel {
  Interval v;            // neighbourhood of x_i shrunk until (V, g_i V) separate
  Interval u;            // gap interval chosen inside V
  GroupElement g;        // the moving word g_i
  RealNum x;             // the moved point x_i
  long grid = 0;         // i_i: grid A_i has spacing 1 / i_i on [0, 1]
  std::vector<GroupElement> elements;  // G_i
  std::vector<Interval> lambda;        // components g(closure U_i), g in G_i, sorted
};

struct CantorParams {
  /// Radius of the ball over which conditions (2) and (3) are checked.
  unsigned radius = 5;
  /// Largest word length tried when looking for a moving pair.
  unsigned search_radius = 20;
  /// Tolerance for "g(U) = U".
  RealNum tol = RealNum::rational(1, 1000000000);
  /// Rounds of gap refinement by endpoint images before giving up.
  unsigned max_refinements = 200;
  unsigned workers = 1;
};

struct CantorCheck {
  /// Name of each condition with its outcome, e.g. {"(1) level 2", true}.
  std::vector<std::pair<std::string, bool>> items;
  bool passed = false;
};

struct CantorLadder {
  std::size_t depth = 0;
  unsigned radius = 0;
  Interval seed;
  std::vector<CantorLevel> levels;
  CantorCheck check;
  bool complete = false;         // every requested level was built
  std::string diagnosis;         // why construction stopped, when incomplete
};

/// Builds `depth` levels of nested intervals U_1 > U_2 > ... inside `seed`
/// with moving words g_i, the doubling sets G_i and Lambda_i, then re-verifies
/// everything with check_cantor_ladder. Throws no-moving-pair when no word
/// moves a point of the seed rightward inside it; a failing level yields an
/// incomplete ladder with a diagnosis.
CantorLadder cantor_ladder(const Action& act, std::size_t depth, const Interval& seed, const CantorParams& params = {});

/// Independent verification of a ladder: nesting and separation exactly,
/// ball conditions over the ladder's radius, |G_i| = 2^i, disjoint and nested Lambda_i.
CantorCheck check_cantor_ladder(const Action& act, const CantorLadder& ladder, const CantorParams& params = {});

}  // namespace lineact
