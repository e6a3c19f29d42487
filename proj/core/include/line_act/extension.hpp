#pragma once

#include <string>
#include <vector>

#include "line_act/action.hpp"

namespace lineact {

inline constexpr long kDefaultHorizon = 64;

/// Data for extending an action of H on (0, 1) to G, where G/H is infinite
/// cyclic and generated by the coset of `a`.
struct ExtensionSpec {
  /// Action of H on the line, supported in (0, 1) with the endpoints fixed.
  Action inner;
  /// theta[i] = a^-1 h_i a written as an H-word, for each H-generator h_i.
  std::vector<GroupElement> theta;
  /// The inverse automorphism: theta_inv[i] = a h_i a^-1.
  std::vector<GroupElement> theta_inv;
  /// Presentation of G; generator 0 is a, generator i+1 is h_i.
  Presentation outer;
  long horizon = kDefaultHorizon;
  std::string name;

  /// a^-j b a^j as an H-word.
  GroupElement conjugation_rule(long j, const GroupElement& b) const;
};

/// The G-action with a -> x + 1 and each h_i acting on [j, j+1] by
/// inner(conjugation_rule(j, h_i))(x - j) + j. Evaluating outside the horizon
/// raises horizon-exceeded.
Action extend_action(const ExtensionSpec& spec);

/// Moves an action on the line into (0, 1): each image h becomes
/// s o psi h psi^-1 o s^-1 with s(y) = (y + 1) / 2, fixing everything outside (0, 1).
Action conjugate_into_unit_interval(const Action& act);

/// Z^3 = Z x Z^2: the translation action of Z^2 by 1 and alpha, moved into (0, 1).
ExtensionSpec direct_product_spec(const RealNum& alpha);

/// The ladder group with name (-1, -1) built over the Klein bottle action on (0, 1).
ExtensionSpec klein_ladder_spec();

}  // namespace lineact
