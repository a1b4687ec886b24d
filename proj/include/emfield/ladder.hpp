#pragma once

#include <vector>

#include "emfield/pairing.hpp"

namespace emfield {

enum class OpKind { create, annihilate };

struct LadderOp {
  OpKind kind = OpKind::annihilate;
  LabelId label = 0;
};

/// Operator product, left-to-right; the leftmost operator acts last on kets.
using OperatorWord = std::vector<LadderOp>;

inline constexpr int kDefaultWordCap = 12;

/// Vacuum functional omega(word) = <0| word |0>, by the bosonic Wick
/// recursion: a leading creation operator gives 0; a leading annihilator
/// a_f contracts against each creation operator a_g^dagger to its right,
/// contributing (f, g) * omega(word with both removed).
/// Throws std::length_error beyond the cap (contraction count grows as a
/// double factorial of the length).
Complex vacuum_expectation(const OperatorWord& word, const GramContext& ctx,
                           int cap = kDefaultWordCap);

/// Same recursion over |(f, g)|: an upper bound on the summed contraction
/// magnitudes, used as the cancellation scale for near-zero expectations.
double vacuum_expectation_bound(const OperatorWord& word, const GramContext& ctx,
                                int cap = kDefaultWordCap);

enum class FieldKind { phi, chi, xi };

struct FieldSymbol {
  FieldKind kind = FieldKind::phi;
  LabelId label = 0;
};

/// Two-term ladder expansion; registers derived labels in the context:
///   phi_f = a_{star f} + a_f^dagger
///   chi_f = a_{star(bullet f)} + a_{bullet f}^dagger
///   xi_f  = a_{box f} + a_{box f}^dagger
std::array<LadderOp, 2> expand_field(const FieldSymbol& sym, GramContext& ctx);

/// Vacuum value of a product of field symbols (distributes the 2-term
/// expansions over <= 2^n words).
Complex field_vev(const std::vector<FieldSymbol>& symbols, GramContext& ctx,
                  int cap = kDefaultWordCap);
double field_vev_bound(const std::vector<FieldSymbol>& symbols, GramContext& ctx,
                       int cap = kDefaultWordCap);

struct CommutatorValue {
  Complex value;   // omega(left [X_f, X_g] right)
  double scale;    // abs-bound of the two orderings, for relative tolerances
};

CommutatorValue commutator_vev(FieldKind kind, LabelId f, LabelId g,
                               const OperatorWord& left_probe,
                               const OperatorWord& right_probe, GramContext& ctx,
                               int cap = kDefaultWordCap);

/// b_f = a_{bullet f}, c_f = a_{box f}: register and return the relabeled id.
LabelId relabel_b(LabelId f, GramContext& ctx);
LabelId relabel_c(LabelId f, GramContext& ctx);

struct EquivalenceReport {
  double max_abs_difference = 0.0;
  double scale = 0.0;
  int words_checked = 0;
};

/// Operator words over abstract labels 0..n-1, to be instantiated either
/// with a-operators over given plus-sheet functions h_i or with b-operators
/// over the canonical preimages f_i (bullet f_i has plus sheet h_i).
/// The same expressions must give the same expectation values.
EquivalenceReport equivalence_check(
    const std::vector<OperatorWord>& words,
    const std::vector<std::vector<AntisymTensor2>>& plus_sheets, const GridPtr& grid,
    const PhysicalConstants& constants, int cap = kDefaultWordCap);

}  // namespace emfield
