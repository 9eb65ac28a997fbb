#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "colouring/rational.hpp"
#include "colouring/rng.hpp"
#include "colouring/rule.hpp"
#include "colouring/sim.hpp"

namespace colouring {

/// Player I's information set anchored at x: the a-sheet point over x plus
/// the b-sheet points over the T1-preimages and the c-sheet points over the
/// T2-preimages, the three blocks weighted 1/3 each.
struct InfoSetI {
  std::int32_t anchor = -1;
  std::vector<std::int32_t> t1_preimages;
  std::vector<std::int32_t> t2_preimages;
};

InfoSetI info_set_I(const Region& region, std::int32_t anchor);

/// Player II's mixed action at a node: a distribution over the nine pure
/// column pairs, with its two marginals.
struct ActionII {
  std::array<std::array<Rational, 3>, 3> q{};  // q[j-1][k-1]

  static ActionII pure(PureColour j, PureColour k) {
    ActionII a;
    a.q[j.index - 1][k.index - 1] = Rational(1);
    return a;
  }
  bool valid() const;
  std::array<Rational, 3> marginal_r() const;  // row sums
  std::array<Rational, 3> marginal_s() const;  // column sums
};

/// A strategy pair on a region, stored per anchor node. Player II's action is
/// meaningful only at interior nodes. The oracle seed addresses the A-matrix
/// bits at the two off-sheet points over each node.
struct Profile {
  std::vector<SimplexColour> colour_I;  // Player I, per info-set anchor
  std::vector<ActionII> action_II;     // Player II, per node
  std::uint64_t oracle_seed = 0;
  int series_depth = 40;
};

/// The profile a colouring induces: Player I plays the colouring, Player II
/// copies the two descendant colours as a pure column pair.
Profile induced_profile(const Region& region, const Colouring& colouring,
                        std::uint64_t oracle_seed, int series_depth = 40);

/// A-matrices at the b-sheet and c-sheet points over a node's word.
AMatrix sheet_b_matrix(const Profile& profile, const Region& region, std::int32_t node);
AMatrix sheet_c_matrix(const Profile& profile, const Region& region, std::int32_t node);

/// Player I's expected payoff on an information set: only the a-sheet member
/// pays, so the block weight 1/3 multiplies the tensor evaluation.
Rational payoff_I(const SimplexColour& row, const ActionII& opponent, int e_bit);

/// Player II's payoff at a node: r A_b p + s A_c q_c with (r, s) the action's
/// marginals and (p, q_c) Player I's colours at the two off-sheet sources.
Rational payoff_II(const ActionII& action, const SimplexColour& p, const SimplexColour& q_c,
                   const AMatrix& a_b, const AMatrix& a_c);

/// Improvement potential at an interior node: the node's own info-set gain
/// for Player I plus Player II's two marginal gains at the node, each block
/// carrying weight 1/3. Always nonnegative.
Rational improvement_t(std::int32_t node, const Profile& profile, const Region& region);

struct StabilityReport {
  std::vector<std::int32_t> nodes;  // interior nodes, in storage order
  std::vector<Rational> t;          // per-node improvement, aligned with nodes
  Rational mean;                    // the gamma certificate
  Rational delta;
  std::vector<std::int32_t> exceeding;  // nodes with t > delta
  Rational exceeding_measure;           // |exceeding| / |nodes|
  bool markov_consistent = false;       // delta * measure <= mean
};

StabilityReport gamma_stability(const Profile& profile, const Region& region,
                                const Rational& delta);

struct EquilibriumViolation {
  std::int32_t anchor = -1;
  char player = 'I';  // 'I' or '2'
  Rational gain;
};

/// Checks eps-optimality of both players on every information set wholly
/// interior to the region; boundary-touching sets are skipped. Player II is
/// checked marginal-wise, matching the payoff's separable structure.
std::vector<EquilibriumViolation> equilibrium_check(const Profile& profile, const Region& region,
                                                    const Rational& eps);

}  // namespace colouring
