#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "colouring/rng.hpp"
#include "colouring/rule.hpp"

namespace colouring {

inline constexpr std::int64_t kDefaultRegionNodeCeiling = 20'000'000;

/// Finite descendant-closed fragment: every canonical word of length <= depth
/// is a node; d1/d2 append a generator on the right and renormalize. Nodes
/// are stored grouped by length in length-lex order, so node 0 is the base
/// (empty) word and the frontier is the final block.
struct Region {
  int depth = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> words;            // node -> letter string
  std::vector<std::int32_t> d1, d2;          // descendant node ids; -1 past the frontier
  std::vector<std::int32_t> level_offset;    // level_offset[n] = first node of length n
  std::vector<std::uint8_t> bits;            // fair-coin coordinate per node
  std::unordered_map<std::string, std::int32_t> index;

  std::int32_t node_count() const { return static_cast<std::int32_t>(words.size()); }
  std::int32_t frontier_begin() const { return level_offset[static_cast<size_t>(depth)]; }
  bool interior(std::int32_t v) const { return d1[static_cast<size_t>(v)] >= 0; }
  std::int32_t node(const std::string& letters) const;

  /// Fresh i.i.d. fair bits, one draw per node in storage order.
  void resample_bits(std::uint64_t bit_seed);
};

Region build_region(int depth, std::uint64_t seed,
                    std::int64_t node_ceiling = kDefaultRegionNodeCeiling);

enum class FrontierStrategy { Stationary, Uniform, Fixed };

/// Samples pure colours from the exact stationary law by comparing a uniform
/// 64-bit integer against fixed-point thresholds of the exact cumulative
/// weights (error below 2^-64 per draw).
class StationarySampler {
 public:
  StationarySampler();
  PureColour sample(std::uint64_t u) const {
    if (u < t1_) return {1};
    if (u < t2_) return {2};
    return {3};
  }

 private:
  std::uint64_t t1_, t2_;
};

/// Colours the frontier per strategy, then every interior node from its bit
/// and its two descendants, level by level towards the base. With probability
/// `epsilon` (independently per interior node) a uniformly random pure colour
/// is substituted. Deterministic given (region, strategy, epsilon).
Colouring propagate(const Region& region, FrontierStrategy strategy, double epsilon = 0.0,
                    const std::vector<PureColour>& fixed_frontier = {});

/// "word<TAB>bit<TAB>colour" lines in node storage order.
std::string dump_colouring(const Region& region, const Colouring& colouring);

struct JointTable {
  std::array<std::array<std::int64_t, 3>, 3> counts{};
  std::int64_t total() const;
  /// Total-variation distance between the empirical joint and the product of
  /// its own marginals.
  double tv_from_product() const;
};

struct SimReport {
  int depth = 0;
  std::int64_t runs = 0;
  std::uint64_t seed = 0;
  std::array<std::int64_t, 3> base_counts{};
  JointTable joint_children;   // colours at the two descendants of the base
  JointTable joint_pair;       // colours at the nodes "12" and "22"
  std::array<double, 3> base_marginal() const;
  std::array<double, 3> base_stderr() const;
};

/// N independent regions (fresh bits and frontier colours per run) with the
/// stationary frontier; tallies the base colour and two joint tables.
SimReport estimate_stats(int depth, std::int64_t runs, std::uint64_t seed);

/// The two-pathway probe around the confluence relation: the chain
/// base..T1^3 meeting the chain base..T1^2(T2) at the shared node "2111",
/// which is clamped to a fixed colour; all side inputs are i.i.d. stationary
/// and every chain node draws a fresh bit.
struct GadgetReport {
  PureColour clamp;
  std::int64_t runs = 0;
  std::array<std::int64_t, 3> counts{};
  std::array<double, 3> marginal() const;
  std::array<double, 3> standard_error() const;
};

GadgetReport gadget_run(PureColour clamp, std::int64_t runs, std::uint64_t seed);

struct TieRateReport {
  std::int64_t samples = 0;
  std::int64_t ties = 0;
  /// Samples whose leading margin is within the series-truncation slack, so
  /// the tie verdict could flip with more terms.
  std::int64_t truncation_sensitive = 0;
  double tie_rate() const { return samples ? static_cast<double>(ties) / static_cast<double>(samples) : 0.0; }
};

/// Random-bit sampling of A-matrices at the given series depth; counts exact
/// argmax ties of A p.
TieRateReport purity_tie_rate(const SimplexColour& p, std::int64_t samples, int series_depth,
                              std::uint64_t seed);

struct ThreeSheetReport {
  std::int64_t runs = 0;
  std::int64_t bc_points = 0;        // coloured b/c-sheet points
  std::int64_t bc_ties = 0;          // argmax ties on those sheets (lowest index taken)
  std::int64_t a_points = 0;         // interior a-sheet points
  std::int64_t a_agreements = 0;     // agreement with the pure reduced rule
  double purity_rate() const;
  double agreement_rate() const;
};

/// Full-rule pipeline on a region: descendants' a-sheets first, then b/c
/// sheets through A-matrix argmax (bits addressed through the oracle, ties
/// broken to the lowest index and counted), then the a-sheet through the
/// B-tensor. Reports purity and agreement with the pure reduced rule.
ThreeSheetReport three_sheet_simulate(const Region& region, std::int64_t runs, std::uint64_t seed,
                                      int series_depth = 40);

}  // namespace colouring
