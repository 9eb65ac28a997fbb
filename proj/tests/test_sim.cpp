#include "doctest.h"

#include <cmath>
#include <sstream>

#include "colouring/markov.hpp"
#include "colouring/rng.hpp"
#include "colouring/sim.hpp"

using namespace colouring;

TEST_CASE("region topology") {
  const Region r = build_region(5, 1);
  CHECK(r.node_count() == 1 + 2 + 4 + 8 + 15 + 28);
  CHECK(r.frontier_begin() == 1 + 2 + 4 + 8 + 15);
  CHECK(r.words[0].empty());
  CHECK(r.level_offset[1] == 1);
  CHECK(r.level_offset[2] == 3);

  // Append-right descendants, with the relation folding "1112" to "2111".
  CHECK(r.d1[static_cast<size_t>(r.node("11"))] == r.node("111"));
  CHECK(r.d2[static_cast<size_t>(r.node("11"))] == r.node("112"));
  CHECK(r.d2[static_cast<size_t>(r.node("111"))] == r.node("2111"));
  CHECK(r.d1[static_cast<size_t>(r.node("211"))] == r.node("2111"));  // diamond
  CHECK(r.interior(r.node("1111")));
  CHECK(!r.interior(r.node("11111")));
  CHECK_THROWS_AS(r.node("1112"), std::out_of_range);
  CHECK_THROWS_AS(build_region(12, 1, 1000), std::length_error);
}

TEST_CASE("bit resampling is deterministic and seed-sensitive") {
  Region a = build_region(6, 42);
  Region b = build_region(6, 42);
  CHECK(a.bits == b.bits);
  b.resample_bits(43);
  CHECK(a.bits != b.bits);
  b.resample_bits(42);
  CHECK(a.bits == b.bits);
}

TEST_CASE("stationary sampler hits the exact thresholds") {
  const StationarySampler s;
  CHECK(s.sample(0) == PureColour{1});
  CHECK(s.sample(~0ULL) == PureColour{3});

  // Empirical frequencies against (3-sqrt7, 3-sqrt7, 2sqrt7-5).
  SplitMix64 rng(3);
  int counts[3] = {};
  const int n = 200000;
  for (int t = 0; t < n; ++t) ++counts[s.sample(rng.next()).index - 1];
  CHECK(std::abs(counts[0] / double(n) - 0.35425) < 0.005);
  CHECK(std::abs(counts[1] / double(n) - 0.35425) < 0.005);
  CHECK(std::abs(counts[2] / double(n) - 0.29150) < 0.005);
}

TEST_CASE("propagate with a fixed frontier follows the rule by hand") {
  Region r = build_region(1, 5);
  const std::vector<PureColour> frontier = {{2}, {1}};  // nodes "1", "2"
  const Colouring c = propagate(r, FrontierStrategy::Fixed, 0.0, frontier);
  CHECK(c[static_cast<size_t>(r.node("1"))] == PureColour{2});
  CHECK(c[static_cast<size_t>(r.node("2"))] == PureColour{1});
  const PureColour expected = apply_rule_pure(r.bits[0], {2}, {1});
  CHECK(c[0] == expected);
  CHECK_THROWS_AS(propagate(r, FrontierStrategy::Fixed, 0.0, {{1}}), std::invalid_argument);
  CHECK_THROWS_AS(propagate(r, FrontierStrategy::Stationary, -0.1), std::invalid_argument);
}

TEST_CASE("propagate is deterministic given the region") {
  const Region r = build_region(7, 91);
  CHECK(propagate(r, FrontierStrategy::Stationary) == propagate(r, FrontierStrategy::Stationary));
  CHECK(propagate(r, FrontierStrategy::Uniform) == propagate(r, FrontierStrategy::Uniform));
  CHECK(propagate(r, FrontierStrategy::Stationary, 0.3) ==
        propagate(r, FrontierStrategy::Stationary, 0.3));
}

TEST_CASE("epsilon perturbation leaves the frontier alone") {
  const Region r = build_region(5, 8);
  const Colouring pure = propagate(r, FrontierStrategy::Stationary);
  const Colouring noisy = propagate(r, FrontierStrategy::Stationary, 1.0);
  for (std::int32_t v = r.frontier_begin(); v < r.node_count(); ++v)
    CHECK(pure[static_cast<size_t>(v)] == noisy[static_cast<size_t>(v)]);
}

TEST_CASE("colouring dump format") {
  const Region r = build_region(2, 4);
  const Colouring c = propagate(r, FrontierStrategy::Stationary);
  const std::string text = dump_colouring(r, c);
  std::istringstream in(text);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    if (lines == 1) {
      CHECK(line.substr(0, 2) == "e\t");
      CHECK(line.size() == 5);
    }
  }
  CHECK(lines == r.node_count());
}

TEST_CASE("joint table total variation") {
  JointTable indep;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) indep.counts[i][j] = 4;
  CHECK(indep.total() == 36);
  CHECK(indep.tv_from_product() == doctest::Approx(0.0));

  JointTable diag;
  for (int i = 0; i < 3; ++i) diag.counts[i][i] = 5;
  CHECK(diag.tv_from_product() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("estimate_stats bookkeeping and determinism") {
  const SimReport a = estimate_stats(4, 300, 77);
  const SimReport b = estimate_stats(4, 300, 77);
  CHECK(a.base_counts == b.base_counts);
  CHECK(a.base_counts[0] + a.base_counts[1] + a.base_counts[2] == 300);
  CHECK(a.joint_children.total() == 300);
  CHECK(a.joint_pair.total() == 300);
  const SimReport c = estimate_stats(4, 300, 78);
  CHECK(a.base_counts != c.base_counts);
  const auto m = a.base_marginal();
  CHECK(m[0] + m[1] + m[2] == doctest::Approx(1.0));
}

TEST_CASE("gadget marginals approach the exact recombination vector") {
  const PathwayReport pw = pathway_analysis();
  for (std::uint8_t clamp = 1; clamp <= 3; ++clamp) {
    const GadgetReport g = gadget_run({clamp}, 100000, 1234);
    CHECK(g.counts[0] + g.counts[1] + g.counts[2] == 100000);
    const auto m = g.marginal();
    const auto se = g.standard_error();
    for (int i = 0; i < 3; ++i) {
      const double target = pw.recombination[clamp - 1].d[i].to_double();
      CHECK(std::abs(m[i] - target) <= 5.0 * se[i] + 1e-9);
    }
  }
  const GadgetReport r1 = gadget_run({1}, 500, 9);
  const GadgetReport r2 = gadget_run({1}, 500, 9);
  CHECK(r1.counts == r2.counts);
}

TEST_CASE("pure colours never tie") {
  for (std::uint8_t i = 1; i <= 3; ++i) {
    const TieRateReport rep = purity_tie_rate(SimplexColour::pure({i}), 2000, 20, 55);
    CHECK(rep.samples == 2000);
    CHECK(rep.ties == 0);
    CHECK(rep.truncation_sensitive == 0);  // margin exceeds the series tail
    CHECK(rep.tie_rate() == 0.0);
  }
}

TEST_CASE("half-half mixture does not tie at full depth") {
  SimplexColour p;
  p.w = {Rational(1, 2), Rational(1, 2), Rational(0)};
  const TieRateReport rep = purity_tie_rate(p, 2000, 30, 56);
  CHECK(rep.ties == 0);
}

TEST_CASE("three-sheet pipeline agrees with the reduced rule") {
  const Region r = build_region(4, 202);
  const ThreeSheetReport rep = three_sheet_simulate(r, 30, 17);
  CHECK(rep.a_points == 30 * r.frontier_begin());
  CHECK(rep.bc_points == 2 * rep.a_points);
  CHECK(rep.bc_ties == 0);
  CHECK(rep.purity_rate() == 1.0);
  CHECK(rep.agreement_rate() == 1.0);
}
