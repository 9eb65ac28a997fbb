#include "colouring/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "colouring/q7.hpp"

namespace colouring {

namespace {

constexpr std::uint64_t kStreamBits = 0xB175;
constexpr std::uint64_t kStreamFrontier = 0xF407;
constexpr std::uint64_t kStreamPerturb = 0x9E27;
constexpr std::uint64_t kStreamRun = 0x5243;

/// apply_rule_pure as a flat lookup table, [e][j-1][k-1] -> colour index.
struct RuleTable {
  std::uint8_t t[2][3][3];
  RuleTable() {
    for (int e = 0; e < 2; ++e)
      for (std::uint8_t j = 1; j <= 3; ++j)
        for (std::uint8_t k = 1; k <= 3; ++k)
          t[e][j - 1][k - 1] = apply_rule_pure(e, {j}, {k}).index;
  }
};
const RuleTable kRule;

}  // namespace

std::int32_t Region::node(const std::string& letters) const {
  auto it = index.find(letters);
  if (it == index.end()) throw std::out_of_range("Region: no node for word '" + letters + "'");
  return it->second;
}

void Region::resample_bits(std::uint64_t bit_seed) {
  SplitMix64 rng(derive_seed(bit_seed, kStreamBits));
  bits.resize(words.size());
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_bit());
}

Region build_region(int depth, std::uint64_t seed, std::int64_t node_ceiling) {
  if (depth < 0) throw std::invalid_argument("build_region: negative depth");
  Region r;
  r.depth = depth;
  r.seed = seed;
  r.level_offset.assign(static_cast<size_t>(depth) + 2, 0);
  for (int n = 0; n <= depth; ++n) {
    r.level_offset[static_cast<size_t>(n)] = r.node_count();
    for (const Word& w : enumerate_normal(static_cast<size_t>(n))) {
      if (r.node_count() >= node_ceiling)
        throw std::length_error("build_region: node count exceeds configured ceiling");
      r.index.emplace(w.letters(), r.node_count());
      r.words.push_back(w.letters());
    }
  }
  r.level_offset[static_cast<size_t>(depth) + 1] = r.node_count();

  r.d1.assign(r.words.size(), -1);
  r.d2.assign(r.words.size(), -1);
  for (std::int32_t v = 0; v < r.frontier_begin(); ++v) {
    std::string s1 = r.words[static_cast<size_t>(v)] + '1';
    std::string s2 = r.words[static_cast<size_t>(v)] + '2';
    normalize_letters(s1);
    normalize_letters(s2);
    r.d1[static_cast<size_t>(v)] = r.node(s1);
    r.d2[static_cast<size_t>(v)] = r.node(s2);
  }
  r.resample_bits(seed);
  return r;
}

StationarySampler::StationarySampler() {
  // t1 = floor((3 - sqrt7) 2^64), t2 = floor((6 - 2 sqrt7) 2^64); both
  // irrational, so floor(m 2^64 - sqrt(c) 2^64) = m 2^64 - isqrt(c 2^128) - 1.
  BigInt two64(1);
  mpz_mul_2exp(two64.get_mpz_t(), two64.get_mpz_t(), 64);
  const BigInt two128 = two64 * two64;
  const BigInt t1 = 3 * two64 - isqrt(7 * two128) - 1;
  const BigInt t2 = 6 * two64 - isqrt(28 * two128) - 1;
  t1_ = mpz_get_ui(t1.get_mpz_t());
  t2_ = mpz_get_ui(t2.get_mpz_t());
}

namespace {

const StationarySampler& stationary_sampler() {
  static const StationarySampler s;
  return s;
}

void propagate_into(const Region& region, FrontierStrategy strategy, double epsilon,
                    const std::vector<PureColour>& fixed_frontier, Colouring& out) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("propagate: epsilon outside [0, 1]");
  const std::int32_t n = region.node_count();
  const std::int32_t fb = region.frontier_begin();
  out.resize(static_cast<size_t>(n));

  SplitMix64 frontier_rng(derive_seed(region.seed, kStreamFrontier));
  switch (strategy) {
    case FrontierStrategy::Stationary: {
      const StationarySampler& sampler = stationary_sampler();
      for (std::int32_t v = fb; v < n; ++v) out[static_cast<size_t>(v)] = sampler.sample(frontier_rng.next());
      break;
    }
    case FrontierStrategy::Uniform:
      for (std::int32_t v = fb; v < n; ++v)
        out[static_cast<size_t>(v)] = {static_cast<std::uint8_t>(1 + frontier_rng.next() % 3)};
      break;
    case FrontierStrategy::Fixed:
      if (static_cast<std::int32_t>(fixed_frontier.size()) != n - fb)
        throw std::invalid_argument("propagate: fixed frontier list has wrong size");
      for (std::int32_t v = fb; v < n; ++v)
        out[static_cast<size_t>(v)] = fixed_frontier[static_cast<size_t>(v - fb)];
      break;
  }

  if (epsilon > 0.0) {
    SplitMix64 perturb_rng(derive_seed(region.seed, kStreamPerturb));
    for (std::int32_t v = fb - 1; v >= 0; --v) {
      const size_t sv = static_cast<size_t>(v);
      std::uint8_t c = kRule.t[region.bits[sv]][out[static_cast<size_t>(region.d1[sv])].index - 1]
                              [out[static_cast<size_t>(region.d2[sv])].index - 1];
      if (perturb_rng.next_unit() < epsilon)
        c = static_cast<std::uint8_t>(1 + perturb_rng.next() % 3);
      out[sv] = {c};
    }
  } else {
    for (std::int32_t v = fb - 1; v >= 0; --v) {
      const size_t sv = static_cast<size_t>(v);
      out[sv] = {kRule.t[region.bits[sv]][out[static_cast<size_t>(region.d1[sv])].index - 1]
                        [out[static_cast<size_t>(region.d2[sv])].index - 1]};
    }
  }
}

}  // namespace

Colouring propagate(const Region& region, FrontierStrategy strategy, double epsilon,
                    const std::vector<PureColour>& fixed_frontier) {
  Colouring out;
  propagate_into(region, strategy, epsilon, fixed_frontier, out);
  return out;
}

std::string dump_colouring(const Region& region, const Colouring& colouring) {
  if (colouring.size() != region.words.size())
    throw std::invalid_argument("dump_colouring: colouring not total");
  std::string out;
  for (std::int32_t v = 0; v < region.node_count(); ++v) {
    const size_t sv = static_cast<size_t>(v);
    out += region.words[sv].empty() ? "e" : region.words[sv];
    out += '\t';
    out += static_cast<char>('0' + region.bits[sv]);
    out += '\t';
    out += static_cast<char>('0' + colouring[sv].index);
    out += '\n';
  }
  return out;
}

std::int64_t JointTable::total() const {
  std::int64_t t = 0;
  for (const auto& row : counts)
    for (std::int64_t c : row) t += c;
  return t;
}

double JointTable::tv_from_product() const {
  const std::int64_t t = total();
  if (t == 0) return 0.0;
  double rowm[3] = {}, colm[3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double p = static_cast<double>(counts[static_cast<size_t>(i)][static_cast<size_t>(j)]) / static_cast<double>(t);
      rowm[i] += p;
      colm[j] += p;
    }
  double tv = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double p = static_cast<double>(counts[static_cast<size_t>(i)][static_cast<size_t>(j)]) / static_cast<double>(t);
      tv += std::abs(p - rowm[i] * colm[j]);
    }
  return tv / 2.0;
}

std::array<double, 3> SimReport::base_marginal() const {
  std::array<double, 3> m{};
  for (int i = 0; i < 3; ++i)
    m[static_cast<size_t>(i)] = runs ? static_cast<double>(base_counts[static_cast<size_t>(i)]) / static_cast<double>(runs) : 0.0;
  return m;
}

std::array<double, 3> SimReport::base_stderr() const {
  std::array<double, 3> se{};
  const auto m = base_marginal();
  for (int i = 0; i < 3; ++i)
    se[static_cast<size_t>(i)] =
        runs ? std::sqrt(m[static_cast<size_t>(i)] * (1.0 - m[static_cast<size_t>(i)]) / static_cast<double>(runs)) : 0.0;
  return se;
}

SimReport estimate_stats(int depth, std::int64_t runs, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("estimate_stats: runs must be >= 1");
  Region region = build_region(depth, seed);
  SimReport rep;
  rep.depth = depth;
  rep.runs = runs;
  rep.seed = seed;

  const bool have_pair = depth >= 2;
  const std::int32_t n1 = depth >= 1 ? region.node("1") : -1;
  const std::int32_t n2 = depth >= 1 ? region.node("2") : -1;
  const std::int32_t n12 = have_pair ? region.node("12") : -1;
  const std::int32_t n22 = have_pair ? region.node("22") : -1;

  Colouring colouring;
  for (std::int64_t t = 0; t < runs; ++t) {
    region.seed = derive_seed(seed, kStreamRun, static_cast<std::uint64_t>(t));
    region.resample_bits(region.seed);
    propagate_into(region, FrontierStrategy::Stationary, 0.0, {}, colouring);
    ++rep.base_counts[static_cast<size_t>(colouring[0].index - 1)];
    if (n1 >= 0) {
      ++rep.joint_children.counts[static_cast<size_t>(colouring[static_cast<size_t>(n1)].index - 1)]
                                 [static_cast<size_t>(colouring[static_cast<size_t>(n2)].index - 1)];
    }
    if (have_pair) {
      ++rep.joint_pair.counts[static_cast<size_t>(colouring[static_cast<size_t>(n12)].index - 1)]
                             [static_cast<size_t>(colouring[static_cast<size_t>(n22)].index - 1)];
    }
  }
  return rep;
}

std::array<double, 3> GadgetReport::marginal() const {
  std::array<double, 3> m{};
  for (int i = 0; i < 3; ++i)
    m[static_cast<size_t>(i)] = runs ? static_cast<double>(counts[static_cast<size_t>(i)]) / static_cast<double>(runs) : 0.0;
  return m;
}

std::array<double, 3> GadgetReport::standard_error() const {
  std::array<double, 3> se{};
  const auto m = marginal();
  for (int i = 0; i < 3; ++i)
    se[static_cast<size_t>(i)] =
        runs ? std::sqrt(m[static_cast<size_t>(i)] * (1.0 - m[static_cast<size_t>(i)]) / static_cast<double>(runs)) : 0.0;
  return se;
}

GadgetReport gadget_run(PureColour clamp, std::int64_t runs, std::uint64_t seed) {
  if (runs < 1) throw std::invalid_argument("gadget_run: runs must be >= 1");
  GadgetReport rep;
  rep.clamp = clamp;
  rep.runs = runs;
  const StationarySampler& sampler = stationary_sampler();
  const std::uint8_t z = clamp.index;

  for (std::int64_t t = 0; t < runs; ++t) {
    SplitMix64 rng(derive_seed(seed, kStreamRun, static_cast<std::uint64_t>(t)));
    // Side inputs, i.i.d. stationary: the second descendant of each chain
    // node, plus the first descendant "1111" at the top of the T1-chain.
    const std::uint8_t s1111 = sampler.sample(rng.next()).index;
    const std::uint8_t s112 = sampler.sample(rng.next()).index;
    const std::uint8_t s12 = sampler.sample(rng.next()).index;
    const std::uint8_t s2112 = sampler.sample(rng.next()).index;
    const std::uint8_t s212 = sampler.sample(rng.next()).index;
    const std::uint8_t s22 = sampler.sample(rng.next()).index;

    // T1-chain: "111" sees ("1111", clamp at "2111"), then "11", then "1".
    const std::uint8_t c111 = kRule.t[rng.next_bit()][s1111 - 1][z - 1];
    const std::uint8_t c11 = kRule.t[rng.next_bit()][c111 - 1][s112 - 1];
    const std::uint8_t c1 = kRule.t[rng.next_bit()][c11 - 1][s12 - 1];
    // T2-chain: "211" sees (clamp at "2111", "2112"), then "21", then "2".
    const std::uint8_t c211 = kRule.t[rng.next_bit()][z - 1][s2112 - 1];
    const std::uint8_t c21 = kRule.t[rng.next_bit()][c211 - 1][s212 - 1];
    const std::uint8_t c2 = kRule.t[rng.next_bit()][c21 - 1][s22 - 1];
    // Base point.
    const std::uint8_t cx = kRule.t[rng.next_bit()][c1 - 1][c2 - 1];
    ++rep.counts[static_cast<size_t>(cx - 1)];
  }
  return rep;
}

TieRateReport purity_tie_rate(const SimplexColour& p, std::int64_t samples, int series_depth,
                              std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("purity_tie_rate: samples must be >= 1");
  if (!p.valid()) throw std::invalid_argument("purity_tie_rate: invalid simplex point");
  const StreamTable& streams = stream_table(series_depth);
  // Tail of the truncated series: each off-diagonal entry can still move by
  // at most 2^-depth / 100, so a row value by the same amount.
  const Rational slack = Rational(1, 50) * pow2_inv(static_cast<unsigned>(series_depth));

  TieRateReport rep;
  rep.samples = samples;
  for (std::int64_t t = 0; t < samples; ++t) {
    SplitMix64 rng(derive_seed(seed, kStreamRun, static_cast<std::uint64_t>(t)));
    const AMatrix a = a_matrix([&rng](const Word&) { return rng.next_bit(); }, streams, series_depth);
    const auto am = row_argmax(a.apply(p));
    if (am.count() > 1) {
      ++rep.ties;
      ++rep.truncation_sensitive;
      continue;
    }
    const int best = am.lowest().index - 1;
    Rational margin(0);
    bool first = true;
    for (int i = 0; i < 3; ++i) {
      if (i == best) continue;
      const Rational gap = am.values[static_cast<size_t>(best)] - am.values[static_cast<size_t>(i)];
      if (first || gap < margin) margin = gap;
      first = false;
    }
    if (margin <= slack) ++rep.truncation_sensitive;
  }
  return rep;
}

double ThreeSheetReport::purity_rate() const {
  return bc_points ? 1.0 - static_cast<double>(bc_ties) / static_cast<double>(bc_points) : 1.0;
}

double ThreeSheetReport::agreement_rate() const {
  return a_points ? static_cast<double>(a_agreements) / static_cast<double>(a_points) : 1.0;
}

ThreeSheetReport three_sheet_simulate(const Region& region, std::int64_t runs, std::uint64_t seed,
                                      int series_depth) {
  if (runs < 1) throw std::invalid_argument("three_sheet_simulate: runs must be >= 1");
  const StreamTable& streams = stream_table(series_depth);
  const StationarySampler& sampler = stationary_sampler();
  ThreeSheetReport rep;
  rep.runs = runs;

  const std::int32_t n = region.node_count();
  const std::int32_t fb = region.frontier_begin();
  std::vector<std::uint8_t> a_colour(static_cast<size_t>(n));

  // Sheet-b matrices live at the point w."212", sheet-c at w."121".
  auto sheet_matrix = [&](const BitOracle& oracle, const std::string& w, const char* shift) {
    return a_matrix(
        [&](const Word& g) {
          std::string s = w + shift + g.letters();
          normalize_letters(s);
          return oracle.bit(s);
        },
        streams, series_depth);
  };

  for (std::int64_t t = 0; t < runs; ++t) {
    const std::uint64_t run_seed = derive_seed(seed, kStreamRun, static_cast<std::uint64_t>(t));
    const BitOracle oracle(run_seed);
    SplitMix64 frontier_rng(derive_seed(run_seed, kStreamFrontier));
    for (std::int32_t v = fb; v < n; ++v)
      a_colour[static_cast<size_t>(v)] = sampler.sample(frontier_rng.next()).index;

    for (std::int32_t v = fb - 1; v >= 0; --v) {
      const size_t sv = static_cast<size_t>(v);
      const std::uint8_t ja = a_colour[static_cast<size_t>(region.d1[sv])];
      const std::uint8_t ka = a_colour[static_cast<size_t>(region.d2[sv])];

      const AMatrix ab = sheet_matrix(oracle, region.words[sv], "212");
      const auto bm = row_argmax(ab.apply(SimplexColour::pure({ja})));
      if (bm.count() > 1) ++rep.bc_ties;
      const PureColour b_col = bm.lowest();

      const AMatrix ac = sheet_matrix(oracle, region.words[sv], "121");
      const auto cm = row_argmax(ac.apply(SimplexColour::pure({ka})));
      if (cm.count() > 1) ++rep.bc_ties;
      const PureColour c_col = cm.lowest();
      rep.bc_points += 2;

      const int e_bit = oracle.bit(region.words[sv]);
      const auto fm = correspondence_F(e_bit, SimplexColour::pure(b_col), SimplexColour::pure(c_col));
      a_colour[sv] = fm.lowest().index;
      ++rep.a_points;
      if (a_colour[sv] == kRule.t[e_bit][ja - 1][ka - 1]) ++rep.a_agreements;
    }
  }
  return rep;
}

}  // namespace colouring
