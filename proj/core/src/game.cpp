#include "colouring/game.hpp"

#include <stdexcept>

namespace colouring {

namespace {

const Rational& third() {
  static const Rational t(1, 3);
  return t;
}

AMatrix sheet_matrix(const Profile& profile, const Region& region, std::int32_t node,
                     const char* shift) {
  const BitOracle oracle(profile.oracle_seed);
  const StreamTable& streams = stream_table(profile.series_depth);
  const std::string& w = region.words[static_cast<size_t>(node)];
  return a_matrix(
      [&](const Word& g) {
        std::string s = w + shift + g.letters();
        normalize_letters(s);
        return oracle.bit(s);
      },
      streams, profile.series_depth);
}

/// Best-vs-current gain of a marginal against fixed row values, never below 0.
Rational marginal_gain(const std::array<Rational, 3>& marginal,
                       const std::array<Rational, 3>& values) {
  Rational best = values[0];
  Rational current(0);
  for (int i = 0; i < 3; ++i) {
    if (values[static_cast<size_t>(i)] > best) best = values[static_cast<size_t>(i)];
    current += marginal[static_cast<size_t>(i)] * values[static_cast<size_t>(i)];
  }
  return best - current;
}

/// Row values v_i = sum_{j,k} q[j][k] b[i][j][k] of the bit-e tensor.
std::array<Rational, 3> tensor_rows(const ActionII& action, int e_bit) {
  const BTensor& b = BTensor::for_bit(e_bit);
  std::array<Rational, 3> v{Rational(0), Rational(0), Rational(0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (b.b[i][j][k]) v[static_cast<size_t>(i)] += action.q[static_cast<size_t>(j)][static_cast<size_t>(k)];
  return v;
}

}  // namespace

InfoSetI info_set_I(const Region& region, std::int32_t anchor) {
  InfoSetI s;
  s.anchor = anchor;
  const size_t len = region.words[static_cast<size_t>(anchor)].size();
  if (len == 0) return s;
  const std::int32_t lo = region.level_offset[len - 1];
  const std::int32_t hi = region.level_offset[len];
  for (std::int32_t u = lo; u < hi; ++u) {
    if (region.d1[static_cast<size_t>(u)] == anchor) s.t1_preimages.push_back(u);
    if (region.d2[static_cast<size_t>(u)] == anchor) s.t2_preimages.push_back(u);
  }
  return s;
}

bool ActionII::valid() const {
  Rational sum(0);
  for (const auto& row : q)
    for (const Rational& x : row) {
      if (x.sign() < 0) return false;
      sum += x;
    }
  return sum == Rational(1);
}

std::array<Rational, 3> ActionII::marginal_r() const {
  std::array<Rational, 3> r{Rational(0), Rational(0), Rational(0)};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) r[static_cast<size_t>(j)] += q[static_cast<size_t>(j)][static_cast<size_t>(k)];
  return r;
}

std::array<Rational, 3> ActionII::marginal_s() const {
  std::array<Rational, 3> s{Rational(0), Rational(0), Rational(0)};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) s[static_cast<size_t>(k)] += q[static_cast<size_t>(j)][static_cast<size_t>(k)];
  return s;
}

Profile induced_profile(const Region& region, const Colouring& colouring,
                        std::uint64_t oracle_seed, int series_depth) {
  if (colouring.size() != region.words.size())
    throw std::invalid_argument("induced_profile: colouring not total");
  Profile p;
  p.oracle_seed = oracle_seed;
  p.series_depth = series_depth;
  p.colour_I.resize(colouring.size());
  p.action_II.resize(colouring.size());
  for (std::int32_t v = 0; v < region.node_count(); ++v) {
    const size_t sv = static_cast<size_t>(v);
    p.colour_I[sv] = SimplexColour::pure(colouring[sv]);
    if (region.interior(v))
      p.action_II[sv] = ActionII::pure(colouring[static_cast<size_t>(region.d1[sv])],
                                       colouring[static_cast<size_t>(region.d2[sv])]);
  }
  return p;
}

AMatrix sheet_b_matrix(const Profile& profile, const Region& region, std::int32_t node) {
  return sheet_matrix(profile, region, node, "212");
}

AMatrix sheet_c_matrix(const Profile& profile, const Region& region, std::int32_t node) {
  return sheet_matrix(profile, region, node, "121");
}

Rational payoff_I(const SimplexColour& row, const ActionII& opponent, int e_bit) {
  const auto v = tensor_rows(opponent, e_bit);
  Rational value(0);
  for (int i = 0; i < 3; ++i) value += row.w[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
  return third() * value;
}

Rational payoff_II(const ActionII& action, const SimplexColour& p, const SimplexColour& q_c,
                   const AMatrix& a_b, const AMatrix& a_c) {
  const auto r = action.marginal_r();
  const auto s = action.marginal_s();
  const auto bp = a_b.apply(p);
  const auto cq = a_c.apply(q_c);
  Rational value(0);
  for (int i = 0; i < 3; ++i)
    value += r[static_cast<size_t>(i)] * bp[static_cast<size_t>(i)] +
             s[static_cast<size_t>(i)] * cq[static_cast<size_t>(i)];
  return value;
}

Rational improvement_t(std::int32_t node, const Profile& profile, const Region& region) {
  if (!region.interior(node)) throw std::invalid_argument("improvement_t: frontier node");
  const size_t sv = static_cast<size_t>(node);
  const ActionII& action = profile.action_II[sv];
  const auto v = tensor_rows(action, region.bits[sv]);
  const Rational gain_b = marginal_gain(profile.colour_I[sv].w, v);

  const SimplexColour& p = profile.colour_I[static_cast<size_t>(region.d1[sv])];
  const SimplexColour& q_c = profile.colour_I[static_cast<size_t>(region.d2[sv])];
  const Rational gain_r = marginal_gain(action.marginal_r(), sheet_b_matrix(profile, region, node).apply(p));
  const Rational gain_s = marginal_gain(action.marginal_s(), sheet_c_matrix(profile, region, node).apply(q_c));
  return third() * (gain_b + gain_r + gain_s);
}

StabilityReport gamma_stability(const Profile& profile, const Region& region,
                                const Rational& delta) {
  if (delta.sign() < 0) throw std::invalid_argument("gamma_stability: negative delta");
  StabilityReport rep;
  rep.delta = delta;
  Rational total(0);
  for (std::int32_t v = 0; v < region.frontier_begin(); ++v) {
    const Rational tv = improvement_t(v, profile, region);
    rep.nodes.push_back(v);
    rep.t.push_back(tv);
    total += tv;
    if (tv > delta) rep.exceeding.push_back(v);
  }
  const long n = static_cast<long>(rep.nodes.size());
  rep.mean = n ? total / Rational(n) : Rational(0);
  rep.exceeding_measure = n ? Rational(static_cast<long>(rep.exceeding.size()), n) : Rational(0);
  rep.markov_consistent = delta * rep.exceeding_measure <= rep.mean;
  return rep;
}

std::vector<EquilibriumViolation> equilibrium_check(const Profile& profile, const Region& region,
                                                    const Rational& eps) {
  if (eps.sign() < 0) throw std::invalid_argument("equilibrium_check: negative eps");
  std::vector<EquilibriumViolation> out;
  for (std::int32_t v = 0; v < region.frontier_begin(); ++v) {
    const size_t sv = static_cast<size_t>(v);
    const ActionII& action = profile.action_II[sv];

    // Player I's set anchored at v: only the a-sheet member pays.
    const auto rows = tensor_rows(action, region.bits[sv]);
    const Rational gain_i = third() * marginal_gain(profile.colour_I[sv].w, rows);
    if (gain_i > eps) out.push_back({v, 'I', gain_i});

    // Player II's set at v, one marginal at a time.
    const SimplexColour& p = profile.colour_I[static_cast<size_t>(region.d1[sv])];
    const SimplexColour& q_c = profile.colour_I[static_cast<size_t>(region.d2[sv])];
    const Rational gain_r =
        marginal_gain(action.marginal_r(), sheet_b_matrix(profile, region, v).apply(p));
    const Rational gain_s =
        marginal_gain(action.marginal_s(), sheet_c_matrix(profile, region, v).apply(q_c));
    const Rational gain_ii = gain_r > gain_s ? gain_r : gain_s;
    if (gain_ii > eps) out.push_back({v, '2', gain_ii});
  }
  return out;
}

}  // namespace colouring
