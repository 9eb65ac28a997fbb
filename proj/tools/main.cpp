#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "colouring/game.hpp"
#include "colouring/markov.hpp"
#include "colouring/report.hpp"
#include "colouring/rng.hpp"
#include "colouring/rule.hpp"
#include "colouring/sim.hpp"
#include "colouring/words.hpp"

namespace {

using namespace colouring;

constexpr std::uint64_t kDefaultSeed = 424243;
constexpr const char* kToolName = "colouring";
constexpr const char* kToolVersion = "0.1.0";

Q7 mk(long an, long ad, long bn, long bd) {
  return Q7(Rational(an, ad), Rational(bn, bd));
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

struct Expected {
  Q7 y[3] = {mk(3, 1, -1, 1), mk(3, 1, -1, 1), mk(-5, 1, 2, 1)};
  Q7 c3[3][3] = {
      {mk(-129, 8, 50, 8), mk(23, 4, -8, 4), mk(-49, 8, 19, 8)},
      {mk(216, 8, -81, 8), mk(-129, 8, 50, 8), mk(23, 4, -8, 4)},
      {mk(-79, 8, 31, 8), mk(91, 8, -34, 8), mk(11, 8, -3, 8)},
  };
  Q7 v0[3] = {mk(-307, 8, 117, 8), mk(258, 4, -97, 4), mk(-201, 8, 77, 8)};
  Q7 v1[3] = {mk(-248, 8, 95, 8), mk(429, 8, -161, 8), mk(-173, 8, 66, 8)};
  Q7 rec[3][3] = {
      {mk(-115411, 128, 43635, 128), mk(178381, 128, -67402, 128), mk(-62842, 128, 23767, 128)},
      {mk(9856, 32, -3721, 32), mk(-35509, 64, 13429, 64), mk(15861, 64, -5987, 64)},
      {mk(-28183, 64, 10663, 64), mk(41681, 64, -15746, 64), mk(-13434, 64, 5083, 64)},
  };
  Q7 final_dist[3] = {mk(75588, 64, -28561, 64), mk(-251801, 128, 95189, 128),
                      mk(100753, 128, -38067, 128)};
  Q7 discrepancy1 = mk(75396, 64, -28497, 64);
};

struct Timer {
  bool enabled = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void stamp(CheckRecord& rec) {
    if (!enabled) return;
    const auto end = std::chrono::steady_clock::now();
    rec.runtime_seconds = std::chrono::duration<double>(end - start).count();
    start = end;
  }
};

ReportDocument run_verify_fixedpoint(Timer& timer) {
  ReportDocument doc;
  const Expected exp;
  CheckRecord rec;
  rec.name = "fixedpoint";
  rec.anchor = "Lemma 3, \"This solves to y_1 = 3 - sqrt 7\"";
  const Distribution3 y = fixed_point();
  bool ok = true;
  const char* labels[3] = {"y1", "y2", "y3"};
  for (int i = 0; i < 3; ++i) {
    rec.values.emplace_back(labels[i], y.d[i]);
    ok = ok && y.d[i] == exp.y[i];
  }
  const TransitionMatrix c = c_matrix(y.d[0]);
  ok = ok && c.apply(y) == y && y.valid();
  ok = ok && y.d[0].to_decimal(5) == "0.35425" && y.d[2].to_decimal(5) == "0.29150";
  rec.pass = ok;
  timer.stamp(rec);
  doc.checks.push_back(std::move(rec));
  return doc;
}

ReportDocument run_verify_lemma3(Timer& timer) {
  ReportDocument doc;
  const Expected exp;
  const PathwayReport pw = pathway_analysis();

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CheckRecord rec;
      rec.name = "c_cubed_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
      rec.anchor = "Lemma 3, C^3 entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      rec.values.emplace_back("entry", pw.c_cubed.m[i][j]);
      rec.pass = pw.c_cubed.m[i][j] == exp.c3[i][j];
      timer.stamp(rec);
      doc.checks.push_back(std::move(rec));
    }

  auto vec_check = [&](const std::string& name, const std::string& anchor,
                       const Distribution3& got, const Q7* want) {
    CheckRecord rec;
    rec.name = name;
    rec.anchor = anchor;
    bool ok = got.valid();
    const char* labels[3] = {"c1", "c2", "c3"};
    for (int i = 0; i < 3; ++i) {
      rec.values.emplace_back(labels[i], got.d[i]);
      ok = ok && got.d[i] == want[i];
    }
    rec.pass = ok;
    timer.stamp(rec);
    doc.checks.push_back(std::move(rec));
  };
  vec_check("branch_v0", "Lemma 3, branch vector C^2 C_0 y*", pw.branch_v0, exp.v0);
  vec_check("branch_v1", "Lemma 3, branch vector C^2 C_1 y*", pw.branch_v1, exp.v1);
  for (int i = 0; i < 3; ++i)
    vec_check("recombination_c" + std::to_string(i + 1),
              "Lemma 3, recombination for clamp colour c" + std::to_string(i + 1),
              pw.recombination[i], exp.rec[i]);
  vec_check("final_distribution", "Lemma 3, combined distribution d*", pw.final_dist,
            exp.final_dist);

  CheckRecord rec;
  rec.name = "discrepancy";
  rec.anchor = "Corollary, persistent 1/5000 discrepancy";
  bool ok = true;
  const char* labels[3] = {"c1", "c2", "c3"};
  for (int i = 0; i < 3; ++i) rec.values.emplace_back(labels[i], pw.discrepancy[i]);
  ok = ok && pw.discrepancy[0] == exp.discrepancy1;
  const Q7 margin = pw.discrepancy[0] - Q7(Rational(1, 5000), Rational(0));
  rec.values.emplace_back("margin_over_1_5000", margin);
  ok = ok && margin.sign() > 0 && pw.discrepancy_sign[0] > 0;
  rec.pass = ok;
  timer.stamp(rec);
  doc.checks.push_back(std::move(rec));
  return doc;
}

ReportDocument run_verify_lemma2(Timer& timer, std::uint64_t seed, int samples, int pairs) {
  ReportDocument doc;

  {
    CheckRecord rec;
    rec.name = "spectrum_random";
    rec.anchor = "Lemma 2, characteristic polynomial of the colour-advancement chain";
    SplitMix64 rng(derive_seed(seed, 0x1e));
    bool ok = true;
    for (int t = 0; t < samples && ok; ++t) {
      RandomColouringChain chain{Rational(static_cast<long>(rng.next() % 501), 1000),
                                 Rational(static_cast<long>(rng.next() % 501), 1000),
                                 Rational(static_cast<long>(rng.next() % 501), 1000)};
      const SpectrumResult s = chain_spectrum(chain);
      ok = ok && s.one_minus_x_divides;
      if ((chain.p + chain.q + chain.r).sign() > 0) ok = ok && s.subdominant_below_one;
    }
    rec.notes.emplace_back("samples", std::to_string(samples));
    rec.pass = ok;
    timer.stamp(rec);
    doc.checks.push_back(std::move(rec));
  }

  {
    CheckRecord rec;
    rec.name = "spectrum_boundary";
    rec.anchor = "Lemma 2, \"with norms of 1/2\"";
    const Rational half(1, 2);
    const SpectrumResult s = chain_spectrum({half, half, half});
    rec.pass = s.one_minus_x_divides && s.subdominant_norm_sq == Rational(1, 4);
    rec.notes.emplace_back("norm_sq", s.subdominant_norm_sq.str());
    timer.stamp(rec);
    doc.checks.push_back(std::move(rec));
  }

  {
    CheckRecord rec;
    rec.name = "product_chain";
    rec.anchor = "Lemma 2 Claim, unique invariant joint distribution on S x T";
    SplitMix64 rng(derive_seed(seed, 0x2e));
    auto random_chain = [&rng](int n) {
      RationalMatrix m(n);
      for (int j = 0; j < n; ++j) {
        std::vector<long> e(static_cast<size_t>(n));
        long sum = 0;
        for (long& x : e) {
          x = 1 + static_cast<long>(rng.next() % 9);
          sum += x;
        }
        for (int i = 0; i < n; ++i) m.at(i, j) = Rational(e[static_cast<size_t>(i)], sum);
      }
      return m;
    };
    bool ok = true;
    for (int t = 0; t < pairs && ok; ++t) {
      const int ns = 2 + static_cast<int>(rng.next() % 3);
      const int nt = 2 + static_cast<int>(rng.next() % 3);
      const ProductChainVerdict v = product_chain_check(random_chain(ns), random_chain(nt));
      ok = ok && v.applicable && v.verified;
    }
    rec.notes.emplace_back("pairs", std::to_string(pairs));
    rec.pass = ok;
    timer.stamp(rec);
    doc.checks.push_back(std::move(rec));
  }
  return doc;
}

ReportDocument run_independence(Timer& timer, int max_factors, std::uint64_t ceiling) {
  ReportDocument doc;
  const auto elements = default_independence_elements();
  const auto quotients = default_independence_quotients();

  CheckRecord rec;
  rec.name = "independence";
  rec.anchor = "Lemma 3, \"We show that they are independent\"";
  const IndependenceVerdict v = independence_check(elements, max_factors, ceiling);
  bool ok = v.no_collision();
  rec.notes.emplace_back("products_checked", std::to_string(v.products_checked));
  for (size_t i = 0; i < elements.size(); ++i) {
    const QuotientWord q = quotient_normalize(elements[i]);
    rec.notes.emplace_back("g" + std::to_string(i + 1), elements[i].str());
    rec.notes.emplace_back("h" + std::to_string(i + 1), q.str());
    ok = ok && q == quotients[i];
  }
  if (v.collision) {
    std::string a, b;
    for (int idx : v.collision->sequence_a) a += "g" + std::to_string(idx + 1);
    for (int idx : v.collision->sequence_b) b += "g" + std::to_string(idx + 1);
    rec.notes.emplace_back("collision", a + " = " + b + " = " + v.collision->product.str());
  }
  rec.pass = ok;
  timer.stamp(rec);
  doc.checks.push_back(std::move(rec));
  return doc;
}

ReportDocument run_simulate(Timer& timer, int depth, std::int64_t runs, std::uint64_t seed) {
  ReportDocument doc;
  const SimReport sim = estimate_stats(depth, runs, seed);
  const Distribution3 y = fixed_point();

  CheckRecord rec;
  rec.name = "base_marginal";
  rec.anchor = "Lemma 3, global colour distribution (.35425, .35425, .2915)";
  const auto m = sim.base_marginal();
  const auto se = sim.base_stderr();
  bool ok = true;
  const char* labels[3] = {"c1", "c2", "c3"};
  for (int i = 0; i < 3; ++i) {
    const double target = y.d[i].to_double();
    rec.notes.emplace_back(std::string(labels[i]) + "_frequency", fmt(m[i]));
    rec.notes.emplace_back(std::string(labels[i]) + "_stderr", fmt(se[i]));
    ok = ok && std::abs(m[i] - target) <= 0.005 + 4.0 * se[i];
  }
  rec.notes.emplace_back("children_tv_from_product", fmt(sim.joint_children.tv_from_product()));
  rec.notes.emplace_back("pair_tv_from_product", fmt(sim.joint_pair.tv_from_product()));
  rec.pass = ok;
  timer.stamp(rec);
  doc.checks.push_back(std::move(rec));
  return doc;
}

ReportDocument run_gadget(Timer& timer, int clamp, std::int64_t runs, std::uint64_t seed) {
  ReportDocument doc;
  const PathwayReport pw = pathway_analysis();
  const GadgetReport g = gadget_run({static_cast<std::uint8_t>(clamp)}, runs, seed);

  CheckRecord rec;
  rec.name = "gadget_clamp_c" + std::to_string(clamp);
  rec.anchor = "Lemma 3, recombination for clamp colour c" + std::to_string(clamp);
  const auto m = g.marginal();
  const auto se = g.standard_error();
  bool ok = true;
  const char* labels[3] = {"c1", "c2", "c3"};
  for (int i = 0; i < 3; ++i) {
    const double target = pw.recombination[clamp - 1].d[i].to_double();
    rec.values.emplace_back(std::string("exact_") + labels[i], pw.recombination[clamp - 1].d[i]);
    rec.notes.emplace_back(std::string(labels[i]) + "_frequency", fmt(m[i]));
    rec.notes.emplace_back(std::string(labels[i]) + "_stderr", fmt(se[i]));
    ok = ok && std::abs(m[i] - target) <= 4.0 * se[i];
  }
  rec.pass = ok;
  timer.stamp(rec);
  doc.checks.push_back(std::move(rec));
  return doc;
}

ReportDocument run_construct(Timer& timer, int depth, std::uint64_t seed, double epsilon,
                             std::int64_t node_ceiling) {
  ReportDocument doc;
  CheckRecord rec;
  rec.name = "construct";
  rec.anchor = "Theorem 2, \"There are pure colourings\"";
  const Region region = build_region(depth, seed, node_ceiling);
  const Colouring colouring = propagate(region, FrontierStrategy::Stationary, epsilon);
  const auto violations = check_satisfaction(region, colouring);
  rec.notes.emplace_back("nodes", std::to_string(region.node_count()));
  rec.notes.emplace_back("interior", std::to_string(region.frontier_begin()));
  rec.notes.emplace_back("violations", std::to_string(violations.size()));
  rec.pass = epsilon == 0.0 ? violations.empty() : true;
  timer.stamp(rec);
  doc.checks.push_back(std::move(rec));
  return doc;
}

ReportDocument run_stability(Timer& timer, int depth, std::uint64_t seed, double epsilon,
                             const Rational& delta, std::int64_t node_ceiling) {
  ReportDocument doc;
  const Region region = build_region(depth, seed, node_ceiling);
  const Colouring colouring = propagate(region, FrontierStrategy::Stationary, epsilon);
  const Profile profile = induced_profile(region, colouring, derive_seed(seed, 0xAB));

  {
    CheckRecord rec;
    rec.name = "gamma_stability";
    rec.anchor = "S3, gamma-stability: expectation of t(x) at most gamma";
    const StabilityReport st = gamma_stability(profile, region, delta);
    rec.notes.emplace_back("mean_t", st.mean.str());
    rec.notes.emplace_back("delta", st.delta.str());
    rec.notes.emplace_back("exceeding", std::to_string(st.exceeding.size()));
    rec.notes.emplace_back("exceeding_measure", st.exceeding_measure.str());
    rec.pass = st.markov_consistent && (epsilon > 0.0 || st.mean.is_zero());
    timer.stamp(rec);
    doc.checks.push_back(std::move(rec));
  }
  {
    CheckRecord rec;
    rec.name = "equilibrium";
    rec.anchor = "S3, equilibrium behaviour is equivalent to satisfaction of the colouring rule F";
    const auto violators = equilibrium_check(profile, region, delta);
    rec.notes.emplace_back("violators", std::to_string(violators.size()));
    size_t shown = 0;
    for (const auto& v : violators) {
      if (++shown > 10) break;
      rec.notes.emplace_back(
          "violator_" + std::to_string(shown),
          std::string(1, v.player) + "@" +
              (region.words[static_cast<size_t>(v.anchor)].empty()
                   ? "e"
                   : region.words[static_cast<size_t>(v.anchor)]) +
              " gain " + v.gain.str());
    }
    rec.pass = epsilon > 0.0 || violators.empty();
    timer.stamp(rec);
    doc.checks.push_back(std::move(rec));
  }
  return doc;
}

int emit(ReportDocument doc, std::vector<std::pair<std::string, std::string>> config,
         const std::string& out_path, const std::string& format) {
  doc.tool = kToolName;
  doc.version = kToolVersion;
  doc.config = std::move(config);
  const std::string bytes =
      write_report(doc, format == "csv" ? ReportFormat::Csv : ReportFormat::Json);
  if (out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open output path '" << out_path << "'\n";
      return 3;
    }
    f << bytes;
    if (!f.good()) {
      std::cerr << "error: write failed for '" << out_path << "'\n";
      return 3;
    }
  }
  return doc.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification and simulation workflows for the two-generator colouring rule"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "json";
  bool timings = false;
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--out", out_path, "Output path (default: stdout)")->capture_default_str();
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--timings", timings, "Record per-check runtimes (breaks byte reproducibility)");
  app.add_option("--seed", seed, "Master RNG seed")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Exact verification of the paper-level lemmas");
  std::string target;
  int samples = 1000;
  int pairs = 40;
  verify->add_option("target", target, "One of lemma2, fixedpoint, lemma3")
      ->required()
      ->check(CLI::IsMember({"lemma2", "fixedpoint", "lemma3"}));
  verify->add_option("--samples", samples, "Random chains for lemma2")->capture_default_str();
  verify->add_option("--pairs", pairs, "Random chain pairs for lemma2")->capture_default_str();

  int depth = 8;
  std::int64_t runs = 10000;
  double epsilon = 0.0;
  std::string delta_text = "0";
  int clamp = 1;
  int max_factors = 5;
  std::uint64_t product_ceiling = kDefaultProductCeiling;
  std::int64_t node_ceiling = kDefaultRegionNodeCeiling;

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo marginals on random regions");
  simulate->add_option("--depth", depth, "Region depth L")->check(CLI::NonNegativeNumber)->capture_default_str();
  simulate->add_option("--runs", runs, "Number of regions")->check(CLI::PositiveNumber)->capture_default_str();

  auto* gadget = app.add_subcommand("gadget", "Two-pathway confluence gadget vs exact recombination");
  gadget->add_option("--clamp", clamp, "Clamped colour at the confluence point")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  gadget->add_option("--runs", runs, "Gadget repetitions")->check(CLI::PositiveNumber)->capture_default_str();

  auto* independence = app.add_subcommand("independence", "Normal-form collision search for g1..g7");
  independence->add_option("--max-factors", max_factors, "Product length bound")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  independence->add_option("--ceiling", product_ceiling, "Product count guard")->capture_default_str();

  auto* construct = app.add_subcommand("construct", "Build a region, colour it, check the rule");
  construct->add_option("--depth", depth, "Region depth L")->check(CLI::NonNegativeNumber)->capture_default_str();
  construct->add_option("--epsilon", epsilon, "Perturbation probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  construct->add_option("--node-ceiling", node_ceiling, "Region size guard")->capture_default_str();

  auto* stability = app.add_subcommand("stability", "Game-side stability and equilibrium checks");
  stability->add_option("--depth", depth, "Region depth L")->check(CLI::NonNegativeNumber)->capture_default_str();
  stability->add_option("--epsilon", epsilon, "Perturbation probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  stability->add_option("--delta", delta_text, "Point-wise optimality threshold (rational)")
      ->capture_default_str();
  stability->add_option("--node-ceiling", node_ceiling, "Region size guard")->capture_default_str();

  // Global flags (--out, --format, --seed, --timings) may follow the
  // subcommand on the command line.
  for (CLI::App* sub : {verify, simulate, gadget, independence, construct, stability})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  Timer timer;
  timer.enabled = timings;
  std::vector<std::pair<std::string, std::string>> config;
  auto cfg = [&config](const std::string& k, const std::string& v) { config.emplace_back(k, v); };

  try {
    ReportDocument doc;
    if (verify->parsed()) {
      cfg("subcommand", "verify " + target);
      if (target == "fixedpoint") {
        doc = run_verify_fixedpoint(timer);
      } else if (target == "lemma3") {
        doc = run_verify_lemma3(timer);
      } else {
        cfg("seed", std::to_string(seed));
        cfg("samples", std::to_string(samples));
        cfg("pairs", std::to_string(pairs));
        doc = run_verify_lemma2(timer, seed, samples, pairs);
      }
    } else if (simulate->parsed()) {
      cfg("subcommand", "simulate");
      cfg("depth", std::to_string(depth));
      cfg("runs", std::to_string(runs));
      cfg("seed", std::to_string(seed));
      doc = run_simulate(timer, depth, runs, seed);
    } else if (gadget->parsed()) {
      cfg("subcommand", "gadget");
      cfg("clamp", std::to_string(clamp));
      cfg("runs", std::to_string(runs));
      cfg("seed", std::to_string(seed));
      doc = run_gadget(timer, clamp, runs, seed);
    } else if (independence->parsed()) {
      cfg("subcommand", "independence");
      cfg("max_factors", std::to_string(max_factors));
      cfg("ceiling", std::to_string(product_ceiling));
      doc = run_independence(timer, max_factors, product_ceiling);
    } else if (construct->parsed()) {
      cfg("subcommand", "construct");
      cfg("depth", std::to_string(depth));
      cfg("seed", std::to_string(seed));
      cfg("epsilon", fmt(epsilon));
      doc = run_construct(timer, depth, seed, epsilon, node_ceiling);
    } else if (stability->parsed()) {
      cfg("subcommand", "stability");
      cfg("depth", std::to_string(depth));
      cfg("seed", std::to_string(seed));
      cfg("epsilon", fmt(epsilon));
      cfg("delta", delta_text);
      doc = run_stability(timer, depth, seed, epsilon, Rational::from_string(delta_text),
                          node_ceiling);
    }
    return emit(std::move(doc), std::move(config), out_path, format);
  } catch (const std::length_error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
