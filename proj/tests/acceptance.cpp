// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include "gme/oracle.hpp"
#include "gme/scan.hpp"
#include "gme/states.hpp"

using namespace gme;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

StateFamily family(const std::string& id, int d = 2, int n = 3) {
  StateFamily f;
  f.id = id;
  f.d = d;
  f.n = n;
  return f;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome w_threshold() {
  ThresholdSpec spec;
  spec.family = family("w");
  spec.criterion = CriterionId::III;
  const auto t0 = Clock::now();
  const double t = threshold(spec);
  const double secs = seconds_since(t0);
  const bool ok = std::abs(t - 8.0 / 17) < 1e-6 && secs < 1;
  return {ok, "W+noise III threshold " + fmt("%.9f", t) + " vs 8/17, " + fmt("%.3f s", secs)};
}

Outcome ghz_thresholds() {
  bool ok = true;
  std::string detail;
  for (const auto& [d, expected] : {std::pair{2, 3.0 / 7}, std::pair{3, 0.25}}) {
    ThresholdSpec spec;
    spec.family = family("ghz", d, 3);
    spec.criterion = CriterionId::II;
    const auto t0 = Clock::now();
    const double t = threshold(spec);
    const double secs = seconds_since(t0);
    ok = ok && std::abs(t - expected) < 1e-6 && secs < 1;
    detail += "d=" + std::to_string(d) + ": " + fmt("%.9f", t) + " vs " + fmt("%.9f", expected) + " (" +
              fmt("%.3f s", secs) + ") ";
  }
  return {ok, "GHZ+noise II thresholds " + detail};
}

Outcome smolin_region() {
  ProbeSettings probes;
  probes.policy = ProbePolicy::optimize;
  probes.optimizer.restarts = 32;
  const auto cuts = enumerate_bipartitions(4);
  std::map<std::string, int> violated;
  int points = 0, all_cuts = 0;
  const auto t0 = Clock::now();
  const auto grid = Axis{0, 1, 0.05}.values();
  for (double a : grid) {
    for (double b : grid) {
      if (a + b > 1 + 1e-12 || !(1 - 5 * a - b < -0.05 && 1 - a - 5 * b < -0.05)) continue;
      auto f = family("smolin", 2, 4);
      f.alpha = a;
      f.beta = b;
      const auto reps = detect(build_state(f), {CriterionId::I}, probes);
      ++points;
      bool every = true;
      for (const auto& r : reps) {
        violated[r.partition] += r.violated ? 1 : 0;
        every = every && r.violated;
      }
      all_cuts += every ? 1 : 0;
    }
  }
  bool none_at_origin = true;
  for (const auto& r : detect(build_state(family("smolin", 2, 4)),
                              {CriterionId::I, CriterionId::II, CriterionId::PPT}, probes)) {
    none_at_origin = none_at_origin && !r.violated;
  }
  std::ostringstream s;
  s << points << " region points, all 7 cuts violated at " << all_cuts << "; per cut:";
  for (const auto& c : cuts) s << ' ' << c.to_string() << '=' << violated[c.to_string()];
  s << "; origin clean: " << (none_at_origin ? "yes" : "no") << ", " << fmt("%.1f s", seconds_since(t0));
  return {points > 0 && all_cuts == points && none_at_origin, s.str()};
}

Outcome oracle_equivalence() {
  struct Config {
    int n, d, m;
  };
  const auto t0 = Clock::now();
  double worst = 0;
  int cases = 0;
  std::uint64_t seed = 1000;
  for (const auto& c : {Config{2, 2, 2}, Config{2, 2, 3}, Config{3, 2, 2}, Config{2, 3, 2}, Config{3, 3, 2}}) {
    const auto sum = oracle::oracle_check(c.n, c.d, c.m, 100, seed++);
    worst = std::max(worst, sum.max_deviation);
    cases += sum.cases;
  }
  const double secs = seconds_since(t0);
  return {cases == 500 && worst < 1e-10 && secs < 60,
          std::to_string(cases) + " trials, max |naive - reduced| " + fmt("%.2e", worst) + ", " + fmt("%.1f s", secs)};
}

Outcome soundness() {
  const std::vector<LocalDims> dims{LocalDims::uniform(2, 3), LocalDims::uniform(2, 4), LocalDims::uniform(3, 3)};
  Rng rng = make_rng(2024);
  std::uniform_int_distribution<int> comps(1, 30);
  const OptimizerConfig config;
  const auto t0 = Clock::now();
  double worst_ii = -1e300, worst_iii = -1e300;
  for (int t = 0; t < 500; ++t) {
    const auto& ld = dims[static_cast<std::size_t>(t) % dims.size()];
    const auto rho = oracle::sample_biseparable(ld, std::nullopt, comps(rng), 5000 + static_cast<std::uint64_t>(t));
    OptimizerConfig c = config;
    c.seed = static_cast<std::uint64_t>(t);
    worst_ii = std::max(worst_ii, optimize_violation(rho, {CriterionId::II, std::nullopt}, c).lhs);
    worst_iii = std::max(worst_iii, optimize_violation(rho, {CriterionId::III, std::nullopt}, c).lhs);
  }
  const double secs = seconds_since(t0);
  return {worst_ii <= decision_tol && worst_iii <= decision_tol && secs < 300,
          "500 biseparable states, max optimized lhs II " + fmt("%.3e", worst_ii) + ", III " + fmt("%.3e", worst_iii) +
              ", " + fmt("%.1f s", secs)};
}

Outcome convexity() {
  const LocalDims q3 = LocalDims::uniform(2, 3);
  Rng rng = make_rng(77);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = -1e300;
  for (int t = 0; t < 200; ++t) {
    const auto r1 = oracle::random_density(q3, rng);
    const auto r2 = oracle::random_density(q3, rng);
    const double lam = u(rng);
    const DensityMatrixd mix(q3, CMatrixd(lam * r1.matrix() + (1 - lam) * r2.matrix()));
    const auto a = random_product(q3, rng);
    const auto b = random_product(q3, rng);
    const CVectord x = random_unit_vector(2, rng), y = random_unit_vector(2, rng);
    worst = std::max(worst, criterion_II(mix, a, b).lhs - lam * criterion_II(r1, a, b).lhs -
                                (1 - lam) * criterion_II(r2, a, b).lhs);
    worst = std::max(worst, criterion_III(mix, x, y).lhs - lam * criterion_III(r1, x, y).lhs -
                                (1 - lam) * criterion_III(r2, x, y).lhs);
  }
  return {worst <= 1e-10, "200 mixtures, max lhs(mix) - convex combination " + fmt("%.2e", worst)};
}

Outcome region_spots() {
  auto at = [](const std::string& id, int d, double a, double b, CriterionId c) {
    auto f = family(id, d, 3);
    f.alpha = a;
    f.beta = b;
    return detect(build_state(f), {c}, {});
  };
  const bool a_ii = at("ghz_w_mix", 2, 0.6, 0, CriterionId::II)[0].violated;
  const bool a_iii = at("ghz_w_mix", 2, 0, 0.6, CriterionId::III)[0].violated;
  bool origin_clean = true;
  for (auto c : {CriterionId::I, CriterionId::II, CriterionId::III, CriterionId::PPT}) {
    for (const auto& r : at("ghz_w_mix", 2, 0, 0, c)) origin_clean = origin_clean && !r.violated;
  }
  const bool b_ii = at("gghz_qutrit_mix", 3, 0, 1, CriterionId::II)[0].violated;
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    ThresholdSpec spec;
    spec.family = family("ghz");
    spec.criterion = CriterionId::PPT;
    spec.part = Bipartition::from_parties(3, {k + 1});
    worst = std::max(worst, std::abs(threshold(spec) - 0.2));
  }
  std::ostringstream s;
  s << "ghz_w_mix(0.6,0) II " << a_ii << ", ghz_w_mix(0,0.6) III " << a_iii << ", ghz_w_mix(0,0) clean " << origin_clean
    << ", gghz_qutrit_mix(0,1) II " << b_ii << ", PPT boundary max |p - 1/5| " << fmt("%.1e", worst);
  return {a_ii && a_iii && origin_clean && b_ii && worst < 1e-6, s.str()};
}

Outcome performance() {
  const auto rho = states::ghz(2, 10);
  const auto lo = ProductVectord::uniform_basis(rho.dims(), 0);
  const auto hi = ProductVectord::uniform_basis(rho.dims(), 1);
  auto t0 = Clock::now();
  const auto rep = criterion_II(rho, lo, hi);
  const double eval_ms = 1e3 * seconds_since(t0);

  ScanSpec spec;
  spec.family = family("ghz_w_mix");
  spec.alpha = {0, 1, 0.01};
  spec.beta = {0, 1, 0.01};
  t0 = Clock::now();
  const auto res = scan(spec);
  const double scan_s = seconds_since(t0);
  std::ostringstream s;
  s << "n=10 II eval " << fmt("%.2f ms", eval_ms) << " (" << rep.terms.size() - 1 << " cuts, lhs "
    << fmt("%.4f", rep.lhs) << "); 101x101 scan " << res.cells.size() << " cells in " << fmt("%.1f s", scan_s)
    << " on " << std::max(1u, std::thread::hardware_concurrency()) << " hardware threads";
  return {eval_ms < 50 && rep.terms.size() == 512 && scan_s < 60, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"W-state noise threshold", w_threshold},
      {"GHZ noise thresholds", ghz_thresholds},
      {"Smolin-family region", smolin_region},
      {"Oracle equivalence", oracle_equivalence},
      {"Soundness property suite", soundness},
      {"Convexity property suite", convexity},
      {"Mixture-family spot checks", region_spots},
      {"Performance sanity", performance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  -- "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
