// Copyright 2026 The SoftModes Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "softmodes/cli.hpp"
#include "softmodes/engine.hpp"
#include "softmodes/evaluation.hpp"
#include "softmodes/generators.hpp"
#include "softmodes/harness.hpp"
#include "softmodes/rounding.hpp"

using namespace softmodes;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::uint64_t epoch_seed(std::uint64_t root, std::size_t epoch) {
  return derive_seed(root, {static_cast<std::uint64_t>(epoch)});
}

ClusteringConfig make_config(std::size_t k, RoundingSpec rounding, SeedingMethod seeding,
                             std::uint64_t seed) {
  ClusteringConfig cfg;
  cfg.k = k;
  cfg.rounding = rounding;
  cfg.seeding = seeding;
  cfg.seed = seed;
  return cfg;
}

// Mean final accuracy of SoftModes with `rounding` over `epochs` runs.
double softmodes_accuracy(const CategoricalDataset& ds, std::size_t k, RoundingSpec rounding,
                          SeedingMethod seeding, std::uint64_t root, std::size_t epochs) {
  std::vector<double> acc;
  for (std::size_t e = 0; e < epochs; ++e) {
    const auto res = run_softmodes(ds, make_config(k, rounding, seeding, epoch_seed(root, e)));
    acc.push_back(accuracy(res.assignment, ds.labels()));
  }
  return mean(acc);
}

double lloyd_accuracy(const CategoricalDataset& ds, std::size_t k, SeedingMethod seeding,
                      std::uint64_t root, std::size_t epochs) {
  const OneHotMatrix x = one_hot(ds);
  std::vector<double> acc;
  for (std::size_t e = 0; e < epochs; ++e) {
    const auto res = run_lloyd(
        x, make_config(k, RoundingSpec::Plurality(), seeding, epoch_seed(root, e)));
    acc.push_back(accuracy(res.assignment, ds.labels()));
  }
  return mean(acc);
}

Outcome criterion1() {
  const auto ds = generate_bbm(BbmSpec::Symmetric(2000, 2000, 2, 0.3, 0.1, 1));
  int collapsed = 0;
  for (std::size_t trial = 0; trial < 20; ++trial) {
    ClusteringConfig cfg = make_config(2, RoundingSpec::Plurality(),
                                       SeedingMethod::kUniformRandom, epoch_seed(1, trial));
    // Two assignments: the returned centers are the first update.
    cfg.max_iter = 2;
    const auto res = run_softmodes(ds, cfg);
    bool zero = res.iterations == 2;
    for (const auto& c : res.centers) {
      zero = zero && std::all_of(c.values.begin(), c.values.end(),
                                 [](Category v) { return v == 0; });
    }
    collapsed += zero;
  }
  return {collapsed >= 19, std::to_string(collapsed) + "/20 trials collapsed to zero centers"};
}

Outcome criterion2() {
  const auto ds = generate_bbm(BbmSpec::Symmetric(2000, 2000, 2, 0.4, 0.01, 2));
  const double kmodes = softmodes_accuracy(ds, 2, RoundingSpec::Plurality(),
                                           SeedingMethod::kUniformRandom, 2, 20);
  const double soft1 =
      softmodes_accuracy(ds, 2, RoundingSpec::Soft(1), SeedingMethod::kUniformRandom, 2, 20);
  return {kmodes <= 0.60 && soft1 >= 0.97,
          "k-modes " + fmt(kmodes) + " (<= 0.60), SoftModes(1) " + fmt(soft1) + " (>= 0.97)"};
}

Outcome criterion3() {
  const auto ds = generate_bbm(BbmSpec::Symmetric(2000, 2000, 2, 0.4, 0.01, 2));
  const double soft3 =
      softmodes_accuracy(ds, 2, RoundingSpec::Soft(3), SeedingMethod::kUniformRandom, 3, 20);
  return {soft3 >= 0.74, "SoftModes(3) " + fmt(soft3) + " (>= 0.74)"};
}

Outcome criterion4() {
  bool pass = true;
  std::string detail;
  for (std::size_t k : {5, 10, 20}) {
    const auto ds = generate_ccm({.n = 20000, .d = 300, .k = k, .epsilon = 0.2, .rho = 0.0,
                                  .seed = 4});
    const auto seeding = SeedingMethod::kDistanceSampling;
    const double soft = softmodes_accuracy(ds, k, RoundingSpec::Soft(3), seeding, 4, 5);
    const double kmodes = softmodes_accuracy(ds, k, RoundingSpec::Plurality(), seeding, 4, 5);
    const double lloyd = lloyd_accuracy(ds, k, seeding, 4, 5);
    pass = pass && soft >= 0.95 && soft >= kmodes - 0.01 && soft >= lloyd - 0.01;
    detail += (detail.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) +
              " SoftModes(3) " + fmt(soft) + " k-modes " + fmt(kmodes) + " Lloyd " + fmt(lloyd);
  }
  return {pass, detail};
}

Outcome criterion5() {
  bool pass = true;
  double worst_margin = 1.0;
  for (double rho : {0.1, 0.5, 0.9}) {
    const auto ds = generate_ccm({.n = 10000, .d = 200, .k = 5, .epsilon = 0.2, .rho = rho,
                                  .seed = 5});
    const double ceiling = max_noise_accuracy(rho, 5) + 0.02;
    const OneHotMatrix x = one_hot(ds);
    for (std::size_t e = 0; e < 5; ++e) {
      const std::uint64_t s = epoch_seed(5, e);
      std::vector<double> acc;
      for (auto r : {RoundingSpec::Plurality(), RoundingSpec::Soft(3)}) {
        acc.push_back(accuracy(
            run_softmodes(ds, make_config(5, r, SeedingMethod::kDistanceSampling, s)).assignment,
            ds.labels()));
      }
      acc.push_back(accuracy(
          run_lloyd(x, make_config(5, RoundingSpec::Plurality(), SeedingMethod::kDistanceSampling,
                                   s))
              .assignment,
          ds.labels()));
      for (double a : acc) {
        pass = pass && a <= ceiling;
        worst_margin = std::min(worst_margin, ceiling - a);
      }
    }
  }
  return {pass, "smallest margin below ceiling + 0.02: " + fmt(worst_margin)};
}

Outcome criterion6() {
  std::mt19937_64 gen(6);
  std::exponential_distribution<double> expo(1.0);
  const std::vector<RoundingSpec> specs = {RoundingSpec::Plurality(), RoundingSpec::Uniform(),
                                           RoundingSpec::Soft(1), RoundingSpec::Soft(2.5),
                                           RoundingSpec::Soft(500)};
  std::size_t failures = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t sigma = 2 + gen() % 7;
    std::vector<double> w(sigma);
    if (trial % 4 == 0) {
      // Small integer counts produce exact ties.
      for (auto& v : w) v = static_cast<double>(gen() % 4);
      if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0; })) w[0] = 1;
    } else {
      for (auto& v : w) v = expo(gen);
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= total;
    const SimplexPoint x(w);
    std::vector<std::size_t> perm(sigma);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> pw(sigma);
    for (std::size_t i = 0; i < sigma; ++i) pw[i] = w[perm[i]];
    const SimplexPoint px(pw);

    for (const auto& spec : specs) {
      const SimplexPoint y = round(x, spec);
      const SimplexPoint py = round(px, spec);
      double sum = 0.0;
      for (std::size_t i = 0; i < sigma; ++i) {
        sum += y[i];
        if (y[i] < 0.0) ++failures;
        if (py[i] != y[perm[i]]) ++failures;
        for (std::size_t j = 0; j < sigma; ++j) {
          if (x[i] >= x[j] && y[i] < y[j]) ++failures;
        }
      }
      if (std::abs(sum - 1.0) > 1e-12) ++failures;
      const SimplexPoint c = SimplexPoint::Center(sigma);
      if (!(round(c, spec) == c)) ++failures;
    }
    const SimplexPoint u = round(x, RoundingSpec::Uniform());
    const SimplexPoint s1 = round(x, RoundingSpec::Soft(1));
    for (std::size_t i = 0; i < sigma; ++i) {
      if (std::abs(u[i] - s1[i]) > 1e-15) ++failures;
    }
    std::vector<double> sorted = w;
    std::sort(sorted.rbegin(), sorted.rend());
    if (sorted[0] - sorted[1] >= 0.05) {
      const SimplexPoint hard = round(x, RoundingSpec::Plurality());
      const SimplexPoint soft = round(x, RoundingSpec::Soft(500));
      for (std::size_t i = 0; i < sigma; ++i) {
        if (std::abs(hard[i] - soft[i]) >= 1e-6) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(failures) + " violations over 10^4 points"};
}

Outcome criterion7() {
  std::mt19937_64 gen(7);
  std::size_t violations = 0, steps = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t n = 20 + gen() % 181;
    const std::size_t d = 2 + gen() % 29;
    const std::size_t k = 2 + gen() % 4;
    const std::size_t arity = 2 + gen() % 3;
    std::vector<Category> vals(n * d);
    for (auto& v : vals) v = static_cast<Category>(gen() % arity);
    const CategoricalDataset ds(n, std::vector<AttributeDomain>(d, AttributeDomain{arity}), vals);
    const auto res = run_softmodes(
        ds, make_config(k, RoundingSpec::Plurality(),
                        inst % 2 ? SeedingMethod::kUniformRandom : SeedingMethod::kDistanceSampling,
                        gen()));
    for (std::size_t r = 1; r < res.trace.size(); ++r) {
      ++steps;
      if (res.trace[r].objective > res.trace[r - 1].objective) ++violations;
    }
  }
  return {violations == 0,
          std::to_string(violations) + " increases over " + std::to_string(steps) + " steps"};
}

Outcome criterion8() {
  std::mt19937_64 gen(8);
  std::size_t mismatches = 0;
  for (int inst = 0; inst < 1000; ++inst) {
    const std::size_t k = 1 + gen() % 6;
    const std::size_t n = 10 + gen() % 200;
    std::vector<Label> pred(n), truth(n);
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] = static_cast<Label>(gen() % k);
      truth[i] = static_cast<Label>(gen() % k);
    }
    const ConfusionMatrix m = confusion(pred, truth);
    if (max_matching_hungarian(m) != max_matching_exhaustive(m)) ++mismatches;
  }
  std::size_t misassigned = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const std::size_t n = 1 + gen() % 20;
    const std::size_t d = 1 + gen() % 10;
    const std::size_t k = 1 + gen() % 6;
    std::vector<Category> vals(n * d);
    for (auto& v : vals) v = static_cast<Category>(gen() % 3);
    const CategoricalDataset ds(n, std::vector<AttributeDomain>(d, AttributeDomain{3}), vals);
    std::vector<Center> centers(k);
    for (auto& c : centers) {
      for (std::size_t j = 0; j < d; ++j) c.values.push_back(static_cast<Category>(gen() % 3));
    }
    const auto a = assign(ds, centers, gen());
    for (std::size_t i = 0; i < n; ++i) {
      auto dist = [&](const Center& c) {
        std::size_t h = 0;
        for (std::size_t j = 0; j < d; ++j) h += ds.at(i, j) != c.values[j];
        return h;
      };
      std::size_t best = d + 1;
      for (const auto& c : centers) best = std::min(best, dist(c));
      if (dist(centers[a[i]]) != best) ++misassigned;
    }
  }
  return {mismatches == 0 && misassigned == 0,
          std::to_string(mismatches) + " matching mismatches, " + std::to_string(misassigned) +
              " non-nearest assignments"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "softmodes");
  std::ostringstream out, err;
  return run_cli(args, out, err);
}

Outcome criterion9() {
  const auto dir = std::filesystem::temp_directory_path() / "softmodes_acceptance_determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::mt19937_64 gen(9);
  std::size_t differing = 0;
  const std::vector<std::string> roundings = {"plurality", "uniform", "soft"};
  for (int cfg = 0; cfg < 10; ++cfg) {
    const std::string data = (dir / ("data" + std::to_string(cfg) + ".csv")).string();
    const std::string k = std::to_string(2 + gen() % 5);
    const std::string seed = std::to_string(gen() % 1000000);
    const std::string rounding = roundings[gen() % 3];
    const std::string t = std::to_string(1 + gen() % 4);
    const std::string seeding = gen() % 2 ? "random" : "dsample";
    if (cli({"generate", "ccm", "--n", std::to_string(500 + gen() % 1500), "--d",
             std::to_string(20 + gen() % 80), "--k", k, "--eps", "0.2", "--rho", "0.1", "--seed",
             seed, data}) != 0) {
      ++differing;
      continue;
    }
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "8", "1", "8"}) {
      const std::string file = (dir / "assign.txt").string();
      std::filesystem::remove(file);
      const int rc = cli({"cluster", data, "--k", k, "--rounding", rounding, "--t", t,
                          "--seeding", seeding, "--seed", seed, "--epochs", "2", "--threads",
                          threads, "--label-col", "label", "--assignments", file});
      outputs.push_back(rc == 0 ? slurp(file) : std::string());
    }

    const std::string config = R"({"data": {"model": "ccm", "n": 800, "d": 60, "k": )" + k +
                               R"(, "eps": 0.25, "rho": 0.1}, "algorithms": [{"name": "kmodes"},
        {"name": "soft", "rounding": "soft", "t": )" + t +
                               R"(}, {"name": "lloyd", "kind": "lloyd"}], "epochs": 2,
        "axis": "iteration", "values": [1, 3, 10], "seed": )" + seed + "}";
    for (int threads : {1, 8, 1, 8}) {
      ExperimentSpec spec = parse_experiment_spec(config);
      spec.threads = threads;
      const ExperimentTable table = run_experiment(spec);
      outputs.push_back(format_results_csv(table) + format_traces_csv(table) +
                        format_summary_csv(table));
    }
    for (std::size_t i = 1; i < 4; ++i) {
      if (outputs[i].empty() || outputs[i] != outputs[0]) ++differing;
      if (outputs[4 + i] != outputs[4]) ++differing;
    }
  }
  return {differing == 0, std::to_string(differing) + " differing outputs over 10 configs"};
}

Outcome criterion10() {
  const auto ds = generate_ccm({.n = 20000, .d = 200, .k = 50, .epsilon = 0.3, .rho = 0.0,
                                .seed = 10});
  std::vector<double> first, last, kmodes;
  for (std::size_t e = 0; e < 5; ++e) {
    const std::uint64_t s = epoch_seed(10, e);
    const auto soft =
        run_softmodes(ds, make_config(50, RoundingSpec::Soft(3), SeedingMethod::kDistanceSampling, s));
    first.push_back(*soft.trace.front().accuracy);
    last.push_back(*soft.trace.back().accuracy);
    const auto plu = run_softmodes(
        ds, make_config(50, RoundingSpec::Plurality(), SeedingMethod::kDistanceSampling, s));
    kmodes.push_back(*plu.trace.back().accuracy);
  }
  const double f = mean(first), l = mean(last), km = mean(kmodes);
  return {l >= f && l >= km, "SoftModes(3) iteration 1 " + fmt(f) + ", final " + fmt(l) +
                                 ", k-modes final " + fmt(km)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 30, criterion1},   {2, 300, criterion2}, {3, 300, criterion3}, {4, 600, criterion4},
      {5, 600, criterion5},  {6, 10, criterion6},  {7, 30, criterion7},  {8, 30, criterion8},
      {9, 60, criterion9},   {10, 600, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << " (" << o.detail
              << "; " << fmt(secs) << " s, limit " << c.limit_seconds << " s"
              << (in_time ? "" : ", over time limit") << ")" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
