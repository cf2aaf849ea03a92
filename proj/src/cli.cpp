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

#include "softmodes/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

#include "CLI11.hpp"
#include "softmodes/dataset.hpp"
#include "softmodes/engine.hpp"
#include "softmodes/error.hpp"
#include "softmodes/evaluation.hpp"
#include "softmodes/generators.hpp"
#include "softmodes/harness.hpp"
#include "softmodes/rounding.hpp"

namespace softmodes {
namespace {

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

struct ClusterArgs {
  std::string input;
  std::size_t k = 2;
  std::string algorithm = "softmodes";
  std::string rounding = "soft";
  double t = 1.0;
  std::string seeding = "dsample";
  std::size_t max_iter = 100;
  std::uint64_t seed = 0;
  std::size_t epochs = 1;
  int threads = 0;
  std::string label_col;
  std::optional<std::size_t> label_col_index;
  bool no_header = false;
  std::string assignments;
  std::string trace;
};

int run_cluster(const ClusterArgs& a, std::ostream& out) {
  CsvOptions csv;
  csv.has_header = !a.no_header;
  if (!a.label_col.empty()) csv.label_column = a.label_col;
  csv.label_column_index = a.label_col_index;
  const CategoricalDataset ds = load_csv(a.input, csv);

  ClusteringConfig cfg;
  cfg.k = a.k;
  cfg.seeding = parse_seeding(a.seeding);
  cfg.max_iter = a.max_iter;
  cfg.threads = a.threads;
  const bool lloyd = a.algorithm == "lloyd" || a.algorithm == "kmeans";
  if (!lloyd && a.algorithm != "softmodes") {
    throw ConfigError("unknown algorithm '" + a.algorithm + "'");
  }
  if (!lloyd) cfg.rounding = RoundingSpec::Parse(a.rounding, a.t);
  if (a.epochs == 0) throw ConfigError("--epochs must be at least 1");

  std::optional<OneHotMatrix> onehot;
  if (lloyd) onehot = one_hot(ds);

  std::string trace = ds.has_labels() ? "epoch,iteration,objective,accuracy\n"
                                      : "epoch,iteration,objective\n";
  std::vector<double> accs;
  std::optional<ClusteringResult> best;
  double best_objective = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < a.epochs; ++e) {
    cfg.seed = derive_seed(a.seed, {static_cast<std::uint64_t>(StreamPurpose::kEpoch), e});
    ClusteringResult res = lloyd ? run_lloyd(*onehot, cfg, ds.has_labels()
                                                               ? ds.labels()
                                                               : std::span<const Label>{})
                                 : run_softmodes(ds, cfg);
    for (const IterationRecord& rec : res.trace) {
      trace += std::to_string(e) + "," + std::to_string(rec.iteration) + "," +
               num(rec.objective);
      if (rec.accuracy) trace += "," + num(*rec.accuracy);
      trace += "\n";
    }
    const double final_objective = res.trace.back().objective;
    out << "epoch " << e << ": iterations=" << res.iterations
        << " converged=" << (res.converged ? "yes" : "no")
        << " objective=" << num(final_objective);
    if (ds.has_labels()) {
      accs.push_back(accuracy(res.assignment, ds.labels()));
      out << " accuracy=" << num(accs.back());
    }
    out << "\n";
    if (final_objective < best_objective) {
      best_objective = final_objective;
      best = std::move(res);
    }
  }
  if (!accs.empty()) {
    double mean = 0.0;
    for (double v : accs) mean += v;
    mean /= static_cast<double>(accs.size());
    double ss = 0.0;
    for (double v : accs) ss += (v - mean) * (v - mean);
    const double sd = accs.size() > 1 ? std::sqrt(ss / static_cast<double>(accs.size() - 1)) : 0.0;
    out << "accuracy mean=" << num(mean) << " std=" << num(sd) << "\n";
  }
  if (!a.assignments.empty()) save_labels(best->assignment, a.assignments);
  if (!a.trace.empty()) write_text(a.trace, trace);
  return 0;
}

std::vector<std::vector<double>> load_pmatrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::vector<double>> p;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = std::min(line.find(',', pos), line.size());
      const std::string cell = line.substr(pos, comma - pos);
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw ParseError(path + ": bad probability '" + cell + "'");
      }
      row.push_back(v);
      pos = comma + 1;
    }
    p.push_back(std::move(row));
  }
  return p;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Categorical clustering with soft rounding", "softmodes"};
  app.require_subcommand(1);

  ClusterArgs ca;
  CLI::App* cluster = app.add_subcommand("cluster", "cluster a categorical CSV file");
  cluster->add_option("input", ca.input, "input CSV")->required();
  cluster->add_option("--k", ca.k, "number of clusters")->capture_default_str();
  cluster->add_option("--algorithm", ca.algorithm, "softmodes or lloyd")
      ->check(CLI::IsMember({"softmodes", "lloyd", "kmeans"}))
      ->capture_default_str();
  cluster->add_option("--rounding", ca.rounding, "plurality, uniform or soft")
      ->check(CLI::IsMember({"plurality", "uniform", "soft"}))
      ->capture_default_str();
  cluster->add_option("--t", ca.t, "soft rounding exponent (>= 1)")->capture_default_str();
  cluster->add_option("--seeding", ca.seeding, "random or dsample")
      ->check(CLI::IsMember({"random", "dsample"}))
      ->capture_default_str();
  cluster->add_option("--max-iter", ca.max_iter)->capture_default_str();
  cluster->add_option("--seed", ca.seed)->capture_default_str();
  cluster->add_option("--epochs", ca.epochs, "independent runs")->capture_default_str();
  cluster->add_option("--threads", ca.threads, "0 = all cores")->capture_default_str();
  auto* lc = cluster->add_option("--label-col", ca.label_col, "ground-truth column name");
  cluster->add_option("--label-col-index", ca.label_col_index, "ground-truth column index")
      ->excludes(lc);
  cluster->add_flag("--no-header", ca.no_header, "first row is data");
  cluster->add_option("--assignments", ca.assignments,
                      "write cluster ids (lowest-objective epoch), one per line");
  cluster->add_option("--trace", ca.trace, "write per-iteration trace CSV");

  CLI::App* generate = app.add_subcommand("generate", "sample a synthetic dataset");
  generate->require_subcommand(1);
  std::size_t gn = 0, gd = 0, gk = 2;
  double gp = 0.0, gq = 0.0, geps = 0.0, grho = 0.0;
  std::uint64_t gseed = 0;
  std::string gout, gpmatrix;
  CLI::App* bbm = generate->add_subcommand("bbm", "Boolean block model");
  bbm->add_option("--n", gn)->required();
  bbm->add_option("--d", gd)->required();
  bbm->add_option("--k", gk)->capture_default_str();
  bbm->add_option("--p", gp, "within-block probability");
  bbm->add_option("--q", gq, "cross-block probability");
  bbm->add_option("--pmatrix", gpmatrix, "CSV file with the full k x k matrix");
  bbm->add_option("--seed", gseed);
  bbm->add_option("out", gout)->required();
  CLI::App* ccm = generate->add_subcommand("ccm", "corrupted codewords model");
  ccm->add_option("--n", gn)->required();
  ccm->add_option("--d", gd)->required();
  ccm->add_option("--k", gk)->capture_default_str();
  ccm->add_option("--eps", geps)->required();
  ccm->add_option("--rho", grho)->capture_default_str();
  ccm->add_option("--seed", gseed);
  ccm->add_option("out", gout)->required();

  std::string pred_path, truth_path, truth_col;
  CLI::App* evaluate = app.add_subcommand("evaluate", "accuracy and confusion matrix");
  evaluate->add_option("--pred", pred_path, "predicted ids, one per line")->required();
  evaluate->add_option("--truth", truth_path,
                       "true labels, one per line (or a CSV with --truth-col)")
      ->required();
  evaluate->add_option("--truth-col", truth_col, "label column when --truth is a CSV");

  std::string frounding = "soft", fout;
  double ft = 2.0;
  std::size_t fres = 10;
  CLI::App* field = app.add_subcommand("field", "rounding displacement field on the 2-simplex");
  field->add_option("--rounding", frounding)
      ->check(CLI::IsMember({"plurality", "uniform", "soft"}))
      ->capture_default_str();
  field->add_option("--t", ft)->capture_default_str();
  field->add_option("--resolution", fres)->capture_default_str();
  field->add_option("--out", fout, "output CSV (stdout if omitted)");

  std::string config_path, out_dir = "experiment_out";
  CLI::App* experiment = app.add_subcommand("experiment", "run a JSON-described sweep");
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--out", out_dir)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*cluster) return run_cluster(ca, out);
    if (*bbm) {
      BbmSpec spec;
      if (!gpmatrix.empty()) {
        spec.p = load_pmatrix(gpmatrix);
        const std::size_t k = spec.p.size();
        if (k == 0 || gn < k || gd < k) throw ConfigError("--pmatrix needs 1 <= k <= min(n, d)");
        spec.cluster_sizes = even_split(gn, k);
        spec.feature_block_sizes = even_split(gd, k);
        spec.seed = gseed;
      } else {
        spec = BbmSpec::Symmetric(gn, gd, gk, gp, gq, gseed);
      }
      save_csv(generate_bbm(spec, 0), gout);
      return 0;
    }
    if (*ccm) {
      save_csv(generate_ccm(CcmSpec{gn, gd, gk, geps, grho, gseed}, 0), gout);
      return 0;
    }
    if (*evaluate) {
      const LabelList pred = load_labels(pred_path);
      std::vector<Label> truth;
      if (!truth_col.empty()) {
        CsvOptions csv;
        csv.label_column = truth_col;
        const CategoricalDataset ds = load_csv(truth_path, csv);
        truth.assign(ds.labels().begin(), ds.labels().end());
      } else {
        truth = load_labels(truth_path).ids;
      }
      out << "accuracy," << num(accuracy(pred.ids, truth)) << "\n";
      out << format_confusion_csv(confusion(pred.ids, truth));
      return 0;
    }
    if (*field) {
      const std::string csv =
          format_field_csv(field_grid(RoundingSpec::Parse(frounding, ft), fres));
      if (fout.empty()) {
        out << csv;
      } else {
        write_text(fout, csv);
      }
      return 0;
    }
    if (*experiment) {
      const ExperimentSpec spec = load_experiment_spec(config_path);
      const ExperimentTable table = run_experiment(spec);
      write_experiment(table, spec.plot, out_dir);
      out << format_summary_csv(table);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace softmodes
