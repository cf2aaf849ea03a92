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

#include "softmodes/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "softmodes/engine.hpp"
#include "softmodes/error.hpp"
#include "softmodes/evaluation.hpp"

namespace softmodes {
namespace {

constexpr std::uint64_t kDataTag = 0xDA7A;

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool axis_changes_data(SweepAxis axis) {
  return axis == SweepAxis::kK || axis == SweepAxis::kP ||
         axis == SweepAxis::kQ || axis == SweepAxis::kRho;
}

std::size_t as_count(double v, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw ConfigError(std::string(what) + " must be a positive integer, got " + num(v));
  }
  return static_cast<std::size_t>(v);
}

std::size_t distinct_labels(const CategoricalDataset& ds) {
  std::set<Label> seen(ds.labels().begin(), ds.labels().end());
  return seen.size();
}

struct Instance {
  CategoricalDataset data;
  std::optional<OneHotMatrix> onehot;
  std::size_t k;
};

Instance make_instance(const ExperimentSpec& spec, double axis_value,
                       std::uint64_t data_seed, bool need_onehot) {
  std::optional<std::size_t> k_override;
  if (spec.axis == SweepAxis::kK) k_override = as_count(axis_value, "k");

  auto build = [&]() -> std::pair<CategoricalDataset, std::size_t> {
    if (const auto* b = std::get_if<BbmSource>(&spec.data)) {
      BbmSource src = *b;
      if (k_override) src.k = *k_override;
      if (spec.axis == SweepAxis::kP) src.p = axis_value;
      if (spec.axis == SweepAxis::kQ) src.q = axis_value;
      auto bbm = BbmSpec::Symmetric(src.n, src.d, src.k, src.p, src.q, data_seed);
      return {generate_bbm(bbm, spec.threads), src.k};
    }
    if (const auto* c = std::get_if<CcmSource>(&spec.data)) {
      CcmSpec ccm{c->n, c->d, c->k, c->epsilon, c->rho, data_seed};
      if (k_override) ccm.k = *k_override;
      if (spec.axis == SweepAxis::kRho) ccm.rho = axis_value;
      return {generate_ccm(ccm, spec.threads), ccm.k};
    }
    const auto& f = std::get<FileSource>(spec.data);
    CategoricalDataset ds = load_csv(f.path, f.csv);
    if (!ds.has_labels()) {
      throw ConfigError(f.path.string() + ": experiments need a label column");
    }
    const std::size_t k = distinct_labels(ds);
    return {std::move(ds), k};
  };
  auto [ds, data_k] = build();
  std::size_t k = data_k;
  if (k_override) {
    k = *k_override;
  } else if (spec.k) {
    k = *spec.k;
  }
  std::optional<OneHotMatrix> onehot;
  if (need_onehot) onehot = one_hot(ds);
  return Instance{std::move(ds), std::move(onehot), k};
}

AlgorithmConfig parse_algorithm(const nlohmann::json& j, SeedingMethod default_seeding,
                                std::size_t default_max_iter) {
  AlgorithmConfig a;
  a.seeding = default_seeding;
  a.max_iter = default_max_iter;
  const std::string kind = j.value("kind", "softmodes");
  if (kind == "lloyd" || kind == "kmeans") {
    a.kind = AlgorithmKind::kLloyd;
  } else if (kind != "softmodes") {
    throw ConfigError("unknown algorithm kind '" + kind + "'");
  }
  if (a.kind == AlgorithmKind::kSoftModes) {
    a.rounding = RoundingSpec::Parse(j.value("rounding", "plurality"), j.value("t", 1.0));
  }
  if (j.contains("seeding")) a.seeding = parse_seeding(j.at("seeding").get<std::string>());
  if (j.contains("max_iter")) a.max_iter = j.at("max_iter").get<std::size_t>();
  a.name = j.value("name", a.kind == AlgorithmKind::kLloyd ? std::string("kmeans")
                                                          : a.rounding.ToString());
  return a;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

SweepAxis parse_axis(const std::string& name) {
  if (name == "k") return SweepAxis::kK;
  if (name == "t") return SweepAxis::kT;
  if (name == "p") return SweepAxis::kP;
  if (name == "q") return SweepAxis::kQ;
  if (name == "rho") return SweepAxis::kRho;
  if (name == "iteration") return SweepAxis::kIteration;
  throw ConfigError("unknown sweep axis '" + name + "'");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kK: return "k";
    case SweepAxis::kT: return "t";
    case SweepAxis::kP: return "p";
    case SweepAxis::kQ: return "q";
    case SweepAxis::kRho: return "rho";
    case SweepAxis::kIteration: return "iteration";
  }
  return "?";
}

void ExperimentSpec::validate() const {
  if (algorithms.empty()) throw ConfigError("experiment lists no algorithms");
  if (values.empty()) throw ConfigError("experiment sweep has no axis values");
  if (epochs == 0) throw ConfigError("epochs must be at least 1");
  std::set<std::string> names;
  for (const AlgorithmConfig& a : algorithms) {
    if (!names.insert(a.name).second) {
      throw ConfigError("duplicate algorithm name '" + a.name + "'");
    }
    if (a.max_iter == 0) throw ConfigError("max_iter must be at least 1");
  }
  const bool bbm = std::holds_alternative<BbmSource>(data);
  const bool ccm = std::holds_alternative<CcmSource>(data);
  if ((axis == SweepAxis::kP || axis == SweepAxis::kQ) && !bbm) {
    throw ConfigError("axis " + to_string(axis) + " needs a bbm data source");
  }
  if (axis == SweepAxis::kRho && !ccm) {
    throw ConfigError("axis rho needs a ccm data source");
  }
  for (double v : values) {
    switch (axis) {
      case SweepAxis::kK:
        as_count(v, "k");
        break;
      case SweepAxis::kIteration:
        as_count(v, "iteration");
        break;
      case SweepAxis::kT:
        RoundingSpec::Soft(v);
        break;
      case SweepAxis::kP:
      case SweepAxis::kQ:
      case SweepAxis::kRho:
        if (!(v >= 0.0 && v <= 1.0)) {
          throw ConfigError(to_string(axis) + " values must lie in [0, 1]");
        }
        break;
    }
  }
  if (k && *k == 0) throw ConfigError("k must be at least 1");
}

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  try {
    ExperimentSpec spec;
    const nlohmann::json& data = j.at("data");
    if (data.contains("path")) {
      FileSource f;
      f.path = data.at("path").get<std::string>();
      f.csv.has_header = data.value("header", true);
      if (data.contains("label_col")) f.csv.label_column = data.at("label_col").get<std::string>();
      if (data.contains("label_col_index")) {
        f.csv.label_column_index = data.at("label_col_index").get<std::size_t>();
      }
      spec.data = f;
    } else {
      const std::string model = data.at("model").get<std::string>();
      if (model == "bbm") {
        spec.data = BbmSource{data.at("n").get<std::size_t>(), data.at("d").get<std::size_t>(),
                              data.value("k", std::size_t{2}), data.at("p").get<double>(),
                              data.at("q").get<double>()};
      } else if (model == "ccm") {
        spec.data = CcmSource{data.at("n").get<std::size_t>(), data.at("d").get<std::size_t>(),
                              data.value("k", std::size_t{2}), data.at("eps").get<double>(),
                              data.value("rho", 0.0)};
      } else {
        throw ConfigError("unknown data model '" + model + "'");
      }
    }
    const SeedingMethod seeding = parse_seeding(j.value("seeding", "dsample"));
    const std::size_t max_iter = j.value("max_iter", std::size_t{100});
    for (const auto& a : j.at("algorithms")) {
      spec.algorithms.push_back(parse_algorithm(a, seeding, max_iter));
    }
    spec.epochs = j.value("epochs", std::size_t{1});
    spec.axis = parse_axis(j.at("axis").get<std::string>());
    spec.values = j.at("values").get<std::vector<double>>();
    std::sort(spec.values.begin(), spec.values.end());
    spec.values.erase(std::unique(spec.values.begin(), spec.values.end()), spec.values.end());
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.threads = j.value("threads", 1);
    if (j.contains("k")) spec.k = j.at("k").get<std::size_t>();
    spec.resample_data = j.value("resample_data", false);
    const std::string plot = j.value("plot", "line");
    if (plot == "bar") {
      spec.plot = PlotKind::kBar;
    } else if (plot != "line") {
      throw ConfigError("plot must be line or bar");
    }
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_spec(buf.str());
}

ExperimentTable run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentTable table{spec.axis, {}, {}};
  const bool need_onehot =
      std::any_of(spec.algorithms.begin(), spec.algorithms.end(),
                  [](const AlgorithmConfig& a) { return a.kind == AlgorithmKind::kLloyd; });
  const bool iteration_axis = spec.axis == SweepAxis::kIteration;
  // Iteration checkpoints share one set of runs.
  const std::size_t sweeps = iteration_axis ? 1 : spec.values.size();

  std::vector<ExperimentRow> rows;
  for (std::size_t vi = 0; vi < sweeps; ++vi) {
    const double axis_value = spec.values[vi];
    const std::uint64_t variant = axis_changes_data(spec.axis) ? vi : 0;
    std::optional<Instance> shared;
    for (std::size_t e = 0; e < spec.epochs; ++e) {
      if (!shared || spec.resample_data) {
        const std::uint64_t data_seed = derive_seed(
            spec.seed, {kDataTag, variant, spec.resample_data ? e : 0});
        shared = make_instance(spec, axis_value, data_seed, need_onehot);
      }
      const Instance& inst = *shared;
      for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
        const AlgorithmConfig& alg = spec.algorithms[ai];
        ClusteringConfig cfg;
        cfg.k = inst.k;
        cfg.rounding = alg.rounding;
        if (spec.axis == SweepAxis::kT && alg.kind == AlgorithmKind::kSoftModes &&
            alg.rounding.kind() == RoundingKind::kSoft) {
          cfg.rounding = RoundingSpec::Soft(axis_value);
        }
        cfg.seeding = alg.seeding;
        cfg.max_iter = alg.max_iter;
        cfg.threads = spec.threads;
        cfg.seed = derive_seed(spec.seed,
                               {static_cast<std::uint64_t>(StreamPurpose::kEpoch), vi, ai, e});

        const auto start = std::chrono::steady_clock::now();
        ClusteringResult res =
            alg.kind == AlgorithmKind::kLloyd
                ? run_lloyd(*inst.onehot, cfg, inst.data.labels())
                : run_softmodes(inst.data, cfg);
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        // Guard against clocks with coarse resolution.
        const double seconds = std::max(elapsed.count(), 1e-9);

        const double final_acc = accuracy(res.assignment, inst.data.labels());
        auto add_traces = [&](double axis) {
          for (const IterationRecord& rec : res.trace) {
            table.traces.push_back(TraceRow{axis, alg.name, e, rec.iteration,
                                            rec.objective, rec.accuracy.value_or(0.0)});
          }
        };
        if (iteration_axis) {
          for (double checkpoint : spec.values) {
            const auto it = static_cast<std::size_t>(checkpoint);
            const std::size_t at = std::min(it, res.trace.size());
            rows.push_back(ExperimentRow{checkpoint, alg.name, e,
                                         res.trace[at - 1].accuracy.value_or(0.0),
                                         res.iterations, seconds});
          }
          add_traces(0.0);
        } else {
          rows.push_back(ExperimentRow{axis_value, alg.name, e, final_acc,
                                       res.iterations, seconds});
          add_traces(axis_value);
        }
      }
    }
  }

  // Canonical order: axis value, algorithm in spec order, epoch.
  std::map<std::string, std::size_t> order;
  for (std::size_t ai = 0; ai < spec.algorithms.size(); ++ai) {
    order[spec.algorithms[ai].name] = ai;
  }
  auto key = [&](double axis, const std::string& alg, std::size_t epoch) {
    return std::make_tuple(axis, order.at(alg), epoch);
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    return key(a.axis, a.algorithm, a.epoch) < key(b.axis, b.algorithm, b.epoch);
  });
  std::stable_sort(table.traces.begin(), table.traces.end(), [&](const auto& a, const auto& b) {
    return std::make_tuple(a.axis, order.at(a.algorithm), a.epoch, a.iteration) <
           std::make_tuple(b.axis, order.at(b.algorithm), b.epoch, b.iteration);
  });
  table.rows = std::move(rows);
  return table;
}

std::vector<SummaryRow> ExperimentTable::summarize() const {
  std::vector<SummaryRow> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    std::vector<double> acc;
    std::vector<double> iters;
    while (j < rows.size() && rows[j].axis == rows[i].axis &&
           rows[j].algorithm == rows[i].algorithm) {
      acc.push_back(rows[j].accuracy);
      iters.push_back(static_cast<double>(rows[j].iterations));
      ++j;
    }
    out.push_back(SummaryRow{rows[i].axis, rows[i].algorithm, mean_of(acc), sample_std(acc),
                             mean_of(iters), acc.size()});
    i = j;
  }
  return out;
}

std::string format_results_csv(const ExperimentTable& table) {
  std::string out = "axis,algorithm,epoch,accuracy,iterations\n";
  for (const ExperimentRow& r : table.rows) {
    out += num(r.axis) + "," + r.algorithm + "," + std::to_string(r.epoch) + "," +
           num(r.accuracy) + "," + std::to_string(r.iterations) + "\n";
  }
  return out;
}

std::string format_timing_csv(const ExperimentTable& table) {
  std::string out = "axis,algorithm,epoch,seconds\n";
  for (const ExperimentRow& r : table.rows) {
    out += num(r.axis) + "," + r.algorithm + "," + std::to_string(r.epoch) + "," +
           num(r.seconds) + "\n";
  }
  return out;
}

std::string format_traces_csv(const ExperimentTable& table) {
  std::string out = "axis,algorithm,epoch,iteration,objective,accuracy\n";
  for (const TraceRow& r : table.traces) {
    out += num(r.axis) + "," + r.algorithm + "," + std::to_string(r.epoch) + "," +
           std::to_string(r.iteration) + "," + num(r.objective) + "," + num(r.accuracy) + "\n";
  }
  return out;
}

std::string format_summary_csv(const ExperimentTable& table) {
  std::string out = "axis,algorithm,mean_accuracy,std_accuracy,mean_iterations,epochs\n";
  for (const SummaryRow& s : table.summarize()) {
    out += num(s.axis) + "," + s.algorithm + "," + num(s.mean_accuracy) + "," +
           num(s.std_accuracy) + "," + num(s.mean_iterations) + "," +
           std::to_string(s.epochs) + "\n";
  }
  return out;
}

std::vector<PlotSeries> accuracy_series(const ExperimentTable& table) {
  std::vector<PlotSeries> series;
  std::map<std::string, std::size_t> index;
  for (const SummaryRow& s : table.summarize()) {
    auto [it, inserted] = index.try_emplace(s.algorithm, series.size());
    if (inserted) series.push_back(PlotSeries{s.algorithm, {}, {}, {}});
    PlotSeries& p = series[it->second];
    p.x.push_back(s.axis);
    p.mean.push_back(s.mean_accuracy);
    p.stddev.push_back(s.std_accuracy);
  }
  return series;
}

void write_experiment(const ExperimentTable& table, PlotKind plot,
                      const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_text(dir / "results.csv", format_results_csv(table));
  write_text(dir / "timing.csv", format_timing_csv(table));
  write_text(dir / "traces.csv", format_traces_csv(table));
  write_text(dir / "summary.csv", format_summary_csv(table));
  const std::vector<PlotSeries> series = accuracy_series(table);
  if (!series.empty()) {
    emit_plot(series, plot, dir / "accuracy.svg", "accuracy by " + to_string(table.axis),
              to_string(table.axis), "accuracy");
  }
}

}  // namespace softmodes
