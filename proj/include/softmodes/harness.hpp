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

// Experiment orchestration: parameter sweeps, epoch aggregation and
// CSV / SVG export.
//
// A sweep varies one axis over a list of values. For every value, every
// algorithm runs `epochs` independent times; each run gets a seed hashed
// from (root seed, axis index, algorithm index, epoch). Datasets come from
// a generator or a CSV file and are shared by all algorithms at a given
// axis value.

#ifndef SOFTMODES_HARNESS_HPP_
#define SOFTMODES_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "softmodes/dataset.hpp"
#include "softmodes/generators.hpp"
#include "softmodes/rounding.hpp"
#include "softmodes/seeding.hpp"

namespace softmodes {

enum class SweepAxis { kK, kT, kP, kQ, kRho, kIteration };

SweepAxis parse_axis(const std::string& name);
std::string to_string(SweepAxis axis);

// Symmetric BBM: p on the diagonal, q off it.
struct BbmSource {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 2;
  double p = 0.0;
  double q = 0.0;
};

struct CcmSource {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 2;
  double epsilon = 0.0;
  double rho = 0.0;
};

struct FileSource {
  std::filesystem::path path;
  CsvOptions csv;
};

using DataSource = std::variant<BbmSource, CcmSource, FileSource>;

enum class AlgorithmKind { kSoftModes, kLloyd };

struct AlgorithmConfig {
  std::string name;
  AlgorithmKind kind = AlgorithmKind::kSoftModes;
  RoundingSpec rounding = RoundingSpec::Plurality();
  SeedingMethod seeding = SeedingMethod::kDistanceSampling;
  std::size_t max_iter = 100;
};

enum class PlotKind { kLine, kBar };

struct ExperimentSpec {
  DataSource data;
  std::vector<AlgorithmConfig> algorithms;
  std::size_t epochs = 1;
  SweepAxis axis = SweepAxis::kK;
  std::vector<double> values;
  std::uint64_t seed = 0;
  int threads = 1;
  // Cluster count when the axis is not k; defaults to the generator's k or
  // the number of distinct labels in the file.
  std::optional<std::size_t> k;
  // Draw a fresh dataset for every epoch instead of one per axis value.
  bool resample_data = false;
  PlotKind plot = PlotKind::kLine;

  // Throws ConfigError: no algorithms, no values, epochs = 0, an axis that
  // does not apply to the data source, or duplicate algorithm names.
  void validate() const;
};

// Parses the JSON form of an ExperimentSpec. Throws ParseError on
// malformed JSON and ConfigError on bad values.
ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct ExperimentRow {
  double axis;
  std::string algorithm;
  std::size_t epoch;
  double accuracy;
  std::size_t iterations;
  double seconds;  // clustering call only
};

struct TraceRow {
  double axis;
  std::string algorithm;
  std::size_t epoch;
  std::size_t iteration;
  double objective;
  double accuracy;
};

struct SummaryRow {
  double axis;
  std::string algorithm;
  double mean_accuracy;
  double std_accuracy;  // sample standard deviation; 0 for one epoch
  double mean_iterations;
  std::size_t epochs;
};

struct ExperimentTable {
  SweepAxis axis;
  // Ordered by axis value, then algorithm (spec order), then epoch.
  std::vector<ExperimentRow> rows;
  std::vector<TraceRow> traces;

  std::vector<SummaryRow> summarize() const;
};

ExperimentTable run_experiment(const ExperimentSpec& spec);

// Deterministic given the ExperimentSpec: axis,algorithm,epoch,accuracy,iterations.
std::string format_results_csv(const ExperimentTable& table);
// axis,algorithm,epoch,seconds.
std::string format_timing_csv(const ExperimentTable& table);
// axis,algorithm,epoch,iteration,objective,accuracy.
std::string format_traces_csv(const ExperimentTable& table);
// axis,algorithm,mean_accuracy,std_accuracy,mean_iterations,epochs.
std::string format_summary_csv(const ExperimentTable& table);

// Writes results.csv, timing.csv, traces.csv, summary.csv and
// accuracy.svg (+ accuracy.csv) into `dir`, creating it if needed.
void write_experiment(const ExperimentTable& table, PlotKind plot,
                      const std::filesystem::path& dir);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> stddev;
};

// Self-contained SVG with mean +/- std error bars: one polyline per series
// for kLine, grouped bars for kBar. Also writes the plotted numbers to
// `path` with a .csv extension. Throws DomainError if there are no series
// or a series is empty or ragged, IoError if a file cannot be written.
void emit_plot(std::span<const PlotSeries> series, PlotKind kind,
               const std::filesystem::path& path, const std::string& title,
               const std::string& x_label, const std::string& y_label);

std::string render_svg(std::span<const PlotSeries> series, PlotKind kind,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label);

// Series per algorithm from the summary rows of a table.
std::vector<PlotSeries> accuracy_series(const ExperimentTable& table);

}  // namespace softmodes

#endif  // SOFTMODES_HARNESS_HPP_
