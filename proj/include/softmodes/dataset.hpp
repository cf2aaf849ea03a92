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

#ifndef SOFTMODES_DATASET_HPP_
#define SOFTMODES_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace softmodes {

// Zero-based index of a value within one attribute's domain.
using Category = std::uint32_t;
// Ground-truth class or predicted cluster id.
using Label = std::uint32_t;

struct AttributeDomain {
  std::size_t arity = 1;
  bool operator==(const AttributeDomain&) const = default;
};

// Optional string dictionaries carried alongside the index matrix so that
// a dataset can be written back with its original spelling.
struct DatasetNames {
  std::vector<std::string> columns;                  // d entries or empty
  std::string label_column;                          // empty if unnamed
  std::vector<std::vector<std::string>> categories;  // d entries or empty
  std::vector<std::string> labels;                   // label id -> name
  bool operator==(const DatasetNames&) const = default;
};

// An n x d matrix of category indices, stored row-major, with per-attribute
// arities and optional ground-truth labels. Immutable once constructed.
class CategoricalDataset {
 public:
  // Throws DomainError when a value is out of range for its attribute, when
  // values.size() != n * domains.size(), or when labels has the wrong length.
  CategoricalDataset(std::size_t n, std::vector<AttributeDomain> domains,
                     std::vector<Category> values,
                     std::optional<std::vector<Label>> labels = std::nullopt,
                     DatasetNames names = {});

  std::size_t n() const { return n_; }
  std::size_t d() const { return domains_.size(); }
  const std::vector<AttributeDomain>& domains() const { return domains_; }
  std::size_t arity(std::size_t j) const { return domains_[j].arity; }

  std::span<const Category> row(std::size_t i) const {
    return {values_.data() + i * d(), d()};
  }
  Category at(std::size_t i, std::size_t j) const {
    return values_[i * d() + j];
  }
  std::span<const Category> values() const { return values_; }

  bool has_labels() const { return labels_.has_value(); }
  // Precondition: has_labels().
  std::span<const Label> labels() const { return *labels_; }

  const DatasetNames& names() const { return names_; }

  bool operator==(const CategoricalDataset&) const = default;

 private:
  std::size_t n_;
  std::vector<AttributeDomain> domains_;
  std::vector<Category> values_;
  std::optional<std::vector<Label>> labels_;
  DatasetNames names_;
};

// Dense n x D real matrix, D = sum of arities, with column offsets per
// attribute block.
class OneHotMatrix {
 public:
  OneHotMatrix(std::size_t n, std::vector<std::size_t> block_offsets,
               std::vector<double> values);

  std::size_t n() const { return n_; }
  std::size_t cols() const { return block_offsets_.back(); }
  std::size_t blocks() const { return block_offsets_.size() - 1; }
  // Columns [offset(j), offset(j + 1)) encode attribute j.
  std::size_t offset(std::size_t j) const { return block_offsets_[j]; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols(), cols()};
  }
  double at(std::size_t i, std::size_t c) const {
    return values_[i * cols() + c];
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> block_offsets_;
  std::vector<double> values_;
};

OneHotMatrix one_hot(const CategoricalDataset& ds);

struct CsvOptions {
  bool has_header = true;
  // At most one of these selects the label column.
  std::optional<std::string> label_column;
  std::optional<std::size_t> label_column_index;
  // Declared arity per feature column (label column excluded). Each entry
  // must be at least the observed number of distinct values.
  std::optional<std::vector<std::size_t>> arities;
};

// Reads a comma-separated file. Each distinct string in a column is mapped to
// an index in first-seen order. Throws ParseError (ragged row, empty cell,
// unterminated quote), ConfigError (unknown label column, bad declared
// arity) or IoError.
CategoricalDataset load_csv(const std::filesystem::path& path,
                            const CsvOptions& options = {});
CategoricalDataset parse_csv(std::string_view text,
                             const CsvOptions& options = {});

// Writes values using category names when the dataset carries them and
// indices otherwise. Labels, if present, go in the last column. A header row
// is written when column names are known (generated names otherwise).
void save_csv(const CategoricalDataset& ds, const std::filesystem::path& path);
std::string format_csv(const CategoricalDataset& ds);

// One label per line. With `names`, label ids are written as names[id].
void save_labels(std::span<const Label> labels,
                 const std::filesystem::path& path,
                 std::span<const std::string> names = {});

struct LabelList {
  std::vector<Label> ids;
  std::vector<std::string> names;  // first-seen order
};
// Reads one token per line and maps tokens to ids in first-seen order.
LabelList load_labels(const std::filesystem::path& path);

}  // namespace softmodes

#endif  // SOFTMODES_DATASET_HPP_
