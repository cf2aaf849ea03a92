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

#include "softmodes/dataset.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "softmodes/error.hpp"

namespace softmodes {

CategoricalDataset::CategoricalDataset(std::size_t n,
                                       std::vector<AttributeDomain> domains,
                                       std::vector<Category> values,
                                       std::optional<std::vector<Label>> labels,
                                       DatasetNames names)
    : n_(n),
      domains_(std::move(domains)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      names_(std::move(names)) {
  if (domains_.empty()) throw DomainError("dataset needs at least one attribute");
  if (values_.size() != n_ * domains_.size()) {
    throw DomainError("value matrix has " + std::to_string(values_.size()) +
                      " entries, expected " + std::to_string(n_) + " x " +
                      std::to_string(domains_.size()));
  }
  for (std::size_t j = 0; j < domains_.size(); ++j) {
    if (domains_[j].arity < 1) {
      throw DomainError("attribute " + std::to_string(j) + " has arity 0");
    }
  }
  const std::size_t dd = domains_.size();
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < dd; ++j) {
      if (values_[i * dd + j] >= domains_[j].arity) {
        throw DomainError("value out of range at row " + std::to_string(i) +
                          ", attribute " + std::to_string(j));
      }
    }
  }
  if (labels_ && labels_->size() != n_) {
    throw DomainError("label vector has length " +
                      std::to_string(labels_->size()) + ", expected " +
                      std::to_string(n_));
  }
  if (!names_.columns.empty() && names_.columns.size() != dd) {
    throw DomainError("column name count does not match attribute count");
  }
  if (!names_.categories.empty()) {
    if (names_.categories.size() != dd) {
      throw DomainError("category dictionary count does not match d");
    }
    for (std::size_t j = 0; j < dd; ++j) {
      if (names_.categories[j].size() > domains_[j].arity) {
        throw DomainError("category dictionary larger than arity");
      }
    }
  }
}

OneHotMatrix::OneHotMatrix(std::size_t n, std::vector<std::size_t> block_offsets,
                           std::vector<double> values)
    : n_(n),
      block_offsets_(std::move(block_offsets)),
      values_(std::move(values)) {
  if (block_offsets_.size() < 2 || block_offsets_.front() != 0) {
    throw DomainError("one-hot matrix needs at least one attribute block");
  }
  if (values_.size() != n_ * cols()) {
    throw DomainError("one-hot value matrix has the wrong size");
  }
}

OneHotMatrix one_hot(const CategoricalDataset& ds) {
  std::vector<std::size_t> offsets(ds.d() + 1, 0);
  for (std::size_t j = 0; j < ds.d(); ++j) {
    offsets[j + 1] = offsets[j] + ds.arity(j);
  }
  const std::size_t cols = offsets.back();
  std::vector<double> values(ds.n() * cols, 0.0);
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t j = 0; j < ds.d(); ++j) {
      values[i * cols + offsets[j] + ds.at(i, j)] = 1.0;
    }
  }
  return OneHotMatrix(ds.n(), std::move(offsets), std::move(values));
}

namespace {

struct CsvRecord {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<CsvRecord> tokenize_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t pos = 0;
  std::size_t line = 1;
  while (pos < text.size()) {
    CsvRecord rec{line, {}};
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    bool done = false;
    while (!done) {
      if (pos >= text.size()) {
        if (in_quotes) {
          throw ParseError("line " + std::to_string(rec.line) +
                           ": unterminated quoted field");
        }
        done = true;
        break;
      }
      const char c = text[pos++];
      if (in_quotes) {
        if (c == '"') {
          if (pos < text.size() && text[pos] == '"') {
            field.push_back('"');
            ++pos;
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
        }
      } else if (c == '"' && field.empty() && !was_quoted) {
        in_quotes = true;
        was_quoted = true;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (c == '\n') {
        ++line;
        done = true;
      } else if (c == '\r' && pos < text.size() && text[pos] == '\n') {
        // CRLF; the '\n' ends the record on the next pass.
      } else {
        field.push_back(c);
      }
    }
    rec.fields.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  // A blank final line is an artifact of the trailing newline convention.
  while (!records.empty() && records.back().fields.size() == 1 &&
         records.back().fields[0].empty()) {
    records.pop_back();
  }
  return records;
}

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && !s.empty()) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

// First-seen interning of strings for one column.
class Interner {
 public:
  std::uint32_t intern(const std::string& s) {
    auto [it, inserted] =
        index_.try_emplace(s, static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(s);
    return it->second;
  }
  std::vector<std::string>& names() { return names_; }

 private:
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::string> names_;
};

}  // namespace

CategoricalDataset parse_csv(std::string_view text, const CsvOptions& options) {
  std::vector<CsvRecord> records = tokenize_csv(text);
  if (options.label_column && options.label_column_index) {
    throw ConfigError("label column given both by name and by index");
  }

  std::vector<std::string> header;
  std::size_t first = 0;
  if (options.has_header) {
    if (records.empty()) throw ParseError("missing header row");
    header = records[0].fields;
    first = 1;
  }
  if (records.size() <= first) throw ParseError("no data rows");

  const std::size_t width = records[first].fields.size();
  if (!header.empty() && header.size() != width) {
    throw ParseError("line " + std::to_string(records[first].line) + ": has " +
                     std::to_string(width) + " fields but header has " +
                     std::to_string(header.size()));
  }

  std::optional<std::size_t> label_col;
  if (options.label_column) {
    if (header.empty()) {
      throw ConfigError("label column '" + *options.label_column +
                        "' requested but the file has no header");
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == *options.label_column) {
        label_col = c;
        break;
      }
    }
    if (!label_col) {
      throw ConfigError("label column '" + *options.label_column +
                        "' not found in header");
    }
  } else if (options.label_column_index) {
    if (*options.label_column_index >= width) {
      throw ConfigError("label column index " +
                        std::to_string(*options.label_column_index) +
                        " out of range for " + std::to_string(width) +
                        " columns");
    }
    label_col = options.label_column_index;
  }

  const std::size_t d = width - (label_col ? 1 : 0);
  if (d == 0) throw ParseError("no feature columns");
  const std::size_t n = records.size() - first;

  std::vector<Interner> columns(d);
  Interner label_interner;
  std::vector<Category> values;
  values.reserve(n * d);
  std::vector<Label> labels;
  if (label_col) labels.reserve(n);

  for (std::size_t r = first; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.fields.size() != width) {
      throw ParseError("line " + std::to_string(rec.line) + ": expected " +
                       std::to_string(width) + " fields, found " +
                       std::to_string(rec.fields.size()));
    }
    std::size_t j = 0;
    for (std::size_t c = 0; c < width; ++c) {
      const std::string& cell = rec.fields[c];
      if (cell.empty()) {
        throw ParseError("line " + std::to_string(rec.line) + ", column " +
                         std::to_string(c + 1) + ": empty cell");
      }
      if (label_col && c == *label_col) {
        labels.push_back(label_interner.intern(cell));
      } else {
        values.push_back(columns[j++].intern(cell));
      }
    }
  }

  std::vector<AttributeDomain> domains(d);
  DatasetNames names;
  names.categories.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    domains[j].arity = columns[j].names().size();
    names.categories[j] = std::move(columns[j].names());
  }
  if (options.arities) {
    if (options.arities->size() != d) {
      throw ConfigError("declared " + std::to_string(options.arities->size()) +
                        " arities for " + std::to_string(d) + " attributes");
    }
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t declared = (*options.arities)[j];
      if (declared < domains[j].arity) {
        throw ConfigError("declared arity " + std::to_string(declared) +
                          " of attribute " + std::to_string(j) +
                          " is below the " + std::to_string(domains[j].arity) +
                          " observed values");
      }
      domains[j].arity = declared;
    }
  }
  if (!header.empty()) {
    for (std::size_t c = 0; c < width; ++c) {
      if (label_col && c == *label_col) {
        names.label_column = header[c];
      } else {
        names.columns.push_back(header[c]);
      }
    }
  }
  std::optional<std::vector<Label>> label_vec;
  if (label_col) {
    label_vec = std::move(labels);
    names.labels = std::move(label_interner.names());
  }
  return CategoricalDataset(n, std::move(domains), std::move(values),
                            std::move(label_vec), std::move(names));
}

CategoricalDataset load_csv(const std::filesystem::path& path,
                            const CsvOptions& options) {
  const std::string text = read_file(path);
  try {
    return parse_csv(text, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_csv(const CategoricalDataset& ds) {
  const DatasetNames& names = ds.names();
  std::string out;
  if (!names.columns.empty()) {
    for (std::size_t j = 0; j < ds.d(); ++j) {
      if (j) out.push_back(',');
      out += quote_field(names.columns[j]);
    }
    if (ds.has_labels()) {
      out.push_back(',');
      out += quote_field(names.label_column.empty() ? "label"
                                                    : names.label_column);
    }
    out.push_back('\n');
  }
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t j = 0; j < ds.d(); ++j) {
      if (j) out.push_back(',');
      const Category v = ds.at(i, j);
      if (!names.categories.empty() && v < names.categories[j].size()) {
        out += quote_field(names.categories[j][v]);
      } else {
        out += std::to_string(v);
      }
    }
    if (ds.has_labels()) {
      out.push_back(',');
      const Label l = ds.labels()[i];
      if (l < names.labels.size()) {
        out += quote_field(names.labels[l]);
      } else {
        out += std::to_string(l);
      }
    }
    out.push_back('\n');
  }
  return out;
}

void save_csv(const CategoricalDataset& ds, const std::filesystem::path& path) {
  write_file(path, format_csv(ds));
}

void save_labels(std::span<const Label> labels,
                 const std::filesystem::path& path,
                 std::span<const std::string> names) {
  std::string out;
  out.reserve(labels.size() * 3);
  for (Label l : labels) {
    if (l < names.size()) {
      out += names[l];
    } else {
      out += std::to_string(l);
    }
    out.push_back('\n');
  }
  write_file(path, out);
}

LabelList load_labels(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  LabelList list;
  Interner interner;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw ParseError(path.string() + ": line " + std::to_string(lineno) +
                       ": empty label");
    }
    list.ids.push_back(interner.intern(line));
  }
  list.names = std::move(interner.names());
  return list;
}

}  // namespace softmodes
