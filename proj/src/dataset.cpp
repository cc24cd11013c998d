// Copyright 2026 The confnet Authors. All Rights Reserved.
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

#include "confnet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <string_view>

#include "confnet/errors.hpp"
#include "confnet/io_util.hpp"

namespace confnet {
namespace {

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  // Trailing blank lines are not rows.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string Where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

struct ParsedHeader {
  std::size_t dim = 0;
  bool has_label = false;
};

ParsedHeader ParseHeader(std::string_view line, const std::filesystem::path& path) {
  const auto fields = SplitFields(line);
  ParsedHeader header;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const std::string_view f = Trim(fields[i]);
    if (f == "label" && i + 1 == fields.size() && i > 0) {
      header.has_label = true;
      break;
    }
    if (f != "x" + std::to_string(i + 1)) {
      throw CsvError(CsvErrorKind::kMissingHeader,
                     Where(path, 1) + "expected header x1,...,xd[,label], found \"" +
                         std::string(line) + "\"");
    }
    ++header.dim;
  }
  if (header.dim == 0) {
    throw CsvError(CsvErrorKind::kMissingHeader, Where(path, 1) + "header declares no features");
  }
  return header;
}

double ParseNumber(std::string_view cell, const std::filesystem::path& path, std::size_t line) {
  cell = Trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() ||
      !std::isfinite(value)) {
    throw CsvError(CsvErrorKind::kNonNumeric,
                   Where(path, line) + "cell \"" + std::string(cell) + "\" is not a finite number");
  }
  return value;
}

struct ParsedCsv {
  Matrix features;
  std::vector<int> labels;
  bool has_label = false;
};

ParsedCsv ParseCsv(const std::filesystem::path& path, std::size_t num_classes, bool need_label) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const DataError& e) {
    throw CsvError(CsvErrorKind::kUnreadable, e.what());
  }
  const auto lines = SplitLines(text);
  if (lines.empty()) {
    throw CsvError(CsvErrorKind::kMissingHeader, Where(path, 1) + "empty file, header missing");
  }
  const ParsedHeader header = ParseHeader(lines[0], path);
  if (need_label && !header.has_label) {
    throw CsvError(CsvErrorKind::kMissingHeader,
                   Where(path, 1) + "header has no trailing label column");
  }
  const std::size_t width = header.dim + (header.has_label ? 1 : 0);

  ParsedCsv out;
  out.has_label = header.has_label;
  const std::size_t rows = lines.size() - 1;
  out.features.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(header.dim));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t line_no = r + 2;
    const auto fields = SplitFields(lines[r + 1]);
    if (fields.size() != width) {
      throw CsvError(CsvErrorKind::kRaggedRow,
                     Where(path, line_no) + "row has " + std::to_string(fields.size()) +
                         " cells, header declares " + std::to_string(width));
    }
    for (std::size_t j = 0; j < header.dim; ++j) {
      out.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) =
          ParseNumber(fields[j], path, line_no);
    }
    if (header.has_label) {
      const std::string_view cell = Trim(fields[header.dim]);
      long long label = -1;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), label);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw CsvError(CsvErrorKind::kNonNumeric,
                       Where(path, line_no) + "label \"" + std::string(cell) +
                           "\" is not an integer");
      }
      if (need_label && (label < 0 || static_cast<unsigned long long>(label) >= num_classes)) {
        throw CsvError(CsvErrorKind::kLabelRange,
                       Where(path, line_no) + "label " + std::to_string(label) +
                           " outside [0, " + std::to_string(num_classes) + ")");
      }
      out.labels.push_back(static_cast<int>(label));
    }
  }
  if (rows == 0) throw CsvError(CsvErrorKind::kRaggedRow, Where(path, 2) + "no data rows");
  return out;
}

std::string FeatureHeader(Eigen::Index dim) {
  std::string header;
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (j > 0) header += ',';
    header += "x" + std::to_string(j + 1);
  }
  return header;
}

}  // namespace

void LabeledDataset::Validate() const {
  if (labels.empty()) throw DataError("dataset is empty");
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw DataError("dataset has " + std::to_string(features.rows()) + " feature rows but " +
                    std::to_string(labels.size()) + " labels");
  }
  if (features.cols() == 0) throw DataError("dataset has no feature columns");
  if (!features.allFinite()) throw DataError("dataset has non-finite features");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= num_classes) {
      throw DataError("sample " + std::to_string(i) + " has label " + std::to_string(labels[i]) +
                      " outside [0, " + std::to_string(num_classes) + ")");
    }
  }
}

LabeledDataset GenXor(std::size_t n, double noise, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("gen_xor: n must be >= 1");
  if (!(noise >= 0.0 && noise <= 1.0)) throw InvalidArgument("gen_xor: noise must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::bernoulli_distribution flip(noise);

  LabeledDataset data;
  data.features.resize(static_cast<Eigen::Index>(n), 2);
  data.labels.resize(n);
  data.num_classes = 2;
  data.provenance = {"xor", seed, noise, std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double a = coord(rng);
    const double b = coord(rng);
    const int clean = (a >= 0.0) != (b >= 0.0) ? 1 : 0;
    data.features(static_cast<Eigen::Index>(i), 0) = a;
    data.features(static_cast<Eigen::Index>(i), 1) = b;
    data.provenance.clean_labels[i] = clean;
    data.labels[i] = flip(rng) ? 1 - clean : clean;
  }
  return data;
}

Matrix GenGrid(const GridSpec& spec) {
  const std::size_t d = spec.resolution.size();
  if (d == 0 || spec.min.size() != d || spec.max.size() != d) {
    throw InvalidArgument("grid: bounds and resolution must have one entry per axis");
  }
  std::size_t rows = 1;
  for (std::size_t a = 0; a < d; ++a) {
    if (!(spec.min[a] < spec.max[a])) throw InvalidArgument("grid: min must be < max on every axis");
    if (spec.resolution[a] < 2) throw InvalidArgument("grid: resolution must be >= 2");
    rows *= spec.resolution[a];
  }
  Matrix grid(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(d));
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t a = 0; a < d; ++a) {
      const double t = static_cast<double>(idx[a]) / static_cast<double>(spec.resolution[a] - 1);
      // Endpoints are reproduced exactly.
      grid(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a)) =
          idx[a] + 1 == spec.resolution[a] ? spec.max[a]
                                           : spec.min[a] + t * (spec.max[a] - spec.min[a]);
    }
    for (std::size_t a = d; a-- > 0;) {
      if (++idx[a] < spec.resolution[a]) break;
      idx[a] = 0;
    }
  }
  return grid;
}

Matrix GenNoiseOod(std::size_t n, NoiseKind kind, std::size_t dim, std::uint64_t seed, double lo,
                   double hi) {
  if (n == 0 || dim == 0) throw InvalidArgument("noise: n and dim must be >= 1");
  if (!(lo < hi)) throw InvalidArgument("noise: remap bounds need lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> gaussian(0.5, 1.0);
  Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      double v = kind == NoiseKind::kUniform ? uniform(rng) : std::clamp(gaussian(rng), 0.0, 1.0);
      out(i, j) = lo + v * (hi - lo);
    }
  }
  return out;
}

Matrix GenUniformShell(std::size_t n, std::size_t dim, double inner, double outer,
                       std::uint64_t seed) {
  if (n == 0 || dim == 0) throw InvalidArgument("shell: n and dim must be >= 1");
  if (!(inner >= 0.0 && inner < outer)) throw InvalidArgument("shell: need 0 <= inner < outer");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-outer, outer);
  Matrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < out.rows();) {
    for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = coord(rng);
    if (v.cwiseAbs().maxCoeff() <= inner) continue;
    out.row(i++) = v.transpose();
  }
  return out;
}

Vector FeatureStd(const Matrix& features) {
  if (features.rows() == 0) throw InvalidArgument("feature_std: no rows");
  const Vector mean = features.colwise().mean().transpose();
  const Matrix centered = features.rowwise() - mean.transpose();
  return (centered.array().square().colwise().sum() / static_cast<double>(features.rows()))
      .sqrt()
      .matrix()
      .transpose();
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw NumericError("cannot format number");
  return std::string(buf, ptr);
}

LabeledDataset LoadCsv(const std::filesystem::path& path, std::size_t num_classes) {
  ParsedCsv parsed = ParseCsv(path, num_classes, /*need_label=*/true);
  LabeledDataset data;
  data.features = std::move(parsed.features);
  data.labels = std::move(parsed.labels);
  data.num_classes = num_classes;
  data.provenance.generator = "csv:" + path.string();
  return data;
}

void SaveCsv(const LabeledDataset& data, const std::filesystem::path& path) {
  data.Validate();
  std::string out = FeatureHeader(data.features.cols()) + ",label\n";
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.features.cols(); ++j) {
      out += FormatDouble(data.features(i, j));
      out += ',';
    }
    out += std::to_string(data.labels[static_cast<std::size_t>(i)]);
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

Matrix LoadFeatureCsv(const std::filesystem::path& path) {
  return ParseCsv(path, 0, /*need_label=*/false).features;
}

void SaveFeatureCsv(const Matrix& features, const std::filesystem::path& path) {
  if (features.rows() == 0 || features.cols() == 0) throw DataError("no features to write");
  std::string out = FeatureHeader(features.cols()) + "\n";
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      if (j > 0) out += ',';
      out += FormatDouble(features(i, j));
    }
    out += '\n';
  }
  WriteFileAtomic(path, out);
}

}  // namespace confnet
