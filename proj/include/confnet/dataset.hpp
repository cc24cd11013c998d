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

// Synthetic datasets and CSV ingestion.
//
// Dataset CSV layout: header `x1,...,xd,label`, one sample per row, doubles in
// shortest round-trip form. Feature-only CSVs (noise sets, grids) omit the
// label column.

#ifndef CONFNET_DATASET_HPP_
#define CONFNET_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "confnet/network.hpp"

namespace confnet {

struct Provenance {
  std::string generator;  // "xor", "csv", ...
  std::uint64_t seed = 0;
  double noise = 0.0;
  // Labels before noise was applied; empty when unknown (e.g. loaded from CSV).
  std::vector<int> clean_labels;
};

struct LabeledDataset {
  Matrix features;  // n x d, row per sample
  std::vector<int> labels;
  std::size_t num_classes = 2;
  Provenance provenance;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(features.cols()); }
  Vector sample(std::size_t i) const {
    return features.row(static_cast<Eigen::Index>(i)).transpose();
  }

  // Throws DataError on empty data, shape mismatch, non-finite entries or an
  // out-of-range label.
  void Validate() const;
};

struct GridSpec {
  std::vector<double> min;
  std::vector<double> max;
  std::vector<std::size_t> resolution;
};

enum class NoiseKind { kUniform, kGaussian };

// Points uniform on [-1,1]^2 labelled by the XOR of coordinate signs
// (quadrants I and III -> 0, II and IV -> 1, with sign(0) = +). Each label is
// then flipped independently with probability `noise`.
LabeledDataset GenXor(std::size_t n, double noise, std::uint64_t seed);

// Row-major lattice spanning the bounds inclusively; the last axis varies
// fastest.
Matrix GenGrid(const GridSpec& spec);

// Uniform: iid U[0,1]. Gaussian: iid N(0.5, 1) clipped to [0,1]. When
// lo < hi is given, values are remapped affinely from [0,1] to [lo,hi].
Matrix GenNoiseOod(std::size_t n, NoiseKind kind, std::size_t dim, std::uint64_t seed,
                   double lo = 0.0, double hi = 1.0);

// Uniform samples in [-outer, outer]^dim that fall outside [-inner, inner]^dim
// (rejection sampling).
Matrix GenUniformShell(std::size_t n, std::size_t dim, double inner, double outer,
                       std::uint64_t seed);

// Per-column standard deviation (population form).
Vector FeatureStd(const Matrix& features);

// Shortest representation that parses back to the same double.
std::string FormatDouble(double v);

LabeledDataset LoadCsv(const std::filesystem::path& path, std::size_t num_classes = 2);
void SaveCsv(const LabeledDataset& data, const std::filesystem::path& path);

// Accepts files with or without a trailing `label` column; labels are dropped.
Matrix LoadFeatureCsv(const std::filesystem::path& path);
void SaveFeatureCsv(const Matrix& features, const std::filesystem::path& path);

}  // namespace confnet

#endif  // CONFNET_DATASET_HPP_
