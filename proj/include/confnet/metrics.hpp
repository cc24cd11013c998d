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

// Out-of-distribution detection metrics and threshold calibration.
//
// Conventions shared by every function here:
//  * Higher score means "more in-distribution". In-distribution samples are
//    the positive class unless stated otherwise.
//  * A sample is flagged out-of-distribution iff score <= delta.
//  * Candidate thresholds are -inf, the midpoints between adjacent distinct
//    pooled scores, and +inf. Every partition a threshold can induce is
//    reached by exactly one candidate, so minimisation over them is exact.

#ifndef CONFNET_METRICS_HPP_
#define CONFNET_METRICS_HPP_

#include <span>
#include <string>
#include <vector>

#include "confnet/trainer.hpp"

namespace confnet {

enum class Detection { kIn, kOut };

Detection Detect(double score, double delta);

std::vector<double> CandidateThresholds(std::span<const double> in_scores,
                                        std::span<const double> out_scores);

// Minimum FPR over thresholds with TPR >= level. No ROC interpolation.
double FprAtTpr(std::span<const double> in_scores, std::span<const double> out_scores,
                double level = 0.95);

// min over delta of 0.5 * P_in(score <= delta) + 0.5 * P_out(score > delta).
double DetectionError(std::span<const double> in_scores, std::span<const double> out_scores);

// Mann-Whitney statistic with half credit for ties.
double Auroc(std::span<const double> in_scores, std::span<const double> out_scores);

// Step-wise average precision. Tied scores enter the ranking together.
double Aupr(std::span<const double> pos_scores, std::span<const double> neg_scores);
double AuprIn(std::span<const double> in_scores, std::span<const double> out_scores);
// Out-of-distribution samples as the positive class, scores negated.
double AuprOut(std::span<const double> in_scores, std::span<const double> out_scores);

struct Calibration {
  double delta = 0.0;
  double detection_error = 0.5;
  // True when no threshold beats the constant detector (delta is +inf).
  bool degenerate = false;
};

// Candidate threshold with minimum detection error; ties go to the larger
// delta.
Calibration CalibrateThreshold(std::span<const double> in_scores,
                               std::span<const double> out_scores);

// Correctly classified holdout samples play the in-distribution role and the
// misclassified ones the out-of-distribution role. Scores are taken from
// `scores`, parallel to `records`. Throws DataError when either group is
// empty.
Calibration CalibrateThresholdMisclassified(std::span<const EvalRecord> records,
                                            std::span<const double> scores);
// Same, using each record's learned confidence as its score.
Calibration CalibrateThresholdMisclassified(std::span<const EvalRecord> records);

enum class CalibrationMethod { kTrueOod, kMisclassifiedProxy, kManual };

std::string ToString(CalibrationMethod method);
CalibrationMethod ParseCalibrationMethod(const std::string& name);

struct MetricReport {
  double fpr_at_95_tpr = 0.0;
  double detection_error = 0.0;
  double auroc = 0.0;
  double aupr_in = 0.0;
  double aupr_out = 0.0;
  Calibration calibration;
};

MetricReport MakeMetricReport(std::span<const double> in_scores,
                              std::span<const double> out_scores);

}  // namespace confnet

#endif  // CONFNET_METRICS_HPP_
