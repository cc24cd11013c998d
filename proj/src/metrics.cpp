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

#include "confnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "confnet/errors.hpp"

namespace confnet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void RequireNonEmpty(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.empty() || b.empty()) {
    throw InvalidArgument(std::string(what) + ": both score lists must be non-empty");
  }
  for (auto list : {a, b}) {
    for (double s : list) {
      if (std::isnan(s)) throw NumericError(std::string(what) + ": NaN score");
    }
  }
}

// One group of tied scores in ascending order.
struct Group {
  double score;
  std::int64_t in = 0;
  std::int64_t out = 0;
};

std::vector<Group> GroupAscending(std::span<const double> in_scores,
                                  std::span<const double> out_scores) {
  std::vector<std::pair<double, bool>> pooled;
  pooled.reserve(in_scores.size() + out_scores.size());
  for (double s : in_scores) pooled.emplace_back(s, true);
  for (double s : out_scores) pooled.emplace_back(s, false);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Group> groups;
  for (const auto& [score, is_in] : pooled) {
    if (groups.empty() || groups.back().score != score) groups.push_back(Group{score});
    (is_in ? groups.back().in : groups.back().out) += 1;
  }
  return groups;
}

double Midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  // Adjacent doubles: stay strictly below hi so hi remains "in".
  return mid < hi ? mid : lo;
}

// Threshold state k flags the first k groups as out. State 0 is delta = -inf
// and state groups.size() is delta = +inf.
double StateDelta(const std::vector<Group>& groups, std::size_t k) {
  if (k == 0) return -kInf;
  if (k == groups.size()) return kInf;
  return Midpoint(groups[k - 1].score, groups[k].score);
}

struct Counts {
  std::int64_t tp;  // in-distribution scored above delta
  std::int64_t fp;  // out-of-distribution scored above delta
};

template <typename Visit>
void SweepStates(const std::vector<Group>& groups, std::int64_t n_in, std::int64_t n_out,
                 Visit&& visit) {
  Counts c{n_in, n_out};
  visit(std::size_t{0}, c);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    c.tp -= groups[k].in;
    c.fp -= groups[k].out;
    visit(k + 1, c);
  }
}

}  // namespace

Detection Detect(double score, double delta) {
  return score <= delta ? Detection::kOut : Detection::kIn;
}

std::vector<double> CandidateThresholds(std::span<const double> in_scores,
                                        std::span<const double> out_scores) {
  const auto groups = GroupAscending(in_scores, out_scores);
  std::vector<double> deltas;
  deltas.reserve(groups.size() + 1);
  for (std::size_t k = 0; k <= groups.size(); ++k) deltas.push_back(StateDelta(groups, k));
  return deltas;
}

double FprAtTpr(std::span<const double> in_scores, std::span<const double> out_scores,
                double level) {
  RequireNonEmpty(in_scores, out_scores, "fpr_at_tpr");
  if (!(level >= 0.0 && level <= 1.0)) throw InvalidArgument("fpr_at_tpr: level must lie in [0, 1]");
  const auto n_in = static_cast<std::int64_t>(in_scores.size());
  const auto n_out = static_cast<std::int64_t>(out_scores.size());
  double best = 1.0;
  SweepStates(GroupAscending(in_scores, out_scores), n_in, n_out,
              [&](std::size_t, const Counts& c) {
                const double tpr = static_cast<double>(c.tp) / static_cast<double>(n_in);
                if (tpr >= level) {
                  best = std::min(best, static_cast<double>(c.fp) / static_cast<double>(n_out));
                }
              });
  return best;
}

Calibration CalibrateThreshold(std::span<const double> in_scores,
                               std::span<const double> out_scores) {
  RequireNonEmpty(in_scores, out_scores, "calibrate_threshold");
  const auto n_in = static_cast<std::int64_t>(in_scores.size());
  const auto n_out = static_cast<std::int64_t>(out_scores.size());
  const auto groups = GroupAscending(in_scores, out_scores);

  // Error numerator over the common denominator 2 * n_in * n_out, compared
  // in integers so equal errors tie exactly.
  std::int64_t best_num = std::numeric_limits<std::int64_t>::max();
  std::size_t best_state = 0;
  SweepStates(groups, n_in, n_out, [&](std::size_t k, const Counts& c) {
    const std::int64_t num = (n_in - c.tp) * n_out + c.fp * n_in;
    if (num <= best_num) {
      best_num = num;
      best_state = k;
    }
  });
  Calibration cal;
  cal.delta = StateDelta(groups, best_state);
  cal.detection_error = 0.5 * static_cast<double>(best_num) /
                        (static_cast<double>(n_in) * static_cast<double>(n_out));
  cal.degenerate = best_state == groups.size();
  return cal;
}

double DetectionError(std::span<const double> in_scores, std::span<const double> out_scores) {
  return CalibrateThreshold(in_scores, out_scores).detection_error;
}

double Auroc(std::span<const double> in_scores, std::span<const double> out_scores) {
  RequireNonEmpty(in_scores, out_scores, "auroc");
  const auto groups = GroupAscending(in_scores, out_scores);
  // Sum of in-distribution midranks (ranks are 1-based).
  double rank_sum = 0.0;
  double next_rank = 1.0;
  for (const Group& g : groups) {
    const double size = static_cast<double>(g.in + g.out);
    const double midrank = next_rank + (size - 1.0) / 2.0;
    rank_sum += midrank * static_cast<double>(g.in);
    next_rank += size;
  }
  const double n_in = static_cast<double>(in_scores.size());
  const double n_out = static_cast<double>(out_scores.size());
  const double u = rank_sum - n_in * (n_in + 1.0) / 2.0;
  return u / (n_in * n_out);
}

double Aupr(std::span<const double> pos_scores, std::span<const double> neg_scores) {
  RequireNonEmpty(pos_scores, neg_scores, "aupr");
  const auto groups = GroupAscending(pos_scores, neg_scores);
  const double n_pos = static_cast<double>(pos_scores.size());
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  double ap = 0.0;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    tp += it->in;
    fp += it->out;
    if (it->in > 0) {
      const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
      ap += (static_cast<double>(it->in) / n_pos) * precision;
    }
  }
  return ap;
}

double AuprIn(std::span<const double> in_scores, std::span<const double> out_scores) {
  return Aupr(in_scores, out_scores);
}

double AuprOut(std::span<const double> in_scores, std::span<const double> out_scores) {
  std::vector<double> neg_out(out_scores.begin(), out_scores.end());
  std::vector<double> neg_in(in_scores.begin(), in_scores.end());
  for (double& s : neg_out) s = -s;
  for (double& s : neg_in) s = -s;
  return Aupr(neg_out, neg_in);
}

Calibration CalibrateThresholdMisclassified(std::span<const EvalRecord> records,
                                            std::span<const double> scores) {
  if (records.size() != scores.size()) {
    throw InvalidArgument("calibrate_misclassified: records and scores differ in length");
  }
  std::vector<double> correct, incorrect;
  for (std::size_t i = 0; i < records.size(); ++i) {
    (records[i].correct ? correct : incorrect).push_back(scores[i]);
  }
  if (correct.empty() || incorrect.empty()) {
    throw DataError("cannot calibrate on misclassified examples: holdout has " +
                    std::to_string(correct.size()) + " correct and " +
                    std::to_string(incorrect.size()) + " incorrect samples");
  }
  return CalibrateThreshold(correct, incorrect);
}

Calibration CalibrateThresholdMisclassified(std::span<const EvalRecord> records) {
  std::vector<double> scores;
  scores.reserve(records.size());
  for (const EvalRecord& r : records) scores.push_back(r.confidence);
  return CalibrateThresholdMisclassified(records, scores);
}

std::string ToString(CalibrationMethod method) {
  switch (method) {
    case CalibrationMethod::kTrueOod: return "true-ood";
    case CalibrationMethod::kMisclassifiedProxy: return "misclassified-proxy";
    case CalibrationMethod::kManual: return "manual";
  }
  return "unknown";
}

CalibrationMethod ParseCalibrationMethod(const std::string& name) {
  if (name == "true-ood") return CalibrationMethod::kTrueOod;
  if (name == "misclassified-proxy") return CalibrationMethod::kMisclassifiedProxy;
  if (name == "manual") return CalibrationMethod::kManual;
  throw InvalidArgument("unknown calibration method \"" + name + "\"");
}

MetricReport MakeMetricReport(std::span<const double> in_scores,
                              std::span<const double> out_scores) {
  MetricReport report;
  report.fpr_at_95_tpr = FprAtTpr(in_scores, out_scores, 0.95);
  report.calibration = CalibrateThreshold(in_scores, out_scores);
  report.detection_error = report.calibration.detection_error;
  report.auroc = Auroc(in_scores, out_scores);
  report.aupr_in = AuprIn(in_scores, out_scores);
  report.aupr_out = AuprOut(in_scores, out_scores);
  return report;
}

}  // namespace confnet
