// Copyright 2026 The MUG Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Batch scoring and the correlation protocol: manifest-driven dataset
// scoring, logistic-mapped PLCC / rank SRCC reports, the border-crop
// misalignment experiment, and compression-ladder monotonicity checks.

#ifndef MUG_EVAL_HPP_
#define MUG_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mug/image.hpp"
#include "mug/image_io.hpp"
#include "mug/logistic.hpp"
#include "mug/metric.hpp"

namespace mug {

enum class Metric { kNug, kMug, kMugPlus };

// Canonical lowercase name: "nug", "mug", "mug_plus".
std::string metric_name(Metric metric);

// Accepts the canonical names plus "mug+". Throws DegenerateInput.
Metric parse_metric(const std::string& name);

struct ManifestRecord {
  std::string image_path;
  double mos = 0.0;
  std::optional<std::string> group_id;
};

// Parsed `path,mos[,group]` CSV. Relative image paths are resolved against
// the directory containing the manifest file.
struct DatasetManifest {
  std::vector<ManifestRecord> records;
  std::string base_dir;
};

// Throws ParseError (with file:line) or DuplicatePath.
DatasetManifest load_manifest(const std::string& path);
DatasetManifest parse_manifest(const std::string& text,
                               const std::string& source_name);

struct ScoreRow {
  std::string image_path;
  std::int64_t nug = 0;
  double mug = 0.0;
  double mug_plus = 0.0;
  double mos = 0.0;
  std::optional<std::string> group_id;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;
};

struct ScoreFailure {
  std::string path;
  std::string reason;
};

// Scores every manifest record, distributing images over `parallelism`
// workers. Rows are assembled in manifest order, so the output is
// bit-identical at any worker count. By default any unreadable image fails
// the whole run (the error lists every offending path); with skip_errors
// the bad rows are dropped and reported through `failures`.
ScoreTable score_dataset(const DatasetManifest& manifest, int parallelism,
                         bool skip_errors = false,
                         std::vector<ScoreFailure>* failures = nullptr);

// `path,nug,mug,mug_plus,mos[,group]`, shortest round-trip decimals.
std::string score_table_to_csv(const ScoreTable& table);
void write_score_csv(const ScoreTable& table, const std::string& path);
ScoreTable load_score_csv(const std::string& path);
ScoreTable parse_score_csv(const std::string& text,
                           const std::string& source_name);

struct CorrelationReport {
  std::string metric;
  double srcc = 0.0;
  double plcc = 0.0;
  LogisticParams params;
  double residual_rmse = 0.0;
  std::size_t n = 0;
};

// SRCC on raw scores vs MOS; PLCC on logistic-mapped scores vs MOS.
CorrelationReport evaluate(const ScoreTable& table, Metric metric);

struct GroupCorrelation {
  std::string group_id;
  double srcc = 0.0;
};

// SRCC within each group independently, in first-appearance order.
// Throws GroupTooSmall for any group with fewer than 2 rows.
std::vector<GroupCorrelation> per_group_srcc(const ScoreTable& table,
                                             Metric metric);

struct MisalignmentResult {
  CorrelationReport aligned;
  CorrelationReport cropped;
  double max_abs_score_delta = 0.0;
};

// Scores every image as-is and after crop_border(., k) against the same
// MOS column. The largest per-image score change refers to the chosen
// metric.
MisalignmentResult misalignment_experiment(const DatasetManifest& manifest,
                                           int k, Metric metric,
                                           int parallelism = 1);

struct LadderResult {
  std::vector<int> qualities;
  std::vector<EncodedImage> images;
  std::vector<MetricResult> results;
  // SRCC of each metric against the quality factor; empty when the scores
  // are constant (degenerate source image).
  std::optional<double> nug_srcc;
  std::optional<double> mug_srcc;
  std::optional<double> mug_plus_srcc;
};

// Re-encodes one source at each quality factor and scores the decoded
// rungs. Qualities must be strictly decreasing with at least 2 entries.
LadderResult jpeg_ladder(const RgbImage& src, std::span<const int> qualities);

}  // namespace mug

#endif  // MUG_EVAL_HPP_
