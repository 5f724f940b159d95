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

#include "mug/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "mug/errors.hpp"
#include "mug/stats.hpp"

namespace mug {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& token, const std::string& where) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(where + ": expected a finite number, got '" + token + "'");
  }
  return value;
}

std::int64_t parse_int(const std::string& token, const std::string& where) {
  std::int64_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(where + ": expected an integer, got '" + token + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Iterates non-comment CSV lines with their 1-based physical line numbers.
template <typename Fn>
void for_each_csv_line(const std::string& text, Fn&& fn) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    fn(lineno, t);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

double metric_value(const ScoreRow& row, Metric metric) {
  switch (metric) {
    case Metric::kNug:
      return static_cast<double>(row.nug);
    case Metric::kMug:
      return row.mug;
    case Metric::kMugPlus:
      return row.mug_plus;
  }
  return 0.0;
}

std::string resolve_path(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (base_dir.empty() || p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

std::optional<double> srcc_or_degenerate(std::span<const double> x,
                                         std::span<const double> y) {
  try {
    return srcc(x, y);
  } catch (const DegenerateInput&) {
    return std::nullopt;
  }
}

}  // namespace

std::string metric_name(Metric metric) {
  switch (metric) {
    case Metric::kNug:
      return "nug";
    case Metric::kMug:
      return "mug";
    case Metric::kMugPlus:
      return "mug_plus";
  }
  return "?";
}

Metric parse_metric(const std::string& name) {
  if (name == "nug") return Metric::kNug;
  if (name == "mug") return Metric::kMug;
  if (name == "mug+" || name == "mug_plus") return Metric::kMugPlus;
  throw DegenerateInput("unknown metric '" + name +
                        "' (expected nug, mug, or mug+)");
}

DatasetManifest parse_manifest(const std::string& text,
                               const std::string& source_name) {
  DatasetManifest manifest;
  bool header_seen = false;
  bool has_group = false;
  for_each_csv_line(text, [&](int lineno, const std::string& line) {
    const std::string where = source_name + ":" + std::to_string(lineno);
    const std::vector<std::string> fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() < 2 || fields.size() > 3 || fields[0] != "path" ||
          fields[1] != "mos" || (fields.size() == 3 && fields[2] != "group")) {
        throw ParseError(where + ": expected header 'path,mos[,group]'");
      }
      has_group = fields.size() == 3;
      header_seen = true;
      return;
    }
    if (fields.size() != (has_group ? 3u : 2u)) {
      throw ParseError(where + ": expected " +
                       std::to_string(has_group ? 3 : 2) + " fields, got " +
                       std::to_string(fields.size()));
    }
    if (fields[0].empty()) throw ParseError(where + ": empty path");
    ManifestRecord record;
    record.image_path = fields[0];
    record.mos = parse_double(fields[1], where);
    if (has_group && !fields[2].empty()) record.group_id = fields[2];
    manifest.records.push_back(std::move(record));
  });
  if (!header_seen) {
    throw ParseError(source_name + ": missing 'path,mos[,group]' header");
  }
  std::unordered_set<std::string> seen;
  for (const ManifestRecord& record : manifest.records) {
    if (!seen.insert(record.image_path).second) {
      throw DuplicatePath(source_name + ": duplicate path '" +
                          record.image_path + "'");
    }
  }
  return manifest;
}

DatasetManifest load_manifest(const std::string& path) {
  DatasetManifest manifest = parse_manifest(read_file(path), path);
  manifest.base_dir = std::filesystem::path(path).parent_path().string();
  return manifest;
}

ScoreTable score_dataset(const DatasetManifest& manifest, int parallelism,
                         bool skip_errors,
                         std::vector<ScoreFailure>* failures) {
  if (parallelism < 1) throw Error("parallelism must be positive");
  const std::int64_t n = static_cast<std::int64_t>(manifest.records.size());
  std::vector<ScoreRow> rows(n);
  std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(parallelism) \
    if (parallelism > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const ManifestRecord& record = manifest.records[i];
    try {
      const RgbImage img =
          load_image(resolve_path(manifest.base_dir, record.image_path));
      const MetricResult result = score_image(img);
      rows[i] = {record.image_path, result.nug,     result.mug,
                 result.mug_plus,   record.mos,     record.group_id};
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  ScoreTable table;
  std::vector<ScoreFailure> failed;
  for (std::int64_t i = 0; i < n; ++i) {
    if (errors[i].empty()) {
      table.rows.push_back(std::move(rows[i]));
    } else {
      failed.push_back({manifest.records[i].image_path, errors[i]});
    }
  }
  if (!failed.empty() && !skip_errors) {
    std::string message = "failed to score " + std::to_string(failed.size()) +
                          " image(s):";
    for (const ScoreFailure& f : failed) {
      message += "\n  " + f.path + ": " + f.reason;
    }
    throw Error(message);
  }
  if (failures) *failures = std::move(failed);
  return table;
}

std::string score_table_to_csv(const ScoreTable& table) {
  const bool has_group =
      std::any_of(table.rows.begin(), table.rows.end(),
                  [](const ScoreRow& r) { return r.group_id.has_value(); });
  std::string out = has_group ? "path,nug,mug,mug_plus,mos,group\n"
                              : "path,nug,mug,mug_plus,mos\n";
  for (const ScoreRow& row : table.rows) {
    out += row.image_path;
    out += ',';
    out += std::to_string(row.nug);
    out += ',';
    out += format_double(row.mug);
    out += ',';
    out += format_double(row.mug_plus);
    out += ',';
    out += format_double(row.mos);
    if (has_group) {
      out += ',';
      if (row.group_id) out += *row.group_id;
    }
    out += '\n';
  }
  return out;
}

void write_score_csv(const ScoreTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << score_table_to_csv(table);
  if (!out) throw Error("write failed: " + path);
}

ScoreTable parse_score_csv(const std::string& text,
                           const std::string& source_name) {
  ScoreTable table;
  bool header_seen = false;
  bool has_group = false;
  for_each_csv_line(text, [&](int lineno, const std::string& line) {
    const std::string where = source_name + ":" + std::to_string(lineno);
    const std::vector<std::string> fields = split_csv_line(line);
    if (!header_seen) {
      if ((fields.size() != 5 && fields.size() != 6) || fields[0] != "path" ||
          fields[1] != "nug" || fields[2] != "mug" ||
          fields[3] != "mug_plus" || fields[4] != "mos" ||
          (fields.size() == 6 && fields[5] != "group")) {
        throw ParseError(where +
                         ": expected header 'path,nug,mug,mug_plus,mos[,group]'");
      }
      has_group = fields.size() == 6;
      header_seen = true;
      return;
    }
    if (fields.size() != (has_group ? 6u : 5u)) {
      throw ParseError(where + ": wrong field count");
    }
    ScoreRow row;
    row.image_path = fields[0];
    row.nug = parse_int(fields[1], where);
    row.mug = parse_double(fields[2], where);
    row.mug_plus = parse_double(fields[3], where);
    row.mos = parse_double(fields[4], where);
    if (has_group && !fields[5].empty()) row.group_id = fields[5];
    table.rows.push_back(std::move(row));
  });
  if (!header_seen) {
    throw ParseError(source_name + ": missing score-table header");
  }
  return table;
}

ScoreTable load_score_csv(const std::string& path) {
  return parse_score_csv(read_file(path), path);
}

CorrelationReport evaluate(const ScoreTable& table, Metric metric) {
  if (table.rows.empty()) throw DegenerateInput("empty score table");
  std::vector<double> scores;
  std::vector<double> mos;
  scores.reserve(table.rows.size());
  mos.reserve(table.rows.size());
  for (const ScoreRow& row : table.rows) {
    scores.push_back(metric_value(row, metric));
    mos.push_back(row.mos);
  }
  CorrelationReport report;
  report.metric = metric_name(metric);
  report.n = table.rows.size();
  report.srcc = srcc(scores, mos);
  report.params = fit_logistic(scores, mos);
  std::vector<double> mapped(scores.size());
  double sse = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    mapped[i] = logistic_eval(report.params, scores[i]);
    const double d = mapped[i] - mos[i];
    sse += d * d;
  }
  report.plcc = plcc(mapped, mos);
  report.residual_rmse = std::sqrt(sse / double(scores.size()));
  return report;
}

std::vector<GroupCorrelation> per_group_srcc(const ScoreTable& table,
                                             Metric metric) {
  std::vector<GroupCorrelation> out;
  std::vector<std::string> order;
  for (const ScoreRow& row : table.rows) {
    if (!row.group_id) {
      throw DegenerateInput("row '" + row.image_path + "' has no group id");
    }
    if (std::find(order.begin(), order.end(), *row.group_id) == order.end()) {
      order.push_back(*row.group_id);
    }
  }
  for (const std::string& group : order) {
    std::vector<double> scores;
    std::vector<double> mos;
    for (const ScoreRow& row : table.rows) {
      if (*row.group_id == group) {
        scores.push_back(metric_value(row, metric));
        mos.push_back(row.mos);
      }
    }
    if (scores.size() < 2) {
      throw GroupTooSmall("group '" + group + "' has " +
                          std::to_string(scores.size()) +
                          " row(s); need at least 2");
    }
    out.push_back({group, srcc(scores, mos)});
  }
  return out;
}

MisalignmentResult misalignment_experiment(const DatasetManifest& manifest,
                                           int k, Metric metric,
                                           int parallelism) {
  if (parallelism < 1) throw Error("parallelism must be positive");
  const std::int64_t n = static_cast<std::int64_t>(manifest.records.size());
  std::vector<ScoreRow> aligned_rows(n);
  std::vector<ScoreRow> cropped_rows(n);
  std::vector<std::string> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(parallelism) \
    if (parallelism > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const ManifestRecord& record = manifest.records[i];
    try {
      const RgbImage img =
          load_image(resolve_path(manifest.base_dir, record.image_path));
      const MetricResult full = score_image(img);
      const MetricResult cut = score_image(crop_border(img, k));
      aligned_rows[i] = {record.image_path, full.nug,  full.mug,
                         full.mug_plus,     record.mos, record.group_id};
      cropped_rows[i] = {record.image_path, cut.nug,  cut.mug,
                         cut.mug_plus,      record.mos, record.group_id};
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      throw Error("misalignment experiment failed on '" +
                  manifest.records[i].image_path + "': " + errors[i]);
    }
  }
  ScoreTable aligned{std::move(aligned_rows)};
  ScoreTable cropped{std::move(cropped_rows)};
  MisalignmentResult result;
  result.aligned = evaluate(aligned, metric);
  result.cropped = evaluate(cropped, metric);
  result.max_abs_score_delta = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double delta = std::abs(metric_value(aligned.rows[i], metric) -
                                  metric_value(cropped.rows[i], metric));
    result.max_abs_score_delta = std::max(result.max_abs_score_delta, delta);
  }
  return result;
}

LadderResult jpeg_ladder(const RgbImage& src, std::span<const int> qualities) {
  if (qualities.size() < 2) {
    throw DegenerateInput("ladder needs at least 2 quality factors");
  }
  for (std::size_t i = 1; i < qualities.size(); ++i) {
    if (qualities[i] >= qualities[i - 1]) {
      throw DegenerateInput("ladder qualities must be strictly decreasing");
    }
  }
  LadderResult out;
  out.qualities.assign(qualities.begin(), qualities.end());
  std::vector<double> quality_values;
  std::vector<double> nug_scores, mug_scores, mug_plus_scores;
  for (const int q : qualities) {
    EncodedImage encoded = encode_jpeg(src, q);
    const MetricResult result = score_image(decode(encoded));
    out.images.push_back(std::move(encoded));
    out.results.push_back(result);
    quality_values.push_back(double(q));
    nug_scores.push_back(double(result.nug));
    mug_scores.push_back(result.mug);
    mug_plus_scores.push_back(result.mug_plus);
  }
  out.nug_srcc = srcc_or_degenerate(nug_scores, quality_values);
  out.mug_srcc = srcc_or_degenerate(mug_scores, quality_values);
  out.mug_plus_srcc = srcc_or_degenerate(mug_plus_scores, quality_values);
  return out;
}

}  // namespace mug
