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
// mug: NUG / MUG / MUG+ scoring and evaluation toolkit.
//
// Exit codes: 0 success, 2 I/O or decode failure, 3 invalid input,
// 4 numeric failure. Machine-readable output goes to files or stdout,
// diagnostics to stderr.

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mug/errors.hpp"
#include "mug/eval.hpp"
#include "mug/image_io.hpp"
#include "mug/metric.hpp"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitNumeric = 4;

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

int default_jobs() {
  if (const char* env = std::getenv("MUG_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs > 0) return jobs;
  }
  return std::max(1, omp_get_max_threads());
}

json result_to_json(const mug::MetricResult& r) {
  return json{{"nug", r.nug},
              {"mug", r.mug},
              {"mug_plus", r.mug_plus},
              {"n_available", r.n_available}};
}

json report_to_json(const mug::CorrelationReport& rep) {
  return json{{"metric", rep.metric},
              {"srcc", rep.srcc},
              {"plcc", rep.plcc},
              {"beta",
               {rep.params.beta1, rep.params.beta2, rep.params.beta3,
                rep.params.beta4, rep.params.beta5}},
              {"rmse", rep.residual_rmse},
              {"n", rep.n}};
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mug::Error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw mug::Error("write failed: " + path);
}

// ---------------------------------------------------------------------------

struct ScoreOptions {
  std::string image_path;
  std::string metric = "all";
  bool as_json = false;
};

int run_score(const ScoreOptions& opt) {
  if (opt.metric != "all") mug::parse_metric(opt.metric);  // validate early
  const mug::RgbImage img = mug::load_image(opt.image_path);
  const mug::MetricResult r = mug::score_image(img);
  if (opt.as_json) {
    std::cout << result_to_json(r).dump() << "\n";
    return kExitOk;
  }
  if (opt.metric == "all") {
    std::cout << "nug " << r.nug << "\n"
              << "mug " << format_double(r.mug) << "\n"
              << "mug_plus " << format_double(r.mug_plus) << "\n"
              << "n_available " << r.n_available << "\n";
    return kExitOk;
  }
  switch (mug::parse_metric(opt.metric)) {
    case mug::Metric::kNug:
      std::cout << r.nug << "\n";
      break;
    case mug::Metric::kMug:
      std::cout << format_double(r.mug) << "\n";
      break;
    case mug::Metric::kMugPlus:
      std::cout << format_double(r.mug_plus) << "\n";
      break;
  }
  return kExitOk;
}

struct BatchOptions {
  std::string manifest_path;
  std::string out_path;
  int jobs = default_jobs();
  bool skip_errors = false;
};

int run_batch(const BatchOptions& opt) {
  const mug::DatasetManifest manifest = mug::load_manifest(opt.manifest_path);
  std::vector<mug::ScoreFailure> failures;
  const mug::ScoreTable table =
      mug::score_dataset(manifest, opt.jobs, opt.skip_errors, &failures);
  mug::write_score_csv(table, opt.out_path);
  for (const mug::ScoreFailure& f : failures) {
    std::cerr << "skipped " << f.path << ": " << f.reason << "\n";
  }
  std::cerr << "scored " << table.rows.size() << " image(s) -> "
            << opt.out_path << "\n";
  return kExitOk;
}

struct EvalOptions {
  std::string scores_path;
  std::string metric = "mug";
  std::string out_path;
  std::string scatter_path;
};

int run_eval(const EvalOptions& opt) {
  const mug::ScoreTable table = mug::load_score_csv(opt.scores_path);
  const mug::Metric metric = mug::parse_metric(opt.metric);
  const mug::CorrelationReport report = mug::evaluate(table, metric);
  const std::string text = report_to_json(report).dump(2) + "\n";
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(opt.out_path, text);
  }
  if (!opt.scatter_path.empty()) {
    std::string csv = "score,mos,fitted\n";
    for (const mug::ScoreRow& row : table.rows) {
      const double score = metric == mug::Metric::kNug ? double(row.nug)
                           : metric == mug::Metric::kMug ? row.mug
                                                         : row.mug_plus;
      csv += format_double(score) + "," + format_double(row.mos) + "," +
             format_double(mug::logistic_eval(report.params, score)) + "\n";
    }
    write_text_file(opt.scatter_path, csv);
  }
  return kExitOk;
}

struct MisalignOptions {
  std::string manifest_path;
  int k = 1;
  std::string metric = "mug";
  std::string out_path;
  int jobs = default_jobs();
};

int run_misalign(const MisalignOptions& opt) {
  const mug::DatasetManifest manifest = mug::load_manifest(opt.manifest_path);
  const mug::MisalignmentResult res = mug::misalignment_experiment(
      manifest, opt.k, mug::parse_metric(opt.metric), opt.jobs);
  const json out{{"k", opt.k},
                 {"metric", mug::metric_name(mug::parse_metric(opt.metric))},
                 {"aligned", report_to_json(res.aligned)},
                 {"cropped", report_to_json(res.cropped)},
                 {"max_abs_score_delta", res.max_abs_score_delta}};
  const std::string text = out.dump(2) + "\n";
  if (opt.out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file(opt.out_path, text);
  }
  return kExitOk;
}

struct LadderOptions {
  std::string input_path;
  std::vector<int> qualities = {90, 70, 50, 30, 10};
  std::string out_dir;
};

int run_ladder(const LadderOptions& opt) {
  const mug::RgbImage src = mug::load_image(opt.input_path);
  const mug::LadderResult ladder = mug::jpeg_ladder(src, opt.qualities);
  std::filesystem::create_directories(opt.out_dir);
  json rungs = json::array();
  for (std::size_t i = 0; i < ladder.qualities.size(); ++i) {
    const std::string name = "q" + std::to_string(ladder.qualities[i]) + ".jpg";
    mug::save_bytes((std::filesystem::path(opt.out_dir) / name).string(),
                    ladder.images[i].bytes);
    json rung = result_to_json(ladder.results[i]);
    rung["quality"] = ladder.qualities[i];
    rung["file"] = name;
    rungs.push_back(rung);
  }
  auto srcc_or_null = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  const json out{{"qualities", ladder.qualities},
                 {"rungs", rungs},
                 {"srcc_vs_quality",
                  {{"nug", srcc_or_null(ladder.nug_srcc)},
                   {"mug", srcc_or_null(ladder.mug_srcc)},
                   {"mug_plus", srcc_or_null(ladder.mug_plus_srcc)}}}};
  write_text_file(
      (std::filesystem::path(opt.out_dir) / "ladder.json").string(),
      out.dump(2) + "\n");
  std::cerr << "wrote " << ladder.qualities.size() << " rungs to "
            << opt.out_dir << "\n";
  return kExitOk;
}

struct BenchOptions {
  int width = 1920;
  int height = 1080;
  int iters = 50;
  std::string metric = "mug+";
  int threads = 1;
  bool as_json = false;
};

int run_bench(const BenchOptions& opt) {
  if (opt.iters < 1) throw mug::DegenerateInput("iterations must be positive");
  mug::parse_metric(opt.metric == "all" ? "mug" : opt.metric);  // validate
  omp_set_num_threads(std::max(1, opt.threads));
  // Uniform noise maximizes the unique-value count, so this is the
  // conservative end of the throughput range.
  std::mt19937 rng(0x6D7567);
  std::uniform_int_distribution<int> byte(0, 255);
  mug::RgbImage img(opt.width, opt.height);
  for (auto& p : img.pixels) {
    p = {std::uint8_t(byte(rng)), std::uint8_t(byte(rng)),
         std::uint8_t(byte(rng))};
  }
  mug::MetricResult result = mug::score_image(img);  // warm-up, untimed
  std::vector<double> samples_ms(opt.iters);
  for (int i = 0; i < opt.iters; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    result = mug::score_image(img);
    const auto t1 = std::chrono::steady_clock::now();
    samples_ms[i] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  double mean_ms = 0.0;
  for (const double s : samples_ms) mean_ms += s;
  mean_ms /= double(opt.iters);
  std::vector<double> sorted = samples_ms;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t p95_index =
      std::size_t(std::ceil(0.95 * double(opt.iters))) - 1;
  const double p95_ms = sorted[p95_index];
  const double megapixels = double(opt.width) * opt.height / 1e6;
  const double mp_per_s = megapixels / (mean_ms / 1000.0);

  if (opt.as_json) {
    const json out{{"width", opt.width},
                   {"height", opt.height},
                   {"iterations", opt.iters},
                   {"metric", opt.metric},
                   {"threads", std::max(1, opt.threads)},
                   {"mean_ms", mean_ms},
                   {"p95_ms", p95_ms},
                   {"megapixels_per_second", mp_per_s},
                   {"result", result_to_json(result)}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "image " << opt.width << "x" << opt.height << ", "
              << opt.iters << " iteration(s), " << std::max(1, opt.threads)
              << " thread(s)\n"
              << "mean " << format_double(mean_ms) << " ms, p95 "
              << format_double(p95_ms) << " ms, "
              << format_double(mp_per_s) << " MP/s\n"
              << "scores: nug=" << result.nug
              << " mug=" << format_double(result.mug)
              << " mug_plus=" << format_double(result.mug_plus) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NUG / MUG / MUG+ no-reference JPEG quality metrics"};
  app.require_subcommand(1);

  ScoreOptions score_opt;
  CLI::App* score = app.add_subcommand("score", "score a single image");
  score->add_option("image", score_opt.image_path, "image file")->required();
  score->add_option("--metric", score_opt.metric,
                    "nug, mug, mug+ or all (default all)");
  score->add_flag("--json", score_opt.as_json, "emit a JSON object");

  BatchOptions batch_opt;
  CLI::App* batch = app.add_subcommand("batch", "score a dataset manifest");
  batch->add_option("--manifest", batch_opt.manifest_path, "path,mos[,group] CSV")
      ->required();
  batch->add_option("--out", batch_opt.out_path, "output score CSV")
      ->required();
  batch->add_option("--jobs", batch_opt.jobs,
                    "worker count (default: MUG_JOBS or all cores)");
  batch->add_flag("--skip-errors", batch_opt.skip_errors,
                  "drop unreadable images instead of failing");

  EvalOptions eval_opt;
  CLI::App* eval = app.add_subcommand("eval", "correlation report for a score CSV");
  eval->add_option("--scores", eval_opt.scores_path, "score CSV from batch")
      ->required();
  eval->add_option("--metric", eval_opt.metric, "nug, mug or mug+");
  eval->add_option("--out", eval_opt.out_path,
                   "report JSON path (default: stdout)");
  eval->add_option("--scatter", eval_opt.scatter_path,
                   "optional score,mos,fitted CSV");

  MisalignOptions mis_opt;
  CLI::App* misalign =
      app.add_subcommand("misalign", "border-crop robustness experiment");
  misalign->add_option("--manifest", mis_opt.manifest_path, "manifest CSV")
      ->required();
  misalign->add_option("--k", mis_opt.k, "border width in pixels (default 1)");
  misalign->add_option("--metric", mis_opt.metric, "nug, mug or mug+");
  misalign->add_option("--out", mis_opt.out_path,
                       "report JSON path (default: stdout)");
  misalign->add_option("--jobs", mis_opt.jobs, "worker count");

  LadderOptions ladder_opt;
  CLI::App* ladder =
      app.add_subcommand("ladder", "re-encode one image along a quality ladder");
  ladder->add_option("--input", ladder_opt.input_path, "source image")
      ->required();
  ladder->add_option("--qualities", ladder_opt.qualities,
                     "strictly decreasing JPEG qualities (default 90,70,50,30,10)")
      ->delimiter(',');
  ladder->add_option("--out", ladder_opt.out_dir, "output directory")
      ->required();

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "scoring throughput benchmark");
  bench->add_option("--width", bench_opt.width, "image width (default 1920)");
  bench->add_option("--height", bench_opt.height, "image height (default 1080)");
  bench->add_option("--iters", bench_opt.iters, "iterations (default 50)");
  bench->add_option("--metric", bench_opt.metric, "reported metric");
  bench->add_option("--threads", bench_opt.threads,
                    "OpenMP threads (default 1)");
  bench->add_flag("--json", bench_opt.as_json, "emit a JSON object");

  CLI11_PARSE(app, argc, argv);

  try {
    if (score->parsed()) return run_score(score_opt);
    if (batch->parsed()) return run_batch(batch_opt);
    if (eval->parsed()) return run_eval(eval_opt);
    if (misalign->parsed()) return run_misalign(mis_opt);
    if (ladder->parsed()) return run_ladder(ladder_opt);
    if (bench->parsed()) return run_bench(bench_opt);
  } catch (const mug::FitDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const mug::ImageTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const mug::CropTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const mug::InvalidGeometry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const mug::QualityOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const mug::GroupTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const mug::DegenerateInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const mug::Error& e) {
    // decode failures, parse errors, missing files, write failures
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
