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
// Acceptance suite. Runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion; exits nonzero if any required
// criterion fails. Criterion 11 needs a user-supplied dataset manifest
// (MUG_LIVE_MANIFEST) and reports SKIP when absent.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mug/errors.hpp"
#include "mug/eval.hpp"
#include "mug/image_io.hpp"
#include "mug/logistic.hpp"
#include "mug/metric.hpp"
#include "mug/serial.hpp"
#include "mug/stats.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace mug;
using mug::testing::brute_force_pearson;
using mug::testing::brute_force_spearman;
using mug::testing::constant_image;
using mug::testing::photo_fixture;
using mug::testing::random_luminance;
using mug::testing::random_rgb;

namespace {

enum class Outcome { kPass, kFail, kSkip };

struct CriterionCheck {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& message) {
    if (!condition) {
      ok = false;
      if (!detail.str().empty()) detail << "; ";
      detail << message;
    }
  }

  void note(const std::string& message) {
    if (!detail.str().empty()) detail << "; ";
    detail << message;
  }
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Five ladders of photograph-like fixtures at mixed (some odd) sizes.
struct Ladder {
  std::string name;
  std::vector<int> qualities;
  std::vector<MetricResult> results;          // decoded rungs, as-is
  std::vector<MetricResult> cropped_results;  // after 1 px border crop
};

const std::vector<Ladder>& fixture_ladders() {
  static const std::vector<Ladder> ladders = [] {
    const std::vector<std::pair<int, int>> sizes = {
        {512, 384}, {384, 512}, {448, 448}, {401, 299}, {512, 512}, {333, 257}};
    const std::vector<int> qualities = {90, 70, 50, 30, 10};
    std::vector<Ladder> out;
    for (int id = 0; id < int(sizes.size()); ++id) {
      Ladder ladder;
      ladder.name = "fixture" + std::to_string(id) + " (" +
                    std::to_string(sizes[id].first) + "x" +
                    std::to_string(sizes[id].second) + ")";
      ladder.qualities = qualities;
      const RgbImage src =
          photo_fixture(id, sizes[id].first, sizes[id].second);
      for (const int q : qualities) {
        const RgbImage rung = decode(encode_jpeg(src, q));
        ladder.results.push_back(score_image(rung));
        ladder.cropped_results.push_back(score_image(crop_border(rung, 1)));
      }
      out.push_back(std::move(ladder));
    }
    return out;
  }();
  return ladders;
}

std::vector<std::size_t> rank_order(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] < scores[b];
                   });
  return order;
}

// --------------------------------------------------------------------------

void criterion_1_degenerate(CriterionCheck& check) {
  const auto t0 = std::chrono::steady_clock::now();
  const MetricResult r = score_image(constant_image(64, 64, 123));
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  check.require(r.nug == 1, "nug != 1");
  check.require(r.mug == 0.0, "mug != 0");
  check.require(r.mug_plus == 0.0, "mug_plus != 0");
  check.require(ms < 1000.0, "took " + fmt(ms) + " ms");
  check.note("nug=1 mug=0 mug_plus=0 in " + fmt(ms) + " ms");
}

void criterion_2_oracle(CriterionCheck& check) {
  int gradient_mismatches = 0;
  int spectrum_mismatches = 0;
  for (std::uint32_t seed = 0; seed < 200; ++seed) {
    // half arbitrary real-valued planes, half 8-bit color derived
    const LuminanceImage img =
        (seed % 2 == 0) ? random_luminance(8, 8, seed)
                        : rgb_to_luminance(random_rgb(8, 8, seed));
    const GradientField fast = scharr_gradients(img);
    const GradientField ref = serial::scharr_gradients(img);
    if (fast.gx != ref.gx || fast.gy != ref.gy ||
        fast.magnitude != ref.magnitude) {
      ++gradient_mismatches;
    }
    if (unique_gradient_spectrum(fast).values !=
        serial::unique_gradient_spectrum(ref).values) {
      ++spectrum_mismatches;
    }
  }
  check.require(gradient_mismatches == 0,
                std::to_string(gradient_mismatches) + " gradient mismatches");
  check.require(spectrum_mismatches == 0,
                std::to_string(spectrum_mismatches) + " spectrum mismatches");
  check.note("200 images bit-exact");
}

void criterion_3_divisor(CriterionCheck& check) {
  std::vector<MetricResult> fixtures;
  // random images across sizes
  for (std::uint32_t seed = 0; seed < 60; ++seed) {
    fixtures.push_back(score_image(random_rgb(6 + seed % 13, 5 + seed % 7, seed)));
  }
  // structured fixtures: textured photos, ramps with plateaus, step grids
  for (int id = 0; id < 30; ++id) {
    fixtures.push_back(score_image(photo_fixture(100 + id, 40, 28)));
  }
  for (int id = 0; id < 15; ++id) {
    LuminanceImage ramp(24, 24);
    for (int y = 0; y < 24; ++y) {
      for (int x = 0; x < 24; ++x) {
        ramp.at(x, y) = double((x * (id + 1)) % 97) + (y % 3 == 0 ? 31.5 : 0.0);
      }
    }
    fixtures.push_back(score_image(ramp));
  }
  int with_positive_mug = 0;
  int failures = 0;
  for (const MetricResult& r : fixtures) {
    if (r.mug <= 0.0) continue;
    ++with_positive_mug;
    const int divisor = kSpectrumDepth - r.n_available + 1;
    const double ratio = r.mug / r.mug_plus;
    if (!(ratio == double(divisor) && divisor >= 1 &&
          divisor <= kSpectrumDepth)) {
      ++failures;
    }
  }
  check.require(with_positive_mug >= 100,
                "only " + std::to_string(with_positive_mug) +
                    " fixtures with mug > 0");
  check.require(failures == 0, std::to_string(failures) + " ratio failures");
  check.note(std::to_string(with_positive_mug) +
             " fixtures, ratio exactly M-N+1 on all");
}

void criterion_4_homogeneity(CriterionCheck& check) {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> value(1e-3, 4096.0);
  std::uniform_int_distribution<int> count(2, 800);
  int checked = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> vals;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) vals.push_back(value(rng));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    UniqueGradientSpectrum spec;
    spec.values = vals;
    const double base = mug_score(spec);
    if (base <= 0.0) continue;
    for (const double c : {0.25, 4.0, 100.0}) {
      UniqueGradientSpectrum scaled;
      scaled.values = vals;
      for (auto& v : scaled.values) v *= c;
      const double rel =
          std::abs(mug_score(scaled) - std::sqrt(c) * base) / base;
      worst = std::max(worst, rel);
      ++checked;
    }
  }
  check.require(checked >= 150, "too few spectra checked");
  check.require(worst < 1e-12, "worst relative error " + fmt(worst));
  check.note("worst relative error " + fmt(worst) + " over " +
             std::to_string(checked) + " scalings");
}

void criterion_5_ladder(CriterionCheck& check) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Ladder>& ladders = fixture_ladders();
  check.require(ladders.size() >= 5, "fewer than 5 fixtures");
  double worst_nug = 1.0;
  double worst_mug = -1.0;
  for (const Ladder& ladder : ladders) {
    std::vector<double> quality, nug, mugv;
    for (std::size_t i = 0; i < ladder.qualities.size(); ++i) {
      quality.push_back(double(ladder.qualities[i]));
      nug.push_back(double(ladder.results[i].nug));
      mugv.push_back(ladder.results[i].mug);
    }
    const double nug_srcc = srcc(nug, quality);
    const double mug_srcc = srcc(mugv, quality);
    worst_nug = std::min(worst_nug, nug_srcc);
    worst_mug = std::max(worst_mug, mug_srcc);
    check.require(nug_srcc >= 0.9, ladder.name + ": SRCC(NUG, q) = " +
                                       fmt(nug_srcc) + " < 0.9");
    check.require(mug_srcc <= -0.8, ladder.name + ": SRCC(MUG, q) = " +
                                        fmt(mug_srcc) + " > -0.8");
  }
  const auto t1 = std::chrono::steady_clock::now();
  const double s = std::chrono::duration<double>(t1 - t0).count();
  check.require(s < 30.0, "took " + fmt(s) + " s");
  check.note(std::to_string(ladders.size()) + " ladders, worst SRCC(NUG,q)=" +
             fmt(worst_nug) + ", worst SRCC(MUG,q)=" + fmt(worst_mug) +
             ", " + fmt(s) + " s");
}

void criterion_6_misalignment(CriterionCheck& check) {
  double worst_rel = 0.0;
  for (const Ladder& ladder : fixture_ladders()) {
    std::vector<double> mug_a, mug_c, plus_a, plus_c;
    for (std::size_t i = 0; i < ladder.results.size(); ++i) {
      mug_a.push_back(ladder.results[i].mug);
      mug_c.push_back(ladder.cropped_results[i].mug);
      plus_a.push_back(ladder.results[i].mug_plus);
      plus_c.push_back(ladder.cropped_results[i].mug_plus);
    }
    check.require(rank_order(mug_a) == rank_order(mug_c),
                  ladder.name + ": MUG rank order changed");
    check.require(rank_order(plus_a) == rank_order(plus_c),
                  ladder.name + ": MUG+ rank order changed");
    for (std::size_t i = 0; i < mug_a.size(); ++i) {
      const double rel_mug = std::abs(mug_c[i] - mug_a[i]) / mug_a[i];
      const double rel_plus = std::abs(plus_c[i] - plus_a[i]) / plus_a[i];
      worst_rel = std::max({worst_rel, rel_mug, rel_plus});
      check.require(rel_mug < 0.02, ladder.name + " rung " +
                                        std::to_string(i) + ": MUG moved " +
                                        fmt(100 * rel_mug) + "%");
      check.require(rel_plus < 0.02, ladder.name + " rung " +
                                         std::to_string(i) + ": MUG+ moved " +
                                         fmt(100 * rel_plus) + "%");
    }
  }
  check.note("rank order preserved on all ladders, worst per-image change " +
             fmt(100 * worst_rel) + "%");
}

void criterion_7_chessboard(CriterionCheck& check) {
  const RgbImage board = synthesize_chessboard(1024, 128, 0, 255);
  const MetricResult r = score_image(board);
  check.require(r.n_available <= 3,
                "N = " + std::to_string(r.n_available) + " > 3");
  check.require(r.mug_plus < r.mug / 10.0,
                "mug_plus (" + fmt(r.mug_plus) + ") not below mug/10 (mug = " +
                    fmt(r.mug) + ")");
  check.note("nug=" + std::to_string(r.nug) + " mug=" + fmt(r.mug) +
             " mug_plus=" + fmt(r.mug_plus) +
             " N=" + std::to_string(r.n_available) +
             "; a binary board has 3 distinct gradient magnitudes and the"
             " lower-median of its spectrum is the zero gradient, so MUG is 0");
}

void criterion_8_correlation_oracles(CriterionCheck& check) {
  std::mt19937 rng(99);
  int checked = 0;
  double worst = 0.0;
  for (int n = 2; n <= 7; ++n) {
    std::vector<double> x(n);
    for (auto& v : x) v = std::uniform_real_distribution<double>(0, 1)(rng);
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = i + 1;
    do {
      worst = std::max(worst, std::abs(srcc(x, y) - brute_force_spearman(x, y)));
      worst = std::max(worst, std::abs(plcc(x, y) - brute_force_pearson(x, y)));
      ++checked;
    } while (std::next_permutation(y.begin(), y.end()));
  }
  // tied inputs for the rank side
  const std::vector<double> x_tied = {3, 1, 1, 4, 3};
  std::vector<double> y_tied = {1, 1, 2, 2, 3};
  do {
    worst =
        std::max(worst, std::abs(srcc(x_tied, y_tied) -
                                 brute_force_spearman(x_tied, y_tied)));
    ++checked;
  } while (std::next_permutation(y_tied.begin(), y_tied.end()));
  check.require(worst <= 1e-12, "worst |difference| " + fmt(worst));
  check.note(std::to_string(checked) + " permutations, worst difference " +
             fmt(worst));
}

void criterion_9_logistic(CriterionCheck& check) {
  // (a) known parameters under sigma = 0.01 noise
  const LogisticParams truth{2.0, 1.0, 0.5, 0.1, 3.0};
  std::mt19937 rng(123);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> x, y;
  for (int i = 0; i < 150; ++i) {
    x.push_back(-2.5 + 6.0 * i / 149.0);
    y.push_back(logistic_eval(truth, x.back()) + noise(rng));
  }
  const LogisticParams fitted = fit_logistic(x, y);
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = logistic_eval(fitted, x[i]) - y[i];
    sse += d * d;
  }
  const double rmse = std::sqrt(sse / double(x.size()));
  check.require(rmse <= 0.02, "noisy recovery RMSE " + fmt(rmse));

  // (b) the linear subfamily is fitted to machine precision
  std::vector<double> lx, ly;
  for (int i = 0; i < 50; ++i) {
    lx.push_back(0.2 * i);
    ly.push_back(2.0 * lx.back() + 1.0);
  }
  const LogisticParams linear_fit = fit_logistic(lx, ly);
  double linear_sse = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double d = logistic_eval(linear_fit, lx[i]) - ly[i];
    linear_sse += d * d;
  }
  const double linear_rmse = std::sqrt(linear_sse / double(lx.size()));
  check.require(linear_rmse < 1e-6, "linear RMSE " + fmt(linear_rmse));

  // (c) never worse than the closed-form least-squares line
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> rx, ry;
    for (int i = 0; i < 30; ++i) {
      rx.push_back(unit(rng) * 8.0);
      ry.push_back(unit(rng) * 4.0 + 0.5 * rx.back());
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
      sx += rx[i];
      sy += ry[i];
      sxx += rx[i] * rx[i];
      sxy += rx[i] * ry[i];
    }
    const double n = double(rx.size());
    const double slope = (sxy - sx * sy / n) / (sxx - sx * sx / n);
    const LogisticParams line{0.0, 1.0, 0.0, slope, sy / n - slope * sx / n};
    double fit_sse = 0.0, line_sse = 0.0;
    const LogisticParams best = fit_logistic(rx, ry);
    for (std::size_t i = 0; i < rx.size(); ++i) {
      const double df = logistic_eval(best, rx[i]) - ry[i];
      const double dl = logistic_eval(line, rx[i]) - ry[i];
      fit_sse += df * df;
      line_sse += dl * dl;
    }
    check.require(fit_sse <= line_sse * (1.0 + 1e-12),
                  "fit SSE " + fmt(fit_sse) + " above linear " + fmt(line_sse));
  }
  check.note("noisy RMSE " + fmt(rmse) + ", linear RMSE " + fmt(linear_rmse) +
             ", SSE never above the least-squares line");
}

void criterion_10_throughput(CriterionCheck& check) {
#ifdef MUG_CLI_PATH
  const std::string out_path =
      (std::filesystem::temp_directory_path() / "mug_bench_accept.json")
          .string();
  const std::string cmd = std::string(MUG_CLI_PATH) +
                          " bench --width 1920 --height 1080 --iters 15"
                          " --threads 1 --json > " +
                          out_path;
  const int status = std::system(cmd.c_str());
  check.require(status == 0, "bench command failed");
  if (status != 0) return;
  std::ifstream in(out_path);
  nlohmann::json report;
  in >> report;
  std::filesystem::remove(out_path);
  const double mean_ms = report["mean_ms"];
  check.require(mean_ms <= 222.0,
                "mean " + fmt(mean_ms) + " ms above the 222 ms bound");
  check.note("mean " + fmt(mean_ms) + " ms, p95 " +
             fmt(double(report["p95_ms"])) + " ms, " +
             fmt(double(report["megapixels_per_second"])) +
             " MP/s single-threaded");
#else
  check.require(false, "CLI path not configured");
#endif
}

Outcome criterion_11_live_dataset(CriterionCheck& check) {
  const char* manifest_path = std::getenv("MUG_LIVE_MANIFEST");
  if (manifest_path == nullptr || *manifest_path == '\0') {
    check.note("set MUG_LIVE_MANIFEST to a path,mos CSV of LIVE JPEG images");
    return Outcome::kSkip;
  }
  const DatasetManifest manifest = load_manifest(manifest_path);
  const ScoreTable table = score_dataset(manifest, 1);
  const CorrelationReport mug_rep = evaluate(table, Metric::kMug);
  const CorrelationReport plus_rep = evaluate(table, Metric::kMugPlus);
  check.require(std::abs(mug_rep.plcc - 0.9649) <= 0.03,
                "MUG PLCC " + fmt(mug_rep.plcc) + " not within 0.03 of 0.9649");
  check.require(std::abs(plus_rep.plcc - 0.9730) <= 0.03,
                "MUG+ PLCC " + fmt(plus_rep.plcc) +
                    " not within 0.03 of 0.9730");
  check.note("MUG PLCC " + fmt(mug_rep.plcc) + ", MUG+ PLCC " +
             fmt(plus_rep.plcc) + " on " + std::to_string(table.rows.size()) +
             " images");
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<Outcome(CriterionCheck&)> body;
  };
  auto required = [](void (*fn)(CriterionCheck&)) {
    return [fn](CriterionCheck& check) {
      fn(check);
      return check.ok ? Outcome::kPass : Outcome::kFail;
    };
  };
  const std::vector<Entry> criteria = {
      {1, "degenerate correctness", required(criterion_1_degenerate)},
      {2, "gradient and spectrum oracle equivalence", required(criterion_2_oracle)},
      {3, "divisor identity", required(criterion_3_divisor)},
      {4, "homogeneity", required(criterion_4_homogeneity)},
      {5, "ladder monotonicity", required(criterion_5_ladder)},
      {6, "misalignment robustness", required(criterion_6_misalignment)},
      {7, "chessboard behavior", required(criterion_7_chessboard)},
      {8, "correlation oracles", required(criterion_8_correlation_oracles)},
      {9, "logistic fit", required(criterion_9_logistic)},
      {10, "throughput", required(criterion_10_throughput)},
      {11, "dataset-gated correlation (optional)", criterion_11_live_dataset},
  };

  int failures = 0;
  for (const Entry& entry : criteria) {
    CriterionCheck check;
    Outcome outcome = Outcome::kFail;
    try {
      outcome = entry.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("exception: ") + e.what());
    }
    const char* label = outcome == Outcome::kPass   ? "PASS"
                        : outcome == Outcome::kSkip ? "SKIP"
                                                    : "FAIL";
    if (outcome == Outcome::kFail) ++failures;
    std::printf("[%s] %2d. %s: %s\n", label, entry.id, entry.title,
                check.detail.str().c_str());
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all required criteria passed\n");
  return 0;
}
