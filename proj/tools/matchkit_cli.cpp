/**
 * Copyright (c) 2026 The matchkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/** \file matchkit_cli.cpp
 *  \brief Command-line front end: `match` runs the cascade on two feature
 *         files, `sweep` scans one threshold, `synth` writes an oracle
 *         scene. Exit codes: 0 success, 1 input/parse error, 2 the robust
 *         stage did not converge.
 */

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "matchkit/feature_io.hpp"
#include "matchkit/metrics.hpp"
#include "matchkit/pipeline.hpp"
#include "matchkit/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotConverged = 2;

/** Shortest round-trip decimal form, shared by JSON and CSV output. */
std::string num(double v) { return nlohmann::json(v).dump(); }

struct MatchOptions {
  std::string target_path;
  std::string reference_path;
  std::string gt_path;
  std::string csv_path;
  std::string json_path;
  std::string prosac_mode = "standard";
  std::string metric_mode = "displacement";
  std::string stop_after;
  matchkit::PipelineConfig cfg;
};

struct SweepOptions {
  std::string kind;
  std::string target_path;
  std::string reference_path;
  std::string csv_path;
  std::string prosac_mode = "standard";
  std::vector<double> grid;
  matchkit::PipelineConfig cfg;
};

struct SynthOptions {
  std::string out_dir;
  matchkit::SynthConfig cfg;
};

matchkit::FeatureSet load_with_warning(const std::string& path) {
  matchkit::FeatureSet fs = matchkit::load_features(path);
  const std::size_t outside = fs.count_out_of_bounds();
  if (outside > 0) {
    std::cerr << "warning: " << path << ": " << outside
              << " keypoint(s) outside the stated image bounds\n";
  }
  return fs;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot write file");
  }
  out << content;
  if (!out) {
    throw std::runtime_error(path + ": write failed");
  }
}

std::string stage_csv(const matchkit::PipelineResult& result) {
  std::string csv = "label,nm\n";
  for (const matchkit::StageCount& sc : result.stages) {
    csv += matchkit::stage_name(sc.stage);
    csv += ',';
    csv += std::to_string(sc.nm);
    csv += '\n';
  }
  return csv;
}

int run_match(const MatchOptions& opt) {
  const matchkit::FeatureSet target = load_with_warning(opt.target_path);
  const matchkit::FeatureSet reference = load_with_warning(opt.reference_path);
  if (reference.size() < 2) {
    std::cerr << "error: insufficient reference features (need at least 2 for "
                 "second-neighbor distances)\n";
    return kExitInputError;
  }

  matchkit::PipelineConfig cfg = opt.cfg;
  cfg.prosac_mode = opt.prosac_mode == "grouped" ? matchkit::SamplingMode::grouped
                                                 : matchkit::SamplingMode::standard;
  cfg.metric_mode = opt.metric_mode == "gt_transfer"
                        ? matchkit::ErrorMode::gt_transfer
                        : matchkit::ErrorMode::displacement;
  if (opt.stop_after == "tf") {
    cfg.stop_after = matchkit::StopAfter::tf;
  } else if (opt.stop_after == "gms") {
    cfg.stop_after = matchkit::StopAfter::gms;
  }

  std::optional<matchkit::Homography> gt;
  if (!opt.gt_path.empty()) {
    gt = matchkit::load_homography(opt.gt_path);
  }
  if (cfg.metric_mode == matchkit::ErrorMode::gt_transfer && !gt.has_value()) {
    std::cerr << "error: gt_transfer metric mode requires --gt\n";
    return kExitInputError;
  }

  const matchkit::PipelineResult result = matchkit::run_pipeline(target, reference, cfg);

  nlohmann::ordered_json report;
  auto& stages = report["stages"] = nlohmann::ordered_json::array();
  for (const matchkit::StageCount& sc : result.stages) {
    stages.push_back({{"label", matchkit::stage_name(sc.stage)}, {"nm", sc.nm}});
  }

  const std::vector<matchkit::PointPair> pairs =
      matchkit::matched_points(result.final_matches, target, reference);
  auto& metrics = report["metrics"];
  metrics["nm"] = pairs.size();
  if (target.size() > 0) {
    metrics["rep"] = matchkit::repeatability(pairs.size(), target.size());
  } else {
    metrics["rep"] = nullptr;
  }
  if (!pairs.empty()) {
    metrics["me"] = matchkit::mean_error(pairs, cfg.metric_mode, gt);
    metrics["rmse"] = matchkit::rmse(pairs, cfg.metric_mode, gt);
  } else {
    metrics["me"] = nullptr;
    metrics["rmse"] = nullptr;
  }
  metrics["mode"] = matchkit::error_mode_name(cfg.metric_mode);

  if (result.estimate.has_value()) {
    auto& h = report["homography"] = nlohmann::ordered_json::array();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        h.push_back(result.estimate->homography.m(r, c));
      }
    }
    auto& inliers = report["inliers"] = nlohmann::ordered_json::array();
    for (const matchkit::Correspondence& m : result.final_matches.matches) {
      inliers.push_back({m.query_idx, m.train_idx});
    }
  }

  const std::string payload = report.dump(2) + "\n";
  std::cout << payload;
  if (!opt.json_path.empty()) {
    write_text_file(opt.json_path, payload);
  }
  if (!opt.csv_path.empty()) {
    write_text_file(opt.csv_path, stage_csv(result));
  }

  if (result.estimate.has_value() && !result.estimate->converged) {
    std::cerr << "error: robust stage did not converge (inliers="
              << result.estimate->inlier_indices.size() << ", required "
              << cfg.min_inliers << ")\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int run_sweep(const SweepOptions& opt) {
  const matchkit::FeatureSet target = load_with_warning(opt.target_path);
  const matchkit::FeatureSet reference = load_with_warning(opt.reference_path);
  if (reference.size() < 2) {
    std::cerr << "error: insufficient reference features (need at least 2 for "
                 "second-neighbor distances)\n";
    return kExitInputError;
  }

  std::vector<matchkit::SweepRecord> rows;
  if (opt.kind == "tw") {
    std::vector<double> grid = opt.grid;
    if (grid.empty()) {
      for (int i = 1; i <= 9; ++i) {
        grid.push_back(static_cast<double>(i) / 10.0);
      }
    }
    rows = matchkit::sweep_tw(target, reference, grid);
  } else {
    std::vector<int> grid;
    for (const double v : opt.grid) {
      if (v != std::floor(v)) {
        std::cerr << "error: support thresholds must be integers\n";
        return kExitInputError;
      }
      grid.push_back(static_cast<int>(v));
    }
    if (grid.empty()) {
      for (int i = 1; i <= 9; ++i) {
        grid.push_back(i);
      }
    }
    matchkit::TgSweepParams params;
    params.t_w = opt.cfg.t_w;
    params.radius = opt.cfg.neighborhood_radius;
    params.robust = opt.cfg.robust();
    params.robust.mode = opt.prosac_mode == "grouped"
                             ? matchkit::SamplingMode::grouped
                             : matchkit::SamplingMode::standard;
    rows = matchkit::sweep_tg(target, reference, grid, params);
  }

  std::string csv = "threshold,retained,q_percent,nm,avg_diff\n";
  for (const matchkit::SweepRecord& rec : rows) {
    csv += num(rec.threshold);
    csv += ',';
    csv += std::to_string(rec.retained);
    csv += ',';
    csv += num(rec.q_percent);
    csv += ',';
    csv += std::to_string(rec.nm);
    csv += ',';
    csv += num(rec.avg_diff);
    csv += '\n';
  }
  std::cout << csv;
  if (!opt.csv_path.empty()) {
    write_text_file(opt.csv_path, csv);
  }
  return kExitOk;
}

int run_synth(const SynthOptions& opt) {
  const matchkit::ScenePair scene = matchkit::generate_scene(opt.cfg);

  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create directory " << opt.out_dir << ": "
              << ec.message() << "\n";
    return kExitInputError;
  }
  const std::filesystem::path dir(opt.out_dir);
  matchkit::save_features((dir / "target.json").string(), scene.target);
  matchkit::save_features((dir / "reference.json").string(), scene.reference);
  matchkit::save_homography((dir / "gt_homography.txt").string(), *scene.gt_h);
  matchkit::save_gt_pairs_csv((dir / "gt_inliers.csv").string(), *scene.gt_inlier_pairs);
  return kExitOk;
}

void add_pipeline_flags(CLI::App* cmd, matchkit::PipelineConfig* cfg,
                        std::string* prosac_mode) {
  cmd->add_option("--tw", cfg->t_w, "Ratio-test threshold, in (0, 1]")
      ->capture_default_str();
  cmd->add_option("--radius", cfg->neighborhood_radius,
                  "Neighborhood radius in px; 0 selects 5% of the image diagonal")
      ->capture_default_str();
  cmd->add_option("--inlier-thresh", cfg->inlier_threshold,
                  "Robust-stage inlier threshold in px")
      ->capture_default_str();
  cmd->add_option("--min-inliers", cfg->min_inliers,
                  "Inlier count required for convergence")
      ->capture_default_str();
  cmd->add_option("--max-iters", cfg->max_iterations,
                  "Robust-stage hypothesis budget")
      ->capture_default_str();
  cmd->add_option("--seed", cfg->seed, "Sampling seed")->capture_default_str();
  cmd->add_option("--prosac-mode", *prosac_mode, "Hypothesis sampling order")
      ->check(CLI::IsMember({"standard", "grouped"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-view binary-descriptor matching cascade"};
  app.require_subcommand(1);
  std::function<int()> runner;

  MatchOptions match_opt;
  CLI::App* match = app.add_subcommand(
      "match", "Run the full cascade on two feature files");
  match->add_option("target", match_opt.target_path, "Target feature JSON")
      ->required();
  match->add_option("reference", match_opt.reference_path, "Reference feature JSON")
      ->required();
  add_pipeline_flags(match, &match_opt.cfg, &match_opt.prosac_mode);
  match->add_option("--tg", match_opt.cfg.t_g, "Neighborhood-support threshold")
      ->capture_default_str();
  match->add_option("--metric-mode", match_opt.metric_mode,
                    "Error metric: displacement or gt_transfer")
      ->check(CLI::IsMember({"displacement", "gt_transfer"}))
      ->capture_default_str();
  match->add_option("--stop-after", match_opt.stop_after,
                    "Cut the cascade after a stage (ablation)")
      ->check(CLI::IsMember({"tf", "gms"}));
  match->add_option("--gt", match_opt.gt_path, "Ground-truth homography file");
  match->add_option("--csv", match_opt.csv_path, "Write per-stage counts CSV here");
  match->add_option("--json", match_opt.json_path, "Also write the JSON report here");
  match->callback([&runner, &match_opt] {
    runner = [&match_opt] { return run_match(match_opt); };
  });

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "Scan one threshold over a grid");
  sweep->add_option("kind", sweep_opt.kind, "Threshold to sweep: tw or tg")
      ->required()
      ->check(CLI::IsMember({"tw", "tg"}));
  sweep->add_option("target", sweep_opt.target_path, "Target feature JSON")
      ->required();
  sweep->add_option("reference", sweep_opt.reference_path, "Reference feature JSON")
      ->required();
  add_pipeline_flags(sweep, &sweep_opt.cfg, &sweep_opt.prosac_mode);
  sweep->add_option("--grid", sweep_opt.grid,
                    "Comma-separated thresholds, strictly increasing "
                    "(default 0.1..0.9 for tw, 1..9 for tg)")
      ->delimiter(',');
  sweep->add_option("--csv", sweep_opt.csv_path, "Also write the sweep CSV here");
  sweep->callback([&runner, &sweep_opt] {
    runner = [&sweep_opt] { return run_sweep(sweep_opt); };
  });

  SynthOptions synth_opt;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a known-homography scene into a directory");
  synth->add_option("out_dir", synth_opt.out_dir, "Output directory")->required();
  synth->add_option("--inliers", synth_opt.cfg.n_inliers, "True pair count")
      ->capture_default_str();
  synth->add_option("--outliers", synth_opt.cfg.n_outliers,
                    "Unrelated feature count per side")
      ->capture_default_str();
  synth->add_option("--confusers", synth_opt.cfg.n_confusers,
                    "Near-duplicate reference decoys")
      ->capture_default_str();
  synth->add_option("--width", synth_opt.cfg.image_width, "Image width in px")
      ->capture_default_str();
  synth->add_option("--height", synth_opt.cfg.image_height, "Image height in px")
      ->capture_default_str();
  synth->add_option("--sigma", synth_opt.cfg.noise_sigma,
                    "Reference-point Gaussian noise in px")
      ->capture_default_str();
  synth->add_option("--flips", synth_opt.cfg.descriptor_flip_bits,
                    "Descriptor bits flipped on reference copies (0..256)")
      ->capture_default_str();
  synth->add_option("--perspective", synth_opt.cfg.perspective_magnitude,
                    "Transform perturbation magnitude, in [0, 0.3]")
      ->capture_default_str();
  synth->add_option("--seed", synth_opt.cfg.seed, "Scene seed")->capture_default_str();
  synth->callback([&runner, &synth_opt] {
    runner = [&synth_opt] { return run_synth(synth_opt); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    return runner();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
