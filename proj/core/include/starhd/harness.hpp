#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "starhd/encoders.hpp"
#include "starhd/graph.hpp"
#include "starhd/learner.hpp"

namespace starhd {

/// One experiment: a dataset scored under a fixed encoder/learner setup,
/// repeated once per seed over fresh stratified splits and codebooks.
struct ExperimentConfig {
  std::string dataset;
  EncoderConfig encoder;  // encoder.seed is overwritten by the repetition seed
  Strategy strategy = Strategy::RefineHd;
  double threshold = kDefaultRefineThreshold;
  double train_fraction = 0.8;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int epochs = 1;
  bool timing = true;
  unsigned threads = 0;  // 0 = hardware concurrency

  std::size_t repetitions() const { return seeds.size(); }
};

struct RepetitionResult {
  std::uint64_t seed = 0;
  double auc = 0.0;       // stored in [0, 1]; reports print x100
  double accuracy = 0.0;  // stored in [0, 1]
  double train_ms_per_sample = 0.0;
  double infer_ms_per_sample = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one repetition
};

struct ExperimentResult {
  std::string experiment_id;
  ExperimentConfig config;
  std::vector<RepetitionResult> repetitions;
  Aggregate auc;
  Aggregate accuracy;
  Aggregate train_ms_per_sample;
  Aggregate infer_ms_per_sample;
  std::string started_at;   // ISO 8601 UTC
  std::string finished_at;

  bool operator==(const ExperimentResult&) const;
};

/// Runs every repetition of `config` on `dataset`: stratified split, fresh
/// codebook seeded by the repetition seed, streamed encode+train over the
/// seeded-shuffled train set, then parallel encode+score over the test set.
/// Wall-clock per-sample times cover encoding plus the learner work of each
/// phase. The dataset must be binary (two class values). A repetition
/// failure aborts the experiment with the seed named.
ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& dataset);

enum class SweepAxis { Dimensions, Threshold, Strategy, VsaBackend, Encoder };

const char* sweep_axis_name(SweepAxis axis);
SweepAxis sweep_axis_from_name(const std::string& name);

/// Runs one experiment per axis value with everything else (seeds included)
/// held from the template, so rows compare pairwise. Values are validated
/// before any run starts. On the backend axis, a vtb value with a
/// non-square template dimensionality runs at the largest perfect square
/// below it (echoed in the result config).
std::vector<ExperimentResult> sweep(const ExperimentConfig& base, SweepAxis axis,
                                    const std::vector<std::string>& values,
                                    const Dataset& dataset);

/// Report emission. CSV: one row per repetition plus one aggregate row
/// flagged by the `agg` column; AUC and accuracy are reported x100. The
/// leading comment line carries the library version and the config fields
/// that have no column of their own. JSON mirrors the result structs
/// verbatim (schema 1, stored scales).
void write_csv(const std::vector<ExperimentResult>& results, std::ostream& out);
void write_csv_file(const std::vector<ExperimentResult>& results,
                    const std::string& path);
std::string to_json(const std::vector<ExperimentResult>& results);
void write_json_file(const std::vector<ExperimentResult>& results, const std::string& path);
std::vector<ExperimentResult> from_json(const std::string& json_text);

/// Human-readable aggregate table for standard output (not a stable format).
void print_summary(const std::vector<ExperimentResult>& results, std::ostream& out);

}  // namespace starhd
