#include "starhd/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "starhd/auc.hpp"
#include "starhd/detail/parallel.hpp"
#include "starhd/detail/rng.hpp"
#include "starhd/errors.hpp"
#include "starhd/version.hpp"

namespace starhd {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Aggregate aggregate_of(const std::vector<RepetitionResult>& reps,
                       double RepetitionResult::*field) {
  Aggregate agg;
  if (reps.empty()) return agg;
  double sum = 0.0;
  for (const auto& r : reps) sum += r.*field;
  agg.mean = sum / static_cast<double>(reps.size());
  if (reps.size() > 1) {
    double sq = 0.0;
    for (const auto& r : reps) {
      const double d = r.*field - agg.mean;
      sq += d * d;
    }
    agg.stddev = std::sqrt(sq / static_cast<double>(reps.size() - 1));
  }
  return agg;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string experiment_slug(const ExperimentConfig& config) {
  std::ostringstream id;
  id << config.dataset << "_" << encoder_kind_name(config.encoder.kind) << "_"
     << keying_name(config.encoder.keying);
  if (config.encoder.kind == EncoderKind::GraphHd) {
    id << "_" << centrality_name(config.encoder.centrality);
  }
  id << "_" << backend_name(config.encoder.backend) << "_" << strategy_name(config.strategy)
     << "_d" << config.encoder.dim;
  if (config.strategy == Strategy::RefineHd) id << "_t" << format_double(config.threshold);
  return id.str();
}

void validate_config(const ExperimentConfig& config, const Dataset& dataset) {
  if (config.seeds.empty()) throw ConfigError("experiment needs at least one seed");
  if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
    throw ConfigError("train fraction must be in (0, 1)");
  }
  if (config.epochs < 1) throw ConfigError("epochs must be at least 1");
  validate_dimensionality(config.encoder.backend, config.encoder.dim);
  if (dataset.class_values.size() != 2) {
    std::ostringstream msg;
    msg << "experiment requires a binary dataset; '" << dataset.name << "' has "
        << dataset.class_values.size() << " class values";
    throw DomainError(msg.str());
  }
}

RepetitionResult run_repetition(const ExperimentConfig& config, const Dataset& dataset,
                                std::uint64_t seed) {
  RepetitionResult rep;
  rep.seed = seed;

  const Split split = stratified_split(dataset, config.train_fraction, seed);

  // Training consumes the stratified indices in a seeded shuffled order;
  // class-grouped order would starve the adaptive strategies of errors.
  std::vector<std::size_t> train_order = split.train_indices;
  detail::SplitMix64 order_rng(detail::token_stream_seed(seed, "train-order"));
  detail::fisher_yates(train_order, order_rng);

  EncoderConfig encoder_config = config.encoder;
  encoder_config.seed = seed;
  const Encoder encoder(encoder_config);

  AssociativeMemory memory(encoder_config.backend, encoder_config.dim, config.strategy,
                           config.threshold);

  const auto train_begin = Clock::now();
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    detail::ordered_pipeline(
        train_order.size(), config.threads,
        [&](std::size_t i) { return encoder.encode(dataset.graphs[train_order[i]]); },
        [&](std::size_t i, Hypervector h) {
          memory.update(h, dataset.graphs[train_order[i]].label);
        });
  }
  const auto train_end = Clock::now();

  const int negative = dataset.class_values[0];
  const int positive = dataset.class_values[1];
  const std::size_t n_test = split.test_indices.size();
  if (n_test == 0) throw DomainError("empty test side; dataset too small for the fraction");

  std::vector<double> scores(n_test);
  std::vector<char> truth_positive(n_test);  // char: bit-packed bool is not thread-safe
  std::vector<char> correct(n_test);
  const auto infer_begin = Clock::now();
  detail::parallel_for(n_test, config.threads, [&](std::size_t i) {
    const Graph& graph = dataset.graphs[split.test_indices[i]];
    const Hypervector h = encoder.encode(graph);
    const Prediction pred = memory.predict(h);
    double s_pos = 0.0;
    double s_neg = 0.0;
    for (const auto& [label, s] : pred.scores) {
      if (label == positive) s_pos = s;
      if (label == negative) s_neg = s;
    }
    scores[i] = s_pos - s_neg;
    truth_positive[i] = graph.label == positive;
    correct[i] = pred.label == graph.label;
  });
  const auto infer_end = Clock::now();

  std::vector<bool> is_positive(truth_positive.begin(), truth_positive.end());
  rep.auc = auc(scores, is_positive);
  std::size_t hits = 0;
  for (char c : correct) hits += c;
  rep.accuracy = static_cast<double>(hits) / static_cast<double>(n_test);
  if (config.timing) {
    const std::size_t n_train = train_order.size() * static_cast<std::size_t>(config.epochs);
    rep.train_ms_per_sample = ms_between(train_begin, train_end) / static_cast<double>(n_train);
    rep.infer_ms_per_sample = ms_between(infer_begin, infer_end) / static_cast<double>(n_test);
  }
  return rep;
}

nlohmann::json config_json(const ExperimentConfig& config) {
  return {
      {"dataset", config.dataset},
      {"encoder", encoder_kind_name(config.encoder.kind)},
      {"keying", keying_name(config.encoder.keying)},
      {"centrality", centrality_name(config.encoder.centrality)},
      {"backend", backend_name(config.encoder.backend)},
      {"dimensions", config.encoder.dim},
      {"strategy", strategy_name(config.strategy)},
      {"threshold", config.threshold},
      {"train_fraction", config.train_fraction},
      {"seeds", config.seeds},
      {"epochs", config.epochs},
      {"timing", config.timing},
  };
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  config.dataset = j.at("dataset").get<std::string>();
  config.encoder.kind = encoder_kind_from_name(j.at("encoder").get<std::string>());
  config.encoder.keying = keying_from_name(j.at("keying").get<std::string>());
  config.encoder.centrality = centrality_from_name(j.at("centrality").get<std::string>());
  config.encoder.backend = backend_from_name(j.at("backend").get<std::string>());
  config.encoder.dim = j.at("dimensions").get<std::size_t>();
  config.strategy = strategy_from_name(j.at("strategy").get<std::string>());
  config.threshold = j.at("threshold").get<double>();
  config.train_fraction = j.at("train_fraction").get<double>();
  config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  config.epochs = j.at("epochs").get<int>();
  config.timing = j.at("timing").get<bool>();
  return config;
}

nlohmann::json aggregate_json(const Aggregate& agg) {
  return {{"mean", agg.mean}, {"stddev", agg.stddev}};
}

Aggregate aggregate_from_json(const nlohmann::json& j) {
  return {j.at("mean").get<double>(), j.at("stddev").get<double>()};
}

}  // namespace

bool ExperimentResult::operator==(const ExperimentResult& other) const {
  auto key = [](const ExperimentResult& r) {
    return std::tuple(r.experiment_id, r.started_at, r.finished_at, r.auc.mean, r.auc.stddev,
                      r.accuracy.mean, r.accuracy.stddev, r.train_ms_per_sample.mean,
                      r.infer_ms_per_sample.mean);
  };
  if (key(*this) != key(other)) return false;
  if (repetitions.size() != other.repetitions.size()) return false;
  for (std::size_t i = 0; i < repetitions.size(); ++i) {
    const auto& a = repetitions[i];
    const auto& b = other.repetitions[i];
    if (std::tuple(a.seed, a.auc, a.accuracy, a.train_ms_per_sample, a.infer_ms_per_sample) !=
        std::tuple(b.seed, b.auc, b.accuracy, b.train_ms_per_sample, b.infer_ms_per_sample)) {
      return false;
    }
  }
  return config_json(config) == config_json(other.config);
}

namespace {

template <typename E>
[[noreturn]] void rethrow_with_seed(const E& e, const std::string& id, std::uint64_t seed) {
  std::ostringstream msg;
  msg << "experiment " << id << ", seed " << seed << ": " << e.what();
  throw E(msg.str());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& dataset) {
  validate_config(config, dataset);
  ExperimentResult result;
  result.config = config;
  result.experiment_id = experiment_slug(config);
  result.started_at = utc_now();
  for (std::uint64_t seed : config.seeds) {
    try {
      result.repetitions.push_back(run_repetition(config, dataset, seed));
    } catch (const ConfigError& e) {
      rethrow_with_seed(e, result.experiment_id, seed);
    } catch (const DomainError& e) {
      rethrow_with_seed(e, result.experiment_id, seed);
    } catch (const Error& e) {
      rethrow_with_seed(e, result.experiment_id, seed);
    }
  }
  result.auc = aggregate_of(result.repetitions, &RepetitionResult::auc);
  result.accuracy = aggregate_of(result.repetitions, &RepetitionResult::accuracy);
  result.train_ms_per_sample =
      aggregate_of(result.repetitions, &RepetitionResult::train_ms_per_sample);
  result.infer_ms_per_sample =
      aggregate_of(result.repetitions, &RepetitionResult::infer_ms_per_sample);
  result.finished_at = utc_now();
  return result;
}

const char* sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Dimensions:
      return "dims";
    case SweepAxis::Threshold:
      return "threshold";
    case SweepAxis::Strategy:
      return "strategy";
    case SweepAxis::VsaBackend:
      return "vsa";
    case SweepAxis::Encoder:
      return "encoder";
  }
  return "unknown";
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "dims" || name == "dimensions") return SweepAxis::Dimensions;
  if (name == "threshold") return SweepAxis::Threshold;
  if (name == "strategy") return SweepAxis::Strategy;
  if (name == "vsa" || name == "backend") return SweepAxis::VsaBackend;
  if (name == "encoder") return SweepAxis::Encoder;
  throw ConfigError("unknown sweep axis: " + name);
}

std::vector<ExperimentResult> sweep(const ExperimentConfig& base, SweepAxis axis,
                                    const std::vector<std::string>& values,
                                    const Dataset& dataset) {
  if (values.empty()) throw ConfigError("sweep needs at least one axis value");

  // Materialize and validate every point before running anything.
  std::vector<ExperimentConfig> configs;
  configs.reserve(values.size());
  for (const std::string& value : values) {
    ExperimentConfig config = base;
    switch (axis) {
      case SweepAxis::Dimensions: {
        std::size_t dim = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), dim);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
          throw ConfigError("invalid dimensions value: " + value);
        }
        config.encoder.dim = dim;
        break;
      }
      case SweepAxis::Threshold: {
        char* end = nullptr;
        config.threshold = std::strtod(value.c_str(), &end);
        if (end != value.c_str() + value.size() || value.empty()) {
          throw ConfigError("invalid threshold value: " + value);
        }
        if (!(config.threshold > 0.0)) throw ConfigError("threshold must be positive: " + value);
        break;
      }
      case SweepAxis::Strategy:
        config.strategy = strategy_from_name(value);
        break;
      case SweepAxis::VsaBackend: {
        config.encoder.backend = backend_from_name(value);
        if (config.encoder.backend == Backend::Vtb && !is_perfect_square(config.encoder.dim)) {
          // Pair vtb against the others at the largest square below the
          // template dimensionality rather than rejecting the whole sweep.
          std::size_t root = static_cast<std::size_t>(std::sqrt(static_cast<double>(config.encoder.dim)));
          while (root * root > config.encoder.dim) --root;
          config.encoder.dim = root * root;
        }
        break;
      }
      case SweepAxis::Encoder:
        config.encoder.kind = encoder_kind_from_name(value);
        break;
    }
    validate_dimensionality(config.encoder.backend, config.encoder.dim);
    configs.push_back(std::move(config));
  }

  std::vector<ExperimentResult> results;
  results.reserve(configs.size());
  for (const ExperimentConfig& config : configs) {
    results.push_back(run_experiment(config, dataset));
  }
  return results;
}

void write_csv(const std::vector<ExperimentResult>& results, std::ostream& out) {
  out << "# starhd " << version();
  if (!results.empty()) {
    const ExperimentConfig& config = results.front().config;
    out << " train_fraction=" << format_double(config.train_fraction)
        << " epochs=" << config.epochs << " timing=" << (config.timing ? 1 : 0);
  }
  out << "\n";
  out << "experiment_id,dataset,encoder,keying,backend,strategy,threshold,dimensions,seed,agg,"
         "auc,accuracy,train_ms_per_sample,infer_ms_per_sample\n";
  for (const ExperimentResult& result : results) {
    const ExperimentConfig& config = result.config;
    const std::string prefix = result.experiment_id + "," + config.dataset + "," +
                               encoder_kind_name(config.encoder.kind) + "," +
                               keying_name(config.encoder.keying) + "," +
                               backend_name(config.encoder.backend) + "," +
                               strategy_name(config.strategy) + "," +
                               format_double(config.threshold) + "," +
                               std::to_string(config.encoder.dim) + ",";
    for (const RepetitionResult& rep : result.repetitions) {
      out << prefix << rep.seed << ",," << format_double(rep.auc * 100.0) << ","
          << format_double(rep.accuracy * 100.0) << "," << format_double(rep.train_ms_per_sample)
          << "," << format_double(rep.infer_ms_per_sample) << "\n";
    }
    out << prefix << ",mean," << format_double(result.auc.mean * 100.0) << ","
        << format_double(result.accuracy.mean * 100.0) << ","
        << format_double(result.train_ms_per_sample.mean) << ","
        << format_double(result.infer_ms_per_sample.mean) << "\n";
  }
}

void write_csv_file(const std::vector<ExperimentResult>& results, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report to " + path);
  write_csv(results, out);
  if (!out) throw IoError("failed while writing " + path);
}

std::string to_json(const std::vector<ExperimentResult>& results) {
  nlohmann::json j;
  j["schema"] = 1;
  j["generator"] = {{"name", "starhd"}, {"version", version()}};
  j["experiments"] = nlohmann::json::array();
  for (const ExperimentResult& result : results) {
    nlohmann::json reps = nlohmann::json::array();
    for (const RepetitionResult& rep : result.repetitions) {
      reps.push_back({{"seed", rep.seed},
                      {"auc", rep.auc},
                      {"accuracy", rep.accuracy},
                      {"train_ms_per_sample", rep.train_ms_per_sample},
                      {"infer_ms_per_sample", rep.infer_ms_per_sample}});
    }
    j["experiments"].push_back({{"experiment_id", result.experiment_id},
                                {"config", config_json(result.config)},
                                {"repetitions", reps},
                                {"aggregate",
                                 {{"auc", aggregate_json(result.auc)},
                                  {"accuracy", aggregate_json(result.accuracy)},
                                  {"train_ms_per_sample", aggregate_json(result.train_ms_per_sample)},
                                  {"infer_ms_per_sample", aggregate_json(result.infer_ms_per_sample)}}},
                                {"started_at", result.started_at},
                                {"finished_at", result.finished_at}});
  }
  return j.dump(2);
}

void write_json_file(const std::vector<ExperimentResult>& results, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report to " + path);
  out << to_json(results) << "\n";
  if (!out) throw IoError("failed while writing " + path);
}

std::vector<ExperimentResult> from_json(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  if (j.at("schema").get<int>() != 1) throw IoError("unsupported report schema");
  std::vector<ExperimentResult> results;
  for (const auto& je : j.at("experiments")) {
    ExperimentResult result;
    result.experiment_id = je.at("experiment_id").get<std::string>();
    result.config = config_from_json(je.at("config"));
    for (const auto& jr : je.at("repetitions")) {
      RepetitionResult rep;
      rep.seed = jr.at("seed").get<std::uint64_t>();
      rep.auc = jr.at("auc").get<double>();
      rep.accuracy = jr.at("accuracy").get<double>();
      rep.train_ms_per_sample = jr.at("train_ms_per_sample").get<double>();
      rep.infer_ms_per_sample = jr.at("infer_ms_per_sample").get<double>();
      result.repetitions.push_back(rep);
    }
    const auto& ja = je.at("aggregate");
    result.auc = aggregate_from_json(ja.at("auc"));
    result.accuracy = aggregate_from_json(ja.at("accuracy"));
    result.train_ms_per_sample = aggregate_from_json(ja.at("train_ms_per_sample"));
    result.infer_ms_per_sample = aggregate_from_json(ja.at("infer_ms_per_sample"));
    result.started_at = je.at("started_at").get<std::string>();
    result.finished_at = je.at("finished_at").get<std::string>();
    results.push_back(std::move(result));
  }
  return results;
}

void print_summary(const std::vector<ExperimentResult>& results, std::ostream& out) {
  out << std::left << std::setw(52) << "experiment" << std::right << std::setw(10) << "auc"
      << std::setw(8) << "sd" << std::setw(10) << "acc" << std::setw(12) << "train ms"
      << std::setw(12) << "infer ms" << "\n";
  for (const ExperimentResult& result : results) {
    out << std::left << std::setw(52) << result.experiment_id << std::right << std::fixed
        << std::setprecision(2) << std::setw(10) << result.auc.mean * 100.0 << std::setw(8)
        << result.auc.stddev * 100.0 << std::setw(10) << result.accuracy.mean * 100.0
        << std::setprecision(4) << std::setw(12) << result.train_ms_per_sample.mean
        << std::setw(12) << result.infer_ms_per_sample.mean << "\n";
    out.unsetf(std::ios::fixed);
  }
}

}  // namespace starhd
