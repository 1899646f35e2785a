// starhd command line front end: dataset fetching, training, prediction and
// the experiment harness. Exit codes: 0 success, 1 usage error, 2 data
// error, 3 runtime error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starhd/detail/parallel.hpp"
#include "starhd/detail/rng.hpp"
#include "starhd/errors.hpp"
#include "starhd/fetch.hpp"
#include "starhd/harness.hpp"
#include "starhd/model.hpp"
#include "starhd/tudataset.hpp"
#include "starhd/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace starhd;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

std::string default_cache_dir() {
  if (const char* home = std::getenv("HOME")) {
    return (fs::path(home) / ".cache" / "starhd").string();
  }
  return "starhd-cache";
}

struct DataOptions {
  std::string cache_dir = default_cache_dir();
  std::string base_url = kDefaultBaseUrl;
  std::string local_dir;  // bypasses fetching when set
};

void add_data_options(CLI::App* cmd, DataOptions& opts) {
  cmd->add_option("--cache-dir", opts.cache_dir, "Dataset cache directory")
      ->envname("STARHD_CACHE_DIR")
      ->capture_default_str();
  cmd->add_option("--base-url", opts.base_url, "Archive download base URL")
      ->envname("STARHD_BASE_URL")
      ->capture_default_str();
  cmd->add_option("--local", opts.local_dir,
                  "Directory already holding the dataset text files (skips fetching)");
}

Dataset resolve_dataset(const std::string& name, const DataOptions& opts) {
  const fs::path dir = opts.local_dir.empty()
                           ? fetch_dataset(name, opts.cache_dir, opts.base_url)
                           : fs::path(opts.local_dir);
  return parse_tudataset(dir, name);
}

struct EncoderOptions {
  std::string encoder = "star";
  std::string keying = "label";
  std::string centrality = "pagerank";
  std::string vsa = "map";
  std::size_t dims = 10000;
};

void add_encoder_options(CLI::App* cmd, EncoderOptions& opts) {
  cmd->add_option("--encoder", opts.encoder, "Graph encoder: star, gayler-levy, graphhd")
      ->capture_default_str();
  cmd->add_option("--keying", opts.keying, "Node keying: label, degree, random")
      ->capture_default_str();
  cmd->add_option("--centrality", opts.centrality, "graphhd centrality: pagerank, degree")
      ->capture_default_str();
  cmd->add_option("--vsa", opts.vsa, "VSA backend: map, fhrr, vtb")->capture_default_str();
  cmd->add_option("--dims", opts.dims, "Hyperspace dimensionality")->capture_default_str();
}

EncoderConfig make_encoder_config(const EncoderOptions& opts, std::uint64_t seed) {
  EncoderConfig config;
  config.kind = encoder_kind_from_name(opts.encoder);
  config.keying = keying_from_name(opts.keying);
  config.centrality = centrality_from_name(opts.centrality);
  config.backend = backend_from_name(opts.vsa);
  config.dim = opts.dims;
  config.seed = seed;
  validate_dimensionality(config.backend, config.dim);
  return config;
}

struct LearnerOptions {
  std::string strategy = "refinehd";
  double threshold = kDefaultRefineThreshold;
  int epochs = 1;
};

void add_learner_options(CLI::App* cmd, LearnerOptions& opts, CLI::Option** threshold_opt) {
  cmd->add_option("--strategy", opts.strategy,
                  "Training strategy: add, adapthd, onlinehd, refinehd")
      ->capture_default_str();
  *threshold_opt = cmd->add_option("--threshold", opts.threshold,
                                   "refinehd gate factor over the misclassification mean")
                       ->capture_default_str();
  cmd->add_option("--epochs", opts.epochs, "Training passes over the data")
      ->capture_default_str();
}

void check_threshold_usage(const CLI::Option* threshold_opt, const std::string& strategy) {
  if (threshold_opt->count() > 0 && strategy_from_name(strategy) != Strategy::RefineHd) {
    throw ConfigError("--threshold only applies to the refinehd strategy");
  }
}

std::vector<std::uint64_t> make_seeds(std::size_t reps, const std::vector<std::uint64_t>& given) {
  if (!given.empty()) return given;
  std::vector<std::uint64_t> seeds(reps);
  for (std::size_t i = 0; i < reps; ++i) seeds[i] = i;
  return seeds;
}

int cmd_fetch(const std::string& name, const DataOptions& opts) {
  const fs::path dir = fetch_dataset(name, opts.cache_dir, opts.base_url);
  std::cout << dir.string() << "\n";
  return kExitOk;
}

int cmd_list_datasets(const DataOptions& opts) {
  std::printf("%-10s %9s %-24s %s\n", "name", "graphs", "screen", "cached");
  for (const DatasetInfo& info : known_datasets()) {
    const bool cached = fs::exists(fs::path(opts.cache_dir) / (std::string(info.name) + ".zip")) ||
                        fs::exists(fs::path(opts.cache_dir) / info.name);
    std::printf("%-10s %9zu %-24s %s\n", info.name, info.graph_count, info.description,
                cached ? "yes" : "no");
  }
  return kExitOk;
}

int cmd_train(const std::string& name, const DataOptions& data_opts,
              const EncoderOptions& enc_opts, const LearnerOptions& learn_opts,
              std::uint64_t seed, unsigned threads, const std::string& out_path) {
  const EncoderConfig encoder_config = make_encoder_config(enc_opts, seed);
  const Strategy strategy = strategy_from_name(learn_opts.strategy);

  const Dataset dataset = resolve_dataset(name, data_opts);
  const Encoder encoder(encoder_config);
  AssociativeMemory memory(encoder_config.backend, encoder_config.dim, strategy,
                           learn_opts.threshold);

  // Full-dataset training in a seeded shuffled order, same as the harness.
  std::vector<std::size_t> order(dataset.graphs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  detail::SplitMix64 order_rng(detail::token_stream_seed(seed, "train-order"));
  detail::fisher_yates(order, order_rng);

  for (int epoch = 0; epoch < learn_opts.epochs; ++epoch) {
    detail::ordered_pipeline(
        order.size(), threads,
        [&](std::size_t i) { return encoder.encode(dataset.graphs[order[i]]); },
        [&](std::size_t i, Hypervector h) { memory.update(h, dataset.graphs[order[i]].label); });
  }

  save_model(Model{encoder_config, std::move(memory)}, out_path);
  std::cout << "wrote " << out_path << " (" << dataset.graphs.size() << " samples, "
            << strategy_name(strategy) << ", " << backend_name(encoder_config.backend) << ", d="
            << encoder_config.dim << ")\n";
  return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::string& graphs_path,
                std::string name, unsigned threads) {
  const Model model = load_model(model_path);
  if (name.empty()) name = fs::path(graphs_path).filename().string();
  const Dataset dataset = parse_tudataset(graphs_path, name);
  if (model.encoder.keying == NodeKeying::NodeLabel && !dataset.labeled()) {
    throw DataError("model keys on node labels but dataset '" + name + "' is unlabeled");
  }
  const Encoder encoder(model.encoder);

  struct Row {
    int label;
    std::vector<std::pair<int, double>> scores;
  };
  std::vector<Row> rows(dataset.graphs.size());
  detail::parallel_for(dataset.graphs.size(), threads, [&](std::size_t i) {
    const Prediction pred = model.memory.predict(encoder.encode(dataset.graphs[i]));
    rows[i] = Row{pred.label, pred.scores};
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::cout << i << "\t" << rows[i].label;
    for (const auto& [label, score] : rows[i].scores) {
      std::printf("\t%d=%.6f", label, score);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int run_harness(const std::string& name, const DataOptions& data_opts,
                ExperimentConfig config, const std::string& axis,
                const std::vector<std::string>& values, const std::string& csv_path,
                const std::string& json_path) {
  const Dataset dataset = resolve_dataset(name, data_opts);
  config.dataset = dataset.name;
  std::vector<ExperimentResult> results;
  if (axis.empty()) {
    results.push_back(run_experiment(config, dataset));
  } else {
    results = sweep(config, sweep_axis_from_name(axis), values, dataset);
  }
  if (!csv_path.empty()) write_csv_file(results, csv_path);
  if (!json_path.empty()) write_json_file(results, json_path);
  print_summary(results, std::cout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("starhd ") + version() +
               " - hyperdimensional graph classification for molecular screens"};
  app.require_subcommand(1);

  std::function<int()> action;

  // fetch
  {
    auto* cmd = app.add_subcommand("fetch", "Download and cache a TUDataset archive");
    auto name = std::make_shared<std::string>();
    auto opts = std::make_shared<DataOptions>();
    cmd->add_option("name", *name, "Dataset name, e.g. MCF-7")->required();
    add_data_options(cmd, *opts);
    cmd->callback([&action, name, opts] {
      action = [name, opts] { return cmd_fetch(*name, *opts); };
    });
  }

  // list-datasets
  {
    auto* cmd = app.add_subcommand("list-datasets", "List the known anticancer screens");
    auto opts = std::make_shared<DataOptions>();
    add_data_options(cmd, *opts);
    cmd->callback([&action, opts] {
      action = [opts] { return cmd_list_datasets(*opts); };
    });
  }

  // train
  {
    auto* cmd = app.add_subcommand("train", "Train on the full dataset and write a model file");
    auto name = std::make_shared<std::string>();
    auto data_opts = std::make_shared<DataOptions>();
    auto enc_opts = std::make_shared<EncoderOptions>();
    auto learn_opts = std::make_shared<LearnerOptions>();
    auto seed = std::make_shared<std::uint64_t>(0);
    auto threads = std::make_shared<unsigned>(0);
    auto out_path = std::make_shared<std::string>("model.hdm");
    auto threshold_opt = std::make_shared<CLI::Option*>(nullptr);
    cmd->add_option("dataset", *name, "Dataset name")->required();
    add_data_options(cmd, *data_opts);
    add_encoder_options(cmd, *enc_opts);
    add_learner_options(cmd, *learn_opts, threshold_opt.get());
    cmd->add_option("--seed", *seed, "Codebook and ordering seed")->capture_default_str();
    cmd->add_option("--threads", *threads, "Worker threads (0 = cores)")->capture_default_str();
    cmd->add_option("--out", *out_path, "Output model path")->capture_default_str();
    cmd->callback([=, &action] {
      action = [=] {
        check_threshold_usage(*threshold_opt, learn_opts->strategy);
        return cmd_train(*name, *data_opts, *enc_opts, *learn_opts, *seed, *threads, *out_path);
      };
    });
  }

  // predict
  {
    auto* cmd = app.add_subcommand("predict", "Classify every graph in a dataset directory");
    auto model_path = std::make_shared<std::string>();
    auto graphs_path = std::make_shared<std::string>();
    auto name = std::make_shared<std::string>();
    auto threads = std::make_shared<unsigned>(0);
    cmd->add_option("model", *model_path, "Trained .hdm model file")->required();
    cmd->add_option("graphs", *graphs_path, "Directory with TUDataset text files")->required();
    cmd->add_option("--name", *name, "Dataset file prefix (default: directory name)");
    cmd->add_option("--threads", *threads, "Worker threads (0 = cores)")->capture_default_str();
    cmd->callback([=, &action] {
      action = [=] { return cmd_predict(*model_path, *graphs_path, *name, *threads); };
    });
  }

  // eval / sweep share most options
  auto add_harness_command = [&](const char* command_name, const char* help, bool with_axis) {
    auto* cmd = app.add_subcommand(command_name, help);
    auto name = std::make_shared<std::string>();
    auto data_opts = std::make_shared<DataOptions>();
    auto enc_opts = std::make_shared<EncoderOptions>();
    auto learn_opts = std::make_shared<LearnerOptions>();
    auto threshold_opt = std::make_shared<CLI::Option*>(nullptr);
    auto reps = std::make_shared<std::size_t>(10);
    auto seeds = std::make_shared<std::vector<std::uint64_t>>();
    auto fraction = std::make_shared<double>(0.8);
    auto threads = std::make_shared<unsigned>(0);
    auto no_timing = std::make_shared<bool>(false);
    auto csv_path = std::make_shared<std::string>();
    auto json_path = std::make_shared<std::string>();
    auto axis = std::make_shared<std::string>();
    auto values = std::make_shared<std::vector<std::string>>();
    cmd->add_option("dataset", *name, "Dataset name")->required();
    add_data_options(cmd, *data_opts);
    add_encoder_options(cmd, *enc_opts);
    add_learner_options(cmd, *learn_opts, threshold_opt.get());
    cmd->add_option("--reps", *reps, "Repetitions (seeds 0..N-1 unless --seeds)")
        ->capture_default_str();
    cmd->add_option("--seeds", *seeds, "Explicit repetition seeds")->delimiter(',');
    cmd->add_option("--train-fraction", *fraction, "Stratified train fraction")
        ->capture_default_str();
    cmd->add_option("--threads", *threads, "Worker threads (0 = cores)")->capture_default_str();
    cmd->add_flag("--no-timing", *no_timing, "Skip per-sample wall-clock timing");
    cmd->add_option("--out", *csv_path, "CSV report path");
    cmd->add_option("--json", *json_path, "JSON report path");
    if (with_axis) {
      cmd->add_option("--axis", *axis, "Sweep axis: dims, threshold, strategy, vsa, encoder")
          ->required();
      cmd->add_option("--values", *values, "Axis values")->delimiter(',')->required();
    }
    cmd->callback([=, &action] {
      action = [=] {
        check_threshold_usage(*threshold_opt, learn_opts->strategy);
        ExperimentConfig config;
        config.encoder = make_encoder_config(*enc_opts, 0);
        config.strategy = strategy_from_name(learn_opts->strategy);
        config.threshold = learn_opts->threshold;
        config.train_fraction = *fraction;
        config.seeds = make_seeds(*reps, *seeds);
        config.epochs = learn_opts->epochs;
        config.timing = !*no_timing;
        config.threads = *threads;
        return run_harness(*name, *data_opts, config, *axis, *values, *csv_path, *json_path);
      };
    });
  };
  add_harness_command("eval", "Run the repeated split/train/score experiment", false);
  add_harness_command("sweep", "Run one experiment per axis value with paired seeds", true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "starhd: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "starhd: " << e.what() << "\n";
    return kExitData;
  } catch (const FetchError& e) {
    std::cerr << "starhd: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    std::cerr << "starhd: " << e.what() << "\n";
    return kExitData;
  } catch (const DomainError& e) {
    std::cerr << "starhd: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "starhd: " << e.what() << "\n";
    return kExitRuntime;
  }
}
