#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "starhd/vsa.hpp"

namespace starhd {

/// How a training sample enters the class prototypes.
///
/// Add      every sample is superposed onto its class vector.
/// AdaptHd  only misclassified samples, plain add/subtract.
/// OnlineHd only misclassified samples, weighted by (1 - similarity).
/// RefineHd misclassified samples as OnlineHd, plus low-confidence correct
///          samples gated by a threshold scaled from the running mean of
///          misclassification similarities.
enum class Strategy : std::uint8_t { Add = 0, AdaptHd = 1, OnlineHd = 2, RefineHd = 3 };

const char* strategy_name(Strategy strategy);
Strategy strategy_from_name(const std::string& name);

inline constexpr double kDefaultRefineThreshold = 1.8;

/// Running statistics over the similarities recorded at misclassification.
struct MisStats {
  std::uint64_t count = 0;
  double mean = 0.0;

  void record(double s) {
    ++count;
    mean += (s - mean) / static_cast<double>(count);
  }
};

struct Prediction {
  int label = 0;
  std::vector<std::pair<int, double>> scores;  // ascending class label
  double margin = 0.0;                         // top score minus runner-up
};

/// Per-class prototype hypervectors plus the strategy state. Class vectors
/// start at zero; unseen labels are admitted on first contact. Similarity
/// against a still-zero accumulator is defined as 0, and while every
/// accumulator is zero the incoming sample is treated as misclassified
/// with no counter-class to subtract from (cold start).
class AssociativeMemory {
 public:
  AssociativeMemory(Backend backend, std::size_t dim, Strategy strategy,
                    double threshold_factor = kDefaultRefineThreshold);

  Backend backend() const { return backend_; }
  std::size_t dim() const { return dim_; }
  Strategy strategy() const { return strategy_; }
  double threshold_factor() const { return threshold_factor_; }
  const MisStats& mis_stats() const { return mis_stats_; }
  const std::map<int, Hypervector>& classes() const { return classes_; }

  /// Applies the configured strategy to one sample.
  void update(const Hypervector& h, int label);

  /// Runs `update` over the samples in sequence order, `epochs` times.
  void train(std::span<const std::pair<Hypervector, int>> samples, int epochs = 1);

  /// Strategy rules, exposed individually for replay tests.
  void update_add(const Hypervector& h, int label);
  void update_adapthd(const Hypervector& h, int label);
  void update_onlinehd(const Hypervector& h, int label);
  void update_refinehd(const Hypervector& h, int label);

  /// Similarity against every class, argmax label (ties to the smallest
  /// label). Throws DomainError when all accumulators are zero.
  Prediction predict(const Hypervector& h) const;

  /// Binary decision score: similarity to `positive` minus similarity to
  /// `negative`. Sign-consistent with predict for two-class memories.
  /// Throws DomainError when either class is absent.
  double score_binary(const Hypervector& h, int positive, int negative) const;

  /// Model block layout: format version, backend, dimensionality, strategy,
  /// threshold, class count, misclassification stats, then per class the
  /// label and the canonical hypervector bytes. Reloading reproduces
  /// inference scores bit-exactly.
  void save(std::ostream& out) const;
  static AssociativeMemory load(std::istream& in);

 private:
  double class_similarity(const Hypervector& h, const Hypervector& accumulator) const;
  Hypervector& accumulator_for(int label);
  bool all_zero() const;

  Backend backend_;
  std::size_t dim_;
  Strategy strategy_;
  double threshold_factor_;
  std::map<int, Hypervector> classes_;
  MisStats mis_stats_;
};

}  // namespace starhd
