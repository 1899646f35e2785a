#include "starhd/learner.hpp"

#include <bit>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "starhd/errors.hpp"

namespace starhd {

namespace {

void write_u8(std::ostream& out, std::uint8_t v) {
  out.write(reinterpret_cast<const char*>(&v), 1);
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
  unsigned char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(buf), 4);
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

void write_i64_le(std::ostream& out, std::int64_t v) {
  write_u64_le(out, static_cast<std::uint64_t>(v));
}

void write_f64_le(std::ostream& out, double v) {
  write_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

std::uint8_t read_u8(std::istream& in) {
  std::uint8_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 1);
  if (!in) throw IoError("truncated memory file");
  return v;
}

std::uint32_t read_u32_le(std::istream& in) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  if (!in) throw IoError("truncated memory file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64_le(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw IoError("truncated memory file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

constexpr std::uint32_t kMemoryFormatVersion = 1;

}  // namespace

const char* strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::Add:
      return "add";
    case Strategy::AdaptHd:
      return "adapthd";
    case Strategy::OnlineHd:
      return "onlinehd";
    case Strategy::RefineHd:
      return "refinehd";
  }
  return "unknown";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "add") return Strategy::Add;
  if (name == "adapthd") return Strategy::AdaptHd;
  if (name == "onlinehd") return Strategy::OnlineHd;
  if (name == "refinehd") return Strategy::RefineHd;
  throw ConfigError("unknown training strategy: " + name);
}

AssociativeMemory::AssociativeMemory(Backend backend, std::size_t dim, Strategy strategy,
                                     double threshold_factor)
    : backend_(backend), dim_(dim), strategy_(strategy), threshold_factor_(threshold_factor) {
  validate_dimensionality(backend, dim);
  if (strategy == Strategy::RefineHd && !(threshold_factor > 0.0)) {
    std::ostringstream msg;
    msg << "refinehd threshold factor must be positive, got " << threshold_factor;
    throw ConfigError(msg.str());
  }
}

double AssociativeMemory::class_similarity(const Hypervector& h,
                                           const Hypervector& accumulator) const {
  if (accumulator.is_zero()) return 0.0;  // no evidence yet
  return similarity(h, accumulator);
}

Hypervector& AssociativeMemory::accumulator_for(int label) {
  auto it = classes_.find(label);
  if (it == classes_.end()) {
    it = classes_.emplace(label, Hypervector::zero(backend_, dim_)).first;
  }
  return it->second;
}

bool AssociativeMemory::all_zero() const {
  for (const auto& [label, acc] : classes_) {
    if (!acc.is_zero()) return false;
  }
  return true;
}

void AssociativeMemory::update(const Hypervector& h, int label) {
  switch (strategy_) {
    case Strategy::Add:
      return update_add(h, label);
    case Strategy::AdaptHd:
      return update_adapthd(h, label);
    case Strategy::OnlineHd:
      return update_onlinehd(h, label);
    case Strategy::RefineHd:
      return update_refinehd(h, label);
  }
}

void AssociativeMemory::train(std::span<const std::pair<Hypervector, int>> samples, int epochs) {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  for (int e = 0; e < epochs; ++e) {
    for (const auto& [h, label] : samples) update(h, label);
  }
}

void AssociativeMemory::update_add(const Hypervector& h, int label) {
  accumulate(accumulator_for(label), h);
}

void AssociativeMemory::update_adapthd(const Hypervector& h, int label) {
  if (all_zero()) {
    accumulate(accumulator_for(label), h);
    return;
  }
  // Predict against the classes known so far; a brand-new label is admitted
  // only afterwards, so its zero accumulator cannot win its own argmax.
  const Prediction pred = predict(h);
  if (pred.label == label) return;
  accumulate(accumulator_for(label), h);
  accumulate(accumulator_for(pred.label), h, -1.0);
}

void AssociativeMemory::update_onlinehd(const Hypervector& h, int label) {
  if (all_zero()) {
    accumulate(accumulator_for(label), h);  // weight 1 - 0
    return;
  }
  const Prediction pred = predict(h);
  if (pred.label == label) return;
  Hypervector& own = accumulator_for(label);
  accumulate(own, h, 1.0 - class_similarity(h, own));
  Hypervector& other = accumulator_for(pred.label);
  accumulate(other, h, -(1.0 - class_similarity(h, other)));
}

void AssociativeMemory::update_refinehd(const Hypervector& h, int label) {
  if (!(threshold_factor_ > 0.0)) throw ConfigError("refinehd threshold factor must be positive");
  if (all_zero()) {
    mis_stats_.record(0.0);  // cold start counts as a miss at zero similarity
    accumulate(accumulator_for(label), h);
    return;
  }
  const Prediction pred = predict(h);
  Hypervector& own = accumulator_for(label);
  const double s_own = class_similarity(h, own);
  if (pred.label != label) {
    mis_stats_.record(s_own);
    accumulate(own, h, 1.0 - s_own);
    Hypervector& other = accumulator_for(pred.label);
    accumulate(other, h, -(1.0 - class_similarity(h, other)));
    return;
  }
  // Correctly classified: reinforce only low-confidence samples, gated by
  // the scaled mean of the similarities seen at misclassification time.
  if (mis_stats_.count > 0 && s_own < threshold_factor_ * mis_stats_.mean) {
    accumulate(own, h, 1.0 - s_own);
  }
}

Prediction AssociativeMemory::predict(const Hypervector& h) const {
  if (classes_.empty() || all_zero()) {
    throw DomainError("predict on an untrained memory (all class accumulators zero)");
  }
  Prediction pred;
  pred.scores.reserve(classes_.size());
  double best = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();
  for (const auto& [label, acc] : classes_) {  // ascending label order
    const double s = class_similarity(h, acc);
    pred.scores.emplace_back(label, s);
    if (s > best) {
      second = best;
      best = s;
      pred.label = label;
    } else if (s > second) {
      second = s;
    }
  }
  pred.margin = classes_.size() > 1 ? best - second : best;
  return pred;
}

double AssociativeMemory::score_binary(const Hypervector& h, int positive, int negative) const {
  const auto pos = classes_.find(positive);
  const auto neg = classes_.find(negative);
  if (pos == classes_.end() || neg == classes_.end()) {
    throw DomainError("score_binary: class absent from the memory");
  }
  return class_similarity(h, pos->second) - class_similarity(h, neg->second);
}

void AssociativeMemory::save(std::ostream& out) const {
  write_u32_le(out, kMemoryFormatVersion);
  write_u8(out, static_cast<std::uint8_t>(backend_));
  write_u64_le(out, dim_);
  write_u8(out, static_cast<std::uint8_t>(strategy_));
  write_f64_le(out, threshold_factor_);
  write_u64_le(out, classes_.size());
  write_u64_le(out, mis_stats_.count);
  write_f64_le(out, mis_stats_.mean);
  for (const auto& [label, acc] : classes_) {
    write_i64_le(out, label);
    write_hypervector(out, acc);
  }
  if (!out) throw IoError("failed while writing memory");
}

AssociativeMemory AssociativeMemory::load(std::istream& in) {
  const std::uint32_t version = read_u32_le(in);
  if (version != kMemoryFormatVersion) {
    throw IoError("unsupported memory format version " + std::to_string(version));
  }
  const std::uint8_t backend_tag = read_u8(in);
  if (backend_tag > 2) throw IoError("unknown backend tag in memory file");
  const auto backend = static_cast<Backend>(backend_tag);
  const std::uint64_t dim = read_u64_le(in);
  const std::uint8_t strategy_tag = read_u8(in);
  if (strategy_tag > 3) throw IoError("unknown strategy tag in memory file");
  const auto strategy = static_cast<Strategy>(strategy_tag);
  const double threshold = std::bit_cast<double>(read_u64_le(in));
  const std::uint64_t class_count = read_u64_le(in);
  MisStats stats;
  stats.count = read_u64_le(in);
  stats.mean = std::bit_cast<double>(read_u64_le(in));

  AssociativeMemory memory(backend, dim, strategy, strategy == Strategy::RefineHd
                                                       ? threshold
                                                       : kDefaultRefineThreshold);
  memory.threshold_factor_ = threshold;
  memory.mis_stats_ = stats;
  for (std::uint64_t i = 0; i < class_count; ++i) {
    const auto label = static_cast<int>(static_cast<std::int64_t>(read_u64_le(in)));
    Hypervector acc = read_hypervector(in);
    if (acc.backend() != backend || acc.dim() != dim) {
      throw IoError("memory file class vector does not match its header");
    }
    memory.classes_.emplace(label, std::move(acc));
  }
  return memory;
}

}  // namespace starhd
