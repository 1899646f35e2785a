#include "starhd/model.hpp"

#include <fstream>

#include "starhd/errors.hpp"

namespace starhd {

namespace {

constexpr char kMagic[4] = {'S', 'H', 'D', 'M'};
constexpr std::uint32_t kModelFormatVersion = 1;

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

std::uint32_t read_u32_le(std::istream& in) {
  unsigned char buf[4];
  in.read(reinterpret_cast<char*>(buf), 4);
  if (!in) throw IoError("truncated model file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64_le(std::istream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  if (!in) throw IoError("truncated model file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

std::uint8_t read_u8(std::istream& in) {
  char c = 0;
  in.read(&c, 1);
  if (!in) throw IoError("truncated model file");
  return static_cast<std::uint8_t>(c);
}

}  // namespace

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model to " + path.string());
  out.write(kMagic, 4);
  write_u32_le(out, kModelFormatVersion);
  const char enc[4] = {static_cast<char>(model.encoder.kind),
                       static_cast<char>(model.encoder.keying),
                       static_cast<char>(model.encoder.centrality),
                       static_cast<char>(model.encoder.backend)};
  out.write(enc, 4);
  write_u64_le(out, model.encoder.dim);
  write_u64_le(out, model.encoder.seed);
  model.memory.save(out);
  if (!out) throw IoError("failed while writing model to " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string_view(magic, 4) != std::string_view(kMagic, 4)) {
    throw IoError(path.string() + " is not a starhd model file");
  }
  const std::uint32_t version = read_u32_le(in);
  if (version != kModelFormatVersion) {
    throw IoError("unsupported model format version " + std::to_string(version));
  }
  EncoderConfig encoder;
  const std::uint8_t kind = read_u8(in);
  const std::uint8_t keying = read_u8(in);
  const std::uint8_t centrality = read_u8(in);
  const std::uint8_t backend = read_u8(in);
  if (kind > 2 || keying > 2 || centrality > 1 || backend > 2) {
    throw IoError(path.string() + ": unknown encoder tag in model header");
  }
  encoder.kind = static_cast<EncoderKind>(kind);
  encoder.keying = static_cast<NodeKeying>(keying);
  encoder.centrality = static_cast<CentralityMetric>(centrality);
  encoder.backend = static_cast<Backend>(backend);
  encoder.dim = read_u64_le(in);
  encoder.seed = read_u64_le(in);
  AssociativeMemory memory = AssociativeMemory::load(in);
  if (memory.backend() != encoder.backend || memory.dim() != encoder.dim) {
    throw IoError(path.string() + ": memory block does not match the encoder header");
  }
  return Model{encoder, std::move(memory)};
}

}  // namespace starhd
