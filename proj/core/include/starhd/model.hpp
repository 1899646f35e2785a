#pragma once

#include <filesystem>

#include "starhd/encoders.hpp"
#include "starhd/learner.hpp"

namespace starhd {

/// A trained classifier as shipped on disk (`.hdm`): the encoder
/// configuration needed to reproduce the encoding at inference time plus
/// the associative memory block. Layout: magic "SHDM", format version,
/// encoder config (kind, keying, centrality, backend, dimensionality,
/// codebook seed), then the memory in its own serialized format.
struct Model {
  EncoderConfig encoder;
  AssociativeMemory memory;
};

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace starhd
