#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "hashbound/coding_bounds.hpp"
#include "hashbound/dataset.hpp"
#include "hashbound/encoder.hpp"

namespace hashbound {

/// Everything `eval` needs to re-encode a dataset exactly as training saw it.
struct Checkpoint {
  Encoder params;
  TrainConfig config;
  int epoch = 0;
  int num_classes = 0;
  MarginSet margins;
  SplitSpec split_spec;
  std::uint64_t split_seed = 0;
  /// Where the data came from: a CSV path, or generator parameters.
  std::string data_path;
  std::optional<SyntheticSpec> synthetic;
};

/// JSON with dims, seed, epoch and flat row-major weight arrays. Doubles are
/// written in shortest round-trip form, so load(save(x)) == x bit for bit.
std::string checkpoint_to_json(const Checkpoint& ck);

/// Throws ParseError carrying the parser's line/column on malformed text.
Checkpoint checkpoint_from_json(const std::string& text);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace hashbound
