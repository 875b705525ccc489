#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hashbound {

/// N x D features with dense class ids in [0, num_classes).
struct FeatureDataset {
  Eigen::MatrixXd features;
  std::vector<int> labels;
  int num_classes = 0;
  /// Original label value for each dense id (identity for generated data).
  std::vector<long long> label_values;

  std::size_t size() const { return labels.size(); }
  int dim() const { return static_cast<int>(features.cols()); }

  /// Throws InputError if any invariant (shape, dense labels, finiteness) fails.
  void validate() const;

  FeatureDataset subset(std::span<const std::size_t> rows) const;
};

struct SyntheticSpec {
  int num_classes = 10;
  int per_class = 100;
  int dim = 32;
  double center_scale = 6.0;
  double noise_sigma = 1.0;
  std::uint64_t seed = 1;
};

/// Class centers uniform on the sphere of radius center_scale, samples are
/// center + N(0, noise_sigma^2 I). Rows are grouped by class.
FeatureDataset generate_synthetic(const SyntheticSpec& spec);

/// Header "label,f0,...,f{D-1}"; labels are integers, remapped to dense ids in
/// ascending order of their value.
FeatureDataset load_csv(const std::filesystem::path& path);

/// Writes the original label values and features with 17 significant digits.
void write_csv(const std::filesystem::path& path, const FeatureDataset& data);

struct SplitSpec {
  std::size_t query_per_class = 10;
  /// nullopt: every database row outside validation is used for training.
  std::optional<std::size_t> train_per_class = 50;
  std::size_t validation_per_class = 10;
};

/// Row indices into the source dataset, each list ascending.
/// query and database partition the rows; train and validation are disjoint
/// subsets of database.
struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> query;
  std::vector<std::size_t> database;
};

/// Per-class seeded sampling without replacement. Throws InputError when a
/// class is too small for the spec or the database would be empty.
DatasetSplit split(const FeatureDataset& data, const SplitSpec& spec, std::uint64_t seed);

std::string split_to_json(const DatasetSplit& s);
DatasetSplit split_from_json(const std::string& text);

}  // namespace hashbound
