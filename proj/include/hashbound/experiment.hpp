#pragma once

#include <optional>

#include "hashbound/checkpoint.hpp"
#include "hashbound/dataset.hpp"
#include "hashbound/encoder.hpp"
#include "hashbound/retrieval_eval.hpp"

namespace hashbound {

struct ExperimentResult {
  TrainResult training;
  EvalReport report;
};

/// Encodes split.query against split.database and evaluates.
EvalReport evaluate_encoder(const Encoder& params, const FeatureDataset& data, const DatasetSplit& split,
                            std::optional<std::size_t> k);

/// train() followed by evaluate_encoder() on the same split.
ExperimentResult run_experiment(const FeatureDataset& data, const DatasetSplit& split,
                                const TrainConfig& config, std::optional<std::size_t> k);

}  // namespace hashbound
