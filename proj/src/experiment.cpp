#include "hashbound/experiment.hpp"

namespace hashbound {

EvalReport evaluate_encoder(const Encoder& params, const FeatureDataset& data, const DatasetSplit& split,
                            std::optional<std::size_t> k) {
  const FeatureDataset queries = data.subset(split.query);
  const FeatureDataset database = data.subset(split.database);
  const Eigen::MatrixXd query_codes = forward(params, queries.features);
  const Eigen::MatrixXd db_codes = forward(params, database.features);
  return evaluate_relaxed(query_codes, queries.labels, db_codes, database.labels, data.num_classes, k);
}

ExperimentResult run_experiment(const FeatureDataset& data, const DatasetSplit& split,
                                const TrainConfig& config, std::optional<std::size_t> k) {
  ExperimentResult result;
  result.training = train(data, split, config);
  result.report = evaluate_encoder(result.training.params, data, split, k);
  return result;
}

}  // namespace hashbound
