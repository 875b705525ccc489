#include "hashbound/encoder.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>

#include "hashbound/retrieval_eval.hpp"

namespace hashbound {

namespace {

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& m, std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(rows[r]));
  return out;
}

std::vector<int> gather_labels(const std::vector<int>& labels, std::span<const std::size_t> rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto r : rows) out.push_back(labels[r]);
  return out;
}

bool all_finite(const Encoder& p) {
  return p.w1.allFinite() && p.b1.allFinite() && p.w2.allFinite() && p.b2.allFinite();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PairBatch sample_pairs(std::span<const int> batch_labels) {
  PairBatch pairs;
  const std::size_t n = batch_labels.size();
  pairs.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j, batch_labels[i] == batch_labels[j]});
  }
  return pairs;
}

void TrainConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) {
    throw InputError("invalid " + field + ": " + why);
  };
  if (code_length < 1) bad("bits", "must be >= 1");
  if (hidden_dim < 1) bad("hidden", "must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) bad("lr", "must be a finite value > 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) bad("momentum", "must lie in [0, 1)");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) bad("lambda", "must be a finite value >= 0");
  if (batch_size < 2) bad("batch-size", "must be >= 2");
  if (epochs < 1) bad("epochs", "must be >= 1");
  if (!(center_momentum >= 0.0 && center_momentum < 1.0)) bad("center-momentum", "must lie in [0, 1)");
  if (margin_override) {
    const int a = *margin_override;
    if (a < -code_length || a > code_length) bad("alpha-neg", "must lie in [-bits, bits]");
    if ((code_length - a) % 2 != 0) bad("alpha-neg", "bits - alpha_neg must be even");
  }
}

MarginSet training_margins(const TrainConfig& config, int num_classes) {
  MarginSet margins = derive_margins({config.code_length, static_cast<std::uint64_t>(num_classes)});
  if (config.margin_override) {
    margins.alpha_neg = *config.margin_override;
    margins.d_min_star = (config.code_length - margins.alpha_neg) / 2;
  }
  if (margins.alpha_neg == 0) {
    std::cerr << "warning: alpha_neg = 0; the negative hinge uses a unit denominator\n";
  }
  return margins;
}

TrainResult train(const FeatureDataset& data, const DatasetSplit& split, const TrainConfig& config) {
  config.validate();
  data.validate();
  if (data.num_classes < 2) throw InputError("train: need at least two classes");
  if (split.train.size() < 2) throw InputError("train: training split needs at least two rows");
  if (split.validation.empty()) throw InputError("train: validation split is empty");

  TrainResult result;
  result.history.margins = training_margins(config, data.num_classes);
  result.history.classwise = config.classwise;
  const MarginSet& margins = result.history.margins;

  Encoder params = init_encoder(data.dim(), config.hidden_dim, config.code_length, config.seed);
  Encoder velocity = Encoder::zeros(data.dim(), config.hidden_dim, config.code_length);
  ClassCenters centers(data.num_classes, config.code_length, config.center_momentum);
  const SgdConfig sgd{config.learning_rate, config.momentum};

  const Eigen::MatrixXd train_x = gather_rows(data.features, split.train);
  const std::vector<int> train_y = gather_labels(data.labels, split.train);
  const Eigen::MatrixXd val_x = gather_rows(data.features, split.validation);
  const std::vector<int> val_y = gather_labels(data.labels, split.validation);
  std::vector<std::size_t> val_db_rows;
  std::set_difference(split.database.begin(), split.database.end(), split.validation.begin(),
                      split.validation.end(), std::back_inserter(val_db_rows));
  if (val_db_rows.empty()) val_db_rows = split.database;
  const Eigen::MatrixXd val_db_x = gather_rows(data.features, val_db_rows);
  const std::vector<int> val_db_y = gather_labels(data.labels, val_db_rows);

  Rng shuffle_rng(config.seed ^ 0xA5A5A5A5DEADBEEFULL);
  std::vector<std::size_t> order(split.train.size());

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_rng.shuffle(std::span(order));

    double sum_pair = 0.0, sum_quan = 0.0, sum_total = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t stop = std::min(order.size(), start + config.batch_size);
      if (stop - start < 2) continue;
      const std::span<const std::size_t> idx(order.data() + start, stop - start);
      const Eigen::MatrixXd x = gather_rows(train_x, idx);
      const std::vector<int> y = gather_labels(train_y, idx);

      const Eigen::MatrixXd u = forward(params, x);
      LossReport loss;
      if (config.classwise) {
        // Classes seen for the first time start at their batch mean.
        std::vector<int> fresh_labels;
        std::vector<Eigen::Index> fresh_rows;
        for (std::size_t n = 0; n < y.size(); ++n) {
          if (!centers.initialized(y[n])) {
            fresh_labels.push_back(y[n]);
            fresh_rows.push_back(static_cast<Eigen::Index>(n));
          }
        }
        if (!fresh_rows.empty()) centers = update_centers(centers, u(fresh_rows, Eigen::all), fresh_labels);
        loss = classwise_loss(u, y, centers, margins, config.lambda);
      } else {
        loss = total_loss(u, sample_pairs(y), margins, config.lambda);
      }
      if (!std::isfinite(loss.total) || !loss.grad_u.allFinite()) {
        throw TrainingDiverged("non-finite loss at epoch " + std::to_string(epoch) +
                               " (learning rate or lambda too high?)");
      }
      const Encoder grads = backward(params, x, loss.grad_u);
      sgd_step(params, grads, sgd, velocity);
      if (!all_finite(params)) {
        throw TrainingDiverged("non-finite parameters at epoch " + std::to_string(epoch) +
                               " (learning rate or lambda too high?)");
      }
      if (config.classwise) centers = update_centers(centers, u, y);

      sum_pair += loss.pairwise;
      sum_quan += loss.quantization;
      sum_total += loss.total;
      ++batches;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    const auto nb = static_cast<double>(batches);
    rec.pairwise = sum_pair / nb;
    rec.quantization = sum_quan / nb;
    rec.total = sum_total / nb;

    const Eigen::MatrixXd val_u = forward(params, val_x);
    const Eigen::MatrixXd db_u = forward(params, val_db_x);
    if (!val_u.allFinite() || !db_u.allFinite()) {
      throw TrainingDiverged("non-finite codes at epoch " + std::to_string(epoch));
    }
    rec.val_map = mean_average_precision(binarize_rows(val_u), val_y, binarize_rows(db_u), val_db_y).map;

    const Eigen::MatrixXd train_u = forward(params, train_x);
    std::vector<int> center_labels;
    const auto center_codes = class_center_codes(train_u, train_y, data.num_classes, &center_labels);
    rec.min_dist = center_codes.size() >= 2 ? min_interclass_distance(center_codes, center_labels) : 0;

    result.history.epochs.push_back(rec);
  }
  result.params = std::move(params);
  return result;
}

std::string history_csv(const TrainHistory& history, const TrainConfig& config) {
  std::ostringstream out;
  out << "# loss=" << (history.classwise ? "classwise" : "pairwise") << " bits=" << config.code_length
      << " alpha_pos=" << history.margins.alpha_pos << " alpha_neg=" << history.margins.alpha_neg
      << " d_min_star=" << history.margins.d_min_star << " lambda=" << fmt(config.lambda)
      << " seed=" << config.seed << '\n';
  out << "epoch,pairwise,quan,total,val_map,min_dist\n";
  for (const auto& r : history.epochs) {
    out << r.epoch << ',' << fmt(r.pairwise) << ',' << fmt(r.quantization) << ',' << fmt(r.total) << ','
        << fmt(r.val_map) << ',' << r.min_dist << '\n';
  }
  return out.str();
}

}  // namespace hashbound
