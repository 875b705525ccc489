#pragma once

// Shallow hashing encoder: u = W2 tanh(W1 x + b1) + b2, one sample per row.
// The parameter containers are templated on the scalar type; training runs
// in double.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hashbound/coding_bounds.hpp"
#include "hashbound/dataset.hpp"
#include "hashbound/errors.hpp"
#include "hashbound/hash_loss.hpp"
#include "hashbound/rng.hpp"

namespace hashbound {

template <typename Scalar>
struct EncoderParams {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix w1;  // H x D
  Vector b1;  // H
  Matrix w2;  // L x H
  Vector b2;  // L

  static EncoderParams zeros(int input_dim, int hidden_dim, int code_length) {
    return {Matrix::Zero(hidden_dim, input_dim), Vector::Zero(hidden_dim),
            Matrix::Zero(code_length, hidden_dim), Vector::Zero(code_length)};
  }

  int input_dim() const { return static_cast<int>(w1.cols()); }
  int hidden_dim() const { return static_cast<int>(w1.rows()); }
  int code_length() const { return static_cast<int>(w2.rows()); }
  std::size_t parameter_count() const {
    return static_cast<std::size_t>(w1.size() + b1.size() + w2.size() + b2.size());
  }

  bool same_shape(const EncoderParams& o) const {
    return w1.rows() == o.w1.rows() && w1.cols() == o.w1.cols() && b1.size() == o.b1.size() &&
           w2.rows() == o.w2.rows() && w2.cols() == o.w2.cols() && b2.size() == o.b2.size();
  }

  void validate() const {
    if (w1.rows() < 1 || w1.cols() < 1 || w2.rows() < 1) throw InputError("encoder: empty layer");
    if (b1.size() != w1.rows() || w2.cols() != w1.rows() || b2.size() != w2.rows()) {
      throw InputError("encoder: inconsistent layer shapes");
    }
    if (!w1.allFinite() || !b1.allFinite() || !w2.allFinite() || !b2.allFinite()) {
      throw InputError("encoder: non-finite parameter");
    }
  }

  /// Applies f(tensor) to w1, b1, w2, b2 in that order.
  template <typename F>
  void for_each_tensor(F&& f) {
    f(w1);
    f(b1);
    f(w2);
    f(b2);
  }
  template <typename F>
  void for_each_tensor(F&& f) const {
    f(w1);
    f(b1);
    f(w2);
    f(b2);
  }

  friend bool operator==(const EncoderParams& a, const EncoderParams& b) {
    return a.same_shape(b) && a.w1 == b.w1 && a.b1 == b.b1 && a.w2 == b.w2 && a.b2 == b.b2;
  }
};

using Encoder = EncoderParams<double>;

/// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)) drawn row-major, w1 then w2;
/// biases zero.
template <typename Scalar = double>
EncoderParams<Scalar> init_encoder(int input_dim, int hidden_dim, int code_length, std::uint64_t seed) {
  if (input_dim < 1 || hidden_dim < 1 || code_length < 1) {
    throw InputError("init_encoder: dimensions must be >= 1");
  }
  auto p = EncoderParams<Scalar>::zeros(input_dim, hidden_dim, code_length);
  Rng rng(seed);
  auto fill = [&rng](auto& m) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = static_cast<Scalar>(rng.uniform(-bound, bound));
    }
  };
  fill(p.w1);
  fill(p.w2);
  return p;
}

template <typename Scalar, typename Derived>
void check_features(const EncoderParams<Scalar>& params, const Eigen::MatrixBase<Derived>& features) {
  if (features.cols() != params.input_dim()) {
    throw InputError("encoder: feature dimension " + std::to_string(features.cols()) +
                     " does not match input dimension " + std::to_string(params.input_dim()));
  }
}

template <typename Scalar, typename Derived>
typename EncoderParams<Scalar>::Matrix hidden_activations(const EncoderParams<Scalar>& params,
                                                          const Eigen::MatrixBase<Derived>& features) {
  check_features(params, features);
  typename EncoderParams<Scalar>::Matrix pre = features * params.w1.transpose();
  pre.rowwise() += params.b1.transpose();
  return pre.array().tanh().matrix();
}

/// Relaxed codes, one row per feature row.
template <typename Scalar, typename Derived>
typename EncoderParams<Scalar>::Matrix forward(const EncoderParams<Scalar>& params,
                                               const Eigen::MatrixBase<Derived>& features) {
  typename EncoderParams<Scalar>::Matrix out = hidden_activations(params, features) * params.w2.transpose();
  out.rowwise() += params.b2.transpose();
  return out;
}

/// Parameter gradients of a loss whose gradient w.r.t. the outputs is grad_u.
template <typename Scalar, typename Derived, typename GradDerived>
EncoderParams<Scalar> backward(const EncoderParams<Scalar>& params, const Eigen::MatrixBase<Derived>& features,
                               const Eigen::MatrixBase<GradDerived>& grad_u) {
  check_features(params, features);
  if (grad_u.rows() != features.rows() || grad_u.cols() != params.code_length()) {
    throw InputError("encoder backward: grad_u must be N x L");
  }
  using Matrix = typename EncoderParams<Scalar>::Matrix;
  const Matrix hidden = hidden_activations(params, features);
  EncoderParams<Scalar> g;
  g.w2 = grad_u.transpose() * hidden;
  g.b2 = grad_u.colwise().sum().transpose();
  const Matrix d_pre = ((grad_u * params.w2).array() * (1 - hidden.array().square())).matrix();
  g.w1 = d_pre.transpose() * features;
  g.b1 = d_pre.colwise().sum().transpose();
  return g;
}

struct SgdConfig {
  double learning_rate = 0.05;
  double momentum = 0.5;
};

/// v <- momentum v - lr g; theta <- theta + v.
template <typename Scalar>
void sgd_step(EncoderParams<Scalar>& params, const EncoderParams<Scalar>& grads, const SgdConfig& config,
              EncoderParams<Scalar>& velocity) {
  if (!params.same_shape(grads) || !params.same_shape(velocity)) {
    throw InputError("sgd_step: shape mismatch");
  }
  const auto mu = static_cast<Scalar>(config.momentum);
  const auto lr = static_cast<Scalar>(config.learning_rate);
  velocity.w1 = mu * velocity.w1 - lr * grads.w1;
  velocity.b1 = mu * velocity.b1 - lr * grads.b1;
  velocity.w2 = mu * velocity.w2 - lr * grads.w2;
  velocity.b2 = mu * velocity.b2 - lr * grads.b2;
  params.w1 += velocity.w1;
  params.b1 += velocity.b1;
  params.w2 += velocity.w2;
  params.b2 += velocity.b2;
}

/// All unordered within-batch pairs (i < j), similar iff the labels match.
PairBatch sample_pairs(std::span<const int> batch_labels);

struct TrainConfig {
  int code_length = 12;
  int hidden_dim = 64;
  double learning_rate = 0.02;
  double momentum = 0.5;
  double lambda = 0.002;
  std::size_t batch_size = 16;
  int epochs = 50;
  std::uint64_t seed = 1;
  bool classwise = false;
  double center_momentum = 0.9;
  /// Replaces the bound-derived alpha_neg; must satisfy |a| <= L with L - a even.
  std::optional<int> margin_override;

  /// Throws InputError naming the offending field.
  void validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double pairwise = 0.0;
  double quantization = 0.0;
  double total = 0.0;
  double val_map = 0.0;
  int min_dist = 0;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  MarginSet margins;
  bool classwise = false;
};

struct TrainResult {
  Encoder params;
  TrainHistory history;
};

/// Margins for training: derive_margins(L, M) unless an override is set.
MarginSet training_margins(const TrainConfig& config, int num_classes);

/// Seeded minibatch SGD over split.train. Validation MAP each epoch ranks
/// split.validation against the database rows outside validation.
/// Throws TrainingDiverged on a non-finite loss or parameter.
TrainResult train(const FeatureDataset& data, const DatasetSplit& split, const TrainConfig& config);

/// CSV with a leading "# ..." metadata line, then
/// epoch,pairwise,quan,total,val_map,min_dist.
std::string history_csv(const TrainHistory& history, const TrainConfig& config);

}  // namespace hashbound
