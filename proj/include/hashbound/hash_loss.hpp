#pragma once

// Bound-derived hinge loss on relaxed codes.
//
// For relaxed codes u_n (rows of an N x L matrix) and theta_ij = u_i . u_j:
//
//   pairwise = 1/|P| sum_P ([theta - a_pos]_-)^2 / a_pos^2
//            + 1/|N| sum_N ([theta - a_neg]_+)^2 / a_neg^2
//   quan     = sum_n || sgn(u_n) - u_n ||^2
//   total    = pairwise + lambda * quan
//
// An empty positive or negative set contributes 0. The a_neg^2 denominator is
// floored at 1, which only matters for a_neg = 0. sgn is treated as a constant
// when differentiating the quantization term.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hashbound/coding_bounds.hpp"
#include "hashbound/errors.hpp"

namespace hashbound {

using RelaxedCode = Eigen::VectorXd;
/// One relaxed code per row.
using RelaxedBatch = Eigen::MatrixXd;

struct LabeledPair {
  std::size_t i = 0;
  std::size_t j = 0;
  bool similar = false;
};

using PairBatch = std::vector<LabeledPair>;

struct LossReport {
  double pairwise = 0.0;
  double quantization = 0.0;
  double total = 0.0;
  double lambda = 0.0;
  /// d total / d u, same shape as the code batch.
  Eigen::MatrixXd grad_u;
  std::size_t positive_terms = 0;
  std::size_t negative_terms = 0;
  /// alpha_neg was 0 and its squared denominator was replaced by 1.
  bool degenerate_negative_margin = false;
};

struct QuantizationTerm {
  double value = 0.0;
  Eigen::MatrixXd grad_u;
};

class ClassCenters {
 public:
  ClassCenters() = default;
  ClassCenters(int num_classes, int code_length, double momentum = 0.9);

  int num_classes() const { return static_cast<int>(centers_.rows()); }
  int code_length() const { return static_cast<int>(centers_.cols()); }
  double momentum() const { return momentum_; }
  const Eigen::MatrixXd& centers() const { return centers_; }
  auto center(int c) const { return centers_.row(c); }
  std::size_t count(int c) const { return counts_[static_cast<std::size_t>(c)]; }
  bool initialized(int c) const { return count(c) > 0; }

  /// Test hook: place a center directly and mark it initialized.
  void set_center(int c, const Eigen::Ref<const Eigen::RowVectorXd>& value);

 private:
  friend ClassCenters update_centers(ClassCenters, const Eigen::Ref<const RelaxedBatch>&,
                                     std::span<const int>);
  Eigen::MatrixXd centers_;
  double momentum_ = 0.9;
  std::vector<std::size_t> counts_;
};

template <typename A, typename B>
double theta(const Eigen::MatrixBase<A>& u_i, const Eigen::MatrixBase<B>& u_j) {
  if (u_i.size() != u_j.size()) throw InputError("theta: length mismatch");
  return u_i.derived().template cast<double>().dot(u_j.derived().template cast<double>());
}

/// Throws InputError when the batch is empty, a pair is i == j, or an index is out of range.
void validate_pairs(const PairBatch& batch, std::size_t num_codes);

LossReport pairwise_loss(const Eigen::Ref<const RelaxedBatch>& codes, const PairBatch& batch,
                         const MarginSet& margins);

QuantizationTerm quantization_loss(const Eigen::Ref<const RelaxedBatch>& codes);

LossReport total_loss(const Eigen::Ref<const RelaxedBatch>& codes, const PairBatch& batch,
                      const MarginSet& margins, double lambda);

/// Each sample is compared against its own class center (positive) and every
/// other initialized center (negative). Centers are constants; gradients only
/// reach the sample codes. The quantization term is included with weight lambda.
LossReport classwise_loss(const Eigen::Ref<const RelaxedBatch>& codes, std::span<const int> labels,
                          const ClassCenters& centers, const MarginSet& margins,
                          double lambda = 0.0);

/// center <- momentum * center + (1 - momentum) * batch class mean; a class
/// seen for the first time takes the batch mean outright.
ClassCenters update_centers(ClassCenters centers, const Eigen::Ref<const RelaxedBatch>& codes,
                            std::span<const int> labels);

}  // namespace hashbound
