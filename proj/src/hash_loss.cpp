#include "hashbound/hash_loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hashbound/errors.hpp"

namespace hashbound {

namespace {

struct HingeTerm {
  Eigen::Index a;
  Eigen::Index b;  // row in the code batch, or a center row when against_center
  bool similar;
};

double negative_denominator(const MarginSet& margins) {
  const double a = margins.alpha_neg;
  return std::max(a * a, 1.0);
}

// Evaluates the two hinge averages. `partner(term)` yields the vector the
// sample is compared with; only the sample side (row a) receives gradient
// when `symmetric` is false.
template <typename Partner>
LossReport hinge_average(const Eigen::Ref<const RelaxedBatch>& codes,
                         const std::vector<HingeTerm>& terms, const MarginSet& margins,
                         Partner partner, bool symmetric) {
  LossReport report;
  report.grad_u = Eigen::MatrixXd::Zero(codes.rows(), codes.cols());
  for (const auto& t : terms) (t.similar ? report.positive_terms : report.negative_terms)++;
  report.degenerate_negative_margin = margins.alpha_neg == 0 && report.negative_terms > 0;

  const double alpha_pos = margins.alpha_pos;
  const double alpha_neg = margins.alpha_neg;
  const double pos_scale =
      report.positive_terms ? 1.0 / (static_cast<double>(report.positive_terms) * alpha_pos * alpha_pos) : 0.0;
  const double neg_scale =
      report.negative_terms
          ? 1.0 / (static_cast<double>(report.negative_terms) * negative_denominator(margins))
          : 0.0;

  for (const auto& t : terms) {
    const auto other = partner(t);
    const double th = codes.row(t.a).dot(other);
    double excess;
    double scale;
    if (t.similar) {
      excess = std::min(0.0, th - alpha_pos);
      scale = pos_scale;
    } else {
      excess = std::max(0.0, th - alpha_neg);
      scale = neg_scale;
    }
    if (excess == 0.0) continue;
    report.pairwise += scale * excess * excess;
    const double d_theta = 2.0 * scale * excess;
    report.grad_u.row(t.a) += d_theta * other;
    if (symmetric) report.grad_u.row(t.b) += d_theta * codes.row(t.a);
  }
  report.total = report.pairwise;
  return report;
}

void add_quantization(LossReport& report, const Eigen::Ref<const RelaxedBatch>& codes,
                      double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw InputError("lambda must be finite and >= 0, got " + std::to_string(lambda));
  }
  report.lambda = lambda;
  const QuantizationTerm q = quantization_loss(codes);
  report.quantization = q.value;
  report.total = report.pairwise + lambda * q.value;
  if (lambda != 0.0) report.grad_u += lambda * q.grad_u;
}

}  // namespace

ClassCenters::ClassCenters(int num_classes, int code_length, double momentum)
    : centers_(Eigen::MatrixXd::Zero(num_classes, code_length)),
      momentum_(momentum),
      counts_(static_cast<std::size_t>(num_classes), 0) {
  if (num_classes < 1 || code_length < 1) throw InputError("ClassCenters: empty shape");
  if (!(momentum >= 0.0 && momentum <= 1.0)) {
    throw InputError("ClassCenters: momentum must lie in [0, 1], got " + std::to_string(momentum));
  }
}

void ClassCenters::set_center(int c, const Eigen::Ref<const Eigen::RowVectorXd>& value) {
  if (c < 0 || c >= num_classes() || value.size() != centers_.cols()) {
    throw InputError("ClassCenters::set_center: bad class or length");
  }
  centers_.row(c) = value;
  counts_[static_cast<std::size_t>(c)] = std::max<std::size_t>(counts_[static_cast<std::size_t>(c)], 1);
}

void validate_pairs(const PairBatch& batch, std::size_t num_codes) {
  if (batch.empty()) throw InputError("pair batch is empty");
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const auto& p = batch[k];
    if (p.i == p.j) throw InputError("pair " + std::to_string(k) + " compares a code with itself");
    if (p.i >= num_codes || p.j >= num_codes) {
      throw InputError("pair " + std::to_string(k) + " indexes outside the code batch");
    }
  }
}

LossReport pairwise_loss(const Eigen::Ref<const RelaxedBatch>& codes, const PairBatch& batch,
                         const MarginSet& margins) {
  validate_pairs(batch, static_cast<std::size_t>(codes.rows()));
  if (margins.alpha_pos <= 0) throw InputError("alpha_pos must be positive");
  std::vector<HingeTerm> terms;
  terms.reserve(batch.size());
  for (const auto& p : batch) {
    terms.push_back({static_cast<Eigen::Index>(p.i), static_cast<Eigen::Index>(p.j), p.similar});
  }
  return hinge_average(
      codes, terms, margins, [&](const HingeTerm& t) { return codes.row(t.b); }, true);
}

QuantizationTerm quantization_loss(const Eigen::Ref<const RelaxedBatch>& codes) {
  if (codes.size() == 0) throw InputError("quantization_loss: empty batch");
  if (!codes.allFinite()) throw InputError("quantization_loss: non-finite code entry");
  const Eigen::MatrixXd signs = codes.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
  const Eigen::MatrixXd residual = codes - signs;
  return {residual.squaredNorm(), 2.0 * residual};
}

LossReport total_loss(const Eigen::Ref<const RelaxedBatch>& codes, const PairBatch& batch,
                      const MarginSet& margins, double lambda) {
  LossReport report = pairwise_loss(codes, batch, margins);
  add_quantization(report, codes, lambda);
  return report;
}

LossReport classwise_loss(const Eigen::Ref<const RelaxedBatch>& codes, std::span<const int> labels,
                          const ClassCenters& centers, const MarginSet& margins, double lambda) {
  if (codes.rows() == 0) throw InputError("classwise_loss: empty batch");
  if (static_cast<Eigen::Index>(labels.size()) != codes.rows()) {
    throw InputError("classwise_loss: one label per code required");
  }
  if (centers.code_length() != codes.cols()) throw InputError("classwise_loss: center length mismatch");
  if (margins.alpha_pos <= 0) throw InputError("alpha_pos must be positive");

  std::vector<HingeTerm> terms;
  for (std::size_t n = 0; n < labels.size(); ++n) {
    const int c = labels[n];
    if (c < 0 || c >= centers.num_classes()) {
      throw InputError("classwise_loss: unknown class id " + std::to_string(c));
    }
    if (!centers.initialized(c)) {
      throw InputError("classwise_loss: center for class " + std::to_string(c) + " is not initialized");
    }
    const auto row = static_cast<Eigen::Index>(n);
    terms.push_back({row, c, true});
    for (int other = 0; other < centers.num_classes(); ++other) {
      if (other != c && centers.initialized(other)) terms.push_back({row, other, false});
    }
  }
  LossReport report = hinge_average(
      codes, terms, margins, [&](const HingeTerm& t) { return centers.center(static_cast<int>(t.b)); },
      false);
  add_quantization(report, codes, lambda);
  return report;
}

ClassCenters update_centers(ClassCenters centers, const Eigen::Ref<const RelaxedBatch>& codes,
                            std::span<const int> labels) {
  if (static_cast<Eigen::Index>(labels.size()) != codes.rows()) {
    throw InputError("update_centers: one label per code required");
  }
  if (codes.cols() != centers.code_length()) throw InputError("update_centers: length mismatch");
  if (!codes.allFinite()) throw InputError("update_centers: non-finite code entry");

  const int m = centers.num_classes();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(m, codes.cols());
  std::vector<std::size_t> seen(static_cast<std::size_t>(m), 0);
  for (std::size_t n = 0; n < labels.size(); ++n) {
    const int c = labels[n];
    if (c < 0 || c >= m) throw InputError("update_centers: unknown class id " + std::to_string(c));
    sums.row(c) += codes.row(static_cast<Eigen::Index>(n));
    ++seen[static_cast<std::size_t>(c)];
  }
  for (int c = 0; c < m; ++c) {
    const auto k = seen[static_cast<std::size_t>(c)];
    if (k == 0) continue;
    const Eigen::RowVectorXd mean = sums.row(c) / static_cast<double>(k);
    auto& count = centers.counts_[static_cast<std::size_t>(c)];
    if (count == 0) {
      centers.centers_.row(c) = mean;
    } else {
      centers.centers_.row(c) = centers.momentum_ * centers.centers_.row(c) + (1.0 - centers.momentum_) * mean;
    }
    ++count;
  }
  return centers;
}

}  // namespace hashbound
