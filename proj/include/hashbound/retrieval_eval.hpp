#pragma once

// Exact Hamming ranking and MAP evaluation.
//
// Ranking orders the database by (distance ascending, index ascending).
// AP@k divides by the number of relevant items retrieved within the top k,
// not by the number of relevant items in the whole database; an empty top k
// scores 0.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hashbound/binary_codes.hpp"

namespace hashbound {

struct EvalReport {
  double map = 0.0;
  /// Equals map when no cutoff was requested.
  double map_at_k = 0.0;
  std::optional<std::size_t> k;
  std::vector<std::pair<std::size_t, double>> precision_curve;
  std::vector<double> per_query_ap;

  /// Min distance between binarized class centers; -1 until diagnostics run.
  int min_interclass_distance = -1;
  /// Min distance over all database code pairs with different labels.
  int min_interclass_sample_distance = -1;
  int d_min_star = 0;
  bool centers_distinct = false;
  bool bound_holds_at_observed = false;

  int code_length = 0;
  int num_classes = 0;
  std::size_t num_queries = 0;
  std::size_t database_size = 0;
};

/// Database indices ordered by (hamming distance, index).
std::vector<std::size_t> rank(const BinaryCode& query, std::span<const BinaryCode> database);

/// relevance[i] != 0 marks rank i as relevant. k = nullopt evaluates the full list.
double average_precision(std::span<const int> relevance, std::optional<std::size_t> k = std::nullopt);

/// 1, 5, 10, 50, 100, 500, ... up to database_size.
std::vector<std::size_t> precision_cutoffs(std::size_t database_size);

/// MAP over queries with relevance = label equality. Fills map, map_at_k,
/// precision_curve and per_query_ap; the codebook diagnostics stay unset.
EvalReport mean_average_precision(std::span<const BinaryCode> queries, std::span<const int> query_labels,
                                  std::span<const BinaryCode> database, std::span<const int> database_labels,
                                  std::optional<std::size_t> k = std::nullopt);

/// Min distance over pairs with different labels; InputError with fewer than two classes.
int min_interclass_distance(std::span<const BinaryCode> codes, std::span<const int> labels);

/// sgn of the per-class mean relaxed code. Classes without rows are skipped.
std::vector<BinaryCode> class_center_codes(const Eigen::Ref<const Eigen::MatrixXd>& relaxed,
                                           std::span<const int> labels, int num_classes,
                                           std::vector<int>* center_labels = nullptr);

/// Binarizes both sides, runs MAP, and fills the codebook diagnostics from
/// database-side class centers against the bound for (L, num_classes).
EvalReport evaluate_relaxed(const Eigen::Ref<const Eigen::MatrixXd>& queries, std::span<const int> query_labels,
                            const Eigen::Ref<const Eigen::MatrixXd>& database,
                            std::span<const int> database_labels, int num_classes,
                            std::optional<std::size_t> k = std::nullopt);

std::string report_to_json(const EvalReport& report, bool include_per_query = true);
std::string precision_curve_csv(const EvalReport& report);

}  // namespace hashbound
