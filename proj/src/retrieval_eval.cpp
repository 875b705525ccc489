#include "hashbound/retrieval_eval.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "hashbound/coding_bounds.hpp"
#include "hashbound/errors.hpp"

namespace hashbound {

std::vector<std::size_t> rank(const BinaryCode& query, std::span<const BinaryCode> database) {
  // Counting sort on distance; buckets are filled in index order, which
  // yields the tie rule for free.
  std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(query.length()) + 1);
  for (std::size_t i = 0; i < database.size(); ++i) {
    buckets[static_cast<std::size_t>(hamming_distance(query, database[i]))].push_back(i);
  }
  std::vector<std::size_t> order;
  order.reserve(database.size());
  for (const auto& b : buckets) order.insert(order.end(), b.begin(), b.end());
  return order;
}

double average_precision(std::span<const int> relevance, std::optional<std::size_t> k) {
  if (k && *k == 0) throw InputError("average_precision: k must be >= 1");
  const std::size_t cutoff = std::min(relevance.size(), k.value_or(relevance.size()));
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < cutoff; ++i) {
    if (relevance[i] != 0) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

std::vector<std::size_t> precision_cutoffs(std::size_t database_size) {
  std::vector<std::size_t> ks;
  for (std::size_t decade = 1; decade <= database_size; decade *= 10) {
    ks.push_back(decade);
    if (decade * 5 <= database_size) ks.push_back(decade * 5);
    if (decade > std::numeric_limits<std::size_t>::max() / 10) break;
  }
  return ks;
}

EvalReport mean_average_precision(std::span<const BinaryCode> queries, std::span<const int> query_labels,
                                  std::span<const BinaryCode> database, std::span<const int> database_labels,
                                  std::optional<std::size_t> k) {
  if (queries.empty()) throw InputError("mean_average_precision: no queries");
  if (database.empty()) throw InputError("mean_average_precision: empty database");
  if (queries.size() != query_labels.size() || database.size() != database_labels.size()) {
    throw InputError("mean_average_precision: labels must match codes one to one");
  }
  if (k && *k == 0) throw InputError("mean_average_precision: k must be >= 1");
  const int length = queries.front().length();
  for (const auto& c : database) {
    if (c.length() != length) throw InputError("mean_average_precision: code length mismatch");
  }

  EvalReport report;
  report.k = k;
  report.code_length = length;
  report.num_queries = queries.size();
  report.database_size = database.size();
  const auto cutoffs = precision_cutoffs(database.size());
  std::vector<double> precision_sums(cutoffs.size(), 0.0);
  double map_sum = 0.0;
  double map_k_sum = 0.0;
  std::vector<int> relevance(database.size());

  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto order = rank(queries[q], database);
    for (std::size_t r = 0; r < order.size(); ++r) {
      relevance[r] = database_labels[order[r]] == query_labels[q] ? 1 : 0;
    }
    const double ap = average_precision(relevance);
    report.per_query_ap.push_back(ap);
    map_sum += ap;
    map_k_sum += k ? average_precision(relevance, k) : ap;

    std::size_t hits = 0;
    std::size_t pos = 0;
    for (std::size_t c = 0; c < cutoffs.size(); ++c) {
      for (; pos < cutoffs[c]; ++pos) hits += static_cast<std::size_t>(relevance[pos]);
      precision_sums[c] += static_cast<double>(hits) / static_cast<double>(cutoffs[c]);
    }
  }
  const auto nq = static_cast<double>(queries.size());
  report.map = map_sum / nq;
  report.map_at_k = map_k_sum / nq;
  for (std::size_t c = 0; c < cutoffs.size(); ++c) {
    report.precision_curve.emplace_back(cutoffs[c], precision_sums[c] / nq);
  }
  return report;
}

int min_interclass_distance(std::span<const BinaryCode> codes, std::span<const int> labels) {
  if (codes.size() != labels.size()) throw InputError("min_interclass_distance: one label per code required");
  if (codes.empty() || std::all_of(labels.begin(), labels.end(), [&](int l) { return l == labels[0]; })) {
    throw InputError("min_interclass_distance: needs at least two classes");
  }
  int best = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      if (labels[i] != labels[j]) best = std::min(best, hamming_distance(codes[i], codes[j]));
    }
  }
  return best;
}

std::vector<BinaryCode> class_center_codes(const Eigen::Ref<const Eigen::MatrixXd>& relaxed,
                                           std::span<const int> labels, int num_classes,
                                           std::vector<int>* center_labels) {
  if (static_cast<Eigen::Index>(labels.size()) != relaxed.rows()) {
    throw InputError("class_center_codes: one label per code required");
  }
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(num_classes, relaxed.cols());
  std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes), 0);
  for (std::size_t n = 0; n < labels.size(); ++n) {
    const int c = labels[n];
    if (c < 0 || c >= num_classes) throw InputError("class_center_codes: label out of range");
    sums.row(c) += relaxed.row(static_cast<Eigen::Index>(n));
    ++counts[static_cast<std::size_t>(c)];
  }
  std::vector<BinaryCode> centers;
  if (center_labels) center_labels->clear();
  for (int c = 0; c < num_classes; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0) continue;
    centers.push_back(from_signs(sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)])));
    if (center_labels) center_labels->push_back(c);
  }
  return centers;
}

EvalReport evaluate_relaxed(const Eigen::Ref<const Eigen::MatrixXd>& queries, std::span<const int> query_labels,
                            const Eigen::Ref<const Eigen::MatrixXd>& database,
                            std::span<const int> database_labels, int num_classes,
                            std::optional<std::size_t> k) {
  if (queries.cols() != database.cols()) throw InputError("evaluate_relaxed: code length mismatch");
  const auto query_codes = binarize_rows(queries);
  const auto db_codes = binarize_rows(database);
  EvalReport report = mean_average_precision(query_codes, query_labels, db_codes, database_labels, k);
  report.num_classes = num_classes;

  std::vector<int> center_labels;
  const auto centers = class_center_codes(database, database_labels, num_classes, &center_labels);
  if (centers.size() >= 2) {
    report.min_interclass_distance = min_interclass_distance(centers, center_labels);
    report.min_interclass_sample_distance = min_interclass_distance(db_codes, database_labels);
    report.centers_distinct = report.min_interclass_distance > 0;
    const BoundProblem problem{report.code_length, static_cast<std::uint64_t>(centers.size())};
    if (BigUint(problem.num_classes) <= (BigUint(1) << report.code_length)) {
      report.d_min_star = solve_d_min_star(problem);
      report.bound_holds_at_observed = bound_holds(problem, report.min_interclass_distance);
    }
  }
  return report;
}

std::string report_to_json(const EvalReport& report, bool include_per_query) {
  nlohmann::ordered_json j;
  j["map"] = report.map;
  j["map_at_k"] = report.map_at_k;
  j["k"] = report.k ? nlohmann::ordered_json(*report.k) : nlohmann::ordered_json(nullptr);
  auto curve = nlohmann::ordered_json::array();
  for (const auto& [k, p] : report.precision_curve) curve.push_back({{"k", k}, {"precision", p}});
  j["precision_curve"] = curve;
  j["min_interclass_distance"] = report.min_interclass_distance;
  j["min_interclass_sample_distance"] = report.min_interclass_sample_distance;
  j["d_min_star"] = report.d_min_star;
  j["centers_distinct"] = report.centers_distinct;
  j["bound_holds_at_observed"] = report.bound_holds_at_observed;
  j["code_length"] = report.code_length;
  j["num_classes"] = report.num_classes;
  j["num_queries"] = report.num_queries;
  j["database_size"] = report.database_size;
  j["metadata"] = {{"tie_break", "database index ascending"},
                   {"ap_denominator", "relevant items retrieved within top k"}};
  if (include_per_query) j["per_query_ap"] = report.per_query_ap;
  return j.dump(2) + "\n";
}

std::string precision_curve_csv(const EvalReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "k,precision\n";
  for (const auto& [k, p] : report.precision_curve) out << k << ',' << p << '\n';
  return out.str();
}

}  // namespace hashbound
