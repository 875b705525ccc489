#include "hashbound/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "hashbound/errors.hpp"
#include "hashbound/rng.hpp"

namespace hashbound {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view field, T& value) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  return ec == std::errc() && ptr == end && !field.empty();
}

[[noreturn]] void fail_line(const std::filesystem::path& path, std::size_t line, const std::string& why) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

void FeatureDataset::validate() const {
  if (labels.empty()) throw InputError("dataset is empty");
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw InputError("dataset: feature rows and labels differ in count");
  }
  if (features.cols() < 1) throw InputError("dataset: feature dimension must be >= 1");
  if (!features.allFinite()) throw InputError("dataset: non-finite feature value");
  if (num_classes < 1) throw InputError("dataset: no classes");
  std::vector<bool> present(static_cast<std::size_t>(num_classes), false);
  for (const int c : labels) {
    if (c < 0 || c >= num_classes) throw InputError("dataset: label outside [0, num_classes)");
    present[static_cast<std::size_t>(c)] = true;
  }
  if (std::find(present.begin(), present.end(), false) != present.end()) {
    throw InputError("dataset: some class id in [0, num_classes) has no samples");
  }
}

FeatureDataset FeatureDataset::subset(std::span<const std::size_t> rows) const {
  FeatureDataset out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) = features.row(static_cast<Eigen::Index>(rows[r]));
    out.labels.push_back(labels[rows[r]]);
  }
  out.num_classes = num_classes;
  out.label_values = label_values;
  return out;
}

FeatureDataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.num_classes < 2) throw InputError("generate_synthetic: num_classes must be >= 2");
  if (spec.per_class < 1) throw InputError("generate_synthetic: per_class must be >= 1");
  if (spec.dim < 1) throw InputError("generate_synthetic: dim must be >= 1");
  if (!(spec.noise_sigma >= 0.0) || !(spec.center_scale >= 0.0)) {
    throw InputError("generate_synthetic: center_scale and noise_sigma must be >= 0");
  }
  Rng rng(spec.seed);
  Eigen::MatrixXd centers(spec.num_classes, spec.dim);
  for (int c = 0; c < spec.num_classes; ++c) {
    Eigen::RowVectorXd direction(spec.dim);
    do {
      for (int k = 0; k < spec.dim; ++k) direction(k) = rng.normal();
    } while (direction.norm() == 0.0);
    centers.row(c) = spec.center_scale * direction.normalized();
  }

  FeatureDataset data;
  data.num_classes = spec.num_classes;
  const Eigen::Index n = static_cast<Eigen::Index>(spec.num_classes) * spec.per_class;
  data.features.resize(n, spec.dim);
  data.labels.reserve(static_cast<std::size_t>(n));
  Eigen::Index row = 0;
  for (int c = 0; c < spec.num_classes; ++c) {
    for (int s = 0; s < spec.per_class; ++s, ++row) {
      for (int k = 0; k < spec.dim; ++k) {
        data.features(row, k) = centers(c, k) + spec.noise_sigma * rng.normal();
      }
      data.labels.push_back(c);
    }
  }
  for (int c = 0; c < spec.num_classes; ++c) data.label_values.push_back(c);
  return data;
}

FeatureDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset " + path.string());
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail_line(path, 1, "empty file");
  ++line_no;
  const auto header = split_fields(line);
  if (header.size() < 2 || header[0] != "label") {
    fail_line(path, line_no, "header must be label,f0,...,f{D-1}");
  }
  for (std::size_t k = 1; k < header.size(); ++k) {
    if (header[k] != "f" + std::to_string(k - 1)) {
      fail_line(path, line_no, "header column " + std::to_string(k) + " should be f" + std::to_string(k - 1));
    }
  }
  const std::size_t dim = header.size() - 1;

  std::vector<long long> raw_labels;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != dim + 1) {
      fail_line(path, line_no, "expected " + std::to_string(dim + 1) + " fields, got " + std::to_string(fields.size()));
    }
    long long label = 0;
    if (!parse_number(fields[0], label)) fail_line(path, line_no, "label is not an integer");
    raw_labels.push_back(label);
    for (std::size_t k = 1; k <= dim; ++k) {
      double v = 0.0;
      if (!parse_number(fields[k], v) || !std::isfinite(v)) {
        fail_line(path, line_no, "field " + std::to_string(k) + " is not a finite number");
      }
      values.push_back(v);
    }
  }
  if (raw_labels.empty()) fail_line(path, line_no, "no data rows");

  std::map<long long, int> dense;
  for (const auto l : raw_labels) dense.emplace(l, 0);
  FeatureDataset data;
  for (auto& [value, id] : dense) {
    id = static_cast<int>(data.label_values.size());
    data.label_values.push_back(value);
  }
  data.num_classes = static_cast<int>(dense.size());
  data.features.resize(static_cast<Eigen::Index>(raw_labels.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < raw_labels.size(); ++r) {
    data.labels.push_back(dense.at(raw_labels[r]));
    for (std::size_t k = 0; k < dim; ++k) {
      data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = values[r * dim + k];
    }
  }
  return data;
}

void write_csv(const std::filesystem::path& path, const FeatureDataset& data) {
  data.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "label";
  for (int k = 0; k < data.dim(); ++k) out << ",f" << k;
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < data.size(); ++r) {
    const int c = data.labels[r];
    out << (data.label_values.empty() ? c : data.label_values[static_cast<std::size_t>(c)]);
    for (int k = 0; k < data.dim(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", data.features(static_cast<Eigen::Index>(r), k));
      out << ',' << buf;
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

DatasetSplit split(const FeatureDataset& data, const SplitSpec& spec, std::uint64_t seed) {
  data.validate();
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(data.num_classes));
  for (std::size_t r = 0; r < data.size(); ++r) by_class[static_cast<std::size_t>(data.labels[r])].push_back(r);

  Rng rng(seed);
  DatasetSplit out;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& rows = by_class[c];
    const std::size_t need = spec.query_per_class + spec.validation_per_class + spec.train_per_class.value_or(0);
    if (need > rows.size()) {
      throw InputError("split: class " + std::to_string(c) + " has " + std::to_string(rows.size()) +
                       " rows but the split asks for " + std::to_string(need));
    }
    rng.shuffle(std::span(rows));
    auto it = rows.begin();
    out.query.insert(out.query.end(), it, it + static_cast<std::ptrdiff_t>(spec.query_per_class));
    it += static_cast<std::ptrdiff_t>(spec.query_per_class);
    out.database.insert(out.database.end(), it, rows.end());
    out.validation.insert(out.validation.end(), it, it + static_cast<std::ptrdiff_t>(spec.validation_per_class));
    it += static_cast<std::ptrdiff_t>(spec.validation_per_class);
    const auto train_end =
        spec.train_per_class ? it + static_cast<std::ptrdiff_t>(*spec.train_per_class) : rows.end();
    out.train.insert(out.train.end(), it, train_end);
  }
  if (out.database.empty()) throw InputError("split: database is empty, retrieval is undefined");
  for (auto* v : {&out.train, &out.validation, &out.query, &out.database}) std::sort(v->begin(), v->end());
  return out;
}

std::string split_to_json(const DatasetSplit& s) {
  nlohmann::ordered_json j;
  j["train"] = s.train;
  j["validation"] = s.validation;
  j["query"] = s.query;
  j["database"] = s.database;
  return j.dump(1) + "\n";
}

DatasetSplit split_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    DatasetSplit s;
    j.at("train").get_to(s.train);
    j.at("validation").get_to(s.validation);
    j.at("query").get_to(s.query);
    j.at("database").get_to(s.database);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("split manifest: ") + e.what());
  }
}

}  // namespace hashbound
