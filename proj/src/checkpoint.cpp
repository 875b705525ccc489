#include "hashbound/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hashbound/errors.hpp"

namespace hashbound {

namespace {

using nlohmann::ordered_json;

template <typename Tensor>
std::vector<double> flatten_row_major(const Tensor& t) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(t.size()));
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.cols(); ++c) out.push_back(t(r, c));
  }
  return out;
}

template <typename Tensor>
void unflatten_row_major(const ordered_json& j, const char* name, Tensor& t) {
  const auto values = j.at(name).get<std::vector<double>>();
  if (values.size() != static_cast<std::size_t>(t.size())) {
    throw ParseError(std::string("checkpoint: array ") + name + " has " + std::to_string(values.size()) +
                     " entries, expected " + std::to_string(t.size()));
  }
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    for (Eigen::Index c = 0; c < t.cols(); ++c) t(r, c) = values[k++];
  }
}

}  // namespace

std::string checkpoint_to_json(const Checkpoint& ck) {
  const auto& p = ck.params;
  const auto& c = ck.config;
  ordered_json j;
  j["format"] = "hashbound-checkpoint";
  j["version"] = 1;
  j["dims"] = {{"input", p.input_dim()}, {"hidden", p.hidden_dim()}, {"code", p.code_length()}};
  j["seed"] = c.seed;
  j["epoch"] = ck.epoch;
  j["num_classes"] = ck.num_classes;
  j["margins"] = {{"d_min_star", ck.margins.d_min_star},
                  {"alpha_pos", ck.margins.alpha_pos},
                  {"alpha_neg", ck.margins.alpha_neg}};
  ordered_json train = {{"lr", c.learning_rate},          {"momentum", c.momentum},
                        {"lambda", c.lambda},             {"batch_size", c.batch_size},
                        {"epochs", c.epochs},             {"classwise", c.classwise},
                        {"center_momentum", c.center_momentum}};
  train["alpha_neg_override"] = c.margin_override ? ordered_json(*c.margin_override) : ordered_json(nullptr);
  j["train"] = train;
  ordered_json split = {{"query_per_class", ck.split_spec.query_per_class},
                        {"validation_per_class", ck.split_spec.validation_per_class},
                        {"seed", ck.split_seed}};
  split["train_per_class"] =
      ck.split_spec.train_per_class ? ordered_json(*ck.split_spec.train_per_class) : ordered_json(nullptr);
  j["split"] = split;
  ordered_json data;
  if (ck.synthetic) {
    const auto& s = *ck.synthetic;
    data["synthetic"] = {{"classes", s.num_classes},       {"per_class", s.per_class},
                         {"dim", s.dim},                   {"center_scale", s.center_scale},
                         {"noise_sigma", s.noise_sigma},   {"seed", s.seed}};
  } else {
    data["csv"] = ck.data_path;
  }
  j["data"] = data;
  j["w1"] = flatten_row_major(p.w1);
  j["b1"] = flatten_row_major(p.b1);
  j["w2"] = flatten_row_major(p.w2);
  j["b2"] = flatten_row_major(p.b2);
  return j.dump(1) + "\n";
}

Checkpoint checkpoint_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
  try {
    if (j.at("format") != "hashbound-checkpoint") throw ParseError("checkpoint: unknown format tag");
    Checkpoint ck;
    const auto& dims = j.at("dims");
    const int d = dims.at("input");
    const int h = dims.at("hidden");
    const int l = dims.at("code");
    if (d < 1 || h < 1 || l < 1) throw ParseError("checkpoint: dims must be >= 1");
    ck.params = Encoder::zeros(d, h, l);
    unflatten_row_major(j, "w1", ck.params.w1);
    unflatten_row_major(j, "b1", ck.params.b1);
    unflatten_row_major(j, "w2", ck.params.w2);
    unflatten_row_major(j, "b2", ck.params.b2);

    auto& c = ck.config;
    c.code_length = l;
    c.hidden_dim = h;
    c.seed = j.at("seed");
    ck.epoch = j.at("epoch");
    ck.num_classes = j.at("num_classes");
    const auto& m = j.at("margins");
    ck.margins.d_min_star = m.at("d_min_star");
    ck.margins.alpha_pos = m.at("alpha_pos");
    ck.margins.alpha_neg = m.at("alpha_neg");
    const auto& t = j.at("train");
    c.learning_rate = t.at("lr");
    c.momentum = t.at("momentum");
    c.lambda = t.at("lambda");
    c.batch_size = t.at("batch_size");
    c.epochs = t.at("epochs");
    c.classwise = t.at("classwise");
    c.center_momentum = t.at("center_momentum");
    if (!t.at("alpha_neg_override").is_null()) c.margin_override = t.at("alpha_neg_override").get<int>();
    const auto& s = j.at("split");
    ck.split_spec.query_per_class = s.at("query_per_class");
    ck.split_spec.validation_per_class = s.at("validation_per_class");
    ck.split_spec.train_per_class = s.at("train_per_class").is_null()
                                        ? std::nullopt
                                        : std::optional<std::size_t>(s.at("train_per_class").get<std::size_t>());
    ck.split_seed = s.at("seed");
    const auto& data = j.at("data");
    if (data.contains("synthetic")) {
      const auto& g = data.at("synthetic");
      ck.synthetic = SyntheticSpec{g.at("classes"),      g.at("per_class"),   g.at("dim"),
                                   g.at("center_scale"), g.at("noise_sigma"), g.at("seed")};
    } else {
      ck.data_path = data.at("csv");
    }
    ck.params.validate();
    return ck;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  } catch (const InputError& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << checkpoint_to_json(ck);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open checkpoint " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return checkpoint_from_json(text.str());
}

}  // namespace hashbound
