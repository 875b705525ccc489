#include "hashbound/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hashbound/binary_codes.hpp"
#include "hashbound/checkpoint.hpp"
#include "hashbound/coding_bounds.hpp"
#include "hashbound/dataset.hpp"
#include "hashbound/encoder.hpp"
#include "hashbound/errors.hpp"
#include "hashbound/experiment.hpp"
#include "hashbound/retrieval_eval.hpp"

namespace hashbound::cli {

namespace fs = std::filesystem;

namespace {

struct DataOptions {
  std::string csv;
  int classes = 10;
  int per_class = 100;
  int dim = 32;
  double center_scale = 6.0;
  double noise_sigma = 1.0;
  std::uint64_t data_seed = 7;
};

struct SplitOptions {
  std::size_t query_per_class = 10;
  std::string train_per_class = "50";
  std::size_t val_per_class = 10;
  std::uint64_t split_seed = 11;
};

struct TrainOptions {
  TrainConfig config;
  std::string alpha_neg;  // empty: bound-derived
  std::size_t k = 0;      // 0: full ranking
};

void add_data_options(CLI::App* app, DataOptions& d) {
  app->add_option("--data", d.csv, "CSV dataset (label,f0,...); synthetic data when omitted");
  app->add_option("--classes", d.classes, "synthetic: number of classes");
  app->add_option("--per-class", d.per_class, "synthetic: samples per class");
  app->add_option("--dim", d.dim, "synthetic: feature dimension");
  app->add_option("--center-scale", d.center_scale, "synthetic: radius of the class-center sphere");
  app->add_option("--noise-sigma", d.noise_sigma, "synthetic: per-coordinate noise std");
  app->add_option("--data-seed", d.data_seed, "synthetic: generator seed");
}

void add_split_options(CLI::App* app, SplitOptions& s) {
  app->add_option("--query-per-class", s.query_per_class, "query rows per class");
  app->add_option("--train-per-class", s.train_per_class, "training rows per class, or 'all'");
  app->add_option("--val-per-class", s.val_per_class, "validation rows per class");
  app->add_option("--split-seed", s.split_seed, "split sampling seed");
}

void add_train_options(CLI::App* app, TrainOptions& t) {
  auto& c = t.config;
  app->add_option("--bits", c.code_length, "code length L");
  app->add_option("--hidden", c.hidden_dim, "hidden layer width");
  app->add_option("--lr", c.learning_rate, "learning rate");
  app->add_option("--momentum", c.momentum, "SGD momentum");
  app->add_option("--lambda", c.lambda, "quantization loss weight");
  app->add_option("--batch-size", c.batch_size, "minibatch size");
  app->add_option("--epochs", c.epochs, "training epochs");
  app->add_option("--seed", c.seed, "initialization and shuffling seed");
  app->add_flag("--classwise", c.classwise, "compare samples with class centers");
  app->add_option("--center-momentum", c.center_momentum, "EMA momentum of class centers");
  app->add_option("--alpha-neg", t.alpha_neg, "override the bound-derived negative margin");
  app->add_option("--k", t.k, "MAP cutoff (0 = full ranking)");
}

std::optional<std::size_t> cutoff(std::size_t k) { return k == 0 ? std::nullopt : std::optional(k); }

int parse_int(std::string_view s, const std::string& field) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw InputError("invalid " + field + ": '" + std::string(s) + "' is not an integer");
  }
  return v;
}

SyntheticSpec synthetic_spec(const DataOptions& d) {
  SyntheticSpec s{d.classes, d.per_class, d.dim, d.center_scale, d.noise_sigma, d.data_seed};
  if (s.num_classes < 2) throw InputError("invalid classes: must be >= 2");
  if (s.per_class < 1) throw InputError("invalid per-class: must be >= 1");
  if (s.dim < 1) throw InputError("invalid dim: must be >= 1");
  if (!(s.center_scale >= 0.0)) throw InputError("invalid center-scale: must be >= 0");
  if (!(s.noise_sigma >= 0.0)) throw InputError("invalid noise-sigma: must be >= 0");
  return s;
}

SplitSpec split_spec(const SplitOptions& s) {
  SplitSpec spec;
  spec.query_per_class = s.query_per_class;
  spec.validation_per_class = s.val_per_class;
  if (s.train_per_class == "all") {
    spec.train_per_class = std::nullopt;
  } else {
    const int n = parse_int(s.train_per_class, "train-per-class");
    if (n < 1) throw InputError("invalid train-per-class: must be >= 1 or 'all'");
    spec.train_per_class = static_cast<std::size_t>(n);
  }
  return spec;
}

void finalize_train_options(TrainOptions& t) {
  if (!t.alpha_neg.empty()) t.config.margin_override = parse_int(t.alpha_neg, "alpha-neg");
  t.config.validate();
}

struct LoadedData {
  FeatureDataset data;
  std::optional<SyntheticSpec> synthetic;
  std::string csv;
};

/// Validation only: checks the source exists or the generator spec is sane.
void check_data_source(const DataOptions& d) {
  if (!d.csv.empty()) {
    if (!fs::is_regular_file(d.csv)) throw InputError("invalid data: no such file '" + d.csv + "'");
  } else {
    synthetic_spec(d);
  }
}

LoadedData load_data(const DataOptions& d) {
  LoadedData out;
  if (!d.csv.empty()) {
    out.data = load_csv(d.csv);
    out.csv = d.csv;
  } else {
    out.synthetic = synthetic_spec(d);
    out.data = generate_synthetic(*out.synthetic);
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- bound ---------------------------------------------------------------

struct BoundCommand {
  int bits = 0;
  std::uint64_t classes = 0;
  bool json = false;
};

int run_bound(const BoundCommand& cmd, std::ostream& out) {
  const BoundProblem problem{cmd.bits, cmd.classes};
  const MarginSet m = derive_margins(problem);
  const int radius = correction_radius(m.d_min_star);
  if (cmd.json) {
    nlohmann::ordered_json j = {{"bits", cmd.bits},
                                {"classes", cmd.classes},
                                {"d_min_star", m.d_min_star},
                                {"alpha_pos", m.alpha_pos},
                                {"alpha_neg", m.alpha_neg},
                                {"correction_radius", radius},
                                {"clamped", m.clamped},
                                {"unclamped_d_min_star", m.unclamped_d_min_star}};
    out << j.dump(2) << '\n';
  } else {
    out << "bits              " << cmd.bits << '\n'
        << "classes           " << cmd.classes << '\n'
        << "d_min_star        " << m.d_min_star << '\n'
        << "alpha_pos         " << m.alpha_pos << '\n'
        << "alpha_neg         " << m.alpha_neg << '\n'
        << "correction_radius " << radius << '\n'
        << "clamped           " << (m.clamped ? "yes (unclamped " + std::to_string(m.unclamped_d_min_star) + ")" : "no")
        << '\n';
  }
  return kSuccess;
}

// ---- gen-data ------------------------------------------------------------

struct GenCommand {
  DataOptions data;
  std::string out;
};

int run_gen(const GenCommand& cmd, std::ostream& out) {
  const FeatureDataset data = generate_synthetic(synthetic_spec(cmd.data));
  if (fs::path(cmd.out).has_parent_path()) fs::create_directories(fs::path(cmd.out).parent_path());
  write_csv(cmd.out, data);
  out << "wrote " << data.size() << " rows (" << data.num_classes << " classes, dim " << data.dim() << ") to "
      << cmd.out << '\n';
  return kSuccess;
}

// ---- train ---------------------------------------------------------------

struct TrainCommand {
  DataOptions data;
  SplitOptions split;
  TrainOptions train;
  std::string out_dir;
};

int run_train(TrainCommand cmd, const std::vector<std::string>& args, std::ostream& out) {
  finalize_train_options(cmd.train);
  const SplitSpec spec = split_spec(cmd.split);
  check_data_source(cmd.data);

  const LoadedData loaded = load_data(cmd.data);
  const DatasetSplit split = hashbound::split(loaded.data, spec, cmd.split.split_seed);
  const auto& config = cmd.train.config;
  const ExperimentResult result = run_experiment(loaded.data, split, config, cutoff(cmd.train.k));

  Checkpoint ck;
  ck.params = result.training.params;
  ck.config = config;
  ck.epoch = config.epochs;
  ck.num_classes = loaded.data.num_classes;
  ck.margins = result.training.history.margins;
  ck.split_spec = spec;
  ck.split_seed = cmd.split.split_seed;
  ck.synthetic = loaded.synthetic;
  ck.data_path = loaded.csv.empty() ? "" : fs::absolute(loaded.csv).string();

  const fs::path dir = cmd.out_dir;
  nlohmann::ordered_json meta = {{"command", "train"},
                                 {"loss", config.classwise ? "classwise" : "pairwise"},
                                 {"args", args},
                                 {"timestamp", timestamp_utc()}};
  write_text(dir / "checkpoint.json", checkpoint_to_json(ck));
  write_text(dir / "history.csv", history_csv(result.training.history, config));
  write_text(dir / "report.json", report_to_json(result.report));
  write_text(dir / "precision.csv", precision_curve_csv(result.report));
  write_text(dir / "split.json", split_to_json(split));
  write_text(dir / "run.json", meta.dump(2) + "\n");

  const auto& m = result.training.history.margins;
  out << "loss " << (config.classwise ? "classwise" : "pairwise") << ", alpha_pos " << m.alpha_pos << ", alpha_neg "
      << m.alpha_neg << '\n';
  out << "final total loss " << fmt(result.training.history.epochs.back().total) << '\n';
  out << "MAP " << fmt(result.report.map);
  if (cmd.train.k) out << ", MAP@" << cmd.train.k << ' ' << fmt(result.report.map_at_k);
  out << '\n' << "wrote " << dir.string() << '\n';
  return kSuccess;
}

// ---- eval ----------------------------------------------------------------

struct EvalCommand {
  std::string checkpoint;
  std::string data_csv;
  std::string split_file;
  std::size_t k = 0;
  std::string out;
  std::string curve_out;
  std::string codes_out;
};

int run_eval(const EvalCommand& cmd, std::ostream& out) {
  if (!fs::is_regular_file(cmd.checkpoint)) throw InputError("invalid checkpoint: no such file '" + cmd.checkpoint + "'");
  if (!cmd.data_csv.empty() && !fs::is_regular_file(cmd.data_csv)) {
    throw InputError("invalid data: no such file '" + cmd.data_csv + "'");
  }
  if (!cmd.split_file.empty() && !fs::is_regular_file(cmd.split_file)) {
    throw InputError("invalid split: no such file '" + cmd.split_file + "'");
  }
  const Checkpoint ck = load_checkpoint(cmd.checkpoint);

  FeatureDataset data;
  if (!cmd.data_csv.empty()) {
    data = load_csv(cmd.data_csv);
  } else if (ck.synthetic) {
    data = generate_synthetic(*ck.synthetic);
  } else {
    data = load_csv(ck.data_path);
  }
  if (data.dim() != ck.params.input_dim()) {
    throw InputError("invalid data: feature dimension " + std::to_string(data.dim()) +
                     " does not match checkpoint input dimension " + std::to_string(ck.params.input_dim()));
  }
  const DatasetSplit split = cmd.split_file.empty() ? hashbound::split(data, ck.split_spec, ck.split_seed)
                                                    : split_from_json(read_text(cmd.split_file));
  for (const auto* rows : {&split.query, &split.database}) {
    for (const auto r : *rows) {
      if (r >= data.size()) throw InputError("invalid split: row index " + std::to_string(r) + " out of range");
    }
  }
  const EvalReport report = evaluate_encoder(ck.params, data, split, cutoff(cmd.k));

  if (!cmd.out.empty()) {
    write_text(cmd.out, report_to_json(report));
  } else {
    out << report_to_json(report, false);
  }
  if (!cmd.curve_out.empty()) write_text(cmd.curve_out, precision_curve_csv(report));
  if (!cmd.codes_out.empty()) {
    const Eigen::MatrixXd db = forward(ck.params, data.subset(split.database).features);
    write_codes_file(cmd.codes_out, binarize_rows(db), ck.params.code_length());
  }
  if (!cmd.out.empty()) {
    out << "MAP " << fmt(report.map);
    if (report.k) out << ", MAP@" << *report.k << ' ' << fmt(report.map_at_k);
    out << '\n';
  }
  return kSuccess;
}

// ---- sweep ---------------------------------------------------------------

struct SweepCommand {
  DataOptions data;
  SplitOptions split;
  TrainOptions train;
  std::string alpha_values;
  std::string lambda_values;
  std::string seeds;
  std::string out;
};

int run_sweep(SweepCommand cmd, std::ostream& out, std::ostream& err) {
  if (cmd.alpha_values.empty() == cmd.lambda_values.empty()) {
    throw InputError("invalid sweep: give exactly one of --alpha-neg-values or --lambda-values");
  }
  if (!cmd.train.alpha_neg.empty() && !cmd.alpha_values.empty()) {
    throw InputError("invalid alpha-neg: cannot be combined with --alpha-neg-values");
  }
  finalize_train_options(cmd.train);
  const SplitSpec spec = split_spec(cmd.split);
  check_data_source(cmd.data);
  std::vector<std::uint64_t> seeds;
  if (cmd.seeds.empty()) {
    seeds.push_back(cmd.train.config.seed);
  } else {
    for (const int s : parse_int_list(cmd.seeds)) {
      if (s < 0) throw InputError("invalid seeds: must be non-negative");
      seeds.push_back(static_cast<std::uint64_t>(s));
    }
  }

  const bool margin_sweep = !cmd.alpha_values.empty();
  std::vector<TrainConfig> configs;
  std::vector<std::string> labels;
  if (margin_sweep) {
    for (const int a : parse_int_list(cmd.alpha_values)) {
      TrainConfig c = cmd.train.config;
      c.margin_override = a;
      c.validate();
      configs.push_back(c);
      labels.push_back(std::to_string(a));
    }
  } else {
    for (const double l : parse_double_list(cmd.lambda_values)) {
      TrainConfig c = cmd.train.config;
      c.lambda = l;
      c.validate();
      configs.push_back(c);
      labels.push_back(fmt(l));
    }
  }

  const LoadedData loaded = load_data(cmd.data);
  const DatasetSplit split = hashbound::split(loaded.data, spec, cmd.split.split_seed);
  const MarginSet derived =
      derive_margins({cmd.train.config.code_length, static_cast<std::uint64_t>(loaded.data.num_classes)});

  std::ostringstream csv;
  csv << "param,value,seed,alpha_neg,bound_derived,status,map,map_at_k,final_total,min_center_distance\n";
  bool any_failed = false;
  for (std::size_t v = 0; v < configs.size(); ++v) {
    for (const auto seed : seeds) {
      TrainConfig c = configs[v];
      c.seed = seed;
      const int alpha = c.margin_override.value_or(derived.alpha_neg);
      csv << (margin_sweep ? "alpha_neg" : "lambda") << ',' << labels[v] << ',' << seed << ',' << alpha << ','
          << (alpha == derived.alpha_neg ? 1 : 0) << ',';
      try {
        const ExperimentResult r = run_experiment(loaded.data, split, c, cutoff(cmd.train.k));
        csv << "ok," << fmt(r.report.map) << ',' << fmt(r.report.map_at_k) << ','
            << fmt(r.training.history.epochs.back().total) << ',' << r.report.min_interclass_distance << '\n';
        out << labels[v] << " seed " << seed << ": MAP " << fmt(r.report.map) << '\n';
      } catch (const TrainingDiverged& e) {
        any_failed = true;
        csv << "diverged,,,,\n";
        err << labels[v] << " seed " << seed << ": " << e.what() << '\n';
      }
    }
  }
  if (cmd.out.empty()) {
    out << csv.str();
  } else {
    write_text(cmd.out, csv.str());
  }
  return any_failed ? kRuntimeFailure : kSuccess;
}

// ---- config file ---------------------------------------------------------

/// Turns {"bits": 12, "classwise": true} into "--bits 12 --classwise=true",
/// inserted before the user's own flags so those take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InputError("invalid config: --config needs a path");
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty()) return args;
  if (rest.empty()) throw InputError("invalid config: a subcommand must precede --config");

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(config_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("invalid config: " + config_path + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("invalid config: top level must be an object");
  std::vector<std::string> injected;
  for (const auto& [key, value] : j.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      injected.push_back(flag + "=" + (value.get<bool>() ? "true" : "false"));
    } else if (value.is_string()) {
      injected.push_back(flag + "=" + value.get<std::string>());
    } else if (value.is_number()) {
      injected.push_back(flag + "=" + value.dump());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& e : value) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      injected.push_back(flag + "=" + joined);
    } else {
      throw InputError("invalid config: field '" + key + "' has an unsupported type");
    }
  }
  std::vector<std::string> expanded{rest.front()};
  expanded.insert(expanded.end(), injected.begin(), injected.end());
  expanded.insert(expanded.end(), rest.begin() + 1, rest.end());
  return expanded;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ':')) parts.push_back(parse_int(item, "range"));
    if (parts.size() != 3 || parts[2] <= 0 || parts[0] > parts[1]) {
      throw InputError("invalid range '" + text + "': expected lo:hi:step with lo <= hi and step > 0");
    }
    for (int v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
    return out;
  }
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(parse_int(item, "list"));
  if (out.empty()) throw InputError("invalid list: empty");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size() || item.empty()) {
      throw InputError("invalid list: '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InputError("invalid list: empty");
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hamming-bound hashing toolkit"};
  app.name("hashbound");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  BoundCommand bound;
  auto* bound_cmd = app.add_subcommand("bound", "derive margins from the Hamming bound");
  bound_cmd->add_option("--bits", bound.bits, "code length L")->required();
  bound_cmd->add_option("--classes", bound.classes, "number of classes M")->required();
  bound_cmd->add_flag("--json", bound.json, "print JSON");

  GenCommand gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "write a synthetic Gaussian-cluster dataset as CSV");
  add_data_options(gen_cmd, gen.data);
  gen_cmd->add_option("--out", gen.out, "output CSV path")->required();

  TrainCommand train_c;
  auto* train_cmd = app.add_subcommand("train", "train an encoder and evaluate it");
  add_data_options(train_cmd, train_c.data);
  add_split_options(train_cmd, train_c.split);
  add_train_options(train_cmd, train_c.train);
  train_cmd->add_option("--out-dir", train_c.out_dir, "output directory")->required();

  EvalCommand eval;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint");
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "checkpoint JSON")->required();
  eval_cmd->add_option("--data", eval.data_csv, "CSV dataset (defaults to the checkpoint's source)");
  eval_cmd->add_option("--split", eval.split_file, "split manifest JSON (defaults to re-splitting)");
  eval_cmd->add_option("--k", eval.k, "MAP cutoff (0 = full ranking)");
  eval_cmd->add_option("--out", eval.out, "report JSON path (stdout when omitted)");
  eval_cmd->add_option("--curve-out", eval.curve_out, "precision curve CSV path");
  eval_cmd->add_option("--codes-out", eval.codes_out, "binary database codes (HMX1) path");

  SweepCommand sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "retrain across negative margins or lambda values");
  add_data_options(sweep_cmd, sweep.data);
  add_split_options(sweep_cmd, sweep.split);
  add_train_options(sweep_cmd, sweep.train);
  sweep_cmd->add_option("--alpha-neg-values", sweep.alpha_values, "margins, 'a,b,c' or 'lo:hi:step'");
  sweep_cmd->add_option("--lambda-values", sweep.lambda_values, "lambda values, 'a,b,c'");
  sweep_cmd->add_option("--seeds", sweep.seeds, "seeds, 'a,b,c' (default: --seed)");
  sweep_cmd->add_option("--out", sweep.out, "output CSV (stdout when omitted)");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (bound_cmd->parsed()) return run_bound(bound, out);
    if (gen_cmd->parsed()) return run_gen(gen, out);
    if (train_cmd->parsed()) return run_train(train_c, raw_args, out);
    if (eval_cmd->parsed()) return run_eval(eval, out);
    if (sweep_cmd->parsed()) return run_sweep(sweep, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const TrainingDiverged& e) {
    err << "error: training diverged: " << e.what() << '\n';
    return kRuntimeFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsageError;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace hashbound::cli
