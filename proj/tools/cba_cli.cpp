// Command-line front end. Talks to the engine only through the C API.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cba/cba.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct Failure {
  int code;
};

int exit_code(cba_status s) {
  if (s == CBA_OK) return kExitOk;
  return s == CBA_ERR_INTERNAL ? kExitInternal : kExitInput;
}

void check(cba_status s) {
  if (s == CBA_OK) return;
  std::cerr << "cba: " << cba_last_error() << "\n";
  throw Failure{exit_code(s)};
}

struct DatasetDeleter {
  void operator()(cba_dataset* d) const { cba_dataset_free(d); }
};
struct ModelDeleter {
  void operator()(cba_model* m) const { cba_model_free(m); }
};
struct StringDeleter {
  void operator()(char* s) const { cba_string_free(s); }
};
using DatasetPtr = std::unique_ptr<cba_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<cba_model, ModelDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) {
  OwnedString holder(s);
  return s ? std::string(s) : std::string();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cba: cannot write '" << path << "'\n";
    throw Failure{kExitInput};
  }
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cba: cannot open '" << path << "'\n";
    throw Failure{kExitInput};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct DataOptions {
  std::string path;
  std::string class_col;
  std::vector<std::string> discretize;
  std::string strategy = "equal-frequency";
  int bins = 4;

  void attach(CLI::App* cmd, const char* what = "input CSV") {
    cmd->add_option("dataset", path, what)->required();
    cmd->add_option("--class-col", class_col, "class column name (default: last column)");
    cmd->add_option("--discretize", discretize, "numeric columns to bin before use")->delimiter(',');
    cmd->add_option("--strategy", strategy, "binning strategy")
        ->check(CLI::IsMember({"equal-width", "equal-frequency"}));
    cmd->add_option("--bins", bins, "number of bins")->check(CLI::PositiveNumber);
  }

  DatasetPtr load() const {
    cba_dataset* raw = nullptr;
    check(cba_dataset_load(path.c_str(), class_col.empty() ? nullptr : class_col.c_str(), &raw));
    DatasetPtr data(raw);
    if (discretize.empty()) return data;
    std::vector<const char*> cols;
    for (const auto& c : discretize) cols.push_back(c.c_str());
    cba_dataset* binned = nullptr;
    check(cba_dataset_discretize(data.get(), cols.data(), cols.size(),
                                 strategy == "equal-width" ? CBA_BINS_EQUAL_WIDTH : CBA_BINS_EQUAL_FREQUENCY, bins,
                                 &binned));
    return DatasetPtr(binned);
  }
};

struct ModelOptions {
  cba_config config{};
  std::string model = "cba-odm1";
  bool no_prune = false;
  bool plain_folds = false;

  ModelOptions() { cba_config_init(&config); }

  void attach(CLI::App* cmd, bool with_cv) {
    cmd->add_option("--model", model, "model family")->check(CLI::IsMember({"cba-odm1", "cba-odm2", "tree"}));
    cmd->add_option("--minsup", config.minsup, "minimum support fraction")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--minconf", config.minconf, "minimum confidence fraction")->check(CLI::Range(0.0, 1.0));
    cmd->add_flag("--no-prune", no_prune, "skip general-rule pruning");
    cmd->add_option("--max-depth", config.max_depth, "decision tree depth limit")->check(CLI::NonNegativeNumber);
    cmd->add_option("--min-rows", config.min_rows_per_node, "rows needed to split a tree node")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--min-gain", config.min_gain, "gain needed to split a tree node")->check(CLI::NonNegativeNumber);
    if (!with_cv) return;
    cmd->add_option("--folds", config.nfolds, "cross-validation folds")->check(CLI::Range(2, 1000000));
    cmd->add_option("--seed", config.seed, "shuffle seed");
    cmd->add_option("--jobs", config.jobs, "folds evaluated in parallel")->check(CLI::PositiveNumber);
    cmd->add_flag("--plain-folds", plain_folds, "unstratified partition (shuffled list, position mod folds)");
  }

  const cba_config& finish() {
    config.family = model == "cba-odm2" ? CBA_FAMILY_ODM2 : model == "tree" ? CBA_FAMILY_TREE : CBA_FAMILY_ODM1;
    config.prune_general = no_prune ? 0 : 1;
    config.plain_folds = plain_folds ? 1 : 0;
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Associative classification (CBA) engine"};
  app.set_version_flag("--version", std::string(cba_version()));
  app.require_subcommand(1);

  std::string out_path;
  bool deterministic = false;

  // inspect
  DataOptions inspect_data;
  auto* inspect = app.add_subcommand("inspect", "summarize a dataset's schema and class balance");
  inspect_data.attach(inspect);

  // mine
  DataOptions mine_data;
  double mine_minsup = 0.15, mine_minconf = 0.60;
  auto* mine = app.add_subcommand("mine", "list class association rules");
  mine_data.attach(mine);
  mine->add_option("--minsup", mine_minsup, "minimum support fraction")->check(CLI::Range(0.0, 1.0));
  mine->add_option("--minconf", mine_minconf, "minimum confidence fraction")->check(CLI::Range(0.0, 1.0));
  mine->add_option("-o,--output", out_path, "output file (default stdout)");

  // train
  DataOptions train_data;
  ModelOptions train_model;
  std::string model_path;
  auto* train = app.add_subcommand("train", "train a classifier and save it");
  train_data.attach(train);
  train_model.attach(train, false);
  train->add_option("-o,--output", model_path, "model file to write")->required();

  // predict
  std::string predict_model, predict_input;
  auto* predict = app.add_subcommand("predict", "append a `predicted` column to a CSV");
  predict->add_option("model", predict_model, "model file")->required();
  predict->add_option("input", predict_input, "CSV to classify")->required();
  predict->add_option("-o,--output", out_path, "output file (default stdout)");

  // tree
  DataOptions tree_data;
  ModelOptions tree_model;
  auto* tree = app.add_subcommand("tree", "induce a decision tree and print it with its rules");
  tree_data.attach(tree);
  tree_model.attach(tree, false);
  tree->add_option("-o,--output", out_path, "output file (default stdout)");

  // eval
  DataOptions eval_data;
  ModelOptions eval_model;
  auto* eval = app.add_subcommand("eval", "k-fold cross-validation report (JSON)");
  eval_data.attach(eval);
  eval_model.attach(eval, true);
  eval->add_option("-o,--output", out_path, "output file (default stdout)");
  eval->add_flag("--deterministic", deterministic, "omit timestamp and timings");

  // bench
  std::string bench_dir, bench_class;
  std::vector<std::string> bench_scenarios;
  ModelOptions bench_model;
  auto* bench = app.add_subcommand("bench", "run minsup/minconf scenarios over every CSV in a directory");
  bench->add_option("dir", bench_dir, "directory of CSV datasets")->required();
  bench->add_option("--class-col", bench_class, "class column name (default: last column)");
  bench->add_option("--scenario", bench_scenarios, "MINSUP:MINCONF, repeatable (default: the four standard ones)");
  bench_model.attach(bench, true);
  bench->add_option("-o,--output", out_path, "output file (default stdout)");
  bench->add_flag("--deterministic", deterministic, "omit timestamp and timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*inspect) {
      auto data = inspect_data.load();
      char* text = nullptr;
      check(cba_dataset_describe(data.get(), &text));
      std::cout << take(text);
    } else if (*mine) {
      auto data = mine_data.load();
      char* text = nullptr;
      size_t count = 0;
      check(cba_mine(data.get(), mine_minsup, mine_minconf, &text, &count));
      emit(take(text), out_path);
      std::cerr << count << " rules\n";
    } else if (*train) {
      auto data = train_data.load();
      cba_model* raw = nullptr;
      check(cba_model_train(data.get(), &train_model.finish(), &raw));
      ModelPtr model(raw);
      check(cba_model_save(model.get(), model_path.c_str()));
      char* rules = nullptr;
      check(cba_model_rules_text(model.get(), &rules));
      std::cout << take(rules);
    } else if (*predict) {
      cba_model* raw = nullptr;
      check(cba_model_load(predict_model.c_str(), &raw));
      ModelPtr model(raw);
      const std::string input = read_file(predict_input);
      char* csv = nullptr;
      check(cba_model_predict_csv(model.get(), input.c_str(), &csv));
      emit(take(csv), out_path);
    } else if (*tree) {
      auto data = tree_data.load();
      char* text = nullptr;
      check(cba_tree_dump(data.get(), &tree_model.finish(), &text));
      emit(take(text), out_path);
    } else if (*eval) {
      auto data = eval_data.load();
      const std::string stamp = deterministic ? std::string() : utc_timestamp();
      cba_run_info run{"eval", eval_data.path.c_str(), stamp.c_str(), deterministic ? 0 : 1};
      char* json = nullptr;
      check(cba_evaluate(data.get(), &eval_model.finish(), &run, &json));
      emit(take(json), out_path);
    } else if (*bench) {
      std::vector<double> sups, confs;
      for (const auto& s : bench_scenarios) {
        double a = 0, b = 0;
        char tail = 0;
        if (std::sscanf(s.c_str(), "%lf:%lf%c", &a, &b, &tail) != 2) {
          std::cerr << "cba: bad --scenario '" << s << "' (expected MINSUP:MINCONF)\n";
          return kExitInput;
        }
        sups.push_back(a);
        confs.push_back(b);
      }
      const std::string stamp = deterministic ? std::string() : utc_timestamp();
      cba_run_info run{"bench", bench_dir.c_str(), stamp.c_str(), deterministic ? 0 : 1};
      char* json = nullptr;
      check(cba_bench_dir(bench_dir.c_str(), bench_class.empty() ? nullptr : bench_class.c_str(),
                          &bench_model.finish(), sups.data(), confs.data(), sups.size(), &run, &json));
      emit(take(json), out_path);
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "cba: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
