#include "cba/cba.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "cba/classifier.hpp"
#include "cba/dataset.hpp"
#include "cba/error.hpp"
#include "cba/evaluation.hpp"
#include "cba/merge.hpp"
#include "cba/mining.hpp"
#include "cba/report.hpp"
#include "cba/tree.hpp"

struct cba_dataset {
  cba::Dataset data;
};

struct cba_model {
  cba::TrainedModel model;
};

namespace {

thread_local std::string g_last_error;

cba_status fail(cba_status code, std::string msg) {
  g_last_error = std::move(msg);
  return code;
}

cba_status status_of(cba::ErrorKind k) {
  switch (k) {
    case cba::ErrorKind::Input: return CBA_ERR_INPUT;
    case cba::ErrorKind::Io: return CBA_ERR_IO;
    case cba::ErrorKind::Version: return CBA_ERR_VERSION;
    case cba::ErrorKind::Internal: return CBA_ERR_INTERNAL;
  }
  return CBA_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
cba_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return CBA_OK;
  } catch (const cba::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CBA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CBA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CBA_ERR_INTERNAL, "unknown failure");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::optional<std::string> opt(const char* s) {
  if (!s || !*s) return std::nullopt;
  return std::string(s);
}

bool known_family(cba_family f) {
  return f == CBA_FAMILY_ODM1 || f == CBA_FAMILY_ODM2 || f == CBA_FAMILY_TREE;
}

cba::ModelConfig to_model_config(const cba_config& c) {
  cba::ModelConfig m;
  switch (c.family) {
    case CBA_FAMILY_ODM1: m.family = cba::Provenance::CbaOdm1; break;
    case CBA_FAMILY_ODM2: m.family = cba::Provenance::CbaOdm2; break;
    case CBA_FAMILY_TREE: m.family = cba::Provenance::Tree; break;
    default: cba::throw_input("unknown model family " + std::to_string(static_cast<int>(c.family)));
  }
  m.mining = cba::MiningConfig::from_fractions(c.minsup, c.minconf);
  m.prune_general = c.prune_general != 0;
  if (c.max_depth < 0) cba::throw_input("max depth must be nonnegative");
  if (c.min_rows_per_node < 1) cba::throw_input("min rows per node must be >= 1");
  m.tree = cba::TreeSettings{c.max_depth, c.min_rows_per_node, c.min_gain};
  m.nfolds = c.nfolds;
  m.seed = c.seed;
  m.partition = c.plain_folds ? cba::PartitionMode::PlainMod : cba::PartitionMode::Stratified;
  m.jobs = c.jobs == 0 ? 1 : c.jobs;
  return m;
}

cba::RunManifest manifest_of(const cba_run_info* run, const cba::ModelConfig& cfg, const char* fallback_command) {
  cba::RunManifest m;
  m.command = run && run->command ? run->command : fallback_command;
  m.dataset = run && run->dataset_path ? run->dataset_path : "";
  m.timestamp = run && run->timestamp ? run->timestamp : "";
  m.config = cfg;
  return m;
}

#define CBA_REQUIRE(cond, what) \
  if (!(cond)) return fail(CBA_ERR_ARGUMENT, what)

}  // namespace

extern "C" {

const char* cba_version(void) { return cba::kVersion; }

const char* cba_last_error(void) { return g_last_error.c_str(); }

void cba_string_free(char* s) { std::free(s); }

void cba_config_init(cba_config* c) {
  if (!c) return;
  c->family = CBA_FAMILY_ODM1;
  c->minsup = 0.15;
  c->minconf = 0.50;
  c->prune_general = 1;
  c->max_depth = 7;
  c->min_rows_per_node = 2;
  c->min_gain = 0.0;
  c->nfolds = 10;
  c->seed = 0;
  c->plain_folds = 0;
  c->jobs = 1;
}

cba_status cba_dataset_load(const char* path, const char* class_column, cba_dataset** out) {
  CBA_REQUIRE(path && out, "null argument");
  return guarded([&] { *out = new cba_dataset{cba::load_csv(path, opt(class_column))}; });
}

cba_status cba_dataset_parse(const char* csv_text, const char* class_column, cba_dataset** out) {
  CBA_REQUIRE(csv_text && out, "null argument");
  return guarded([&] { *out = new cba_dataset{cba::parse_csv(csv_text, opt(class_column))}; });
}

cba_status cba_dataset_discretize(const cba_dataset* dataset, const char* const* columns, size_t ncolumns,
                                  cba_bin_strategy strategy, int bins, cba_dataset** out) {
  CBA_REQUIRE(dataset && out && (columns || ncolumns == 0), "null argument");
  CBA_REQUIRE(strategy == CBA_BINS_EQUAL_WIDTH || strategy == CBA_BINS_EQUAL_FREQUENCY, "unknown bin strategy");
  return guarded([&] {
    std::vector<std::string> cols(columns, columns + ncolumns);
    auto s = strategy == CBA_BINS_EQUAL_WIDTH ? cba::BinStrategy::EqualWidth : cba::BinStrategy::EqualFrequency;
    *out = new cba_dataset{cba::discretize(dataset->data, cols, s, bins)};
  });
}

void cba_dataset_free(cba_dataset* dataset) { delete dataset; }

size_t cba_dataset_rows(const cba_dataset* d) { return d ? d->data.size() : 0; }
size_t cba_dataset_attributes(const cba_dataset* d) { return d ? d->data.schema().attribute_count() : 0; }
size_t cba_dataset_classes(const cba_dataset* d) { return d ? d->data.schema().classes.size() : 0; }

cba_status cba_dataset_describe(const cba_dataset* d, char** out_text) {
  CBA_REQUIRE(d && out_text, "null argument");
  return guarded([&] { *out_text = dup_string(cba::describe(d->data)); });
}

cba_status cba_dataset_to_csv(const cba_dataset* d, char** out_csv) {
  CBA_REQUIRE(d && out_csv, "null argument");
  return guarded([&] { *out_csv = dup_string(cba::to_csv(d->data)); });
}

cba_status cba_mine(const cba_dataset* d, double minsup, double minconf, char** out_rules, size_t* out_count) {
  CBA_REQUIRE(d && out_rules, "null argument");
  return guarded([&] {
    const auto cars = cba::mine_cars(d->data, cba::MiningConfig::from_fractions(minsup, minconf));
    *out_rules = dup_string(cba::format_rules(cars, d->data.schema()));
    if (out_count) *out_count = cars.size();
  });
}

cba_status cba_model_train(const cba_dataset* d, const cba_config* config, cba_model** out) {
  CBA_REQUIRE(d && config && out, "null argument");
  CBA_REQUIRE(known_family(config->family), "unknown model family");
  return guarded([&] { *out = new cba_model{cba::train(d->data, to_model_config(*config))}; });
}

void cba_model_free(cba_model* model) { delete model; }

cba_status cba_model_serialize(const cba_model* m, char** out_text) {
  CBA_REQUIRE(m && out_text, "null argument");
  return guarded([&] { *out_text = dup_string(cba::serialize(m->model.classifier)); });
}

cba_status cba_model_deserialize(const char* text, cba_model** out) {
  CBA_REQUIRE(text && out, "null argument");
  return guarded([&] {
    cba::TrainedModel tm;
    tm.classifier = cba::deserialize(text);
    *out = new cba_model{std::move(tm)};
  });
}

cba_status cba_model_save(const cba_model* m, const char* path) {
  CBA_REQUIRE(m && path, "null argument");
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw cba::Error(cba::ErrorKind::Io, std::string("cannot write '") + path + "'");
    f << cba::serialize(m->model.classifier);
    if (!f) throw cba::Error(cba::ErrorKind::Io, std::string("write failed for '") + path + "'");
  });
}

cba_status cba_model_load(const char* path, cba_model** out) {
  CBA_REQUIRE(path && out, "null argument");
  return guarded([&] {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw cba::Error(cba::ErrorKind::Io, std::string("cannot open '") + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    cba::TrainedModel tm;
    tm.classifier = cba::deserialize(ss.str());
    *out = new cba_model{std::move(tm)};
  });
}

cba_status cba_model_rules_text(const cba_model* m, char** out_text) {
  CBA_REQUIRE(m && out_text, "null argument");
  return guarded([&] { *out_text = dup_string(cba::format_classifier(m->model.classifier)); });
}

size_t cba_model_rule_count(const cba_model* m) { return m ? m->model.classifier.rules.size() : 0; }

cba_status cba_model_merge_report(const cba_model* m, char** out_text) {
  CBA_REQUIRE(m && out_text, "null argument");
  return guarded([&] {
    const auto& r = m->model.merge_report;
    *out_text = dup_string(r ? cba::format_merge_report(*r, m->model.classifier.schema) : std::string());
  });
}

cba_status cba_model_predict_csv(const cba_model* m, const char* csv_text, char** out_csv) {
  CBA_REQUIRE(m && csv_text && out_csv, "null argument");
  return guarded([&] {
    const auto& clf = m->model.classifier;
    const auto table = cba::parse_table(csv_text);
    if (std::find(table.header.begin(), table.header.end(), "predicted") != table.header.end())
      cba::throw_input("input already has a 'predicted' column");
    std::string out;
    auto join = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
    };
    join(table.header);
    out += ",predicted\n";
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
      const auto& cells = table.cells[r];
      if (cells.size() != table.header.size())
        cba::throw_input("row " + std::to_string(r + 1) + " has " + std::to_string(cells.size()) +
                         " cells, header has " + std::to_string(table.header.size()));
      const auto values = cba::encode_row(clf.schema, table.header, cells);
      join(cells);
      out += ',' + clf.schema.classes.name(cba::predict(clf, values)) + '\n';
    }
    *out_csv = dup_string(out);
  });
}

cba_status cba_model_predict_row(const cba_model* m, const char* const* names, const char* const* values, size_t n,
                                 char** out_label) {
  CBA_REQUIRE(m && out_label && ((names && values) || n == 0), "null argument");
  return guarded([&] {
    std::vector<std::string> header(names, names + n), cells(values, values + n);
    const auto& clf = m->model.classifier;
    *out_label = dup_string(clf.schema.classes.name(cba::predict(clf, cba::encode_row(clf.schema, header, cells))));
  });
}

cba_status cba_tree_dump(const cba_dataset* d, const cba_config* config, char** out_text) {
  CBA_REQUIRE(d && config && out_text, "null argument");
  CBA_REQUIRE(known_family(config->family), "unknown model family");
  return guarded([&] {
    const auto cfg = to_model_config(*config);
    const auto tree = cba::build_tree(d->data, cfg.tree);
    std::string out = cba::dump_tree(tree) + "\n";
    for (const auto& r : cba::tree_to_rules(tree)) out += cba::format_tree_rule(r, d->data.schema()) + "\n";
    *out_text = dup_string(out);
  });
}

cba_status cba_evaluate(const cba_dataset* d, const cba_config* config, const cba_run_info* run, char** out_json) {
  CBA_REQUIRE(d && config && out_json, "null argument");
  CBA_REQUIRE(known_family(config->family), "unknown model family");
  return guarded([&] {
    const auto cfg = to_model_config(*config);
    const auto report = cba::cross_validate(d->data, cfg);
    cba::ReportOptions opts;
    opts.include_timing = run ? run->include_timing != 0 : true;
    *out_json = dup_string(cba::cv_report_json(manifest_of(run, cfg, "eval"), report, opts));
  });
}

cba_status cba_bench_dir(const char* dir, const char* class_column, const cba_config* config, const double* minsups,
                         const double* minconfs, size_t nscenarios, const cba_run_info* run, char** out_json) {
  CBA_REQUIRE(dir && config && out_json, "null argument");
  CBA_REQUIRE(known_family(config->family), "unknown model family");
  CBA_REQUIRE(nscenarios == 0 || (minsups && minconfs), "null scenario arrays");
  return guarded([&] {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw cba::Error(cba::ErrorKind::Io, std::string("not a directory '") + dir + "'");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) cba::throw_input(std::string("no .csv files in '") + dir + "'");

    std::vector<cba::Scenario> scenarios;
    for (size_t i = 0; i < nscenarios; ++i) scenarios.push_back({minsups[i], minconfs[i]});
    if (scenarios.empty()) scenarios = cba::default_scenarios();

    const auto cfg = to_model_config(*config);
    std::vector<cba::BenchEntry> entries;
    for (const auto& f : files) {
      const auto data = cba::load_csv(f, opt(class_column));
      entries.push_back({cba::DatasetMeta::of(data, f.filename().string()), cba::run_scenarios(data, cfg, scenarios)});
    }
    cba::ReportOptions opts;
    opts.include_timing = run ? run->include_timing != 0 : true;
    auto manifest = manifest_of(run, cfg, "bench");
    if (manifest.dataset.empty()) manifest.dataset = dir;
    *out_json = dup_string(cba::bench_report_json(manifest, entries, opts));
  });
}

}  // extern "C"
