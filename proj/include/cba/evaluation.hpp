#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cba/classifier.hpp"
#include "cba/dataset.hpp"
#include "cba/merge.hpp"
#include "cba/mining.hpp"
#include "cba/tree.hpp"

namespace cba {

using Fraction = boost::rational<std::int64_t>;

struct ModelConfig {
  Provenance family = Provenance::CbaOdm1;
  MiningConfig mining = MiningConfig::from_fractions(0.15, 0.50);
  TreeSettings tree;
  bool prune_general = true;
  std::size_t nfolds = 10;
  std::uint64_t seed = 0;
  PartitionMode partition = PartitionMode::Stratified;
  unsigned jobs = 1;  // fold-level parallelism; results are identical for any value
};

struct TrainedModel {
  Classifier classifier;
  std::size_t car_count = 0;  // CARs before pruning; 0 for the tree family
  std::optional<MergeReport> merge_report;
};

/// Full per-family pipeline:
///   cba-odm1: mine -> prune_general (optional) -> rank -> coverage builder
///   cba-odm2: mine -> prune_general (optional) -> rank -> merge with tree rules
///   tree:     build_tree -> rule-list classifier
TrainedModel train(const Dataset& training, const ModelConfig& config);

struct FoldResult {
  std::size_t test_rows = 0;
  std::size_t misclassified = 0;
  std::size_t car_count = 0;
  std::size_t rule_count = 0;
  double wall_ms = 0.0;

  Fraction error() const { return Fraction(static_cast<std::int64_t>(misclassified), static_cast<std::int64_t>(test_rows)); }
};

struct CVReport {
  std::vector<FoldResult> folds;  // by fold index
  Fraction average_error;
  Fraction average_accuracy;

  double average_error_value() const { return boost::rational_cast<double>(average_error); }
  double average_accuracy_value() const { return boost::rational_cast<double>(average_accuracy); }
};

/// Arithmetic mean of the fold errors, exact.
Fraction mean_error(const std::vector<Fraction>& fold_errors);

CVReport cross_validate(const Dataset& dataset, const ModelConfig& config);

struct Scenario {
  double minsup = 0.0;
  double minconf = 0.0;
  std::string key() const;
};

std::vector<Scenario> default_scenarios();

struct ScenarioReport {
  std::vector<std::pair<Scenario, CVReport>> entries;
};

ScenarioReport run_scenarios(const Dataset& dataset, const ModelConfig& base, const std::vector<Scenario>& scenarios);

struct DatasetMeta {
  std::string name;
  std::size_t rows = 0;
  std::size_t attributes = 0;
  std::size_t classes = 0;

  static DatasetMeta of(const Dataset& d, std::string name);
};

enum class Grouping { AttributeCount, RowCount, ClassCount };
std::optional<Grouping> grouping_from_string(std::string_view s);
std::string_view to_string(Grouping g);

/// Bucket label a dataset falls into under `g`.
std::string group_key(const DatasetMeta& meta, Grouping g);

struct GroupRow {
  std::string group;
  std::size_t datasets = 0;
  double mean_accuracy = 0.0;
};

/// Mean accuracy per bucket. Buckets appear in their natural order.
std::vector<GroupRow> group_report(const std::vector<std::pair<DatasetMeta, CVReport>>& reports, Grouping g);

}  // namespace cba
