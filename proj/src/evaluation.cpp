#include "cba/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include "cba/error.hpp"

namespace cba {

TrainedModel train(const Dataset& training, const ModelConfig& config) {
  TrainedModel out;
  if (config.family == Provenance::Tree) {
    const auto tree = build_tree(training, config.tree);
    out.classifier = tree_classifier(tree, majority_class(training));
    return out;
  }

  Rules cars = mine_cars(training, config.mining);
  out.car_count = cars.size();
  if (config.prune_general) cars = prune_general(cars);
  Rules ranked = rank_rules(std::move(cars));

  if (config.family == Provenance::CbaOdm1) {
    out.classifier = build_classifier(ranked, training);
  } else {
    const auto tree = build_tree(training, config.tree);
    const auto tree_rules = tree_to_rules(tree);
    auto [classifier, report] = merge(ranked, tree_rules, training);
    out.classifier = std::move(classifier);
    out.merge_report = std::move(report);
  }
  return out;
}

Fraction mean_error(const std::vector<Fraction>& fold_errors) {
  if (fold_errors.empty()) throw_input("no folds to average");
  Fraction total(0);
  for (const auto& e : fold_errors) total += e;
  return total / static_cast<std::int64_t>(fold_errors.size());
}

CVReport cross_validate(const Dataset& dataset, const ModelConfig& config) {
  if (config.nfolds < 2) throw_input("cross-validation needs at least 2 folds");
  const auto folds = stratified_shuffle_partition(dataset, config.nfolds, config.seed, config.partition);

  CVReport report;
  report.folds.resize(config.nfolds);

  auto run_fold = [&](std::size_t f) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto train_idx = folds.rows_not_in(f);
    const auto test_idx = folds.rows_in(f);
    if (train_idx.empty()) throw_input("fold " + std::to_string(f) + " leaves no training rows");
    const Dataset train_set = dataset.subset(train_idx);
    const Dataset test_set = dataset.subset(test_idx);
    const TrainedModel model = train(train_set, config);
    const Ratio err = error_count(model.classifier, test_set);

    FoldResult r;
    r.test_rows = test_set.size();
    r.misclassified = err.num;
    r.car_count = model.car_count;
    r.rule_count = model.classifier.rules.size();
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.folds[f] = r;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(config.nfolds)));
  if (workers == 1) {
    for (std::size_t f = 0; f < config.nfolds; ++f) run_fold(f);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t f = next++; f < config.nfolds; f = next++) {
          try {
            run_fold(f);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<Fraction> errors;
  for (const auto& r : report.folds) errors.push_back(r.error());
  report.average_error = mean_error(errors);
  report.average_accuracy = Fraction(1) - report.average_error;
  return report;
}

std::string Scenario::key() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "minsup=%g,minconf=%g", minsup, minconf);
  return buf;
}

std::vector<Scenario> default_scenarios() { return {{0.35, 0.50}, {0.15, 0.50}, {0.10, 0.50}, {0.05, 0.50}}; }

ScenarioReport run_scenarios(const Dataset& dataset, const ModelConfig& base, const std::vector<Scenario>& scenarios) {
  if (scenarios.empty()) throw_input("no scenarios given");
  ScenarioReport out;
  for (const auto& s : scenarios) {
    ModelConfig cfg = base;
    cfg.mining = MiningConfig::from_fractions(s.minsup, s.minconf);
    out.entries.emplace_back(s, cross_validate(dataset, cfg));
  }
  return out;
}

DatasetMeta DatasetMeta::of(const Dataset& d, std::string name) {
  return DatasetMeta{std::move(name), d.size(), d.schema().attribute_count(), d.schema().classes.size()};
}

std::optional<Grouping> grouping_from_string(std::string_view s) {
  if (s == "by-attribute-count") return Grouping::AttributeCount;
  if (s == "by-row-count") return Grouping::RowCount;
  if (s == "by-class-count") return Grouping::ClassCount;
  return std::nullopt;
}

std::string_view to_string(Grouping g) {
  switch (g) {
    case Grouping::AttributeCount: return "by-attribute-count";
    case Grouping::RowCount: return "by-row-count";
    case Grouping::ClassCount: return "by-class-count";
  }
  return "unknown";
}

namespace {

// Sort rank of a bucket label, so tables come out in ascending order.
std::size_t bucket_rank(const DatasetMeta& m, Grouping g) {
  switch (g) {
    case Grouping::RowCount: return m.rows < 1000 ? 0 : m.rows <= 5000 ? 1 : 2;
    case Grouping::AttributeCount:
      return m.attributes <= 10 ? 0 : m.attributes <= 20 ? 1 : m.attributes <= 29 ? 2 : m.attributes <= 50 ? 3 : 4;
    case Grouping::ClassCount: return m.classes;
  }
  return 0;
}

}  // namespace

std::string group_key(const DatasetMeta& meta, Grouping g) {
  static const char* rows[] = {"<1000", "1000-5000", ">5000"};
  static const char* attrs[] = {"<=10", "11-20", "21-29", "30-50", ">50"};
  switch (g) {
    case Grouping::RowCount: return rows[bucket_rank(meta, g)];
    case Grouping::AttributeCount: return attrs[bucket_rank(meta, g)];
    case Grouping::ClassCount: return std::to_string(meta.classes);
  }
  return {};
}

std::vector<GroupRow> group_report(const std::vector<std::pair<DatasetMeta, CVReport>>& reports, Grouping g) {
  std::map<std::size_t, std::pair<std::string, std::vector<double>>> buckets;
  for (const auto& [meta, cv] : reports) {
    auto& b = buckets[bucket_rank(meta, g)];
    b.first = group_key(meta, g);
    b.second.push_back(cv.average_accuracy_value());
  }
  std::vector<GroupRow> out;
  for (const auto& [rank, b] : buckets) {
    double sum = 0.0;
    for (double a : b.second) sum += a;
    out.push_back(GroupRow{b.first, b.second.size(), sum / static_cast<double>(b.second.size())});
  }
  return out;
}

}  // namespace cba
