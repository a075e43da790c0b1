#include "cba/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace cba {

using json = nlohmann::ordered_json;

namespace {

json fraction_json(const Fraction& f) {
  return json{{"fraction", std::to_string(f.numerator()) + "/" + std::to_string(f.denominator())},
              {"decimal", boost::rational_cast<double>(f)}};
}

json manifest_json(const RunManifest& m) {
  const ModelConfig& c = m.config;
  json j;
  j["command"] = m.command;
  j["dataset"] = m.dataset;
  j["artifact_version"] = kVersion;
  if (!m.timestamp.empty()) j["timestamp"] = m.timestamp;
  j["seed"] = c.seed;
  j["config"] = json{{"model", std::string(to_string(c.family))},
                     {"minsup", c.mining.minsup.value()},
                     {"minconf", c.mining.minconf.value()},
                     {"prune_general", c.prune_general},
                     {"folds", c.nfolds},
                     {"partition", c.partition == PartitionMode::Stratified ? "stratified" : "plain-mod"},
                     {"max_depth", c.tree.max_depth},
                     {"min_rows", c.tree.min_rows_per_node},
                     {"min_gain", c.tree.min_gain}};
  return j;
}

json cv_body(const CVReport& r, const ReportOptions& opts) {
  json j;
  json folds = json::array();
  json rules = json::array();
  json timing = json::array();
  for (std::size_t f = 0; f < r.folds.size(); ++f) {
    const auto& fr = r.folds[f];
    folds.push_back(json{{"fold", f},
                         {"test_rows", fr.test_rows},
                         {"misclassified", fr.misclassified},
                         {"error", fraction_json(fr.error())},
                         {"car_count", fr.car_count},
                         {"rule_count", fr.rule_count}});
    rules.push_back(fr.rule_count);
    timing.push_back(fr.wall_ms);
  }
  j["folds"] = std::move(folds);
  j["average_error"] = fraction_json(r.average_error);
  j["average_accuracy"] = fraction_json(r.average_accuracy);
  j["rules_per_fold"] = std::move(rules);
  if (opts.include_timing) j["wall_ms_per_fold"] = std::move(timing);
  return j;
}

}  // namespace

std::string cv_report_json(const RunManifest& manifest, const CVReport& report, const ReportOptions& opts) {
  json j;
  j["report"] = "cba-cv-report/1";
  j["manifest"] = manifest_json(manifest);
  j.update(cv_body(report, opts));
  return j.dump(2) + "\n";
}

std::string bench_report_json(const RunManifest& manifest, const std::vector<BenchEntry>& entries,
                              const ReportOptions& opts) {
  json j;
  j["report"] = "cba-bench-report/1";
  j["manifest"] = manifest_json(manifest);

  json datasets = json::array();
  std::vector<std::string> keys;
  for (const auto& e : entries) {
    json d{{"name", e.meta.name}, {"rows", e.meta.rows}, {"attributes", e.meta.attributes}, {"classes", e.meta.classes}};
    json sc = json::object();
    for (const auto& [s, cv] : e.scenarios.entries) {
      sc[s.key()] = cv_body(cv, opts);
      if (std::find(keys.begin(), keys.end(), s.key()) == keys.end()) keys.push_back(s.key());
    }
    d["scenarios"] = std::move(sc);
    datasets.push_back(std::move(d));
  }
  j["datasets"] = std::move(datasets);

  json groups = json::object();
  for (const auto& key : keys) {
    std::vector<std::pair<DatasetMeta, CVReport>> per;
    for (const auto& e : entries)
      for (const auto& [s, cv] : e.scenarios.entries)
        if (s.key() == key) per.emplace_back(e.meta, cv);
    json g = json::object();
    for (Grouping by : {Grouping::AttributeCount, Grouping::RowCount, Grouping::ClassCount}) {
      json rows = json::array();
      for (const auto& row : group_report(per, by))
        rows.push_back(json{{"group", row.group}, {"datasets", row.datasets}, {"mean_accuracy", row.mean_accuracy}});
      g[std::string(to_string(by))] = std::move(rows);
    }
    groups[key] = std::move(g);
  }
  j["groups"] = std::move(groups);
  return j.dump(2) + "\n";
}

std::string describe(const Dataset& d) {
  const Schema& s = d.schema();
  std::string out = "rows " + std::to_string(d.size()) + "\n";
  out += "attributes " + std::to_string(s.attribute_count()) + "\n";
  for (std::size_t a = 0; a < s.attribute_count(); ++a) {
    out += "  " + s.attributes[a] + " (" + std::to_string(s.values[a].size()) + " values):";
    for (const auto& v : s.values[a].values()) out += " " + v;
    out += "\n";
  }
  out += "class " + s.class_attribute + "\n";
  const auto counts = d.class_counts();
  for (ClassId c = 0; c < counts.size(); ++c) out += "  " + s.classes.name(c) + " " + std::to_string(counts[c]) + "\n";
  out += "majority " + s.classes.name(majority_class(d)) + "\n";
  return out;
}

}  // namespace cba
