#include "cba/merge.hpp"

#include <algorithm>
#include <cstdio>

#include "cba/error.hpp"

namespace cba {

bool is_degenerate(std::span<const TreeRule> tree_rules) {
  return tree_rules.empty() || (tree_rules.size() == 1 && tree_rules.front().condset.empty());
}

namespace {

bool shares_item(const Condset& a, const Condset& b) {
  // Both sorted; walk in step.
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

void check_schema(const Rules& ranked, std::span<const TreeRule> tree_rules, const Schema& schema) {
  auto ok = [&](const Condset& cs, ClassId label) {
    if (label >= schema.classes.size()) return false;
    return std::all_of(cs.begin(), cs.end(), [&](const Item& it) {
      return it.attribute < schema.attribute_count() && it.value < schema.values[it.attribute].size();
    });
  };
  for (const auto& r : ranked)
    if (!ok(r.condset, r.label)) throw_input("merge: association rule does not fit the training schema");
  for (const auto& t : tree_rules)
    if (!ok(t.condset, t.label)) throw_input("merge: tree rule does not fit the training schema");
}

}  // namespace

std::optional<std::size_t> best_match(const Condset& condset, std::span<const TreeRule> tree_rules) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < tree_rules.size(); ++i) {
    if (!shares_item(condset, tree_rules[i].condset)) continue;
    if (!best || tree_rules[i].confidence() > tree_rules[*best].confidence()) best = i;
  }
  return best;
}

double match_fraction(const Rules& ranked, std::span<const TreeRule> tree_rules) {
  std::size_t matched = 0, agree = 0;
  for (const auto& car : ranked) {
    auto m = best_match(car.condset, tree_rules);
    if (!m) continue;
    ++matched;
    if (tree_rules[*m].label == car.label) ++agree;
  }
  return matched == 0 ? 0.0 : static_cast<double>(agree) / static_cast<double>(matched);
}

std::pair<Classifier, MergeReport> merge(const Rules& ranked, std::span<const TreeRule> tree_rules,
                                         const Dataset& training) {
  check_schema(ranked, tree_rules, training.schema());

  Classifier c;
  c.schema = training.schema();
  c.default_class = majority_class(training);
  c.provenance = Provenance::CbaOdm2;
  MergeReport report;

  if (is_degenerate(tree_rules)) {
    c.rules = ranked;
    report.fallback_used = true;
    return {std::move(c), std::move(report)};
  }

  for (const auto& car : ranked) {
    auto m = best_match(car.condset, tree_rules);
    if (!m) {
      report.pruned_cars.push_back(car);
      continue;
    }
    const TreeRule& t = tree_rules[*m];
    MatchedPair pair{car, t, t.confidence() > car.confidence() ? ChosenSide::Tree : ChosenSide::Car};
    ClassAssociationRule kept = car;
    kept.label = pair.chosen_label();
    c.rules.push_back(std::move(kept));
    report.matched_pairs.push_back(std::move(pair));
  }
  report.match_fraction = match_fraction(ranked, tree_rules);
  return {std::move(c), std::move(report)};
}

std::string format_merge_report(const MergeReport& report, const Schema& schema) {
  std::string out;
  for (const auto& p : report.matched_pairs) {
    out += "PAIR car={" + format_condset(p.car.condset, schema) + " -> " + schema.classes.name(p.car.label) +
           "} car_conf=" + p.car.confidence().str() + " tree={" + format_condset(p.tree_rule.condset, schema) +
           " -> " + schema.classes.name(p.tree_rule.label) + "} tree_conf=" + p.tree_rule.confidence().str() +
           " chosen=" + (p.chosen == ChosenSide::Tree ? "tree" : "car") + " class=" +
           schema.classes.name(p.chosen_label()) + "\n";
  }
  for (const auto& r : report.pruned_cars)
    out += "PRUNED car={" + format_condset(r.condset, schema) + " -> " + schema.classes.name(r.label) +
           "} car_conf=" + r.confidence().str() + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", report.match_fraction);
  out += std::string("SUMMARY fallback=") + (report.fallback_used ? "true" : "false") +
         " matched=" + std::to_string(report.matched_pairs.size()) +
         " pruned=" + std::to_string(report.pruned_cars.size()) + " match_fraction=" + buf + "\n";
  return out;
}

}  // namespace cba
