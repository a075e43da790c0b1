#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cba/classifier.hpp"
#include "cba/tree.hpp"

namespace cba {

enum class ChosenSide { Car, Tree };

struct MatchedPair {
  ClassAssociationRule car;
  TreeRule tree_rule;
  ChosenSide chosen = ChosenSide::Car;

  ClassId chosen_label() const { return chosen == ChosenSide::Tree ? tree_rule.label : car.label; }
  friend bool operator==(const MatchedPair&, const MatchedPair&) = default;
};

struct MergeReport {
  std::vector<MatchedPair> matched_pairs;
  Rules pruned_cars;
  bool fallback_used = false;
  double match_fraction = 0.0;

  friend bool operator==(const MergeReport&, const MergeReport&) = default;
};

/// A tree rule set is degenerate when empty or a single unconditional leaf.
bool is_degenerate(std::span<const TreeRule> tree_rules);

/// Index of the highest-confidence tree rule sharing an (attribute, value)
/// pair with `condset`; earliest wins ties.
std::optional<std::size_t> best_match(const Condset& condset, std::span<const TreeRule> tree_rules);

/// Hybrid classifier. Each ranked CAR either finds a tree rule sharing an
/// item (and takes the tree's class only if the tree rule is strictly more
/// confident) or is dropped. A degenerate tree leaves the ranked list intact.
std::pair<Classifier, MergeReport> merge(const Rules& ranked, std::span<const TreeRule> tree_rules,
                                         const Dataset& training);

double match_fraction(const Rules& ranked, std::span<const TreeRule> tree_rules);

/// One line per pair, then one per pruned CAR, then a summary line.
std::string format_merge_report(const MergeReport& report, const Schema& schema);

}  // namespace cba
