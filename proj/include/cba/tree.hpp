#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cba/classifier.hpp"
#include "cba/dataset.hpp"
#include "cba/mining.hpp"

namespace cba {

struct TreeSettings {
  int max_depth = 7;
  std::size_t min_rows_per_node = 2;
  double min_gain = 0.0;
};

double entropy(std::span<const std::uint64_t> class_counts);

/// Information gain of splitting `rows` (all rows when empty) on `attribute`.
double info_gain(const Dataset& dataset, AttributeId attribute);
double info_gain(const Dataset& dataset, AttributeId attribute, std::span<const std::size_t> rows);

struct TreeNode {
  std::vector<std::uint64_t> class_counts;  // indexed by ClassId
  ClassId prediction = 0;                   // majority, lexicographic ties
  std::uint64_t rows = 0;

  // Internal nodes only: split attribute and children keyed by value.
  bool is_leaf = true;
  AttributeId split = 0;
  std::vector<std::pair<ValueId, std::unique_ptr<TreeNode>>> children;  // schema value order

  Ratio confidence() const { return {class_counts[prediction], rows}; }
};

struct DecisionTree {
  Schema schema;
  std::uint64_t training_rows = 0;
  std::unique_ptr<TreeNode> root;

  std::size_t leaf_count() const;
  std::size_t depth() const;
};

/// Greedy top-down ID3 over categorical attributes, multiway splits.
DecisionTree build_tree(const Dataset& training, const TreeSettings& settings = {});

/// Walks the tree; at a node with no child for the row's value, answers that
/// node's majority class.
ClassId predict(const DecisionTree& tree, std::span<const ValueId> values);

struct TreeRule {
  Condset condset;
  ClassId label = 0;
  std::uint64_t majority_count = 0;
  std::uint64_t leaf_rows = 0;
  std::uint64_t total = 0;

  Ratio confidence() const { return {majority_count, leaf_rows}; }
  Ratio support() const { return {leaf_rows, total}; }

  friend bool operator==(const TreeRule&, const TreeRule&) = default;
};

/// One rule per leaf, depth-first with children in schema value order.
std::vector<TreeRule> tree_to_rules(const DecisionTree& tree);

std::string format_tree_rule(const TreeRule& rule, const Schema& schema);

/// Indented dump, one node per line: `B=p [y=2 n=1] -> y`.
std::string dump_tree(const DecisionTree& tree);

/// Rule-list form of the tree: the leaf rules, then for every internal node
/// (deepest first) its path condset predicting that node's majority. The
/// trailing rules only fire for values unseen at that node, so prediction
/// equals predict(tree, row).
Classifier tree_classifier(const DecisionTree& tree, ClassId default_class);

}  // namespace cba
