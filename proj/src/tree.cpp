#include "cba/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "cba/error.hpp"

namespace cba {

double entropy(std::span<const std::uint64_t> class_counts) {
  const std::uint64_t total = std::accumulate(class_counts.begin(), class_counts.end(), std::uint64_t{0});
  if (total == 0) throw_input("entropy of an empty distribution");
  double h = 0.0;
  for (auto c : class_counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

namespace {

double split_gain(const Dataset& d, AttributeId attribute, std::span<const std::size_t> rows) {
  const std::size_t nclasses = d.schema().classes.size();
  const std::size_t nvalues = d.schema().values[attribute].size();
  std::vector<std::uint64_t> parent(nclasses, 0);
  std::vector<std::uint64_t> by_value(nvalues * nclasses, 0);
  for (auto i : rows) {
    const Row& r = d.row(i);
    ++parent[r.label];
    ++by_value[r.values[attribute] * nclasses + r.label];
  }
  const double n = static_cast<double>(rows.size());
  double residual = 0.0;
  for (std::size_t v = 0; v < nvalues; ++v) {
    std::span<const std::uint64_t> part(by_value.data() + v * nclasses, nclasses);
    const auto nv = std::accumulate(part.begin(), part.end(), std::uint64_t{0});
    if (nv == 0) continue;
    residual += static_cast<double>(nv) / n * entropy(part);
  }
  // Clamp rounding noise; gain is mathematically nonnegative.
  return std::max(0.0, entropy(parent) - residual);
}

std::vector<std::size_t> all_rows(const Dataset& d) {
  std::vector<std::size_t> rows(d.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

}  // namespace

double info_gain(const Dataset& dataset, AttributeId attribute, std::span<const std::size_t> rows) {
  if (attribute >= dataset.schema().attribute_count()) throw_input("unknown attribute id " + std::to_string(attribute));
  if (rows.empty()) {
    const auto every = all_rows(dataset);
    return split_gain(dataset, attribute, every);
  }
  return split_gain(dataset, attribute, rows);
}

double info_gain(const Dataset& dataset, AttributeId attribute) { return info_gain(dataset, attribute, {}); }

namespace {

struct Builder {
  const Dataset& data;
  const TreeSettings& settings;

  std::unique_ptr<TreeNode> grow(const std::vector<std::size_t>& rows, std::vector<bool>& used, int depth) {
    auto node = std::make_unique<TreeNode>();
    node->class_counts.assign(data.schema().classes.size(), 0);
    for (auto i : rows) ++node->class_counts[data.row(i).label];
    node->rows = rows.size();
    node->prediction = majority_of(node->class_counts, data.schema().classes);

    const bool pure = node->class_counts[node->prediction] == node->rows;
    if (pure || depth >= settings.max_depth || rows.size() < settings.min_rows_per_node) return node;

    std::optional<AttributeId> best;
    double best_gain = 0.0;
    for (AttributeId a = 0; a < data.schema().attribute_count(); ++a) {
      if (used[a]) continue;
      const double g = split_gain(data, a, rows);
      if (!best || g > best_gain) {  // strict: ties keep the earlier attribute
        best = a;
        best_gain = g;
      }
    }
    if (!best || best_gain <= settings.min_gain) return node;

    const std::size_t nvalues = data.schema().values[*best].size();
    std::vector<std::vector<std::size_t>> parts(nvalues);
    for (auto i : rows) parts[data.row(i).values[*best]].push_back(i);

    node->is_leaf = false;
    node->split = *best;
    used[*best] = true;
    for (ValueId v = 0; v < nvalues; ++v) {
      if (parts[v].empty()) continue;
      node->children.emplace_back(v, grow(parts[v], used, depth + 1));
    }
    used[*best] = false;
    return node;
  }
};

void visit_depth(const TreeNode& n, std::size_t d, std::size_t& out) {
  out = std::max(out, d);
  for (const auto& [v, child] : n.children) visit_depth(*child, d + 1, out);
}

std::size_t count_leaves(const TreeNode& n) {
  if (n.is_leaf) return 1;
  std::size_t total = 0;
  for (const auto& [v, child] : n.children) total += count_leaves(*child);
  return total;
}

}  // namespace

std::size_t DecisionTree::leaf_count() const { return root ? count_leaves(*root) : 0; }

std::size_t DecisionTree::depth() const {
  std::size_t d = 0;
  if (root) visit_depth(*root, 0, d);
  return d;
}

DecisionTree build_tree(const Dataset& training, const TreeSettings& settings) {
  if (settings.max_depth < 0) throw_input("max_depth must be nonnegative");
  if (settings.min_gain < 0.0) throw_input("min_gain must be nonnegative");
  DecisionTree tree;
  tree.schema = training.schema();
  tree.training_rows = training.size();
  std::vector<bool> used(training.schema().attribute_count(), false);
  Builder b{training, settings};
  tree.root = b.grow(all_rows(training), used, 0);
  return tree;
}

ClassId predict(const DecisionTree& tree, std::span<const ValueId> values) {
  const TreeNode* node = tree.root.get();
  while (!node->is_leaf) {
    const ValueId v = values[node->split];
    auto it = std::find_if(node->children.begin(), node->children.end(), [&](const auto& c) { return c.first == v; });
    if (it == node->children.end()) break;
    node = it->second.get();
  }
  return node->prediction;
}

namespace {

template <class Fn>
void walk(const TreeNode& node, Condset& path, std::size_t depth, Fn&& fn) {
  fn(node, path, depth);
  for (const auto& [v, child] : node.children) {
    path.push_back(Item{node.split, v});
    walk(*child, path, depth + 1, fn);
    path.pop_back();
  }
}

Condset sorted(Condset c) {
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

std::vector<TreeRule> tree_to_rules(const DecisionTree& tree) {
  std::vector<TreeRule> rules;
  if (!tree.root) return rules;
  Condset path;
  walk(*tree.root, path, 0, [&](const TreeNode& n, const Condset& p, std::size_t) {
    if (!n.is_leaf) return;
    rules.push_back(TreeRule{sorted(p), n.prediction, n.class_counts[n.prediction], n.rows, tree.training_rows});
  });
  return rules;
}

std::string format_tree_rule(const TreeRule& rule, const Schema& schema) {
  return "IF " + format_condset(rule.condset, schema) + " THEN " + schema.class_attribute + "=" +
         schema.classes.name(rule.label) + "  sup=" + rule.support().str() + " conf=" + rule.confidence().str();
}

std::string dump_tree(const DecisionTree& tree) {
  std::string out;
  if (!tree.root) return out;
  const Schema& s = tree.schema;
  Condset path;
  walk(*tree.root, path, 0, [&](const TreeNode& n, const Condset& p, std::size_t depth) {
    out.append(depth * 2, ' ');
    if (p.empty()) {
      out += "root";
    } else {
      out += s.attributes[p.back().attribute] + "=" + s.values[p.back().attribute].name(p.back().value);
    }
    out += " [";
    for (ClassId c = 0; c < n.class_counts.size(); ++c) {
      if (c) out += ' ';
      out += s.classes.name(c) + "=" + std::to_string(n.class_counts[c]);
    }
    out += "]";
    if (n.is_leaf) out += " -> " + s.classes.name(n.prediction);
    out += "\n";
  });
  return out;
}

Classifier tree_classifier(const DecisionTree& tree, ClassId default_class) {
  Classifier c;
  c.schema = tree.schema;
  c.default_class = default_class;
  c.provenance = Provenance::Tree;
  if (!tree.root) return c;

  struct Internal {
    Condset path;
    const TreeNode* node;
    std::size_t depth;
  };
  std::vector<Internal> internals;
  std::uint32_t leaf_index = 0;
  Condset path;
  walk(*tree.root, path, 0, [&](const TreeNode& n, const Condset& p, std::size_t depth) {
    if (n.is_leaf) {
      c.rules.push_back(ClassAssociationRule{sorted(p), n.prediction, n.class_counts[n.prediction], n.rows,
                                             tree.training_rows, static_cast<std::uint32_t>(p.size()), leaf_index++});
    } else {
      internals.push_back(Internal{sorted(p), &n, depth});
    }
  });
  std::stable_sort(internals.begin(), internals.end(),
                   [](const Internal& a, const Internal& b) { return a.depth > b.depth; });
  for (const auto& in : internals) {
    const TreeNode& n = *in.node;
    c.rules.push_back(ClassAssociationRule{in.path, n.prediction, n.class_counts[n.prediction], n.rows,
                                           tree.training_rows, static_cast<std::uint32_t>(in.path.size()),
                                           leaf_index++});
  }
  return c;
}

}  // namespace cba
