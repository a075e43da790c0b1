#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cba/dataset.hpp"
#include "cba/ratio.hpp"

namespace cba {

struct Item {
  AttributeId attribute = 0;
  ValueId value = 0;

  friend auto operator<=>(const Item&, const Item&) = default;
};

/// Items sorted by attribute, at most one per attribute.
using Condset = std::vector<Item>;

bool is_canonical(const Condset& condset);
bool matches(const Condset& condset, const Row& row);
bool matches(const Condset& condset, std::span<const ValueId> values);
/// True when `sub` is a proper subset of `super` (both canonical).
bool is_proper_subset(const Condset& sub, const Condset& super);

struct RuleItem {
  Condset condset;
  std::uint64_t condsup_count = 0;
  ClassId label = 0;
  std::uint64_t rulesup_count = 0;
  std::uint32_t pass = 0;     // == condset.size() once frequent
  std::uint32_t ordinal = 0;  // position within its pass

  friend bool operator==(const RuleItem&, const RuleItem&) = default;
};

struct MiningConfig {
  Threshold minsup;
  Threshold minconf;

  static MiningConfig from_fractions(double minsup, double minconf);
};

/// levels[k-1] holds F_k in canonical (condset, class) order.
struct FrequentSets {
  std::vector<std::vector<RuleItem>> levels;

  std::size_t total() const;
};

/// A class association rule, condset -> label, with exact counts:
/// support = rule_count / total, confidence = rule_count / cond_count.
struct ClassAssociationRule {
  Condset condset;
  ClassId label = 0;
  std::uint64_t rule_count = 0;
  std::uint64_t cond_count = 0;
  std::uint64_t total = 0;
  std::uint32_t pass = 0;
  std::uint32_t ordinal = 0;

  Ratio support() const { return {rule_count, total}; }
  Ratio confidence() const { return {rule_count, cond_count}; }

  friend bool operator==(const ClassAssociationRule&, const ClassAssociationRule&) = default;
};

using Rules = std::vector<ClassAssociationRule>;

struct Counts {
  std::uint64_t condsup = 0;
  std::uint64_t rulesup = 0;
  friend bool operator==(const Counts&, const Counts&) = default;
};

Counts count_ruleitem(const Dataset& dataset, const Condset& condset, ClassId label);

/// Apriori join of F_k into level-(k+1) candidates (counts zeroed). Output is
/// deduplicated and in canonical order.
std::vector<RuleItem> candidate_gen(std::span<const RuleItem> frequent);

FrequentSets generate_frequent_ruleitems(const Dataset& dataset, const MiningConfig& config);

Rules extract_cars(const FrequentSets& frequent, const MiningConfig& config, std::uint64_t n);

/// Convenience: generate + extract.
Rules mine_cars(const Dataset& dataset, const MiningConfig& config);

/// "A=e AND B=p", or "TRUE" for the empty condset.
std::string format_condset(const Condset& condset, const Schema& schema);
/// `IF A=e THEN C=y  sup=3/10 conf=3/4 pass=1 ord=0`
std::string format_rule(const ClassAssociationRule& rule, const Schema& schema);
std::string format_rules(std::span<const ClassAssociationRule> rules, const Schema& schema);

}  // namespace cba
