#include "cba/mining.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "cba/error.hpp"

namespace cba {

Threshold Threshold::from_double(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw_input("threshold must lie in [0,1], got " + std::to_string(fraction));
  return Threshold{static_cast<std::uint64_t>(std::llround(fraction * static_cast<double>(kScale)))};
}

MiningConfig MiningConfig::from_fractions(double minsup, double minconf) {
  return MiningConfig{Threshold::from_double(minsup), Threshold::from_double(minconf)};
}

std::size_t FrequentSets::total() const {
  std::size_t n = 0;
  for (const auto& level : levels) n += level.size();
  return n;
}

bool is_canonical(const Condset& condset) {
  for (std::size_t i = 1; i < condset.size(); ++i)
    if (condset[i - 1].attribute >= condset[i].attribute) return false;
  return true;
}

bool matches(const Condset& condset, std::span<const ValueId> values) {
  for (const Item& it : condset)
    if (values[it.attribute] != it.value) return false;
  return true;
}

bool matches(const Condset& condset, const Row& row) { return matches(condset, std::span<const ValueId>(row.values)); }

bool is_proper_subset(const Condset& sub, const Condset& super) {
  return sub.size() < super.size() && std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

Counts count_ruleitem(const Dataset& dataset, const Condset& condset, ClassId label) {
  const Schema& s = dataset.schema();
  if (!is_canonical(condset)) throw_input("condset must be sorted by attribute with one item per attribute");
  for (const Item& it : condset) {
    if (it.attribute >= s.attribute_count()) throw_input("unknown attribute id " + std::to_string(it.attribute));
    if (it.value >= s.values[it.attribute].size())
      throw_input("unknown value id " + std::to_string(it.value) + " for attribute '" + s.attributes[it.attribute] + "'");
  }
  if (label >= s.classes.size()) throw_input("unknown class id " + std::to_string(label));

  Counts c;
  for (const Row& row : dataset.rows()) {
    if (!matches(condset, row)) continue;
    ++c.condsup;
    if (row.label == label) ++c.rulesup;
  }
  return c;
}

namespace {

bool canonical_less(const RuleItem& a, const RuleItem& b) {
  return std::tie(a.condset, a.label) < std::tie(b.condset, b.label);
}

}  // namespace

std::vector<RuleItem> candidate_gen(std::span<const RuleItem> frequent) {
  std::vector<RuleItem> out;
  if (frequent.size() < 2) return out;

  // Join partners share class and the first k-1 items.
  std::vector<const RuleItem*> by_class(frequent.size());
  for (std::size_t i = 0; i < frequent.size(); ++i) by_class[i] = &frequent[i];
  std::sort(by_class.begin(), by_class.end(), [](const RuleItem* a, const RuleItem* b) {
    return std::tie(a->label, a->condset) < std::tie(b->label, b->condset);
  });

  std::vector<std::pair<ClassId, Condset>> known;
  known.reserve(frequent.size());
  for (const auto& r : frequent) known.emplace_back(r.label, r.condset);
  std::sort(known.begin(), known.end());

  auto same_prefix = [](const Condset& a, const Condset& b) {
    return std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1);
  };

  for (std::size_t i = 0; i < by_class.size(); ++i) {
    const RuleItem& a = *by_class[i];
    const std::size_t k = a.condset.size();
    if (k == 0) continue;
    for (std::size_t j = i + 1; j < by_class.size(); ++j) {
      const RuleItem& b = *by_class[j];
      if (b.label != a.label || b.condset.size() != k || !same_prefix(a.condset, b.condset)) break;
      if (a.condset.back().attribute == b.condset.back().attribute) continue;

      RuleItem cand;
      cand.label = a.label;
      cand.condset = a.condset;
      cand.condset.push_back(b.condset.back());
      cand.pass = static_cast<std::uint32_t>(k + 1);

      // Downward closure: every size-k sub-ruleitem must be frequent.
      bool all_frequent = true;
      for (std::size_t drop = 0; drop + 2 < cand.condset.size() && all_frequent; ++drop) {
        Condset sub;
        sub.reserve(k);
        for (std::size_t t = 0; t < cand.condset.size(); ++t)
          if (t != drop) sub.push_back(cand.condset[t]);
        all_frequent = std::binary_search(known.begin(), known.end(), std::make_pair(cand.label, sub));
      }
      if (all_frequent) out.push_back(std::move(cand));
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const RuleItem& x, const RuleItem& y) { return x.label == y.label && x.condset == y.condset; }),
            out.end());
  return out;
}

namespace {

// Counts every candidate by one row scan per distinct condset. Candidates must
// be in canonical order, so equal condsets are adjacent.
void count_candidates(const Dataset& dataset, std::vector<RuleItem>& candidates) {
  const std::size_t nclasses = dataset.schema().classes.size();
  std::vector<std::uint64_t> per_class(nclasses);
  std::size_t i = 0;
  while (i < candidates.size()) {
    std::size_t j = i;
    while (j < candidates.size() && candidates[j].condset == candidates[i].condset) ++j;
    std::fill(per_class.begin(), per_class.end(), 0);
    std::uint64_t cond = 0;
    const Condset& cs = candidates[i].condset;
    for (const Row& row : dataset.rows()) {
      if (!matches(cs, row)) continue;
      ++cond;
      ++per_class[row.label];
    }
    for (std::size_t t = i; t < j; ++t) {
      candidates[t].condsup_count = cond;
      candidates[t].rulesup_count = per_class[candidates[t].label];
    }
    i = j;
  }
}

std::vector<RuleItem> keep_frequent(std::vector<RuleItem> items, const Threshold& minsup, std::uint64_t n) {
  std::vector<RuleItem> out;
  for (auto& r : items)
    if (minsup.met_by(r.rulesup_count, n)) out.push_back(std::move(r));
  for (std::size_t i = 0; i < out.size(); ++i) out[i].ordinal = static_cast<std::uint32_t>(i);
  return out;
}

}  // namespace

FrequentSets generate_frequent_ruleitems(const Dataset& dataset, const MiningConfig& config) {
  const Schema& s = dataset.schema();
  const std::uint64_t n = dataset.size();
  const std::size_t nclasses = s.classes.size();

  // First pass: one scan tallies every (attribute, value, class) triple.
  std::vector<RuleItem> level;
  {
    std::vector<std::vector<std::uint64_t>> cond(s.attribute_count());
    std::vector<std::vector<std::uint64_t>> rule(s.attribute_count());
    for (std::size_t a = 0; a < s.attribute_count(); ++a) {
      cond[a].assign(s.values[a].size(), 0);
      rule[a].assign(s.values[a].size() * nclasses, 0);
    }
    for (const Row& row : dataset.rows())
      for (std::size_t a = 0; a < s.attribute_count(); ++a) {
        ++cond[a][row.values[a]];
        ++rule[a][row.values[a] * nclasses + row.label];
      }
    for (AttributeId a = 0; a < s.attribute_count(); ++a)
      for (ValueId v = 0; v < s.values[a].size(); ++v)
        for (ClassId c = 0; c < nclasses; ++c) {
          RuleItem r;
          r.condset = {Item{a, v}};
          r.label = c;
          r.condsup_count = cond[a][v];
          r.rulesup_count = rule[a][v * nclasses + c];
          r.pass = 1;
          level.push_back(std::move(r));
        }
  }
  std::sort(level.begin(), level.end(), canonical_less);

  FrequentSets out;
  level = keep_frequent(std::move(level), config.minsup, n);
  while (!level.empty()) {
    out.levels.push_back(level);
    auto candidates = candidate_gen(level);
    count_candidates(dataset, candidates);
    level = keep_frequent(std::move(candidates), config.minsup, n);
  }
  return out;
}

Rules extract_cars(const FrequentSets& frequent, const MiningConfig& config, std::uint64_t n) {
  Rules cars;
  for (const auto& level : frequent.levels)
    for (const RuleItem& r : level) {
      if (r.condsup_count == 0 || !config.minconf.met_by(r.rulesup_count, r.condsup_count)) continue;
      cars.push_back(ClassAssociationRule{r.condset, r.label, r.rulesup_count, r.condsup_count, n, r.pass, r.ordinal});
    }
  return cars;
}

Rules mine_cars(const Dataset& dataset, const MiningConfig& config) {
  return extract_cars(generate_frequent_ruleitems(dataset, config), config, dataset.size());
}

std::string format_condset(const Condset& condset, const Schema& schema) {
  if (condset.empty()) return "TRUE";
  std::string out;
  for (std::size_t i = 0; i < condset.size(); ++i) {
    if (i) out += " AND ";
    out += schema.attributes.at(condset[i].attribute);
    out += '=';
    out += schema.values.at(condset[i].attribute).name(condset[i].value);
  }
  return out;
}

std::string format_rule(const ClassAssociationRule& rule, const Schema& schema) {
  return "IF " + format_condset(rule.condset, schema) + " THEN " + schema.class_attribute + "=" +
         schema.classes.name(rule.label) + "  sup=" + rule.support().str() + " conf=" + rule.confidence().str() +
         " pass=" + std::to_string(rule.pass) + " ord=" + std::to_string(rule.ordinal);
}

std::string format_rules(std::span<const ClassAssociationRule> rules, const Schema& schema) {
  std::string out;
  for (const auto& r : rules) out += format_rule(r, schema) + "\n";
  return out;
}

}  // namespace cba
