#pragma once

// Shared test data and independent oracles. Nothing here calls into the
// mining / classifier implementation paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "cba/dataset.hpp"
#include "cba/mining.hpp"

namespace cba::test {

inline const char* kWorkedCsv =
    "A,B,C\n"
    "e,p,y\n"
    "e,p,y\n"
    "e,q,y\n"
    "g,q,y\n"
    "g,q,y\n"
    "g,q,n\n"
    "g,w,n\n"
    "g,w,n\n"
    "e,p,n\n"
    "f,q,n\n";

inline Dataset worked() { return parse_csv(kWorkedCsv); }

/// Rule described by strings, for readable golden comparisons.
struct NamedRule {
  std::vector<std::pair<std::string, std::string>> items;  // sorted by attribute order
  std::string label;
  std::uint64_t rule_count;
  std::uint64_t cond_count;

  friend auto operator<=>(const NamedRule&, const NamedRule&) = default;
};

inline Condset condset_of(const Dataset& d, const std::vector<std::pair<std::string, std::string>>& items) {
  Condset cs;
  for (const auto& [a, v] : items) {
    const auto aid = *d.schema().find_attribute(a);
    cs.push_back(Item{aid, *d.schema().values[aid].find(v)});
  }
  std::sort(cs.begin(), cs.end());
  return cs;
}

inline ClassId class_of(const Dataset& d, const std::string& label) { return *d.schema().classes.find(label); }

inline NamedRule named(const ClassAssociationRule& r, const Schema& s) {
  NamedRule n{{}, s.classes.name(r.label), r.rule_count, r.cond_count};
  for (const auto& it : r.condset) n.items.emplace_back(s.attributes[it.attribute], s.values[it.attribute].name(it.value));
  return n;
}

inline NamedRule named(const RuleItem& r, const Schema& s) {
  NamedRule n{{}, s.classes.name(r.label), r.rulesup_count, r.condsup_count};
  for (const auto& it : r.condset) n.items.emplace_back(s.attributes[it.attribute], s.values[it.attribute].name(it.value));
  return n;
}

template <class Range>
std::vector<NamedRule> named_all(const Range& rules, const Schema& s) {
  std::vector<NamedRule> out;
  for (const auto& r : rules) out.push_back(named(r, s));
  return out;
}

/// Random categorical dataset: `attrs` attributes with up to `values` values,
/// `classes` labels, `rows` rows.
inline Dataset random_dataset(std::mt19937_64& rng, std::size_t attrs, std::size_t values, std::size_t classes,
                              std::size_t rows) {
  std::vector<std::string> header;
  for (std::size_t a = 0; a < attrs; ++a) header.push_back("a" + std::to_string(a));
  header.push_back("cls");
  std::vector<std::vector<std::string>> cells;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> row;
    for (std::size_t a = 0; a < attrs; ++a) row.push_back("v" + std::to_string(rng() % values));
    row.push_back("c" + std::to_string(rng() % classes));
    cells.push_back(std::move(row));
  }
  return Dataset::from_table(header, cells);
}

/// Brute force: every nonempty condset that occurs in some row (as a subset of
/// the row's items), tallied by direct enumeration over rows. Frequent when
/// rulesup * 1000 >= minsup_permille * n. Result keyed by (condset, class).
struct OracleCount {
  std::uint64_t cond = 0;
  std::uint64_t rule = 0;
  friend bool operator==(const OracleCount&, const OracleCount&) = default;
};

inline std::map<std::pair<Condset, ClassId>, OracleCount> brute_force_frequent(const Dataset& d,
                                                                                std::uint64_t minsup_permille) {
  const std::size_t na = d.schema().attribute_count();
  std::map<Condset, std::vector<std::uint64_t>> per_class;
  const std::size_t nclasses = d.schema().classes.size();
  for (const auto& row : d.rows()) {
    for (std::uint32_t mask = 1; mask < (1u << na); ++mask) {
      Condset cs;
      for (std::uint32_t a = 0; a < na; ++a)
        if (mask & (1u << a)) cs.push_back(Item{a, row.values[a]});
      auto& counts = per_class[cs];
      if (counts.empty()) counts.assign(nclasses, 0);
      ++counts[row.label];
    }
  }
  std::map<std::pair<Condset, ClassId>, OracleCount> out;
  const std::uint64_t n = d.size();
  for (const auto& [cs, counts] : per_class) {
    std::uint64_t cond = 0;
    for (auto c : counts) cond += c;
    for (ClassId c = 0; c < nclasses; ++c)
      if (counts[c] * 1000 >= minsup_permille * n) out[{cs, c}] = OracleCount{cond, counts[c]};
  }
  return out;
}

}  // namespace cba::test
