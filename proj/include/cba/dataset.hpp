#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cba {

using AttributeId = std::uint32_t;
using ValueId = std::uint32_t;
using ClassId = std::uint32_t;

/// Ordered, duplicate-free set of value strings. Ids are assigned in order of
/// first appearance in the source file.
class ValueDictionary {
public:
  ValueId intern(std::string_view value);
  std::optional<ValueId> find(std::string_view value) const;
  const std::string& name(ValueId id) const { return values_.at(id); }
  std::size_t size() const { return values_.size(); }
  const std::vector<std::string>& values() const { return values_; }

  friend bool operator==(const ValueDictionary&, const ValueDictionary&) = default;

private:
  std::vector<std::string> values_;
};

struct Schema {
  std::vector<std::string> attributes;  // source column order, class column excluded
  std::string class_attribute;
  std::vector<ValueDictionary> values;  // one per attribute
  ValueDictionary classes;
  // Position of the class column in the source header, so CSV output keeps
  // the original layout.
  std::size_t class_column = 0;

  std::size_t attribute_count() const { return attributes.size(); }
  std::optional<AttributeId> find_attribute(std::string_view name) const;

  friend bool operator==(const Schema&, const Schema&) = default;
};

struct Row {
  std::vector<ValueId> values;  // indexed by AttributeId
  ClassId label = 0;

  friend bool operator==(const Row&, const Row&) = default;
};

/// Immutable categorical table. Construct through load_csv / from_table.
class Dataset {
public:
  Dataset(Schema schema, std::vector<Row> rows);

  /// Builds a dataset from string cells. `header` includes the class column.
  static Dataset from_table(const std::vector<std::string>& header,
                            const std::vector<std::vector<std::string>>& cells,
                            std::optional<std::string> class_column = std::nullopt);

  const Schema& schema() const { return schema_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(std::size_t i) const { return rows_.at(i); }
  std::size_t size() const { return rows_.size(); }

  /// Same schema, selected rows in the given order.
  Dataset subset(std::span<const std::size_t> indices) const;

  /// Per-class row counts, indexed by ClassId.
  std::vector<std::uint64_t> class_counts() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

private:
  Schema schema_;
  std::vector<Row> rows_;
};

/// Loads a comma-separated file whose first line is the header. The class
/// column defaults to the last column.
Dataset load_csv(const std::filesystem::path& path, std::optional<std::string> class_column = std::nullopt);
Dataset parse_csv(std::string_view text, std::optional<std::string> class_column = std::nullopt);

std::string to_csv(const Dataset& dataset);
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

/// Raw table, used where cells must be edited before interning (discretize)
/// or where the input need not carry a class column (prediction input).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
};
Table parse_table(std::string_view text);
Table read_table(const std::filesystem::path& path);

enum class BinStrategy { EqualWidth, EqualFrequency };

/// Replaces each named numeric column with "[lo,hi)" interval labels (the last
/// bin is closed: "[lo,hi]"). Columns not named are left untouched.
Dataset discretize(const Dataset& dataset, std::span<const std::string> columns,
                   BinStrategy strategy = BinStrategy::EqualFrequency, int bins = 4);

/// Most frequent class; ties go to the lexicographically smallest label.
ClassId majority_class(const Dataset& dataset);
ClassId majority_of(std::span<const std::uint64_t> class_counts, const ValueDictionary& classes);

struct FoldAssignment {
  std::size_t nfolds = 1;
  std::uint64_t seed = 0;
  std::vector<std::size_t> fold_of;  // per row

  std::vector<std::size_t> rows_in(std::size_t fold) const;
  std::vector<std::size_t> rows_not_in(std::size_t fold) const;

  friend bool operator==(const FoldAssignment&, const FoldAssignment&) = default;
};

enum class PartitionMode {
  Stratified,  // per-class shuffled blocks dealt round-robin
  PlainMod,    // one shuffled list, fold = position mod nfolds
};

FoldAssignment stratified_shuffle_partition(const Dataset& dataset, std::size_t nfolds, std::uint64_t seed,
                                            PartitionMode mode = PartitionMode::Stratified);

/// SplitMix64. Chosen because its recurrence is a few lines and therefore
/// reproducible in any language:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31)
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();

private:
  std::uint64_t state_;
};

/// Fisher-Yates from the back: for i = n-1 .. 1, j = next() mod (i+1), swap(i, j).
void seeded_shuffle(std::vector<std::size_t>& items, SplitMix64& rng);

}  // namespace cba
