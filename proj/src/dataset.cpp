#include "cba/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "cba/error.hpp"

namespace cba {

ValueId ValueDictionary::intern(std::string_view value) {
  if (auto id = find(value)) return *id;
  values_.emplace_back(value);
  return static_cast<ValueId>(values_.size() - 1);
}

std::optional<ValueId> ValueDictionary::find(std::string_view value) const {
  auto it = std::find(values_.begin(), values_.end(), value);
  if (it == values_.end()) return std::nullopt;
  return static_cast<ValueId>(it - values_.begin());
}

std::optional<AttributeId> Schema::find_attribute(std::string_view name) const {
  auto it = std::find(attributes.begin(), attributes.end(), name);
  if (it == attributes.end()) return std::nullopt;
  return static_cast<AttributeId>(it - attributes.begin());
}

Dataset::Dataset(Schema schema, std::vector<Row> rows) : schema_(std::move(schema)), rows_(std::move(rows)) {
  if (rows_.empty()) throw_input("dataset has no rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    if (r.values.size() != schema_.attribute_count())
      throw_input("row " + std::to_string(i + 1) + " does not cover every attribute");
    for (std::size_t a = 0; a < r.values.size(); ++a)
      if (r.values[a] >= schema_.values[a].size())
        throw_input("row " + std::to_string(i + 1) + " has a value outside the schema");
    if (r.label >= schema_.classes.size())
      throw_input("row " + std::to_string(i + 1) + " has a class outside the schema");
  }
}

Dataset Dataset::from_table(const std::vector<std::string>& header,
                            const std::vector<std::vector<std::string>>& cells,
                            std::optional<std::string> class_column) {
  if (header.empty()) throw_input("empty header");
  if (cells.empty()) throw_input("no data rows");
  for (std::size_t i = 0; i < header.size(); ++i)
    for (std::size_t j = i + 1; j < header.size(); ++j)
      if (header[i] == header[j]) throw_input("duplicate column name '" + header[i] + "'");

  std::size_t class_col = header.size() - 1;
  if (class_column) {
    auto it = std::find(header.begin(), header.end(), *class_column);
    if (it == header.end()) throw_input("class column '" + *class_column + "' not found in header");
    class_col = static_cast<std::size_t>(it - header.begin());
  }

  Schema schema;
  schema.class_attribute = header[class_col];
  schema.class_column = class_col;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != class_col) schema.attributes.push_back(header[c]);
  schema.values.resize(schema.attributes.size());

  std::vector<Row> rows;
  rows.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& line = cells[i];
    if (line.size() != header.size())
      throw_input("row " + std::to_string(i + 1) + " has " + std::to_string(line.size()) +
                  " cells, header has " + std::to_string(header.size()));
    Row row;
    row.values.reserve(schema.attributes.size());
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (line[c].empty())
        throw_input("row " + std::to_string(i + 1) + ", column '" + header[c] + "': missing value");
      if (c == class_col) {
        row.label = schema.classes.intern(line[c]);
      } else {
        const std::size_t a = row.values.size();
        row.values.push_back(schema.values[a].intern(line[c]));
      }
    }
    rows.push_back(std::move(row));
  }
  return Dataset(std::move(schema), std::move(rows));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<Row> picked;
  picked.reserve(indices.size());
  for (auto i : indices) picked.push_back(rows_.at(i));
  return Dataset(schema_, std::move(picked));
}

std::vector<std::uint64_t> Dataset::class_counts() const {
  std::vector<std::uint64_t> counts(schema_.classes.size(), 0);
  for (const auto& r : rows_) ++counts[r.label];
  return counts;
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Table parse_table(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  Table table;
  bool have_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;  // blank lines, including a trailing one
    if (!have_header) {
      table.header = split_line(line);
      have_header = true;
    } else {
      table.cells.push_back(split_line(line));
    }
  }
  if (!have_header) throw_input("empty file");
  return table;
}

Table read_table(const std::filesystem::path& path) { return parse_table(slurp(path)); }

Dataset parse_csv(std::string_view text, std::optional<std::string> class_column) {
  Table t = parse_table(text);
  return Dataset::from_table(t.header, t.cells, std::move(class_column));
}

Dataset load_csv(const std::filesystem::path& path, std::optional<std::string> class_column) {
  if (!std::filesystem::exists(path)) throw Error(ErrorKind::Io, "no such file '" + path.string() + "'");
  try {
    return parse_csv(slurp(path), std::move(class_column));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Input) throw_input(path.string() + ": " + e.what());
    throw;
  }
}

std::string to_csv(const Dataset& dataset) {
  const Schema& s = dataset.schema();
  const std::size_t width = s.attributes.size() + 1;
  std::string out;
  auto emit = [&](auto&& cell_at) {
    for (std::size_t c = 0, a = 0; c < width; ++c) {
      if (c) out += ',';
      if (c == s.class_column) {
        out += cell_at(std::nullopt);
      } else {
        out += cell_at(std::optional<std::size_t>(a));
        ++a;
      }
    }
    out += '\n';
  };
  emit([&](std::optional<std::size_t> a) { return a ? s.attributes[*a] : s.class_attribute; });
  for (const auto& row : dataset.rows())
    emit([&](std::optional<std::size_t> a) {
      return a ? s.values[*a].name(row.values[*a]) : s.classes.name(row.label);
    });
  return out;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << to_csv(dataset);
}

namespace {

std::string shortest(double v) {
  if (v == 0.0) v = 0.0;  // fold -0 into 0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string interval_label(double lo, double hi, bool closed) {
  return "[" + shortest(lo) + "," + shortest(hi) + (closed ? "]" : ")");
}

double parse_number(const std::string& cell, std::size_t row, const std::string& column) {
  double v = 0.0;
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || !std::isfinite(v))
    throw_input("row " + std::to_string(row + 1) + ", column '" + column + "': '" + cell + "' is not numeric");
  return v;
}

// Bin edges e_0 < e_1 < ... < e_k; value x goes to the last bin i with e_i <= x.
std::vector<double> bin_edges(std::vector<double> values, BinStrategy strategy, int bins) {
  std::sort(values.begin(), values.end());
  const double lo = values.front(), hi = values.back();
  std::vector<double> edges{lo};
  if (lo == hi) return edges;
  if (strategy == BinStrategy::EqualWidth) {
    const double width = (hi - lo) / bins;
    for (int i = 1; i < bins; ++i) {
      double e = lo + width * i;
      if (e > edges.back() && e < hi) edges.push_back(e);
    }
  } else {
    const std::size_t n = values.size();
    for (int i = 1; i < bins; ++i) {
      double e = values[(static_cast<std::size_t>(i) * n) / static_cast<std::size_t>(bins)];
      if (e > edges.back() && e < hi) edges.push_back(e);
    }
  }
  edges.push_back(hi);
  return edges;
}

}  // namespace

Dataset discretize(const Dataset& dataset, std::span<const std::string> columns, BinStrategy strategy, int bins) {
  if (bins < 1) throw_input("bins must be >= 1");
  if (columns.empty()) return dataset;
  const Schema& s = dataset.schema();

  std::vector<bool> selected(s.attribute_count(), false);
  for (const auto& name : columns) {
    auto a = s.find_attribute(name);
    if (!a) throw_input("discretize: unknown attribute '" + name + "'");
    selected[*a] = true;
  }

  // Rebuild as a string table so the new labels get fresh first-appearance ids.
  std::vector<std::vector<std::string>> cells(dataset.size());
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    const Row& row = dataset.row(r);
    for (std::size_t a = 0; a < s.attribute_count(); ++a) cells[r].push_back(s.values[a].name(row.values[a]));
  }
  for (std::size_t a = 0; a < s.attribute_count(); ++a) {
    if (!selected[a]) continue;
    std::vector<double> xs;
    xs.reserve(dataset.size());
    for (std::size_t r = 0; r < dataset.size(); ++r) xs.push_back(parse_number(cells[r][a], r, s.attributes[a]));
    const auto edges = bin_edges(xs, strategy, bins);
    for (std::size_t r = 0; r < dataset.size(); ++r) {
      if (edges.size() == 1) {
        cells[r][a] = interval_label(edges[0], edges[0], true);
        continue;
      }
      const std::size_t last = edges.size() - 2;
      auto it = std::upper_bound(edges.begin(), edges.end(), xs[r]);
      std::size_t bin = std::min(static_cast<std::size_t>(it - edges.begin()) - 1, last);
      cells[r][a] = interval_label(edges[bin], edges[bin + 1], bin == last);
    }
  }

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> table(dataset.size());
  for (std::size_t c = 0, a = 0; c <= s.attribute_count(); ++c) {
    if (c == s.class_column) {
      header.push_back(s.class_attribute);
      for (std::size_t r = 0; r < dataset.size(); ++r) table[r].push_back(s.classes.name(dataset.row(r).label));
    } else {
      header.push_back(s.attributes[a]);
      for (std::size_t r = 0; r < dataset.size(); ++r) table[r].push_back(cells[r][a]);
      ++a;
    }
  }
  return Dataset::from_table(header, table, s.class_attribute);
}

ClassId majority_of(std::span<const std::uint64_t> class_counts, const ValueDictionary& classes) {
  ClassId best = 0;
  for (ClassId c = 1; c < class_counts.size(); ++c) {
    if (class_counts[c] > class_counts[best] ||
        (class_counts[c] == class_counts[best] && classes.name(c) < classes.name(best)))
      best = c;
  }
  return best;
}

ClassId majority_class(const Dataset& dataset) {
  const auto counts = dataset.class_counts();
  return majority_of(counts, dataset.schema().classes);
}

std::vector<std::size_t> FoldAssignment::rows_in(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldAssignment::rows_not_in(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    if (fold_of[i] != fold) out.push_back(i);
  return out;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void seeded_shuffle(std::vector<std::size_t>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next() % i);
    std::swap(items[i - 1], items[j]);
  }
}

FoldAssignment stratified_shuffle_partition(const Dataset& dataset, std::size_t nfolds, std::uint64_t seed,
                                            PartitionMode mode) {
  if (nfolds < 1) throw_input("nfolds must be >= 1");
  if (nfolds > dataset.size())
    throw_input("nfolds (" + std::to_string(nfolds) + ") exceeds row count (" + std::to_string(dataset.size()) + ")");

  SplitMix64 rng(seed);
  std::vector<std::size_t> order;
  order.reserve(dataset.size());
  if (mode == PartitionMode::Stratified) {
    // Class blocks in class-id order, each shuffled with the same stream.
    std::vector<std::vector<std::size_t>> groups(dataset.schema().classes.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) groups[dataset.row(i).label].push_back(i);
    for (auto& g : groups) {
      seeded_shuffle(g, rng);
      order.insert(order.end(), g.begin(), g.end());
    }
  } else {
    for (std::size_t i = 0; i < dataset.size(); ++i) order.push_back(i);
    seeded_shuffle(order, rng);
  }

  FoldAssignment fa;
  fa.nfolds = nfolds;
  fa.seed = seed;
  fa.fold_of.assign(dataset.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) fa.fold_of[order[pos]] = pos % nfolds;
  return fa;
}

}  // namespace cba
