#include "cba/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "cba/error.hpp"

namespace cba {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::CbaOdm1: return "cba-odm1";
    case Provenance::CbaOdm2: return "cba-odm2";
    case Provenance::Tree: return "tree";
  }
  return "unknown";
}

std::optional<Provenance> provenance_from_string(std::string_view s) {
  if (s == "cba-odm1") return Provenance::CbaOdm1;
  if (s == "cba-odm2") return Provenance::CbaOdm2;
  if (s == "tree") return Provenance::Tree;
  return std::nullopt;
}

bool precedes(const ClassAssociationRule& a, const ClassAssociationRule& b) {
  if (auto c = a.confidence() <=> b.confidence(); c != 0) return c > 0;
  if (auto s = a.support() <=> b.support(); s != 0) return s > 0;
  return std::tie(a.pass, a.ordinal) < std::tie(b.pass, b.ordinal);
}

Rules rank_rules(Rules cars) {
  std::stable_sort(cars.begin(), cars.end(), precedes);
  return cars;
}

Rules prune_general(const Rules& cars) {
  Rules kept;
  for (const auto& r : cars) {
    const bool dominated = std::any_of(cars.begin(), cars.end(), [&](const ClassAssociationRule& g) {
      return g.label == r.label && is_proper_subset(g.condset, r.condset) && g.confidence() >= r.confidence();
    });
    if (!dominated) kept.push_back(r);
  }
  return kept;
}

Classifier build_classifier(const Rules& ranked, const Dataset& training) {
  std::vector<bool> marked(ranked.size(), false);
  for (const Row& row : training.rows()) {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      // A condset match with the wrong class keeps scanning.
      if (ranked[i].label == row.label && matches(ranked[i].condset, row)) {
        marked[i] = true;
        break;
      }
    }
  }
  Classifier c;
  c.schema = training.schema();
  for (std::size_t i = 0; i < ranked.size(); ++i)
    if (marked[i]) c.rules.push_back(ranked[i]);
  c.default_class = majority_class(training);
  c.provenance = Provenance::CbaOdm1;
  return c;
}

ClassId predict(const Classifier& classifier, std::span<const ValueId> values) {
  for (const auto& r : classifier.rules)
    if (matches(r.condset, values)) return r.label;
  return classifier.default_class;
}

std::vector<ValueId> encode_row(const Schema& schema, const std::vector<std::string>& header,
                                const std::vector<std::string>& cells) {
  std::vector<ValueId> out(schema.attribute_count(), kUnseenValue);
  for (std::size_t c = 0; c < header.size() && c < cells.size(); ++c) {
    auto a = schema.find_attribute(header[c]);
    if (!a) continue;
    if (auto v = schema.values[*a].find(cells[c])) out[*a] = *v;
  }
  return out;
}

Ratio error_count(const Classifier& classifier, const Dataset& test) {
  if (test.size() == 0) throw_input("empty test set");
  std::uint64_t wrong = 0;
  for (const Row& row : test.rows())
    if (predict(classifier, row) != row.label) ++wrong;
  return Ratio{wrong, test.size()};
}

double error_rate(const Classifier& classifier, const Dataset& test) { return error_count(classifier, test).value(); }

std::string format_classifier(const Classifier& classifier) {
  return format_rules(classifier.rules, classifier.schema) + "DEFAULT " +
         classifier.schema.classes.name(classifier.default_class) + "\n";
}

// Model file: one `key args...` record per line, tokens space-separated and
// percent-escaped.
namespace {

std::string escape(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char ch : s) {
    if (ch <= 0x20 || ch == '%' || ch == '=' || ch == 0x7F) {
      out += '%';
      out += hex[ch >> 4];
      out += hex[ch & 0xF];
    } else {
      out += static_cast<char>(ch);
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '%') {
      out += s[i];
      continue;
    }
    if (i + 2 >= s.size()) throw_input("model: truncated escape in '" + std::string(s) + "'");
    unsigned v = 0;
    auto res = std::from_chars(s.data() + i + 1, s.data() + i + 3, v, 16);
    if (res.ptr != s.data() + i + 3) throw_input("model: bad escape in '" + std::string(s) + "'");
    out += static_cast<char>(v);
    i += 2;
  }
  return out;
}

std::vector<std::string> tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) throw_input("model: bad integer '" + std::string(s) + "'");
  return v;
}

std::pair<std::string, std::string> split_kv(std::string_view tok) {
  auto eq = tok.find('=');
  if (eq == std::string_view::npos) throw_input("model: expected key=value, got '" + std::string(tok) + "'");
  return {unescape(tok.substr(0, eq)), unescape(tok.substr(eq + 1))};
}

}  // namespace

std::string serialize(const Classifier& c) {
  const Schema& s = c.schema;
  std::ostringstream out;
  out << "format cba-classifier\n";
  out << "version " << kModelFormatVersion << "\n";
  out << "provenance " << to_string(c.provenance) << "\n";
  out << "class_column " << s.class_column << "\n";
  out << "class " << escape(s.class_attribute);
  for (const auto& v : s.classes.values()) out << ' ' << escape(v);
  out << "\n";
  for (std::size_t a = 0; a < s.attribute_count(); ++a) {
    out << "attribute " << escape(s.attributes[a]);
    for (const auto& v : s.values[a].values()) out << ' ' << escape(v);
    out << "\n";
  }
  out << "default " << escape(s.classes.name(c.default_class)) << "\n";
  for (const auto& r : c.rules) {
    out << "rule class=" << escape(s.classes.name(r.label)) << " rule_count=" << r.rule_count
        << " cond_count=" << r.cond_count << " total=" << r.total << " pass=" << r.pass << " ord=" << r.ordinal;
    for (const auto& it : r.condset)
      out << ' ' << escape(s.attributes[it.attribute]) << '=' << escape(s.values[it.attribute].name(it.value));
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

Classifier deserialize(std::string_view text) {
  Classifier c;
  Schema& s = c.schema;
  bool saw_format = false, saw_version = false, saw_default = false, saw_end = false;
  std::string default_name;
  std::vector<std::vector<std::string>> rule_lines;

  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++lineno;
    auto tok = tokens(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() < n) throw_input("model line " + std::to_string(lineno) + ": too few fields for '" + key + "'");
    };
    if (key == "format") {
      need(2);
      if (tok[1] != "cba-classifier") throw_input("not a classifier model file");
      saw_format = true;
    } else if (key == "version") {
      need(2);
      if (parse_u64(tok[1]) != kModelFormatVersion)
        throw Error(ErrorKind::Version, "model format version " + tok[1] + " is not supported (expected " +
                                            std::to_string(kModelFormatVersion) + ")");
      saw_version = true;
    } else if (key == "provenance") {
      need(2);
      auto p = provenance_from_string(tok[1]);
      if (!p) throw_input("model: unknown provenance '" + tok[1] + "'");
      c.provenance = *p;
    } else if (key == "class_column") {
      need(2);
      s.class_column = parse_u64(tok[1]);
    } else if (key == "class") {
      need(3);
      s.class_attribute = unescape(tok[1]);
      for (std::size_t i = 2; i < tok.size(); ++i) s.classes.intern(unescape(tok[i]));
    } else if (key == "attribute") {
      need(2);
      s.attributes.push_back(unescape(tok[1]));
      ValueDictionary dict;
      for (std::size_t i = 2; i < tok.size(); ++i) dict.intern(unescape(tok[i]));
      s.values.push_back(std::move(dict));
    } else if (key == "default") {
      need(2);
      default_name = unescape(tok[1]);
      saw_default = true;
    } else if (key == "rule") {
      rule_lines.push_back(std::move(tok));
    } else if (key == "end") {
      saw_end = true;
      break;
    } else {
      throw_input("model line " + std::to_string(lineno) + ": unknown record '" + key + "'");
    }
  }
  if (!saw_format || !saw_version) throw_input("model: missing format/version header");
  if (!saw_default || !saw_end) throw_input("model: truncated file");
  if (s.class_column > s.attribute_count()) throw_input("model: class column out of range");

  auto cls = s.classes.find(default_name);
  if (!cls) throw_input("model: default class '" + default_name + "' not in class list");
  c.default_class = *cls;

  for (const auto& tok : rule_lines) {
    ClassAssociationRule r;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      auto [k, v] = split_kv(tok[i]);
      if (i <= 6) {
        if (k == "class") {
          auto id = s.classes.find(v);
          if (!id) throw_input("model: rule class '" + v + "' unknown");
          r.label = *id;
        } else if (k == "rule_count") r.rule_count = parse_u64(v);
        else if (k == "cond_count") r.cond_count = parse_u64(v);
        else if (k == "total") r.total = parse_u64(v);
        else if (k == "pass") r.pass = static_cast<std::uint32_t>(parse_u64(v));
        else if (k == "ord") r.ordinal = static_cast<std::uint32_t>(parse_u64(v));
        else throw_input("model: unexpected rule field '" + k + "'");
        continue;
      }
      auto a = s.find_attribute(k);
      if (!a) throw_input("model: rule references unknown attribute '" + k + "'");
      auto val = s.values[*a].find(v);
      if (!val) throw_input("model: rule references unknown value '" + v + "'");
      r.condset.push_back(Item{*a, *val});
    }
    std::sort(r.condset.begin(), r.condset.end());
    if (!is_canonical(r.condset)) throw_input("model: rule repeats an attribute");
    c.rules.push_back(std::move(r));
  }
  return c;
}

}  // namespace cba
