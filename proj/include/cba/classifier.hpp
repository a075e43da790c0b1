#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cba/dataset.hpp"
#include "cba/mining.hpp"

namespace cba {

enum class Provenance { CbaOdm1, CbaOdm2, Tree };

std::string_view to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view s);

/// Sorts by confidence desc, support desc, then (pass, ordinal) asc.
Rules rank_rules(Rules cars);
bool precedes(const ClassAssociationRule& a, const ClassAssociationRule& b);

/// Drops a rule when a same-class rule with a strictly smaller condset has
/// confidence at least as high. Input order is preserved for the survivors.
Rules prune_general(const Rules& cars);

/// Ordered rule list plus a fallback class. Carries the schema it was trained
/// on so it can be saved and applied to raw string rows.
struct Classifier {
  Schema schema;
  Rules rules;
  ClassId default_class = 0;
  Provenance provenance = Provenance::CbaOdm1;

  friend bool operator==(const Classifier&, const Classifier&) = default;
};

/// Database-coverage builder: for each training row in order, the first
/// ranked rule matching both condset and class is marked. The classifier is
/// the marked rules in rank order; the default is the training majority.
Classifier build_classifier(const Rules& ranked, const Dataset& training);

/// Class of the first rule whose condset matches; default class otherwise.
ClassId predict(const Classifier& classifier, std::span<const ValueId> values);
inline ClassId predict(const Classifier& classifier, const Row& row) { return predict(classifier, std::span<const ValueId>(row.values)); }

/// Value id used for a value the classifier has never seen. Matches no item.
inline constexpr ValueId kUnseenValue = static_cast<ValueId>(-1);

/// Maps a raw row, keyed by the classifier's attribute names, onto value ids.
/// Missing attributes and unseen values become kUnseenValue.
std::vector<ValueId> encode_row(const Schema& schema, const std::vector<std::string>& header,
                                const std::vector<std::string>& cells);

/// Misclassified rows / rows. `test` must share the classifier's schema.
Ratio error_count(const Classifier& classifier, const Dataset& test);
double error_rate(const Classifier& classifier, const Dataset& test);

/// Rule lines followed by `DEFAULT <class>`.
std::string format_classifier(const Classifier& classifier);

inline constexpr int kModelFormatVersion = 1;
std::string serialize(const Classifier& classifier);
Classifier deserialize(std::string_view text);

}  // namespace cba
