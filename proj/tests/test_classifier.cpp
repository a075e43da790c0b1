#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cba/classifier.hpp"
#include "cba/error.hpp"
#include "fixtures.hpp"

using namespace cba;
using test::NamedRule;

namespace {

Rules worked_cars() { return mine_cars(test::worked(), MiningConfig::from_fractions(0.15, 0.60)); }

ClassAssociationRule rule(std::uint64_t rule_count, std::uint64_t cond_count, std::uint64_t total, std::uint32_t pass,
                          std::uint32_t ord) {
  return ClassAssociationRule{{Item{0, ord}}, 0, rule_count, cond_count, total, pass, ord};
}

// Independent ranking: repeated selection of the best remaining rule, with
// confidence/support compared through long double products.
Rules naive_rank(Rules in) {
  auto better = [](const ClassAssociationRule& a, const ClassAssociationRule& b) {
    const long double ca = static_cast<long double>(a.rule_count) * b.cond_count;
    const long double cb = static_cast<long double>(b.rule_count) * a.cond_count;
    if (ca != cb) return ca > cb;
    const long double sa = static_cast<long double>(a.rule_count) * b.total;
    const long double sb = static_cast<long double>(b.rule_count) * a.total;
    if (sa != sb) return sa > sb;
    if (a.pass != b.pass) return a.pass < b.pass;
    return a.ordinal < b.ordinal;
  };
  Rules out;
  while (!in.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < in.size(); ++i)
      if (better(in[i], in[best])) best = i;
    out.push_back(in[best]);
    in.erase(in.begin() + static_cast<long>(best));
  }
  return out;
}

// Independent predictor: marks rules row by row, then scans.
std::string naive_predict(const Rules& ranked, const Dataset& train, const std::vector<ValueId>& values) {
  std::vector<bool> marked(ranked.size(), false);
  for (const auto& row : train.rows()) {
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      bool all = true;
      for (const auto& it : ranked[i].condset) all = all && row.values[it.attribute] == it.value;
      if (all && ranked[i].label == row.label) {
        marked[i] = true;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (!marked[i]) continue;
    bool all = true;
    for (const auto& it : ranked[i].condset) all = all && values[it.attribute] == it.value;
    if (all) return train.schema().classes.name(ranked[i].label);
  }
  // Majority with lexicographic ties.
  const auto counts = train.class_counts();
  std::string best;
  std::uint64_t best_count = 0;
  for (ClassId c = 0; c < counts.size(); ++c) {
    const auto& name = train.schema().classes.name(c);
    if (counts[c] > best_count || (counts[c] == best_count && name < best)) {
      best = name;
      best_count = counts[c];
    }
  }
  return best;
}

}  // namespace

TEST_CASE("prune_general on the worked example") {
  const Dataset d = test::worked();
  const auto pruned = prune_general(worked_cars());
  const std::vector<NamedRule> expected{
      {{{"A", "e"}}, "y", 3, 4}, {{{"A", "g"}}, "n", 3, 5}, {{{"B", "p"}}, "y", 2, 3},
      {{{"B", "q"}}, "y", 3, 5}, {{{"B", "w"}}, "n", 2, 2}, {{{"A", "g"}, {"B", "q"}}, "y", 2, 3},
  };
  CHECK(test::named_all(pruned, d.schema()) == expected);
}

TEST_CASE("prune_general trivial cases") {
  Rules flat{rule(1, 2, 10, 1, 0), rule(2, 3, 10, 1, 1)};
  CHECK(prune_general(flat) == flat);
  CHECK(prune_general({}).empty());
}

TEST_CASE("prune_general properties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset d = test::random_dataset(rng, 1 + rng() % 4, 1 + rng() % 4, 1 + rng() % 3, 5 + rng() % 40);
    const auto cars = mine_cars(d, MiningConfig::from_fractions(0.05, 0.3));
    const auto pruned = prune_general(cars);
    for (const auto& r : pruned) CHECK(std::find(cars.begin(), cars.end(), r) != cars.end());
    for (const auto& r : cars) {
      const bool dominated = std::any_of(cars.begin(), cars.end(), [&](const auto& g) {
        return g.label == r.label && is_proper_subset(g.condset, r.condset) && g.confidence() >= r.confidence();
      });
      CHECK((std::find(pruned.begin(), pruned.end(), r) != pruned.end()) == !dominated);
    }
  }
}

TEST_CASE("rank_rules") {
  const Dataset d = test::worked();
  SUBCASE("worked-example precedence") {
    const auto ranked = rank_rules(prune_general(worked_cars()));
    const std::vector<NamedRule> expected{
        {{{"B", "w"}}, "n", 2, 2}, {{{"A", "e"}}, "y", 3, 4}, {{{"B", "p"}}, "y", 2, 3},
        {{{"A", "g"}, {"B", "q"}}, "y", 2, 3}, {{{"A", "g"}}, "n", 3, 5}, {{{"B", "q"}}, "y", 3, 5},
    };
    CHECK(test::named_all(ranked, d.schema()) == expected);
  }
  SUBCASE("support breaks confidence ties") {
    const auto ranked = rank_rules({rule(1, 1, 10, 1, 0), rule(3, 3, 10, 1, 1)});  // both conf 1
    CHECK(ranked[0].ordinal == 1);
  }
  SUBCASE("generation order breaks full ties") {
    auto a = rule(2, 4, 10, 2, 0);
    auto b = rule(2, 4, 10, 1, 5);
    const auto ranked = rank_rules({a, b});
    CHECK(ranked[0].pass == 1);
  }
  SUBCASE("0.9/0.1 vs 0.9/0.3") {
    const auto ranked = rank_rules({rule(9, 10, 90, 1, 0), rule(27, 30, 90, 1, 1)});
    CHECK(ranked[0].support() == Ratio{27, 90});
  }
}

TEST_CASE("rank_rules properties") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    Rules in;
    const std::size_t n = rng() % 30;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t cond = 1 + rng() % 6;
      in.push_back(rule(1 + rng() % cond, cond, 10, 1 + static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(i)));
    }
    const auto ranked = rank_rules(in);
    CHECK(ranked == naive_rank(in));
    CHECK(rank_rules(ranked) == ranked);
    CHECK(std::is_permutation(ranked.begin(), ranked.end(), in.begin(), in.end()));
    for (std::size_t i = 1; i < ranked.size(); ++i) CHECK_FALSE(precedes(ranked[i], ranked[i - 1]));
  }
}

TEST_CASE("build_classifier trace on the worked example") {
  const Dataset d = test::worked();
  const auto c = build_classifier(rank_rules(prune_general(worked_cars())), d);
  const std::vector<NamedRule> expected{
      {{{"B", "w"}}, "n", 2, 2},
      {{{"A", "e"}}, "y", 3, 4},
      {{{"A", "g"}, {"B", "q"}}, "y", 2, 3},
      {{{"A", "g"}}, "n", 3, 5},
  };
  CHECK(test::named_all(c.rules, d.schema()) == expected);
  CHECK(d.schema().classes.name(c.default_class) == "n");
}

TEST_CASE("build_classifier trivial cases") {
  const Dataset d = test::worked();
  const auto empty = build_classifier({}, d);
  CHECK(empty.rules.empty());
  CHECK(error_rate(empty, d) == doctest::Approx(0.5));
  CHECK(error_count(empty, d) == Ratio{5, 10});

  const Rules one{ClassAssociationRule{test::condset_of(d, {{"B", "w"}}), test::class_of(d, "n"), 2, 2, 10, 1, 6}};
  CHECK(build_classifier(one, d).rules == one);
}

TEST_CASE("predict") {
  const Dataset d = test::worked();
  const auto c = build_classifier(rank_rules(prune_general(worked_cars())), d);
  auto label = [&](std::vector<std::string> header, std::vector<std::string> cells) {
    return d.schema().classes.name(predict(c, encode_row(c.schema, header, cells)));
  };
  CHECK(label({"A", "B"}, {"e", "p"}) == "y");
  CHECK(label({"A", "B"}, {"g", "w"}) == "n");
  CHECK(label({"A", "B"}, {"f", "z"}) == "n");   // default
  CHECK(label({"B", "A"}, {"p", "e"}) == "y");   // column order free
  CHECK(label({"A"}, {"e"}) == "y");             // missing attribute matches nothing
}

TEST_CASE("error_rate bounds") {
  const Dataset d = parse_csv("A,C\nx,p\nz,q\n");
  Classifier perfect{d.schema(), {ClassAssociationRule{{Item{0, 0}}, 0, 1, 1, 2, 1, 0},
                                  ClassAssociationRule{{Item{0, 1}}, 1, 1, 1, 2, 1, 1}}, 0, Provenance::CbaOdm1};
  CHECK(error_rate(perfect, d) == 0.0);
  Classifier wrong{d.schema(), {ClassAssociationRule{{Item{0, 0}}, 1, 1, 1, 2, 1, 0},
                                ClassAssociationRule{{Item{0, 1}}, 0, 1, 1, 2, 1, 1}}, 0, Provenance::CbaOdm1};
  CHECK(error_rate(wrong, d) == 1.0);
}

TEST_CASE("classifier oracle equivalence") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const Dataset d = test::random_dataset(rng, 1 + rng() % 4, 1 + rng() % 4, 1 + rng() % 3, 2 + rng() % 40);
    const auto cars = mine_cars(d, MiningConfig::from_fractions((10 + rng() % 200) / 1000.0, (rng() % 900) / 1000.0));
    const auto ranked = rank_rules(cars);
    const auto c = build_classifier(ranked, d);
    const auto oracle_ranked = naive_rank(cars);
    for (int q = 0; q < 20; ++q) {
      std::vector<ValueId> values;
      for (std::size_t a = 0; a < d.schema().attribute_count(); ++a)
        values.push_back(static_cast<ValueId>(rng() % (d.schema().values[a].size() + 1)));  // may be unseen
      CHECK(d.schema().classes.name(predict(c, values)) == naive_predict(oracle_ranked, d, values));
    }
    // Every classifier rule is a ranked rule, in rank order.
    std::size_t pos = 0;
    for (const auto& r : c.rules) {
      while (pos < ranked.size() && !(ranked[pos] == r)) ++pos;
      CHECK(pos < ranked.size());
    }
  }
}

TEST_CASE("model serialization") {
  const Dataset d = test::worked();
  const auto c = build_classifier(rank_rules(prune_general(worked_cars())), d);
  const std::string text = serialize(c);
  CHECK(deserialize(text) == c);

  // Odd characters in names survive.
  const Dataset odd = parse_csv("col one,x=y,cls\na b,%q,hi there\nc,d=e,lo\n");
  Classifier oc{odd.schema(), {ClassAssociationRule{{Item{0, 0}, Item{1, 0}}, 0, 1, 1, 2, 2, 0}}, 1,
                Provenance::CbaOdm2};
  CHECK(deserialize(serialize(oc)) == oc);

  SUBCASE("version mismatch") {
    std::string bad = text;
    bad.replace(bad.find("version 1"), 9, "version 9");
    try {
      deserialize(bad);
      FAIL("expected version error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Version);
    }
  }
  SUBCASE("truncated") { CHECK_THROWS_AS(deserialize(text.substr(0, text.size() / 2)), Error); }
  SUBCASE("garbage") { CHECK_THROWS_AS(deserialize("hello\n"), Error); }
}

TEST_CASE("classifier text") {
  const Dataset d = test::worked();
  const auto c = build_classifier(rank_rules(prune_general(worked_cars())), d);
  CHECK(format_classifier(c) ==
        "IF B=w THEN C=n  sup=2/10 conf=2/2 pass=1 ord=6\n"
        "IF A=e THEN C=y  sup=3/10 conf=3/4 pass=1 ord=0\n"
        "IF A=g AND B=q THEN C=y  sup=2/10 conf=2/3 pass=2 ord=1\n"
        "IF A=g THEN C=n  sup=3/10 conf=3/5 pass=1 ord=2\n"
        "DEFAULT n\n");
}
