#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "cba/cba.h"

namespace {

const char* kWorked = "A,B,C\ne,p,y\ne,p,y\ne,q,y\ng,q,y\ng,q,y\ng,q,n\ng,w,n\ng,w,n\ne,p,n\nf,q,n\n";

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  cba_string_free(s);
  return out;
}

cba_dataset* worked() {
  cba_dataset* d = nullptr;
  REQUIRE(cba_dataset_parse(kWorked, nullptr, &d) == CBA_OK);
  return d;
}

cba_config worked_config() {
  cba_config cfg;
  cba_config_init(&cfg);
  cfg.minsup = 0.15;
  cfg.minconf = 0.60;
  return cfg;
}

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::string(cba_version()) == "1.0.0");
  cba_config cfg;
  cba_config_init(&cfg);
  CHECK(cfg.family == CBA_FAMILY_ODM1);
  CHECK(cfg.minsup == 0.15);
  CHECK(cfg.minconf == 0.50);
  CHECK(cfg.max_depth == 7);
  CHECK(cfg.nfolds == 10);
}

TEST_CASE("dataset handles") {
  cba_dataset* d = worked();
  CHECK(cba_dataset_rows(d) == 10);
  CHECK(cba_dataset_attributes(d) == 2);
  CHECK(cba_dataset_classes(d) == 2);
  char* csv = nullptr;
  REQUIRE(cba_dataset_to_csv(d, &csv) == CBA_OK);
  CHECK(take(csv) == kWorked);
  cba_dataset_free(d);
  cba_dataset_free(nullptr);
}

TEST_CASE("error statuses") {
  cba_dataset* d = nullptr;
  CHECK(cba_dataset_load("/nonexistent/x.csv", nullptr, &d) == CBA_ERR_IO);
  CHECK(std::string(cba_last_error()).find("/nonexistent/x.csv") != std::string::npos);
  CHECK(d == nullptr);
  CHECK(cba_dataset_parse("A,B,C\nx,y\n", nullptr, &d) == CBA_ERR_INPUT);
  CHECK(std::string(cba_last_error()).find("row 1") != std::string::npos);
  CHECK(cba_dataset_parse(nullptr, nullptr, &d) == CBA_ERR_ARGUMENT);
  CHECK(cba_dataset_parse(kWorked, nullptr, nullptr) == CBA_ERR_ARGUMENT);

  cba_dataset* t = worked();
  char* rules = nullptr;
  size_t count = 0;
  CHECK(cba_mine(t, 1.5, 0.5, &rules, &count) == CBA_ERR_INPUT);
  cba_config cfg = worked_config();
  cfg.family = static_cast<cba_family>(9);
  cba_model* m = nullptr;
  CHECK(cba_model_train(t, &cfg, &m) == CBA_ERR_ARGUMENT);
  cba_dataset_free(t);
}

TEST_CASE("mine golden output") {
  cba_dataset* d = worked();
  char* rules = nullptr;
  size_t count = 0;
  REQUIRE(cba_mine(d, 0.15, 0.60, &rules, &count) == CBA_OK);
  CHECK(count == 8);
  CHECK(take(rules) ==
        "IF A=e THEN C=y  sup=3/10 conf=3/4 pass=1 ord=0\n"
        "IF A=g THEN C=n  sup=3/10 conf=3/5 pass=1 ord=2\n"
        "IF B=p THEN C=y  sup=2/10 conf=2/3 pass=1 ord=3\n"
        "IF B=q THEN C=y  sup=3/10 conf=3/5 pass=1 ord=4\n"
        "IF B=w THEN C=n  sup=2/10 conf=2/2 pass=1 ord=6\n"
        "IF A=e AND B=p THEN C=y  sup=2/10 conf=2/3 pass=2 ord=0\n"
        "IF A=g AND B=q THEN C=y  sup=2/10 conf=2/3 pass=2 ord=1\n"
        "IF A=g AND B=w THEN C=n  sup=2/10 conf=2/2 pass=2 ord=2\n");

  REQUIRE(cba_mine(d, 1.0, 1.0, &rules, &count) == CBA_OK);
  CHECK(count == 0);
  CHECK(take(rules).empty());
  cba_dataset_free(d);
}

TEST_CASE("train, serialize and predict") {
  cba_dataset* d = worked();
  const cba_config cfg = worked_config();
  cba_model* m = nullptr;
  REQUIRE(cba_model_train(d, &cfg, &m) == CBA_OK);
  CHECK(cba_model_rule_count(m) == 4);

  char* text = nullptr;
  REQUIRE(cba_model_rules_text(m, &text) == CBA_OK);
  CHECK(take(text).ends_with("DEFAULT n\n"));

  char* out = nullptr;
  REQUIRE(cba_model_predict_csv(m, "A,B\ne,p\ng,w\nf,z\n", &out) == CBA_OK);
  CHECK(take(out) == "A,B,predicted\ne,p,y\ng,w,n\nf,z,n\n");
  CHECK(cba_model_predict_csv(m, "A,predicted\ne,p\n", &out) == CBA_ERR_INPUT);

  const char* names[] = {"A", "B"};
  const char* values[] = {"e", "p"};
  char* label = nullptr;
  REQUIRE(cba_model_predict_row(m, names, values, 2, &label) == CBA_OK);
  CHECK(take(label) == "y");

  char* serialized = nullptr;
  REQUIRE(cba_model_serialize(m, &serialized) == CBA_OK);
  const std::string s = take(serialized);
  cba_model* back = nullptr;
  REQUIRE(cba_model_deserialize(s.c_str(), &back) == CBA_OK);
  REQUIRE(cba_model_serialize(back, &serialized) == CBA_OK);
  CHECK(take(serialized) == s);

  std::string future = s;
  future.replace(future.find("version 1"), 9, "version 2");
  cba_model* bad = nullptr;
  CHECK(cba_model_deserialize(future.c_str(), &bad) == CBA_ERR_VERSION);
  CHECK(bad == nullptr);

  char* merge = nullptr;
  REQUIRE(cba_model_merge_report(m, &merge) == CBA_OK);
  CHECK(take(merge).empty());

  cba_model_free(back);
  cba_model_free(m);
  cba_dataset_free(d);
}

TEST_CASE("tree dump") {
  cba_dataset* d = worked();
  cba_config cfg = worked_config();
  cfg.max_depth = 1;
  char* text = nullptr;
  REQUIRE(cba_tree_dump(d, &cfg, &text) == CBA_OK);
  CHECK(take(text) ==
        "root [y=5 n=5]\n"
        "  B=p [y=2 n=1] -> y\n"
        "  B=q [y=3 n=2] -> y\n"
        "  B=w [y=0 n=2] -> n\n"
        "\n"
        "IF B=p THEN C=y  sup=3/10 conf=2/3\n"
        "IF B=q THEN C=y  sup=5/10 conf=3/5\n"
        "IF B=w THEN C=n  sup=2/10 conf=2/2\n");
  cba_dataset_free(d);
}

TEST_CASE("evaluate is reproducible") {
  cba_dataset* d = worked();
  cba_config cfg = worked_config();
  cfg.nfolds = 5;
  cfg.seed = 9;
  const cba_run_info run{"eval", "worked_example.csv", nullptr, 0};
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(cba_evaluate(d, &cfg, &run, &a) == CBA_OK);
  REQUIRE(cba_evaluate(d, &cfg, &run, &b) == CBA_OK);
  const std::string ja = take(a);
  CHECK(ja == take(b));
  CHECK(ja.find("\"average_error\"") != std::string::npos);
  cfg.nfolds = 11;
  CHECK(cba_evaluate(d, &cfg, &run, &a) == CBA_ERR_INPUT);
  cba_dataset_free(d);
}

TEST_CASE("discretize through the C API") {
  cba_dataset* d = nullptr;
  REQUIRE(cba_dataset_parse("X,C\n1,a\n2,a\n3,b\n100,b\n", nullptr, &d) == CBA_OK);
  const char* cols[] = {"X"};
  cba_dataset* out = nullptr;
  REQUIRE(cba_dataset_discretize(d, cols, 1, CBA_BINS_EQUAL_WIDTH, 2, &out) == CBA_OK);
  char* csv = nullptr;
  REQUIRE(cba_dataset_to_csv(out, &csv) == CBA_OK);
  CHECK(take(csv) == "X,C\n[1,50.5),a\n[1,50.5),a\n[1,50.5),b\n[50.5,100],b\n");
  cba_dataset_free(out);
  cba_dataset_free(d);
}
