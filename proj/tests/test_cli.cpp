#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("cba_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run(const std::string& args) {
  const auto out = scratch() / "stdout";
  const auto err = scratch() / "stderr";
  const std::string cmd = std::string("\"") + CBA_CLI + "\" " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

const std::string kWorked = std::string(CBA_DATA_DIR) + "/worked_example.csv";

}  // namespace

TEST_CASE("mine prints the worked-example CARs") {
  const auto r = run("mine " + kWorked + " --minsup 0.15 --minconf 0.60");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "IF A=e THEN C=y  sup=3/10 conf=3/4 pass=1 ord=0\n"
        "IF A=g THEN C=n  sup=3/10 conf=3/5 pass=1 ord=2\n"
        "IF B=p THEN C=y  sup=2/10 conf=2/3 pass=1 ord=3\n"
        "IF B=q THEN C=y  sup=3/10 conf=3/5 pass=1 ord=4\n"
        "IF B=w THEN C=n  sup=2/10 conf=2/2 pass=1 ord=6\n"
        "IF A=e AND B=p THEN C=y  sup=2/10 conf=2/3 pass=2 ord=0\n"
        "IF A=g AND B=q THEN C=y  sup=2/10 conf=2/3 pass=2 ord=1\n"
        "IF A=g AND B=w THEN C=n  sup=2/10 conf=2/2 pass=2 ord=2\n");
}

TEST_CASE("thresholds of one give an empty rule list") {
  const auto r = run("mine " + kWorked + " --minsup 1.0 --minconf 1.0");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("train then predict") {
  const auto model = (scratch() / "m.model").string();
  const auto input = scratch() / "q.csv";
  std::ofstream(input) << "A,B\ne,p\ng,w\n";
  const auto t = run("train " + kWorked + " --minsup 0.15 --minconf 0.60 -o " + model);
  REQUIRE(t.code == 0);
  CHECK(t.out.find("DEFAULT n") != std::string::npos);
  const auto p = run("predict " + model + " " + input.string());
  CHECK(p.code == 0);
  CHECK(p.out == "A,B,predicted\ne,p,y\ng,w,n\n");

  SUBCASE("incompatible model version") {
    std::string text = slurp(model);
    text.replace(text.find("version 1"), 9, "version 7");
    std::ofstream(model) << text;
    const auto bad = run("predict " + model + " " + input.string());
    CHECK(bad.code == 2);
    CHECK(bad.err.find("version") != std::string::npos);
  }
}

TEST_CASE("eval is byte-identical across reruns") {
  const std::string args = "eval " + kWorked + " --folds 5 --seed 7 --deterministic";
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["report"] == "cba-cv-report/1");
  CHECK(j["folds"].size() == 5);
  CHECK_FALSE(j["manifest"].contains("timestamp"));

  const auto timed = run("eval " + kWorked + " --folds 5 --seed 7");
  CHECK(nlohmann::json::parse(timed.out)["manifest"].contains("timestamp"));
}

TEST_CASE("bench runs the default scenarios") {
  const auto r = run("bench " + std::string(CBA_DATA_DIR) + "/bench --folds 3 --deterministic");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["datasets"].size() == 1);
  CHECK(j["datasets"][0]["scenarios"].size() == 4);
  CHECK(j["datasets"][0]["rows"] == 1000);

  const auto one = run("bench " + std::string(CBA_DATA_DIR) + "/bench --folds 3 --deterministic --scenario 0.2:0.5");
  CHECK(nlohmann::json::parse(one.out)["datasets"][0]["scenarios"].size() == 1);
}

TEST_CASE("errors exit with code 2 and name the problem") {
  const auto missing = run("mine /nonexistent/data.csv");
  CHECK(missing.code == 2);
  CHECK(missing.err.find("/nonexistent/data.csv") != std::string::npos);

  const auto ragged = scratch() / "ragged.csv";
  std::ofstream(ragged) << "A,B,C\nx,y\n";
  const auto r = run("inspect " + ragged.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("row 1") != std::string::npos);

  CHECK(run("mine " + kWorked + " --minsup 2").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("tree and inspect") {
  const auto t = run("tree " + kWorked + " --max-depth 1");
  CHECK(t.code == 0);
  CHECK(t.out.starts_with("root [y=5 n=5]\n  B=p"));
  const auto i = run("inspect " + kWorked);
  CHECK(i.code == 0);
  CHECK(i.out.find("10") != std::string::npos);
}
