#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cwbound::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("cwbound_cli_" + name); }

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string kSeed = std::string(CWBOUND_SOURCE_DIR) + "/data/tbounds_seed.csv";

}  // namespace

TEST_CASE("bound reproduces the worked examples") {
  auto a = run({"bound", "--n", "27", "--d", "8", "--w", "13", "--families", "delsarte,t-cap,pairs,d-pairs",
                "--tbounds", kSeed, "--format", "json"});
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["bound"] == "11897");

  auto b = run({"bound", "--n", "27", "--d", "12", "--w", "12", "--families", "delsarte,t-cap,columns", "--k",
                "1,2,3", "--known-bound", "140"});
  REQUIRE(b.code == 0);
  CHECK(b.out.find("A(27,12,12) <= 139") == 0);

  auto c = run({"bound", "--n", "10", "--d", "2", "--w", "4", "--format", "json"});
  REQUIRE(c.code == 0);
  const auto j = json::parse(c.out);
  CHECK(j["bound"] == "210");
  CHECK(j["lps"].empty());

  auto csv = run({"bound", "--n", "10", "--d", "2", "--w", "4", "--format", "csv"});
  CHECK(csv.out == "query,n,d,w,bound,method\n\"A(10,2,4)\",10,2,4,210,exact\n");

  auto bin = run({"bound", "--binary", "--n", "5", "--d", "3", "--format", "json"});
  REQUIRE(bin.code == 0);
  CHECK(json::parse(bin.out)["bound"] == "4");
}

TEST_CASE("human output agrees with json") {
  auto h = run({"bound", "--n", "14", "--d", "6", "--w", "5"});
  auto j = run({"bound", "--n", "14", "--d", "6", "--w", "5", "--format", "json"});
  REQUIRE(h.code == 0);
  const auto doc = json::parse(j.out);
  CHECK(h.out.find("<= " + doc["bound"].get<std::string>() + "\n") != std::string::npos);
  CHECK(h.out.find("method: " + doc["method"].get<std::string>()) != std::string::npos);
}

TEST_CASE("usage and data errors") {
  CHECK(run({"bound", "--n", "10", "--d", "4", "--w", "4", "--families", "delsarte,nope"}).code == 1);
  CHECK(run({"bound", "--n", "10", "--d", "4", "--w", "11"}).code == 1);
  CHECK(run({"bound", "--n", "10", "--d", "4"}).code == 1);
  CHECK(run({"bound", "--n", "x", "--d", "4", "--w", "2"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
  auto missing = run({"bound", "--n", "10", "--d", "4", "--w", "4", "--tbounds", "/nonexistent.csv"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("nonexistent") != std::string::npos);

  const auto bad = temp("bad.csv");
  std::ofstream(bad) << "1,2,3\n";
  CHECK(run({"tcheck", "--w1", "2", "--n1", "13", "--w2", "3", "--n2", "14", "--d", "8", "--tbounds", bad.string()})
            .code == 2);
  fs::remove(bad);
}

TEST_CASE("table") {
  const auto out1 = temp("table1.csv");
  const auto out2 = temp("table2.csv");
  auto a = run({"table", "--n", "6..8", "--d", "4", "--format", "csv", "--output", out1.string()});
  REQUIRE(a.code == 0);
  auto b = run({"table", "--n", "6..8", "--d", "4", "--format", "csv", "--output", out2.string(), "--jobs", "4"});
  REQUIRE(b.code == 0);
  const auto text = slurp(out1);
  CHECK(text == slurp(out2));
  CHECK(text.find("n,d,w,bound,method\n6,4,0,1,exact\n") == 0);
  CHECK(text.find("\n6,4,3,4,") != std::string::npos);
  CHECK(text.find("\n7,4,3,7,") != std::string::npos);
  CHECK(text.find("\n8,4,3,8,") != std::string::npos);
  auto again = run({"table", "--n", "6..8", "--d", "4", "--format", "csv", "--output", out1.string()});
  CHECK(slurp(out1) == text);
  fs::remove(out1);
  fs::remove(out2);

  auto empty = run({"table", "--n", "5..4", "--d", "4", "--format", "csv"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "n,d,w,bound,method\n");

  auto failing = run({"table", "--n", "6", "--d", "0,4", "--format", "csv"});
  CHECK(failing.code != 0);
  CHECK(failing.out.find("6,0,3,,FAILED") != std::string::npos);
  CHECK(failing.out.find("6,4,3,4,") != std::string::npos);
}

TEST_CASE("certificates through the command line") {
  const auto path = temp("cert.json");
  auto b = run({"bound", "--n", "27", "--d", "12", "--w", "12", "--families", "delsarte,t-cap,columns", "--k",
                "1,2,3", "--known-bound", "140", "--emit-certificate", path.string()});
  REQUIRE(b.code == 0);
  auto ok = run({"verify", path.string()});
  CHECK(ok.code == 0);

  auto j = json::parse(slurp(path));
  j["lps"][0]["dual"][0] = "12345/7";
  std::ofstream(path) << j.dump();
  auto edited = run({"verify", path.string()});
  CHECK(edited.code == 2);
  const bool named = edited.err.find("dual feasibility") != std::string::npos ||
                     edited.err.find("duality gap") != std::string::npos;
  CHECK(named);

  const std::string full = j.dump();
  std::ofstream(path) << full.substr(0, full.size() / 3);
  auto truncated = run({"verify", path.string()});
  CHECK(truncated.code == 2);
  CHECK(truncated.err.find("parse error") == 0);
  fs::remove(path);
  CHECK(run({"verify", path.string()}).code == 2);
}

TEST_CASE("oracle and tcheck") {
  auto o = run({"oracle", "--n", "6", "--d", "4", "--w", "3", "--format", "json"});
  REQUIRE(o.code == 0);
  CHECK(json::parse(o.out)["size"] == 4);
  auto g = run({"oracle", "--n", "12", "--d", "6", "--w", "5", "--mode", "greedy", "--seed", "0"});
  CHECK(g.code == 0);
  CHECK(run({"oracle", "--n", "40", "--d", "4", "--w", "20"}).code == 1);
  CHECK(run({"oracle", "--d", "4", "--doubly", "1,3,1,3", "--format", "json"}).out.find("\"size\": 3") !=
        std::string::npos);

  auto t = run({"tcheck", "--w1", "11", "--n1", "13", "--w2", "11", "--n2", "14", "--d", "8", "--format", "json"});
  REQUIRE(t.code == 0);
  const auto tj = json::parse(t.out);
  CHECK(tj["bound"] == "26");
  CHECK(tj["canonical"] == "T(2,13,3,14,8)");
}
