#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// Spawns the installed binary (path in MFL_BIN) and captures stdout.
struct RunResult {
  int rc = -1;
  std::string out;
};

static RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("MFL_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " >cli_stdout.tmp 2>cli_stderr.tmp";
  int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  RunResult r;
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream f("cli_stdout.tmp", std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  return r;
}

static void check_twice_identical(const std::string& args) {
  CAPTURE(args);
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.rc == 0);
  CHECK(a.rc == b.rc);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
}

TEST_CASE("documented commands are byte-identical across runs") {
  const std::vector<std::string> matrix = {
      "gen --family diamond --level 2",
      "gen --family laakso --level 1 --weighted",
      "gen --family quaternary --level 2",
      "dist --graph l:2 --from 0 --to 7",
      "dist --graph d:3:weighted --from 0 --to 1",
      "diam --graph d:3",
      "diam --graph m:1",
      "ball --graph d:4 --center 0 --radius 1",
      "ball --graph l:1 --center 2 --radius 1",
      "doubling --graph d:4 --strategy witness",
      "doubling --graph l:2 --strategy scan",
      "profile --graph d:3 --radii 0,1,2,4",
      "profile --graph d:3 --radii 0,1,2,4 --format csv",
      "cycles enumerate --graph d:2",
      "cycles classify-all --graph d:2",
      "cycles family --graph l:3 --s 2 --t 1",
      "cycles collapse --graph d:2 --height 2",
      "cycles collapse --graph d:3 --paths ''",
      "embed eval --source l:1 --target d:2 --assignment 4,10,0,8,9,3",
      "embed exact --source l:1 --target d:2",
      "embed heuristic --source l:1 --target d:2 --seed 7 --iterations 4",
      "embed lower-bound --source l:1 --target d:2 --subset-size 3 --samples 10 --seed 3",
      "embed construct-m --n 1 --verify",
      "embed construct-l1",
      "embed growth --n-max 1 --targets 2,3 --seed 5 --iterations 2 --samples 5 --format csv",
  };
  for (auto& args : matrix) check_twice_identical(args);
}

TEST_CASE("thread count changes the config echo but never the report") {
  for (const char* base : {"doubling --graph l:2 --strategy scan",
                           "profile --graph d:3 --radii 1,2,4",
                           "embed exact --source l:1 --target d:2",
                           "embed heuristic --source l:1 --target d:2 --seed 3 --iterations 4"}) {
    auto a = run_cli(std::string(base) + " --threads 1");
    auto b = run_cli(std::string(base) + " --threads 2");
    CAPTURE(base);
    REQUIRE(a.rc == 0);
    REQUIRE(b.rc == 0);
    auto pa = a.out.find("\"report\"");
    auto pb = b.out.find("\"report\"");
    REQUIRE(pa != std::string::npos);
    REQUIRE(pb != std::string::npos);
    CHECK(a.out.substr(pa) == b.out.substr(pb));
  }
}

TEST_CASE("documents and tables have the advertised shape") {
  auto doc = run_cli("diam --graph d:2");
  REQUIRE(doc.rc == 0);
  CHECK(doc.out.front() == '{');
  CHECK(doc.out.substr(doc.out.size() - 2) == "}\n");
  CHECK(doc.out.find("\"config\"") != std::string::npos);
  CHECK(doc.out.find("\"report\"") != std::string::npos);

  auto csv = run_cli("profile --graph d:2 --radii 1,2 --format csv");
  REQUIRE(csv.rc == 0);
  CHECK(csv.out.rfind("# profile", 0) == 0);
  CHECK(csv.out.find("radius,") != std::string::npos);

  auto gcsv = run_cli("embed growth --n-max 1 --targets 2 --seed 1 --iterations 1 --samples 2 --format csv");
  REQUIRE(gcsv.rc == 0);
  CHECK(gcsv.out.rfind("# embed growth", 0) == 0);
}

TEST_CASE("--out writes the same bytes as stdout") {
  std::remove("cli_file.tmp");
  auto direct = run_cli("ball --graph d:3 --center 0 --radius 2");
  auto filed = run_cli("ball --graph d:3 --center 0 --radius 2 --out cli_file.tmp");
  REQUIRE(filed.rc == 0);
  CHECK(filed.out.empty());
  std::ifstream f("cli_file.tmp", std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == direct.out);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("diam --graph d:2").rc == 0);
  CHECK(run_cli("embed exact --source l:1 --target d:1").rc == 0);  // a report, not an error
  CHECK(run_cli("dist --graph d:2 --from 0 --to 99").rc == 1);      // domain
  CHECK(run_cli("ball --graph d:2 --center 0 --radius -1").rc == 1);
  CHECK(run_cli("gen --family diamond --level 12").rc == 2);        // budget
  CHECK(run_cli("cycles enumerate --graph d:3 --cap 10").rc == 2);
  CHECK(run_cli("frobnicate").rc == 64);                            // usage
  CHECK(run_cli("dist --graph d:2").rc == 64);
  CHECK(run_cli("diam --graph d:2 --no-such-flag").rc == 64);
  CHECK(run_cli("gen --family pentagon --level 1").rc == 64);  // bad family name is a usage error
}
