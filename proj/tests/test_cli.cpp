#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "mole/landscape.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string output;
};

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mole_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Result invoke(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(MOLE_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t data_rows(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n == 0 ? 0 : n - 1;
}

}  // namespace

TEST_CASE("run: Aspar with MOLE finds at least two sets") {
  const fs::path d = scratch_dir("run_aspar");
  const Result r = invoke("run --problem aspar --algo mole --seed 1 --out " + (d / "out").string(),
                        d / "log");
  REQUIRE(r.code == 0);
  const auto report = nlohmann::json::parse(slurp(d / "out" / "report.json"));
  CHECK(report["mole"]["set_count"].get<int>() >= 2);
  CHECK(report["evals_used"].get<std::size_t>() <= report["budget"].get<std::size_t>());
  CHECK(data_rows(d / "out" / "sets.csv") == report["mole"]["total_nodes"].get<std::size_t>());
}

TEST_CASE("run: MOGSA archive is nonempty") {
  const fs::path d = scratch_dir("run_mogsa");
  const Result r = invoke(
      "run --problem bisphere --algo mogsa --seed 1 --out " + (d / "out").string(), d / "log");
  REQUIRE(r.code == 0);
  CHECK(data_rows(d / "out" / "archive.csv") > 0);
}

TEST_CASE("run: errors map to exit 2") {
  const fs::path d = scratch_dir("run_err");
  const Result unknown = invoke("run --problem sphereish --out " + d.string(), d / "log1");
  CHECK(unknown.code == 2);
  CHECK(unknown.output.find("sphereish") != std::string::npos);
  CHECK(invoke("run --problem bisphere --set descent.nope=1 --out " + d.string(), d / "log2").code ==
        2);
  CHECK(invoke("run --problem bisphere --budget 0 --out " + d.string(), d / "log3").code == 2);
  CHECK(invoke("frobnicate", d / "log4").code == 2);
  CHECK(invoke("--help", d / "log5").code == 0);
}

TEST_CASE("run: reference HV produces targets") {
  const fs::path d = scratch_dir("run_targets");
  const Result r = invoke("run --problem bisphere --seed 3 --budget 20000 --reference-hv 0.8 --out " +
                            (d / "out").string(),
                        d / "log");
  REQUIRE(r.code == 0);
  CHECK(data_rows(d / "out" / "targets.csv") == 58);
}

TEST_CASE("plot-data: row count, verifier and dimension check") {
  const fs::path d = scratch_dir("plot");
  const Result r = invoke("plot-data --problem birosenbrock --res 150x150 --out " +
                            (d / "br.csv").string(),
                        d / "log");
  REQUIRE(r.code == 0);
  CHECK(data_rows(d / "br.csv") == 22500);

  const Result v = invoke("plot-data --problem bisphere --res 100x100 --verify --out " +
                            (d / "bs.csv").string(),
                        d / "log2");
  CHECK(v.code == 0);
  CHECK(v.output.find("0 height violations") != std::string::npos);
  std::ifstream in(d / "bs.csv");
  const mole::LandscapeCheck chk = mole::verify_landscape_csv(in);
  CHECK(chk.cells == 10000);
  CHECK(chk.violations == 0);

  const std::string sink = " --out " + (d / "x.csv").string();
  CHECK(invoke("plot-data --problem bisphere --param dim=3" + sink, d / "log3").code == 2);
  CHECK(invoke("plot-data --problem bisphere --res 1x5" + sink, d / "log4").code == 2);
}

TEST_CASE("bench: empty suite, determinism and artifacts") {
  const fs::path d = scratch_dir("bench");
  std::ofstream(d / "empty.txt") << "# nothing here\n";
  CHECK(invoke("bench --suite " + (d / "empty.txt").string() + " --out " + d.string(), d / "l0")
            .code == 2);
  CHECK(invoke("bench --suite " + (d / "missing.txt").string() + " --out " + d.string(), d / "l1")
            .code == 2);

  std::ofstream(d / "suite.txt") << "bisphere 2 1 self\nbisphere 2 2 self\naspar 2 1 self\n";
  const std::string common = "bench --suite " + (d / "suite.txt").string() +
                             " --budget-per-dim 5000 --repetitions 2 --out ";
  REQUIRE(invoke(common + (d / "a").string() + " --jobs 1", d / "l2").code == 0);
  REQUIRE(invoke(common + (d / "b").string() + " --jobs 4", d / "l3").code == 0);
  for (const char* f : {"results.csv", "targets.csv", "trajectory.csv"}) {
    CHECK(fs::exists(d / "a" / f));
    CHECK(slurp(d / "a" / f) == slurp(d / "b" / f));
  }
  CHECK(data_rows(d / "a" / "results.csv") == 6);

  std::ofstream(d / "bad.txt") << "bisphere 2 1 self\nnosuch 2 1 self\n";
  CHECK(invoke("bench --suite " + (d / "bad.txt").string() + " --budget-per-dim 2000 --out " +
                 (d / "c").string(),
             d / "l4")
            .code == 1);
}

TEST_CASE("run: repeated invocations are byte-identical") {
  const fs::path d = scratch_dir("determinism");
  for (const char* algo : {"mole", "mogsa"}) {
    const std::string args = std::string("run --problem birosenbrock --seed 5 --budget 30000 --algo ") +
                             algo + " --out ";
    REQUIRE(invoke(args + (d / "x").string(), d / "l1").code == 0);
    REQUIRE(invoke(args + (d / "y").string(), d / "l2").code == 0);
    std::size_t compared = 0;
    for (const auto& e : fs::directory_iterator(d / "x")) {
      CHECK(slurp(e.path()) == slurp(d / "y" / e.path().filename()));
      ++compared;
    }
    CHECK(compared >= 2);
    fs::remove_all(d / "x");
    fs::remove_all(d / "y");
  }
}
