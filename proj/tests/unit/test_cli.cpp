#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("gittins_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const std::string& args, const std::string& env = "") {
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = env + " '" GITTINS_CLI "' " + args + " 2>'" + err.string() + "'";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = ::pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& s, const std::string& what) {
  return s.find(what) != std::string::npos;
}

const fs::path& table100() {
  static const fs::path p = [] {
    const fs::path t = scratch() / "t100.dat";
    const Result r = run("build-table --horizon 100 --out '" + t.string() + "'");
    REQUIRE(r.status == 0);
    return t;
  }();
  return p;
}

}  // namespace

TEST_CASE("index") {
  Result r = run("index --mean 0 --variance 1 --remaining 2");
  CHECK(r.status == 0);
  CHECK(r.out == "0.195183\n");
  r = run("index --mean 0.3 --variance 1 --remaining 2");
  CHECK(r.out == "0.495183\n");
  r = run("index --mean 1.5 --variance 0 --remaining 10");
  CHECK(r.out == "1.500000\n");
  r = run("index --mean 0 --variance 1 --remaining 10000 --approx");
  CHECK(r.out == "2.997851\n");
  r = run("index --mean 0 --variance 1 --remaining 0");
  CHECK(r.status == 2);
  r = run("index --mean 0 --variance -1 --remaining 3");
  CHECK(r.status == 2);
  r = run("index --mean 0");
  CHECK(r.status == 2);
  r = run("no-such-command");
  CHECK(r.status == 2);
}

TEST_CASE("build-table") {
  const Result r = run("build-table --horizon 100 --out '" + (scratch() / "b.dat").string() + "'");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "entries 4950"));
  CHECK(contains(r.out, "written"));
  CHECK(run("build-table --horizon 1 --out x.dat").status == 2);
  CHECK(run("build-table --horizon 100").status == 2);
  const Result big = run("build-table --horizon 100000 --max-memory-mb 1 --out x.dat");
  CHECK(big.status == 2);
}

TEST_CASE("sweep") {
  const fs::path out1 = scratch() / "s1";
  const fs::path out2 = scratch() / "s2";
  const std::string cfg = std::string(GITTINS_CONFIG_DIR) + "/small.json";
  const std::string table = table100().string();
  Result r = run("sweep --config '" + cfg + "' --table '" + table + "' --out '" + out1.string() + "'");
  REQUIRE(r.status == 0);
  r = run("sweep --config '" + cfg + "' --table '" + table + "' --out '" + out2.string() + "'",
          "GITTINS_JOBS=1");
  REQUIRE(r.status == 0);
  const std::string a = slurp(out1 / "sweep_n100_d2.dat");
  CHECK(!a.empty());
  CHECK(a == slurp(out2 / "sweep_n100_d2.dat"));

  const fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << R"({"reps": 0, "policies": ["ucb"], "grids": [{"horizon": 10, "arms": 2, "gaps": [0.1]}]})";
  r = run("sweep --config '" + bad.string() + "' --out '" + out1.string() + "'");
  CHECK(r.status == 2);
  CHECK(contains(r.err, "reps"));

  r = run("sweep --config '" + cfg + "' --out '" + out1.string() + "'");
  CHECK(r.status == 2);
  CHECK(contains(r.err, "horizon >= 100"));
}

TEST_CASE("verify") {
  Result r = run("verify --table '" + table100().string() + "' --reps 2000");
  CHECK(r.status == 0);
  CHECK(contains(r.out, "index_upper_bound"));

  std::string text = slurp(table100());
  const auto pos = text.find("\n5 40 ");
  REQUIRE(pos != std::string::npos);
  const auto eol = text.find('\n', pos + 1);
  text.replace(pos + 1, eol - pos - 1, "5 40 10");
  const fs::path corrupt = scratch() / "corrupt.dat";
  std::ofstream(corrupt) << text;
  r = run("verify --table '" + corrupt.string() + "' --reps 2000");
  CHECK(r.status == 1);
  CHECK(contains(r.err, "(T=5, m=40)"));

  r = run("verify --table '" + table100().string() + "' --reps 100");
  CHECK(r.status == 0);
  CHECK(contains(r.err, "warning"));

  r = run("verify --table '" + (scratch() / "missing.dat").string() + "'");
  CHECK(r.status == 2);
}

TEST_CASE("bayes2") {
  const Result r = run("bayes2 --horizon 2 --nu2 0.05,0.1,0.2");
  CHECK(r.status == 0);
  CHECK(r.out ==
        "nu2=0.05 gittins: arm1, bayes: arm1\n"
        "nu2=0.1 gittins: arm2, bayes: arm1\n"
        "nu2=0.2 gittins: arm2, bayes: arm2\n");
  CHECK(run("bayes2 --horizon 3000 --nu2 0.1").status == 2);
  CHECK(run("bayes2 --horizon 10 --gaps 0.1").status == 2);
  const Result g = run("bayes2 --horizon 20 --gaps 0.2,0.5 --reps 50 --table '" +
                       table100().string() + "'");
  CHECK(g.status == 0);
  CHECK(contains(g.out, "% columns: gap ocucb gittins bayes"));
}

TEST_CASE("index-curve") {
  const fs::path dir = scratch() / "curves";
  const Result r = run("index-curve --out '" + dir.string() + "' --m 10,100 --fixed-m 50 --max-t 5");
  CHECK(r.status == 0);
  const std::string m = slurp(dir / "index_vs_m.dat");
  CHECK(contains(m, "% columns: m exact approx"));
  const std::string t = slurp(dir / "index_vs_T.dat");
  CHECK(contains(t, "% columns: T exact approx"));
}

TEST_CASE("cleanup") { fs::remove_all(scratch()); }
