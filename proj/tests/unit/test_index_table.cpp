#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "doctest.h"
#include "gittins/errors.hpp"
#include "gittins/index_engine.hpp"
#include "gittins/index_table.hpp"

using namespace gittins;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("gittins_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("small tables") {
  const IndexTable t2 = build_table(2);
  CHECK(t2.size() == 1);
  CHECK(t2.lookup(1, 1) == 0.0);

  const IndexTable t3 = build_table(3);
  CHECK(t3.size() == 3);
  CHECK(t3.lookup(1, 1) == 0.0);
  CHECK(t3.lookup(2, 1) == 0.0);
  CHECK(t3.lookup(1, 2) == doctest::Approx(0.195182546782).epsilon(1e-8));

  IndexEngine engine;
  const IndexTable t4 = build_table(4);
  CHECK(std::abs(t4.lookup(2, 2) - engine.zero_index(0.5, 2)) <= 1e-9);
  CHECK(std::abs(t4.lookup(1, 3) - engine.zero_index(1.0, 3)) <= 1e-9);
}

TEST_CASE("lookup range") {
  const IndexTable t = build_table(5);
  CHECK_THROWS_AS(t.lookup(0, 1), RangeError);
  CHECK_THROWS_AS(t.lookup(1, 0), RangeError);
  CHECK_THROWS_AS(t.lookup(3, 3), RangeError);
  CHECK_NOTHROW(t.lookup(4, 1));
  CHECK_THROWS_AS(IndexTable(1, 1e-6), InputError);
}

TEST_CASE("entries with one round left are exactly zero") {
  const IndexTable t = build_table(30);
  for (int T = 1; T < 30; ++T) {
    CHECK(t.lookup(T, 1) == 0.0);
    CHECK(!std::signbit(t.lookup(T, 1)));
  }
}

TEST_CASE("parallel build matches the serial reference bit for bit") {
  const IndexTable par = build_table(60, {}, 4);
  const IndexTable ser = build_table_serial(60);
  CHECK(par == ser);
  const IndexTable par2 = build_table(60, {}, 3);
  CHECK(par2 == ser);
}

TEST_CASE("save and load round trip") {
  const IndexTable t = build_table(100);
  const fs::path p = temp_file("roundtrip.dat");
  save_table(t, p);
  const IndexTable back = load_table(p);
  CHECK(back == t);
  CHECK(back.horizon() == 100);
  CHECK_THROWS_AS(back.lookup(50, 51), RangeError);
  const std::string text = slurp(p);
  CHECK(text.rfind("% gittins index table", 0) == 0);
  CHECK(text.find("% n=100\n") != std::string::npos);
  fs::remove(p);
}

TEST_CASE("load errors") {
  const IndexTable t = build_table(6);
  const fs::path good = temp_file("good.dat");
  save_table(t, good);
  const std::string text = slurp(good);
  const fs::path bad = temp_file("bad.dat");

  SUBCASE("truncated file names the first missing entry") {
    const auto cut = text.find("\n3 3 ");
    REQUIRE(cut != std::string::npos);
    spit(bad, text.substr(0, cut + 1));
    try {
      load_table(bad);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(std::string(e.what()).find("(T=3, m=3)") != std::string::npos);
    }
  }
  SUBCASE("malformed row reports its line") {
    std::string broken = text;
    const auto pos = broken.find("\n1 2 ");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos + 1, 4, "1 2 x");
    spit(bad, broken);
    try {
      load_table(bad);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.line() == 7);
    }
  }
  SUBCASE("unknown format version") {
    std::string other = text;
    other.replace(other.find("format=1"), 8, "format=2");
    spit(bad, other);
    CHECK_THROWS_AS(load_table(bad), FormatError);
  }
  SUBCASE("out of order entry") {
    std::string swapped = text;
    swapped.replace(swapped.find("\n1 2 "), 5, "\n1 3 ");
    spit(bad, swapped);
    CHECK_THROWS_AS(load_table(bad), FormatError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_table(temp_file("does_not_exist.dat")), FormatError);
  }
  fs::remove(good);
  fs::remove(bad);
}

TEST_CASE("memory estimate") {
  CHECK(table_bytes(2) == sizeof(double));
  CHECK(table_bytes(100) == 4950 * sizeof(double));
  CHECK(table_bytes(10000) == std::size_t(49995000) * sizeof(double));
  CHECK(table_bytes(0) == 0);
}
