#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + RRSYT_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("rrsyt-cli-" + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("seq reproduces the published lists") {
  auto g = run("seq --preset G --exact --nmax 16");
  CHECK(g.status == 0);
  CHECK(g.out ==
        "0, 1, 1, 5, 15, 69, 304, 1518, 7807, 42314, 236621, 1364570, 8062975, 48680547, 299388670, "
        "1871463427\n");
  auto h = run("seq --preset H --nmax 14");
  CHECK(h.status == 0);
  CHECK(h.out ==
        "1, 2, 9, 46, 306, 2252, 18308, 158872, 1454570, 13888112, 137277741, 1396638636, 14561307281, "
        "155040525128\n");
  auto cat = run("seq --rows 2 --empty --nmax 5");
  CHECK(cat.out == "1, 1, 2, 5, 14, 42\n");
}

TEST_CASE("seq formats and offsets") {
  CHECK(run("seq --rows 2 --empty --nmax 3 --format bfile").out == "0 1\n1 1\n2 2\n3 5\n");
  CHECK(run("seq --preset G --nmax 3 --format bfile").out == "1 0\n2 1\n3 1\n");
  CHECK(run("seq --preset G --nmax 3 --offset 0 --format bfile").out == "0 1\n1 0\n2 1\n3 1\n");
  const auto j = nlohmann::json::parse(run("seq --preset H --nmax 3 --mod 7 --format json").out);
  CHECK(j["offset"] == 1);
  CHECK(j["values"] == nlohmann::json::array({"1", "2", "2"}));
  CHECK(j["arithmetic"]["mod"] == 7);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run("seq --preset G --exact --mod 45007 --nmax 3").status == 2);
  CHECK(run("seq --preset G --rows 3 --empty --nmax 3").status == 2);
  CHECK(run("seq --preset Q --nmax 3").status == 2);
  CHECK(run("seq --preset G").status == 2);
  CHECK(run("seq --nmax 3").status == 2);
  CHECK(run("seq --preset G --nmax 3 --format xml").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("seq --help").status == 0);
}

TEST_CASE("domain errors exit with status 1") {
  CHECK(run("seq --preset G --mod 45009 --nmax 3").status == 1);
  CHECK(run("count --shape 2,3").status == 1);
  CHECK(run("guess --preset G --nmax 5 --L 3 --d 3").status == 1);
}

TEST_CASE("count") {
  CHECK(run("count --shape 2,2,2 --preset G").out == "1\n");
  CHECK(run("count --shape 3,3,3 --preset H").out == "9\n");
  CHECK(run("count --shape 3,3,2").out == "42\n");
  CHECK(run("count --shape 3,3,3 --preset H --mod 7").out == "2\n");
}

TEST_CASE("guess from a b-file") {
  TempDir dir;
  const auto path = dir.path / "catalan.bfile";
  {
    std::ofstream out(path);
    out << run("seq --rows 2 --empty --nmax 20 --format bfile").out;
  }
  const auto r = run("guess --file " + path.string() + " --L 1 --d 1");
  CHECK(r.status == 0);
  CHECK(r.out.find("(n + 2)*a(n+1) + (-4*n - 2)*a(n) = 0") != std::string::npos);

  const auto none = run("guess --file " + path.string() + " --L 1 --d 0");
  CHECK(none.status == 0);
  CHECK(none.out.find("no recurrence") != std::string::npos);

  CHECK(run("guess --file " + path.string() + " --preset G").status == 2);
}

TEST_CASE("certify through the cache") {
  TempDir dir;
  const std::string env = "RRSYT_CACHE_DIR=" + dir.path.string();
  const auto r = run("certify --preset G --mod 45007 --K 25 --nmax 710 --format json", env);
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["certified_K"] == 25);
  CHECK(j["survivors"].empty());
  CHECK(j["unchecked_cells"] == 0);
  CHECK(std::distance(std::filesystem::directory_iterator(dir.path), std::filesystem::directory_iterator()) == 1);

  // A second run is served from the cache and gives the same report.
  CHECK(run("certify --preset G --mod 45007 --K 25 --nmax 710 --format json", env).out == r.out);

  const auto cat = run("certify --rows 2 --empty --nmax 60 --K 3");
  CHECK(cat.out.find("survivor at (1, 1)") != std::string::npos);
}

TEST_CASE("asymp") {
  const auto r = run("asymp --preset H --nmax 300 --format json");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["matched"]["mu"]["name"] == "7+5√2");
  CHECK(j["matched"]["theta"]["name"] == "-4");
  CHECK(std::abs(j["c"].get<double>() / 0.63892 - 1) < 0.02);
  CHECK(run("asymp --preset H --mod 45007").status == 2);
  CHECK(run("asymp --preset H --nmax 20").status == 1);
}

TEST_CASE("gfcheck and selftest") {
  const auto g = run("gfcheck --preset G --D 9");
  CHECK(g.status == 0);
  CHECK(g.out.find("0 mismatches") != std::string::npos);
  CHECK(g.out.find("free diagonal: 1, 0, 6, 6") != std::string::npos);
  const auto s = run("selftest");
  CHECK(s.status == 0);
  CHECK(s.out.find("FAIL") == std::string::npos);
}
