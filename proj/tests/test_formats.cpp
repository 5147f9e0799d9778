#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rrsyt/errors.hpp"
#include "rrsyt/formats.hpp"

using namespace rrsyt;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() / ("rrsyt-test-" + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("problem JSON round trip") {
  for (const auto& p : {Problem::preset_g(), Problem::preset_h(), Problem::unrestricted(4)}) {
    const auto back = problem_from_json(problem_to_json(p));
    CHECK(back.rows == p.rows);
    CHECK(back.restrictions == p.restrictions);
    CHECK(back.arithmetic == p.arithmetic);
  }
  const auto j = json::parse(R"({"rows": 2,
      "restrictions": [{"finite": [1, 5], "progressions": [{"first": 3, "step": 4}]}, {}],
      "arithmetic": {"mod": 46021}})");
  const auto p = problem_from_json(j);
  CHECK(p.rows == 2);
  CHECK(p.restrictions[0].contains(5));
  CHECK(p.restrictions[0].contains(11));
  CHECK_FALSE(p.restrictions[1].contains(1));
  CHECK(p.arithmetic.prime() == 46021);
  CHECK(problem_from_json(json::parse(R"({"rows":1,"restrictions":[{}]})")).arithmetic.is_exact());
}

TEST_CASE("problem JSON rejects unknown fields and bad values") {
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"rows":1,"restrictions":[{}],"colour":1})")), InvalidInput);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"rows":1,"restrictions":[{"finit":[1]}]})")), InvalidInput);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"rows":0,"restrictions":[]})")), InvalidInput);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"rows":2,"restrictions":[{}]})")), InvalidInput);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"rows":1,"restrictions":[{}],"arithmetic":{"mod":4}})")),
                  InvalidInput);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"({"rows":1,"restrictions":[{"finite":[0]}]})")), InvalidInput);
  CHECK_THROWS_AS(problem_from_json(json::parse(R"([1,2])")), InvalidInput);
}

TEST_CASE("problem hash is stable and sensitive") {
  CHECK(problem_hash(Problem::preset_g()) == problem_hash(Problem::preset_g()));
  CHECK(problem_hash(Problem::preset_g()) != problem_hash(Problem::preset_h()));
  CHECK(problem_hash(Problem::preset_g()).size() == 16);
  // Equivalent descriptions of the same run-set hash alike after canonicalization.
  auto a = Problem::preset_h();
  auto b = Problem::preset_h();
  b.restrictions[0] = RunSet({4}, {{2, 2}});
  CHECK(problem_hash(a) == problem_hash(b));
}

TEST_CASE("b-file round trip is bit exact") {
  std::vector<BigInt> v;
  BigInt x = 1;
  for (int i = 0; i < 60; ++i) {
    v.push_back(x);
    x = x * 14 + i;
  }
  const auto seq = TermSequence::exact(1, v);
  std::stringstream ss;
  write_bfile(ss, seq);
  const std::string text = ss.str();
  CHECK(text.rfind("1 1\n2 14\n", 0) == 0);
  std::istringstream in(text);
  const auto back = read_bfile(in);
  CHECK(back == seq);
  std::stringstream again;
  write_bfile(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("b-file reader") {
  std::istringstream ok("# comment\n\n5 10\n6 20\r\n7 30\n");
  const auto s = read_bfile(ok);
  CHECK(s.offset() == 5);
  CHECK(s.size() == 3);
  CHECK(s.value_string(2) == "30");

  std::istringstream negative("1 -3\n");
  CHECK_THROWS_AS(read_bfile(negative), InvalidInput);

  std::istringstream gap("1 1\n3 2\n");
  CHECK_THROWS_AS(read_bfile(gap), InvalidInput);
  std::istringstream junk("1 x\n");
  CHECK_THROWS_AS(read_bfile(junk), InvalidInput);
  std::istringstream one_field("1\n");
  CHECK_THROWS_AS(read_bfile(one_field), InvalidInput);
  CHECK_THROWS_AS(read_bfile(std::filesystem::path("/nonexistent/x.bfile")), InvalidInput);
}

TEST_CASE("report JSON") {
  const auto seq = TermSequence::modular(0, 7, {1, 2, 3});
  const auto j = sequence_to_json(seq);
  CHECK(j["values"] == json::array({"1", "2", "3"}));
  CHECK(j["arithmetic"]["mod"] == 7);

  const Recurrence r({{BigInt(-2), BigInt(-4)}, {BigInt(2), BigInt(1)}});
  const auto rj = recurrence_to_json(r);
  CHECK(rj["order"] == 1);
  CHECK(rj["coefficients"] == json::parse("[[-2,-4],[2,1]]"));
  CHECK(rj["prime"].is_null());

  Certificate cert;
  cert.prime = 45007;
  cert.terms_used = 100;
  cert.budget = 2;
  cert.ruled_out = {{0, 0}, {0, 1}};
  const auto cj = certificate_to_json(cert);
  CHECK(cj["N"] == 100);
  CHECK(cj["ruled_out"] == json::parse("[[0,0],[0,1]]"));
  CHECK(cj["survivors"].empty());

  GrowthEstimate est;
  est.mu = 14.07106781;
  est.theta = -3.9999;
  est.c = 0.6389;
  const auto gj = growth_to_json(est);
  CHECK(gj["matched"]["mu"]["name"] == "7+5√2");
  CHECK(gj["matched"]["theta"]["name"] == "-4");
}

TEST_CASE("term cache stores, reloads and ignores foreign headers") {
  TempDir dir;
  TermCache cache(dir.path);
  const auto g = Problem::preset_g();
  CHECK_FALSE(cache.load(g));

  const auto seq = cached_diagonal_sequence(g, 20, &cache);
  const auto loaded = cache.load(g);
  REQUIRE(loaded);
  CHECK(*loaded == seq);
  CHECK(cache.path_for(g).filename().string().find("-exact.terms") != std::string::npos);

  auto modular = g;
  modular.arithmetic = Arithmetic::modular(45007);
  CHECK(cache.path_for(modular).filename().string().find("-mod45007.terms") != std::string::npos);
  CHECK_FALSE(cache.load(modular));

  // A file under the right name whose header belongs to another problem.
  std::filesystem::copy_file(cache.path_for(g), cache.path_for(Problem::preset_h()));
  CHECK_FALSE(cache.load(Problem::preset_h()));

  // Corrupt body.
  {
    std::ofstream out(cache.path_for(g), std::ios::app);
    out << "garbage line\n";
  }
  CHECK_THROWS_AS(cache.load(g), CacheError);
}

TEST_CASE("cache resume equals a cold run") {
  TempDir dir;
  TermCache cache(dir.path);
  for (auto problem : {Problem::preset_g(), Problem::preset_h()}) {
    for (auto arith : {Arithmetic::exact(), Arithmetic::modular(45007)}) {
      problem.arithmetic = arith;
      const auto cold = diagonal_sequence(problem, 70);
      cached_diagonal_sequence(problem, 25, &cache);
      const auto resumed = cached_diagonal_sequence(problem, 70, &cache, {}, 16);
      CHECK(resumed == cold);
      CHECK(*cache.load(problem) == cold);
      // Served from the cache without recomputation.
      CHECK(cached_diagonal_sequence(problem, 40, &cache) == cold.prefix(41));
    }
  }
}

TEST_CASE("cache detects terms that disagree with recomputation") {
  TempDir dir;
  TermCache cache(dir.path);
  const auto g = Problem::preset_g();
  auto seq = diagonal_sequence(g, 10);
  auto values = seq.values();
  values[7] += 1;
  cache.store(g, TermSequence::exact(0, values));
  CHECK_THROWS_AS(cached_diagonal_sequence(g, 20, &cache), CacheError);
}

TEST_CASE("load_problem from disk") {
  TempDir dir;
  const auto path = dir.path / "p.json";
  {
    std::ofstream out(path);
    out << problem_to_json(Problem::preset_h()).dump(2);
  }
  CHECK(load_problem(path).restrictions == Problem::preset_h().restrictions);
  CHECK_THROWS_AS(load_problem(dir.path / "missing.json"), InvalidInput);
  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(load_problem(path), InvalidInput);
}
