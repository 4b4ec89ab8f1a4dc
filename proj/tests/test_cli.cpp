#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_runner.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;
using tqftwb::testing::data;
using tqftwb::testing::run_cli;

namespace {

json parse_out(const std::string& text) { return json::parse(text); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cob normalize") {
  const auto r = run_cli("cob normalize --term 'mu . delta'");
  REQUIRE(r.exit_code == 0);
  const auto j = parse_out(r.out);
  CHECK(j["version"] == "0.4.1");
  CHECK(j["components"][0]["genus"] == 1);
  CHECK(j["euler_characteristic"] == -2);
  CHECK(run_cli("cob normalize --term 'mu . eta' 2>/dev/null").exit_code == 2);
  CHECK(run_cli("cob normalize --term 'mu . (' 2>/dev/null").exit_code == 2);
  CHECK(run_cli("cob normalize 2>/dev/null").exit_code == 2);
}

TEST_CASE("tqft eval") {
  const auto r = run_cli("tqft eval --model " + data("z2.json") + " --term 'mu . (eta * id(1))'");
  REQUIRE(r.exit_code == 0);
  CHECK(parse_out(r.out)["verdict"] == "fingerprint-equal: id(1)");

  const auto g = run_cli("tqft eval --model " + data("z2z3.json") + " --term 'mu . (id(1) * mu)' --expect genus0");
  CHECK(g.exit_code == 0);
  CHECK(parse_out(g.out)["verdict"] == "fingerprint-equal: genus0(3,1)");

  const auto torus = run_cli("tqft eval --model " + data("z2.json") + " --term 'mu . delta' --expect id");
  CHECK(torus.exit_code == 1);
  CHECK(parse_out(torus.out)["verdict"] == "fingerprint-differs: id(1)");

  const auto closed = run_cli("tqft eval --model " + data("z2.json") + " --term 'eps . eta'");
  CHECK(closed.exit_code == 0);
  CHECK(parse_out(closed.out)["invariant"] == "2");

  CHECK(run_cli("tqft eval --model " + data("z2.json") + " --term mu --expect torus 2>/dev/null").exit_code == 2);
}

TEST_CASE("malformed models exit 2 with a message") {
  for (const char* name : {"bad_factor.json", "bad_empty_base.json", "bad_duplicate.json", "bad_type.json",
                           "bad_syntax.json", "bad_too_large.json", "missing.json"}) {
    INFO(name);
    const auto r = run_cli("tqft eval --model " + data(name) + " --term mu 2>&1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("tqftwb: model") != std::string::npos);
    CHECK(run_cli("frobenius check --model " + data(name) + " 2>/dev/null").exit_code == 2);
  }
}

TEST_CASE("frobenius check") {
  const auto r = run_cli("frobenius check --model " + data("z2z3.json") + " --seed 7");
  REQUIRE(r.exit_code == 0);
  const auto j = parse_out(r.out);
  CHECK(j["seed"] == 7);
  CHECK(j["report"]["all_pass"] == true);
  CHECK(j["options"]["model"] == data("z2z3.json"));
}

TEST_CASE("lie suites and the json option") {
  const auto path = (std::filesystem::temp_directory_path() / "tqftwb_cli_lie.json").string();
  std::filesystem::remove(path);
  const auto r = run_cli("lie sl3-centralizer --trials 25 --seed 1 --json " + path);
  REQUIRE(r.exit_code == 0);
  const auto j = json::parse(slurp(path));
  CHECK(j["report"]["all_pass"] == true);
  CHECK(j["options"]["trials"] == 25);
  CHECK(j["seed"] == 1);
  std::filesystem::remove(path);

  CHECK(run_cli("lie sln --n 4 --trials 5").exit_code == 0);
  CHECK(run_cli("lie sl2-semidirect --trials 5").exit_code == 0);
  CHECK(run_cli("lie so3 2>/dev/null").exit_code == 2);
  CHECK(run_cli("lie sln --n 1 2>/dev/null").exit_code == 2);
  CHECK(run_cli("lie sln --trials 0 2>/dev/null").exit_code == 2);
  CHECK(run_cli("lie sln --seed -3 2>/dev/null").exit_code == 2);
}

TEST_CASE("seeds: flag, environment fallback, determinism") {
  const auto a = run_cli("lie sl2-semidirect --trials 8 --seed 5");
  const auto b = run_cli("lie sl2-semidirect --trials 8", "TQFTWB_SEED=5");
  const auto c = run_cli("lie sl2-semidirect --trials 8 --seed 5 --serial");
  const auto d = run_cli("lie sl2-semidirect --trials 8");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(parse_out(d.out)["seed"] == 0);
  CHECK(a.out != d.out);
  CHECK(run_cli("lie sl2-semidirect --trials 8 2>/dev/null", "TQFTWB_SEED=abc").exit_code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run_cli("2>/dev/null").exit_code == 2);
  CHECK(run_cli("frobenius 2>/dev/null").exit_code == 2);
  CHECK(run_cli("bogus 2>/dev/null").exit_code == 2);
  CHECK(run_cli("--help >/dev/null").exit_code == 0);
  CHECK(run_cli("--version").out.find("0.4.1") != std::string::npos);
}
