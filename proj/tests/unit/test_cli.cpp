#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(INTRINLIP_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run("verify --group heisenberg --suite cones --samples 0") == 2);
  CHECK(run("verify --group nonsense") == 2);
  CHECK(run("verify --suite nonsense --samples 10") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("verify --group heisenberg --suite cones --samples 500 --seed 42 --tol 1e-9") == 0);
  CHECK(run("sweep --group affine --samples 3") == 0);
}

TEST_CASE("cli writes reports") {
  const std::string path = "intrinlip_cli_report.json";
  std::remove(path.c_str());
  CHECK(run("verify --group dihedral:4 --suite translation --exhaustive --out " + path) == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  const auto j = nlohmann::json::parse(in);
  CHECK(j["passed"] == true);
  CHECK(j["exhaustive"] == true);
  std::remove(path.c_str());

  CHECK(run("estimate --group abelian:1,1 --map linear:2 --box -1,1 --out " + path) == 0);
  std::ifstream est(path);
  const auto e = nlohmann::json::parse(est);
  CHECK(e["checks"][0]["constants"]["fssc"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  std::remove(path.c_str());
}

TEST_CASE("cli seed falls back to the environment") {
  const std::string a = "intrinlip_cli_a.json";
  const std::string b = "intrinlip_cli_b.json";
  CHECK(std::system(("INTRINLIP_SEED=7 " + std::string(INTRINLIP_CLI) +
                     " verify --group affine --suite group --samples 50 --out " + a).c_str()) == 0);
  CHECK(run("verify --group affine --suite group --samples 50 --seed 7 --out " + b) == 0);
  std::ifstream fa(a);
  std::ifstream fb(b);
  auto ja = nlohmann::json::parse(fa);
  auto jb = nlohmann::json::parse(fb);
  ja.erase("wall_time_s");
  jb.erase("wall_time_s");
  CHECK(ja == jb);
  CHECK(ja["seed"] == 7);
  std::remove(a.c_str());
  std::remove(b.c_str());
}
