#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "freefp");
  std::ostringstream out, err;
  const int code = freefp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "freefp_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

} // namespace

TEST_CASE("equilibrium subcommand") {
  auto r = run({"equilibrium", "--c", "0", "--grid", "256"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["kind"] == "one_cut");
  CHECK(doc["support"][0][0].get<double>() == doctest::Approx(-1.5196714).epsilon(1e-7));
  CHECK(doc["support"][0][1].get<double>() == doctest::Approx(1.5196714).epsilon(1e-7));
  CHECK(doc["nodes"].size() == 256);
  CHECK(doc["density"].size() == 256);
  CHECK(doc["c"] == 0.0);

  r = run({"equilibrium", "--c", "-3", "--grid", "256"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  CHECK(doc["kind"] == "two_cut");
  CHECK(doc["support"][0][0].get<double>() == doctest::Approx(-std::sqrt(5.0)));
  CHECK(doc["support"][0][1].get<double>() == doctest::Approx(-1.0));
  CHECK(doc["support"][1][0].get<double>() == doctest::Approx(1.0));
  CHECK(doc["support"][1][1].get<double>() == doctest::Approx(std::sqrt(5.0)));
  CHECK(doc["params"]["a"] == 1.0);
  CHECK(doc["nodes"].size() == 512);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"equilibrium", "--c", "abc"}).code == 2);
  CHECK(run({"equilibrium", "--c", "0", "--grid", "8"}).code == 2);
  CHECK(run({"equilibrium"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"stationary", "--c", "0", "--tol", "-1"}).code == 2);
  CHECK(run({"simulate", "--c", "0", "--dt", "0.5"}).code == 2);
  CHECK(run({"simulate", "--c", "0", "--noise", "loud"}).code == 2);
  CHECK(run({"simulate", "--c", "0", "--p", "9"}).code == 2);
  const auto r = run({"simulate", "--c", "0", "--init", "uniform:1,0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("position 8") != std::string::npos);
  CHECK(run({"equilibrium", "--c", "0", "--out", "/nonexistent-dir/x.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("stationary subcommand") {
  auto r = run({"stationary", "--c", "0"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["case"] == "symmetric");
  CHECK(doc[0]["admissible"] == true);

  r = run({"stationary", "--c", "-2.5"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out).empty());

  // Seven digits miss the tangential value by 3e-7; a looser tolerance
  // recovers both unilateral measures.
  r = run({"stationary", "--c", "-3.872983", "--tol", "1e-5"});
  REQUIRE(r.code == 0);
  doc = json::parse(r.out);
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["case"] == "plus_branch");
  CHECK(doc[1]["case"] == "minus_branch");
  CHECK(doc[0]["a"].get<double>() > 0.0);
  CHECK(doc[1]["b"].get<double>() < 0.0);
}

TEST_CASE("critical subcommand") {
  const auto r = run({"critical", "--c", "-2"});
  REQUIRE(r.code == 0);
  const auto doc = json::parse(r.out);
  CHECK(doc["euler_lagrange_residual"].get<double>() <= 1e-3);
  CHECK(doc["r_identity_residual"].get<double>() <= 1e-6);
  CHECK(doc["root_counts"].size() == 9);
  const auto coeffs = doc["r_coefficients"].get<std::vector<double>>();
  REQUIRE(coeffs.size() == 7);
  const double expected[] = {0, 0, 0, 0, -1, 0, 0.25};
  for (int k = 0; k < 7; ++k) CHECK(std::abs(coeffs[k] - expected[k]) <= 1e-10);
}

TEST_CASE("converge writes identical CSV twice and summarises") {
  const auto a = scratch("a.csv"), b = scratch("b.csv");
  const std::vector<std::string> common{"--c", "-1", "--n", "64", "--dt", "0.01",
                                        "--t-final", "2", "--seed", "3", "--noise",
                                        "vanishing", "--p", "4"};
  auto args = std::vector<std::string>{"converge"};
  args.insert(args.end(), common.begin(), common.end());
  auto ra = args, rb = args;
  ra.insert(ra.end(), {"--out", a.string()});
  rb.insert(rb.end(), {"--out", b.string()});
  const auto r1 = run(ra);
  REQUIRE(r1.code == 0);
  REQUIRE(run(rb).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(r1.out.find("final_w2") != std::string::npos);

  std::istringstream csv(slurp(a));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "t,w1,w2,wp,sigma_v,dissipation,m1,m2,min_gap");
  std::getline(csv, line);
  CHECK(line.find(",,") == std::string::npos);  // wp present
  // No staging files left behind.
  for (const auto& e : fs::directory_iterator(a.parent_path()))
    CHECK(e.path().string().find(".tmp-") == std::string::npos);
}

TEST_CASE("simulate to stdout and the two-point smoke run") {
  auto r = run({"simulate", "--c", "0", "--n", "16", "--t-final", "0.1", "--dt", "0.01"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("t,w1,w2,wp,", 0) == 0);
  r = run({"converge", "--c", "-1", "--n", "100", "--init", "twopoint:-2,2,0.5", "--t-final",
           "2", "--dt", "0.01"});
  CHECK(r.code == 0);
}

TEST_CASE("simulation failure keeps the partial series and exits with 3") {
  const auto init = scratch("far.txt"), out = scratch("far.csv");
  {
    std::ofstream f(init);
    f << "30\n";
  }
  const auto r = run({"simulate", "--c", "0", "--n", "1", "--dt", "0.1", "--every", "1",
                      "--init", "file:" + init.string(), "--out", out.string()});
  CHECK(r.code == 3);
  const std::string csv = slurp(out);
  CHECK(csv.find("t,w1,w2") == 0);
  CHECK(csv.find("\n0,30,30,") != std::string::npos);
  CHECK(csv.find("# incomplete:") != std::string::npos);
}

TEST_CASE("selftest --quick passes") {
  const auto r = run({"selftest", "--quick"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS  normalization") != std::string::npos);
}
