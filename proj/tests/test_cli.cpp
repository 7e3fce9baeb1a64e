#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"

#include "gme/cli.hpp"
#include "gme/io.hpp"

using namespace gme;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gme");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gme_cli_" + name)).string();
}

}  // namespace

TEST_CASE("detect") {
  const auto r = run({"detect", "--family", "ghz", "--noise", "0.5", "--criterion", "II"});
  REQUIRE(r.code == kExitOk);
  const auto j = io::json::parse(r.out);
  REQUIRE(j.size() == 1);
  CHECK(j[0].at("criterion") == "II");
  CHECK(j[0].at("violated") == true);
  CHECK(j[0].at("lhs").get<double>() == doctest::Approx(0.0625).epsilon(1e-14));

  const auto w = run({"detect", "--family", "w", "--noise", "0.5", "--criterion", "III", "--format", "csv"});
  REQUIRE(w.code == kExitOk);
  CHECK(w.out.rfind("crit,lhs,violated\n", 0) == 0);
  CHECK(w.out.find("\"III\",") != std::string::npos);
  CHECK(w.out.substr(w.out.size() - 2) == "0\n");

  const auto ppt = run({"detect", "--family", "ghz", "--criterion", "I,PPT"});
  REQUIRE(ppt.code == kExitOk);
  CHECK(io::json::parse(ppt.out).size() == 6);
}

TEST_CASE("detect from a state file") {
  const std::string path = temp_path("state.json");
  io::save_density(states::w_state(3), path);
  const auto r = run({"detect", "--state-file", path, "--criterion", "III"});
  REQUIRE(r.code == kExitOk);
  CHECK(io::json::parse(r.out)[0].at("lhs").get<double>() == doctest::Approx(1.0).epsilon(1e-14));

  std::ofstream(path) << R"({"dims": [2], "re": [1, 0, 0, 0], "im": [0, 0, 0]})";
  const auto bad = run({"detect", "--state-file", path});
  CHECK(bad.code == kExitValidation);
  CHECK(bad.err.find("'im'") != std::string::npos);

  std::ofstream(path) << R"({"dims": [2], "re": [0.5, 0, 0, 0.6], "im": [0, 0, 0, 0]})";
  const auto trace = run({"detect", "--state-file", path});
  CHECK(trace.code == kExitValidation);
  CHECK(trace.err.find("trace") != std::string::npos);
  std::filesystem::remove(path);

  CHECK(run({"detect", "--state-file", temp_path("missing.json")}).code == kExitValidation);
}

TEST_CASE("scan") {
  const auto r = run({"scan", "--family", "ghz_w_mix", "--grid", "0:1:0.5,0:1:0.5", "--criterion", "II,III",
                      "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "alpha,beta,crit,lhs,violated");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6 * 2);

  const std::string path = temp_path("scan.json");
  const auto j = run({"scan", "--family", "gghz_qutrit_mix", "--d", "3", "--grid", "0:1:0.5,0:1:0.5", "--out", path});
  REQUIRE(j.code == kExitOk);
  CHECK(j.out.empty());
  std::ifstream f(path);
  const auto doc = io::json::parse(f);
  CHECK(doc.at("family") == "gghz_qutrit_mix");
  CHECK(doc.at("cells").size() == 6);
  std::filesystem::remove(path);

  CHECK(run({"scan", "--grid", "0:1:0.5"}).code == kExitUsage);
}

TEST_CASE("threshold") {
  const auto w = run({"threshold", "--family", "w", "--criterion", "III", "--param", "p"});
  REQUIRE(w.code == kExitOk);
  CHECK(std::abs(std::stod(w.out) - 8.0 / 17) < 1e-6);
  const auto g = run({"threshold", "--family", "ghz", "--d", "3", "--criterion", "II", "--tol", "1e-8"});
  REQUIRE(g.code == kExitOk);
  CHECK(std::abs(std::stod(g.out) - 0.25) < 1e-8);
  const auto ppt = run({"threshold", "--family", "ghz", "--criterion", "PPT", "--partition", "2"});
  REQUIRE(ppt.code == kExitOk);
  CHECK(std::abs(std::stod(ppt.out) - 0.2) < 1e-6);
  const auto bracket = run({"threshold", "--family", "ghz", "--criterion", "II", "--lo", "0.5"});
  CHECK(bracket.code == kExitValidation);
  CHECK(bracket.err.find("both ends") != std::string::npos);
  CHECK(run({"threshold", "--family", "ghz", "--criterion", "II,III"}).code == kExitUsage);
}

TEST_CASE("optimize") {
  const auto r = run({"optimize", "--family", "ghz", "--criterion", "II", "--restarts", "4", "--iterations", "100"});
  REQUIRE(r.code == kExitOk);
  const auto j = io::json::parse(r.out);
  CHECK(j.at("lhs").get<double>() >= 0.5 - 1e-12);
  CHECK(j.at("phi1").size() == 3);
  CHECK(run({"optimize", "--criterion", "I", "--partition", "1"}).code == kExitOk);
  CHECK(run({"optimize", "--criterion", "I"}).code == kExitValidation);
  CHECK(run({"optimize", "--criterion", "PPT"}).code == kExitUsage);
}

TEST_CASE("oracle-check") {
  const auto ok = run({"oracle-check", "--n", "3", "--d", "2", "--m", "2", "--trials", "20"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("cases 20") == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
  const auto again = run({"oracle-check", "--n", "2", "--d", "2", "--trials", "1", "--seed", "5"});
  CHECK(again.out == run({"oracle-check", "--n", "2", "--d", "2", "--trials", "1", "--seed", "5"}).out);
  const auto strict = run({"oracle-check", "--n", "2", "--d", "3", "--m", "2", "--trials", "5", "--tol", "1e-300"});
  CHECK(strict.code == kExitOracleFailure);
  CHECK(strict.out.find("FAIL") != std::string::npos);
  CHECK(run({"oracle-check", "--n", "4", "--d", "3"}).code == kExitValidation);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"detect", "--criterion", "IV"}).code == kExitUsage);
  CHECK(run({"detect", "--criterion", "MLIN"}).code == kExitUsage);
  CHECK(run({"detect", "--family", "nope"}).code == kExitUsage);
  CHECK(run({"detect", "--probes", "psychic"}).code == kExitUsage);
  CHECK(run({"detect", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"detect", "--d", "two"}).code == kExitUsage);
  CHECK(run({"detect", "--noise", "1.5"}).code == kExitValidation);
  CHECK(run({"detect", "--family", "w", "--d", "3"}).code == kExitValidation);
  const auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("oracle-check") != std::string::npos);
}
