#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "berk/cli_runner.hpp"
#include "berk/errors.hpp"
#include "berk/serialize.hpp"

using namespace berk;

namespace {

std::string data(const std::string& name) { return std::string(BERK_TEST_DATA) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(RunConfig cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command, const std::string& file) {
  RunConfig cfg;
  cfg.command = command;
  cfg.map_path = file.empty() ? "" : data(file);
  return cfg;
}

}  // namespace

TEST_CASE("analyze exit codes") {
  CHECK(call(config("analyze", "z3_q3.json")).code == kExitOk);
  CHECK(call(config("analyze", "pz2_q3.json")).code == kExitOk);
  CHECK(call(config("analyze", "ramified_q3.json")).code == kExitUnsupported);
  CHECK(call(config("analyze", "bad_prime.json")).code == kExitInput);
  CHECK(call(config("analyze", "malformed.json")).code == kExitInput);
  CHECK(call(config("analyze", "no_such_file.json")).code == kExitInput);

  auto cfg = config("analyze", "bad_q5.json");
  cfg.n_max = 12;
  cfg.budget = 100;
  auto o = call(cfg);
  CHECK(o.code == kExitInput);
  CHECK(o.err.find("budget") != std::string::npos);

  cfg = config("analyze", "z3_q3.json");
  cfg.n_max = -1;
  CHECK(call(cfg).code == kExitInput);
  cfg = config("analyze", "z3_q3.json");
  cfg.prime = 6;
  CHECK(call(cfg).code == kExitInput);
  cfg = config("analyze", "z3_q3.json");
  cfg.format = "xml";
  CHECK(call(cfg).code == kExitInput);
  cfg = config("frobnicate", "z3_q3.json");
  CHECK(call(cfg).code == kExitInput);
}

TEST_CASE("analyze report contents") {
  auto o = call(config("analyze", "z3_q3.json"));
  REQUIRE(o.code == kExitOk);
  auto j = Json::parse(o.out);
  CHECK(j["p"] == 3);
  CHECK(j["degree"] == 3);
  CHECK(j["kappa"] == "-1/1");
  CHECK(j["ok"] == true);
  CHECK(j["good_reduction"] == true);
  CHECK(j["separable"] == false);
  REQUIRE(j["levels"].size() == 5);
  for (const auto& row : j["levels"]) CHECK(row["est_prime"] == "-1/1");
  CHECK(j["levels"][1]["eq20"] == true);
  CHECK(j["levels"][1]["prop45"] == true);
  CHECK(j.contains("theorem1"));
  CHECK(j.contains("theorem2"));
  CHECK(j.contains("prop49"));
  CHECK(j.contains("lemma43"));

  auto again = call(config("analyze", "z3_q3.json"));
  CHECK(again.out == o.out);
  auto pz = call(config("analyze", "pz2_q3.json"));
  CHECK(pz.out == call(config("analyze", "pz2_q3.json")).out);
  CHECK(Json::parse(pz.out)["levels"][1]["est_prime"] == "-1/2");
}

TEST_CASE("analyze csv") {
  auto cfg = config("analyze", "pz2_q3.json");
  cfg.format = "csv";
  cfg.n_max = 2;
  auto o = call(cfg);
  REQUIRE(o.code == kExitOk);
  std::istringstream in(o.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "n,est_prime,est_sharp,I_n,eq20,prop45,prop45_g1");
  CHECK(lines[1].rfind("0,-1/1,", 0) == 0);
  CHECK(lines[2].rfind("1,-1/2,", 0) == 0);
}

TEST_CASE("output file") {
  auto path = std::filesystem::temp_directory_path() / "berk_cli_test_out.json";
  std::filesystem::remove(path);
  auto cfg = config("analyze", "z3_q3.json");
  cfg.out_path = path.string();
  auto o = call(cfg);
  CHECK(o.code == kExitOk);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == call(config("analyze", "z3_q3.json")).out);
  std::filesystem::remove(path);
}

TEST_CASE("preimages command") {
  auto cfg = config("preimages", "pz2_q3.json");
  auto o = call(cfg);
  REQUIRE(o.code == kExitOk);
  auto j = Json::parse(o.out);
  REQUIRE(j["preimages"].size() == 1);
  CHECK(j["preimages"][0]["multiplicity"] == 2);
  CHECK(j["preimages"][0]["point"]["center"] == "0/1");
  CHECK(j["preimages"][0]["point"]["log_radius"] == "1/2");

  cfg.target = "0,-1";
  o = call(cfg);
  REQUIRE(o.code == kExitOk);
  j = Json::parse(o.out);
  CHECK(j["preimages"][0]["point"]["log_radius"] == "0/1");

  cfg.target = "not a point";
  CHECK(call(cfg).code == kExitInput);
  CHECK(call(config("preimages", "ramified_q3.json")).code == kExitUnsupported);
}

TEST_CASE("tree command") {
  auto cfg = config("tree", "bad_q5.json");
  auto o = call(cfg);
  REQUIRE(o.code == kExitOk);
  auto j = Json::parse(o.out);
  CHECK(j.contains("tree"));
  CHECK(j.contains("measure"));
  Rational mass(0);
  for (const auto& a : j["branching_measure"]) mass += parse_rational(a["weight"].get<std::string>());
  CHECK(mass == 1);
}

TEST_CASE("verify command") {
  auto o = call(config("verify", "small_corpus.json"));
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("verdict: pass") != std::string::npos);
  CHECK(call(config("verify", "corrupt_corpus.json")).code == kExitVerification);
  CHECK(call(config("verify", "empty_corpus.json")).code == kExitInput);
  CHECK(call(config("verify", "malformed.json")).code == kExitInput);
}
