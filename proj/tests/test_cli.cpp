#include "wclique/cli.hpp"
#include "wclique/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using namespace wclique;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "wclique");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
  const auto dir = std::filesystem::temp_directory_path() / "wclique_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string graphon_file(const std::string& name) { return std::string(WCLIQUE_GRAPHON_DIR) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("shipped graphons round-trip") {
  for (const auto& entry : std::filesystem::directory_iterator(WCLIQUE_GRAPHON_DIR)) {
    const StepGraphon w = read_graphon(entry.path());
    const StepGraphon back = parse_graphon(graphon_to_json(w).dump());
    CHECK(back.mu() == w.mu());
    CHECK(back.values() == w.values());
  }
}

TEST_CASE("analyze examples") {
  Result r = run({"analyze", graphon_file("two_clique.graphon"), "--r", "3"});
  REQUIRE(r.code == 0);
  Json rep = Json::parse(r.out);
  CHECK(rep["law"]["case"] == "c");
  CHECK(rep["law"]["sigma"].get<double>() == doctest::Approx(0.0));
  CHECK(rep["law"]["coefficients"][0].get<double>() == doctest::Approx(0.125));

  r = run({"analyze", graphon_file("const_half.graphon"), "--r", "2"});
  REQUIRE(r.code == 0);
  rep = Json::parse(r.out);
  CHECK(rep["law"]["case"] == "c");
  CHECK(rep["pure_normal"] == true);
  CHECK(rep["vwr_spectrum_within_degree"] == true);
  CHECK(rep["sigma_sq"].get<double>() == doctest::Approx(0.125));

  r = run({"analyze", graphon_file("nonreg.graphon"), "--r", "2"});
  REQUIRE(r.code == 0);
  rep = Json::parse(r.out);
  CHECK(rep["law"]["case"] == "b");
  CHECK(rep["law"]["sigma_hat"].get<double>() == doctest::Approx(0.1));

  r = run({"analyze", graphon_file("tripartite_layers.graphon"), "--r", "3"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["normal_free"] == true);
}

TEST_CASE("moments table") {
  const Result r = run({"moments", graphon_file("two_clique.graphon"), "--r", "2", "--max-m", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "m,moment\n1,0\n2,0.125\n3,0.125\n");
  CHECK(run({"moments", graphon_file("nonreg.graphon"), "--r", "2"}).code == kExitInput);
}

TEST_CASE("sample writes an edge list") {
  const auto path = scratch() / "edges.txt";
  const Result r = run({"sample", graphon_file("two_clique.graphon"), "--n", "10", "--seed", "3", "--out", path.string()});
  REQUIRE(r.code == 0);
  const std::string a = slurp(path);
  CHECK_FALSE(a.empty());
  CHECK(run({"sample", graphon_file("two_clique.graphon"), "--n", "10", "--seed", "3"}).out == a);
}

TEST_CASE("experiment writes report, csv and svg") {
  const auto dir = scratch();
  const Result r = run({"experiment", graphon_file("nonreg.graphon"), "--r", "2", "--n", "40", "--trials", "50", "--seed",
                        "5", "--out", (dir / "rep.json").string(), "--svg", (dir / "rep.svg").string()});
  REQUIRE(r.code == 0);
  const Json rep = Json::parse(slurp(dir / "rep.json"));
  CHECK(rep["trials"] == 50);
  CHECK(rep["law"]["case"] == "b");
  CHECK(slurp(dir / "rep.csv").rfind("trial,X,standardized\n", 0) == 0);
  CHECK(slurp(dir / "rep.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"analyze", graphon_file("nonreg.graphon"), "--r", "2", "--bogus"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"analyze", graphon_file("nonreg.graphon")}).code == kExitUsage);
  CHECK(run({"analyze", "/nonexistent/file.graphon", "--r", "2"}).code == kExitIo);

  const auto bad = scratch() / "bad.graphon";
  std::ofstream(bad) << R"({"mu":[0.6,0.5],"values":[[1,0],[0,1]]})";
  const Result r = run({"analyze", bad.string(), "--r", "2"});
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("sum") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  const auto junk = scratch() / "junk.graphon";
  std::ofstream(junk) << "not json";
  CHECK(run({"analyze", junk.string(), "--r", "2"}).code == kExitInput);
  CHECK(run({"analyze", graphon_file("nonreg.graphon"), "--r", "1"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("selftest") {
  const Result r = run({"selftest"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run({"--help"}).out.find("selftest") == std::string::npos);
}
