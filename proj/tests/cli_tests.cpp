#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "benford/distributions.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = BENFORD_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string out;
};

fs::path scratch_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / "benford_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  auto out_path = scratch_dir() / "stdout.txt";
  std::string cmd = kCli + " " + args + " > " + out_path.string() + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return {code, ss.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p);
  out << content;
}

}  // namespace

TEST_CASE("sample is deterministic per seed and emits a sidecar") {
  auto f1 = scratch_dir() / "s1.csv";
  auto f2 = scratch_dir() / "s2.csv";
  auto r1 = run("sample --family uexp:10:0:1 -n 500 --seed 9 -o " + f1.string());
  auto r2 = run("sample --family uexp:10:0:1 -n 500 --seed 9 -o " + f2.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  CHECK(read_file(f1) == read_file(f2));

  auto meta = json::parse(r1.out);
  CHECK(meta["n"] == 500);
  CHECK(meta["seed"] == 9);
}

TEST_CASE("sample then analyze round-trips to a benford verdict") {
  auto data = scratch_dir() / "benford.csv";
  auto r = run("sample --family uexp:10:0:1 -n 200000 --seed 4 -o " + data.string());
  REQUIRE(r.exit_code == 0);

  auto a = run("analyze " + data.string() + " --strict");
  CHECK(a.exit_code == 0);
  auto j = json::parse(a.out);
  CHECK(j["verdict"] == "benford");
  CHECK(j["m"] == 200000);
  CHECK(j.contains("note"));  // base was defaulted
  CHECK(j["ingestion"]["rows_used"] == 200000);
  REQUIRE(j.contains("digits"));
  double d1 = j["digits"][0]["freq"].get<double>();
  CHECK(std::abs(d1 - std::log10(2.0)) < 0.01);
}

TEST_CASE("fejer samples are benford at interior bases") {
  auto data = scratch_dir() / "fejer.csv";
  REQUIRE(run("sample --family fejer:10 -n 200000 --seed 12 -o " + data.string()).exit_code == 0);
  auto a = run("analyze " + data.string() + " --base 5 --strict");
  CHECK(a.exit_code == 0);
  CHECK(json::parse(a.out)["verdict"] == "benford");
}

TEST_CASE("lattice sample reports its rank") {
  auto data = scratch_dir() / "lattice.csv";
  auto r = run("sample --family lattice:1/2:0.5,1/3:0.5 -n 100 --seed 3 -o " + data.string());
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out)["rank"] == 6);
}

TEST_CASE("analyze on a constant column is nonconforming with ks 1") {
  auto data = scratch_dir() / "constant.csv";
  std::string body = "v\n";
  for (int i = 0; i < 2000; ++i) body += "10.0\n";
  write_file(data, body);

  auto a = run("analyze " + data.string() + " --column v");
  REQUIRE(a.exit_code == 0);
  auto j = json::parse(a.out);
  CHECK(j["verdict"] == "nonconforming");
  CHECK(j["ks"].get<double>() == 1.0);

  auto strict = run("analyze " + data.string() + " --column v --strict");
  CHECK(strict.exit_code == 1);
}

TEST_CASE("analyze at a non-integer detected base") {
  auto data = scratch_dir() / "wide.csv";
  REQUIRE(run("sample --family uexp:10:0:2 -n 200000 --seed 5 -o " + data.string()).exit_code == 0);
  auto a = run("analyze " + data.string() + " --base 4.641588833612779 --strict");
  CHECK(a.exit_code == 0);
  auto j = json::parse(a.out);
  CHECK(j["verdict"] == "benford");
  CHECK_FALSE(j.contains("digits"));  // non-integer base has no digit table
}

TEST_CASE("analyze writes a histogram tsv with one metadata line") {
  auto data = scratch_dir() / "hist_input.csv";
  REQUIRE(run("sample --family uexp:10:0:1 -n 50000 --seed 6 -o " + data.string()).exit_code == 0);
  auto tsv = scratch_dir() / "hist.tsv";
  REQUIRE(run("analyze " + data.string() + " --hist-tsv " + tsv.string()).exit_code == 0);
  std::ifstream in(tsv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line.rfind("# ", 0) == 0);
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 9);
}

TEST_CASE("spectrum scan of an analytic family") {
  auto r = run("spectrum --family uexp:10:0:1 --range 2 15 --steps 120");
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  bool has_ten = false;
  for (double b : j["detected"].get<std::vector<double>>())
    if (std::abs(b - 10.0) < 1e-3) has_ten = true;
  CHECK(has_ten);
  CHECK(std::abs(j["upper_bound"].get<double>() - 10.0) < 0.01);

  auto fj = run("spectrum --family fejer:10 --range 1.5 10 --steps 60");
  REQUIRE(fj.exit_code == 0);
  auto jf = json::parse(fj.out);
  for (double resid : jf["residuals"].get<std::vector<double>>())
    CHECK(resid <= 1e-12);

  auto tsv = scratch_dir() / "spec.tsv";
  auto r2 = run("spectrum --family uexp:10:0:1 --range 2 15 --steps 40 --tsv " + tsv.string());
  REQUIRE(r2.exit_code == 0);
  std::ifstream in(tsv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line.rfind("# ", 0) == 0);
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 40);
}

TEST_CASE("spectrum scan of a dataset") {
  auto data = scratch_dir() / "spec_data.csv";
  REQUIRE(run("sample --family uexp:10:0:1 -n 50000 --seed 8 -o " + data.string()).exit_code == 0);
  auto r = run("spectrum " + data.string() + " --range 4 15 --steps 100");
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  bool near_ten = false;
  for (double b : j["detected"].get<std::vector<double>>())
    if (std::abs(b - 10.0) < 0.5) near_ten = true;
  CHECK(near_ten);
}

TEST_CASE("round trip holds for every uexp fixture with integer width") {
  int idx = 0;
  for (const std::string family : {"uexp:10:0:1", "uexp:2:0:2", "uexp:5:1:3"}) {
    auto data = scratch_dir() / ("rt" + std::to_string(idx++) + ".csv");
    std::string beta = family.substr(5, family.find(':', 5) - 5);
    REQUIRE(run("sample --family " + family + " -n 50000 --seed 21 -o " +
                data.string()).exit_code == 0);
    auto a = run("analyze " + data.string() + " --base " + beta + " --strict");
    CAPTURE(family);
    CHECK(a.exit_code == 0);
    CHECK(json::parse(a.out)["verdict"] == "benford");
  }
}

TEST_CASE("spectrum of a constant dataset has no detections and a null bound") {
  auto data = scratch_dir() / "const_spec.csv";
  std::string body;
  for (int i = 0; i < 2000; ++i) body += "7.0\n";
  write_file(data, body);
  auto r = run("spectrum " + data.string() + " --range 2 50 --steps 60");
  REQUIRE(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["detected"].empty());
  CHECK(j["upper_bound"].is_null());
}

TEST_CASE("BENFORD_THREADS only changes worker count, not results") {
  auto data = scratch_dir() / "threads.csv";
  REQUIRE(run("sample --family uexp:10:0:1 -n 50000 --seed 30 -o " + data.string()).exit_code == 0);
  auto serial = run("analyze " + data.string());
  auto out_path = scratch_dir() / "stdout.txt";
  std::string cmd = "BENFORD_THREADS=4 " + kCli + " analyze " + data.string() + " > " +
                    out_path.string() + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  auto threaded = json::parse(read_file(out_path));
  auto expected = json::parse(serial.out);
  CHECK(threaded["ks"] == expected["ks"]);
  CHECK(threaded["verdict"] == expected["verdict"]);
}

TEST_CASE("under-sampled verify fails with a note and exit 1") {
  // deterministic per seed: at m = 1000 the comb sup estimate misses its
  // +/- 0.01 window for this seed
  auto r = run("verify --suite exp_rank_bound --seed 1 --m 1000");
  CHECK(r.exit_code == 1);
  auto j = json::parse(r.out);
  CHECK(j[0]["passed"] == false);
  CHECK(j[0].contains("note"));
}

TEST_CASE("verify runs a named suite and reports json") {
  auto r = run("verify --suite exp_lebinv_integer --seed 3 --m 20000");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["name"] == "exp_lebinv_integer");
  CHECK(j[0]["passed"] == true);
  CHECK(j[0].contains("note"));  // m below recommended
}

TEST_CASE("the whole verification suite passes on a reference seed") {
  auto r = run("verify --suite all --seed 20240901 --m 50000");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j.size() == 8);
  for (const auto& e : j) CHECK(e["passed"] == true);
}

TEST_CASE("usage and io error exit codes") {
  CHECK(run("analyze missing_file.csv").exit_code == 3);
  CHECK(run("verify --suite bogus").exit_code == 2);
  CHECK(run("sample --family nope:1 -n 10 -o /tmp/x.csv").exit_code == 2);
  CHECK(run("spectrum --family uexp:10:0:1 --range 15 2").exit_code == 2);
  CHECK(run("bogus-subcommand").exit_code == 2);

  auto data = scratch_dir() / "tiny.csv";
  write_file(data, "v\n1.5\n");
  CHECK(run("analyze " + data.string() + " --base 0.5").exit_code == 2);
  CHECK(run("analyze " + data.string() + " --column missing").exit_code == 2);

  auto neg = scratch_dir() / "neg.csv";
  write_file(neg, "v\n-1\n-2\n");
  CHECK(run("analyze " + neg.string()).exit_code == 3);  // no usable rows
}
