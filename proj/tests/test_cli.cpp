#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ams/model_io.hpp"
#include "cli.hpp"

using namespace ams;
namespace fs = std::filesystem;

namespace {

const std::string kData = AMS_TEST_DATA;
const std::string kGolden = AMS_TEST_GOLDEN;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return kData + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const char* name) {
  fs::path dir = fs::temp_directory_path() / "ams_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("golden reports") {
  struct Case {
    const char* golden;
    std::vector<std::string> args;
  };
  const std::vector<Case> cases = {
      {"classify_ct_iid.json", {"classify", "--channel", data("ct.json"), "--source", data("iid.json"), "--json"}},
      {"classify_s2.json", {"classify", "--source", data("s2.json"), "--depth", "3", "--json"}},
      {"cascade_bsc.json", {"cascade", "--first", data("bsc10.json"), "--second", data("bsc20.json")}},
      {"qsmean_cascade_iid.json",
       {"qsmean", "--channel", kGolden + "/cascade_bsc.json", "--source", data("iid.json"), "--depth", "2"}},
      {"mean_s1.json", {"mean", "--source", data("s1.json")}},
      {"check_prop8.json", {"check", "--theorem", "prop8", "--trials", "10", "--seed", "7", "--json"}},
      {"hookup_iid_bsc25.json", {"hookup", "--source", data("iid.json"), "--channel", data("bsc25.json")}},
      {"sample_iid.json",
       {"sample", "--source", data("iid.json"), "--horizon", "2", "--samples", "1000", "--seed", "3", "--json"}},
  };
  for (const auto& c : cases) {
    Result r = run(c.args);
    CHECK_MESSAGE(r.code == 0, c.golden);
    CHECK_MESSAGE(r.out == slurp(kGolden + "/" + c.golden), c.golden);
  }
}

TEST_CASE("report contents") {
  Result bsc = run({"classify", "--channel", data("bsc25.json"), "--source", data("iid.json")});
  CHECK(bsc.code == 0);
  CHECK(bsc.out.find("stationary=true") != std::string::npos);
  CHECK(bsc.out.find("quasi_stationary=true") != std::string::npos);
  CHECK(bsc.out.find("=false") == std::string::npos);

  Result s2 = run({"classify", "--source", data("s2.json"), "--depth", "3"});
  CHECK(s2.out.find("recurrent=false witness \"a\"") != std::string::npos);

  io::json ct = io::json::parse(slurp(kGolden + "/classify_ct_iid.json"));
  CHECK(ct["sources"][0]["ams"]["holds"] == true);
  CHECK(ct["sources"][0]["quasi_stationary"]["holds"] == false);

  io::json mean = io::json::parse(slurp(kGolden + "/mean_s1.json"));
  CHECK(mean["init"] == io::json::array({"1/2", "1/2"}));

  io::json table = io::json::parse(slurp(kGolden + "/qsmean_cascade_iid.json"));
  bool found = false;
  for (const auto& e : table["entries"]) {
    if (e["input"] == "a" && e["output"] == "b") {
      CHECK(e["value"] == "13/50");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("output files and arithmetic modes") {
  fs::path out = scratch("cascade.json");
  CHECK(run({"cascade", "--first", data("bsc10.json"), "--second", data("bsc20.json"), "--out", out.string()})
            .code == 0);
  CHECK(slurp(out.string()) == slurp(kGolden + "/cascade_bsc.json"));

  Result fl = run({"mean", "--source", data("s1.json"), "--float"});
  CHECK(fl.code == 0);
  CHECK(io::json::parse(fl.out)["init"] == io::json::array({0.5, 0.5}));
  CHECK(run({"mean", "--source", data("s1.json"), "--float", "--exact"}).code == 2);
  CHECK(run({"mean", "--source", data("s1.json"), "--jobs", "2"}).code == 0);
}

TEST_CASE("check determinism and counterexamples") {
  std::vector<std::string> args{"check", "--theorem", "prop9", "--trials", "20", "--seed", "7", "--json"};
  Result a = run(args);
  Result b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  fs::path dir = scratch("cex");
  fs::remove_all(dir);
  Result f = run({"check", "--theorem", "prop2", "--trials", "30", "--seed", "7", "--out", dir.string()});
  CHECK(f.code == 1);
  CHECK(f.out.find("trial 28 fail") != std::string::npos);
  fs::path file = dir / "prop2-trial28.json";
  REQUIRE(fs::exists(file));
  io::json doc = io::read_json_file(file.string());
  CHECK(doc["status"] == "fail");
  CHECK(doc["instance"].contains("channel"));

  Result list = run({"check", "--list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("prop11:") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"mean", "--source", "/nonexistent.json"}).code == 2);
  CHECK(run({"check", "--theorem", "prop8"}).code == 2);
  CHECK(run({"check", "--theorem", "nope", "--seed", "1"}).code == 2);
  CHECK(run({"sample", "--source", data("iid.json")}).code == 2);
  CHECK(run({"classify", "--channel", data("ct.json")}).code == 2);
  CHECK(run({"classify", "--channel", data("ct.json"), "--seed", "4", "--depth", "2"}).code == 0);
  CHECK(run({"mean", "--help"}).code == 0);

  fs::path garbled = scratch("garbled.json");
  write(garbled, "{ \"kind\": ");
  CHECK(run({"mean", "--source", garbled.string()}).code == 2);

  fs::path unnormalized = scratch("unnormalized.json");
  io::json s = io::read_json_file(data("iid.json"));
  s["trans"][0] = io::json::array({"1/2", "1/3"});
  io::write_json_file(unnormalized.string(), s);
  Result r = run({"mean", "--source", unnormalized.string()});
  CHECK(r.code == 3);
  CHECK_FALSE(r.err.empty());

  fs::path slack = scratch("slack.json");
  s["trans"][0] = io::json::array({0.5, 0.5 + 4e-13});
  io::write_json_file(slack.string(), s);
  Result w = run({"mean", "--source", slack.string(), "--float"});
  CHECK(w.code == 0);
  CHECK(w.err.find("renormalized") != std::string::npos);

  // Four joint symbols to depth 12 is past the enumeration budget.
  Result big = run({"qsmean", "--channel", data("copy.json"), "--source", data("iid.json"), "--depth", "12"});
  CHECK(big.code == 4);
  CHECK(run({"hookup", "--source", data("iid.json"), "--channel", data("bsc25.json"), "--depth", "0"}).code == 2);
}
