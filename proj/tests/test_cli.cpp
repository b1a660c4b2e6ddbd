#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <doctest.h>
#include <json.hpp>

#include "autoseq/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "autoseq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = autoseq::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("autoseq-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

std::string exported(const std::string& name) {
  const auto p = path(name + ".json");
  if (!fs::exists(p)) REQUIRE(cli({"catalog", "export", name, "--out", p}).code == 0);
  return p;
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("digits") {
  const auto r = cli({"digits", "--machine", exported("xi2"), "--count", "40"});
  CHECK(r.code == 0);
  CHECK(r.out == "1110111001101000011111101110100000010110\n");
  CHECK(cli({"digits", "--stream", "surd:2", "--base", "10", "--count", "39"}).out ==
        "414213562373095048801688724209698078569\n");
  spit(path("bad.json"), "{\"kind\": \"dfao\", \"k\": 1}");
  const auto bad = cli({"digits", "--machine", path("bad.json")});
  CHECK(bad.code == 2);
  CHECK_FALSE(bad.err.empty());
  CHECK(cli({"digits", "--machine", path("missing.json")}).code == 2);
  CHECK(cli({"digits"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("certify") {
  const auto xi2 = cli({"certify", "--machine", exported("xi2"), "--budget", "1000", "--depth", "12"});
  REQUIRE(xi2.code == 0);
  const auto j = nlohmann::json::parse(xi2.out);
  CHECK(j["n"] == 1);
  CHECK(j["nPrime"] == 5);
  CHECK(j["dioLowerBound"] == "5/4");
  CHECK(j["method"] == "exact");
  CHECK(xi2.err.find("rational or transcendental") != std::string::npos);

  CHECK(cli({"certify", "--machine", exported("squares")}).code == 2);
  const auto xi3 = cli({"certify", "--pair", "10,20", "--k", "2", "--stream", "xi3", "--depth", "12"});
  REQUIRE(xi3.code == 0);
  CHECK(nlohmann::json::parse(xi3.out)["dioLowerBound"] == "20/19");
  CHECK(cli({"certify", "--machine", exported("xi2"), "--budget", "4"}).code == 1);
  CHECK(cli({"certify", "--pair", "1,3", "--catalog", "tm", "--depth", "4"}).code == 1);
}

TEST_CASE("analyze") {
  const auto c = cli({"analyze", "--machine", exported("xi1"), "--complexity", "1..64", "--format", "json"});
  REQUIRE(c.code == 0);
  const auto rows = nlohmann::json::parse(c.out)["tables"][0]["rows"];
  REQUIRE(rows.size() == 64);
  CHECK(rows[0][1] == "3");
  CHECK(rows[63][1] == "679");

  const auto d = cli({"analyze", "--machine", exported("tm"), "--dio", "2^4..2^14", "--format", "json"});
  REQUIRE(d.code == 0);
  const auto dio = nlohmann::json::parse(d.out)["tables"][0]["rows"];
  CHECK(dio.size() == 11);
  for (const auto& row : dio) CHECK(std::stod(row[2].get<std::string>()) <= 3.0);

  const auto dil = cli({"analyze", "--machine", exported("xi1"), "--dilation", "10^4"});
  REQUIRE(dil.code == 0);
  CHECK(dil.out.find("min W(n)/n for n <= 10000: 2 (~2.000000)") != std::string::npos);
  CHECK(dil.out.find("approximate") != std::string::npos);

  spit(path("short.txt"), "0110\n");
  CHECK(cli({"analyze", "--stream", "file:" + path("short.txt"), "--complexity", "1..10"}).code == 3);
  CHECK(cli({"analyze", "--catalog", "tm", "--growth"}).code == 2);
}

TEST_CASE("convert") {
  const auto fig2 = cli({"convert", "--machine", exported("tm-morphic")});
  REQUIRE(fig2.code == 0);
  CHECK(fig2.out == slurp(exported("tm")));
  const auto back = cli({"convert", "--machine", exported("tm")});
  REQUIRE(back.code == 0);
  CHECK(back.out == slurp(exported("tm-morphic")));
  CHECK(cli({"convert", "--machine", exported("xi1")}).code == 2);
  CHECK(cli({"convert", "--machine", exported("xi2")}).code == 2);
}

TEST_CASE("imitate") {
  const auto a = cli({"imitate", "--stream", "surd:2", "--base", "2", "--states", "1", "--len", "100"});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("I: 1\n") != std::string::npos);
  const auto b = cli({"imitate", "--stream", "rational:1/3", "--base", "2", "--states", "2", "--len", "64",
                      "--out", path("third.json")});
  REQUIRE(b.code == 0);
  CHECK(b.out.find("I: 64 (censored") != std::string::npos);
  CHECK(cli({"digits", "--machine", path("third.json"), "--count", "8"}).out == "00101010\n");
  const auto cap = cli({"imitate", "--states", "6"});
  CHECK(cap.code == 4);
  CHECK(cap.err.find("candidate machines") != std::string::npos);
}

TEST_CASE("other commands") {
  CHECK(cli({"growth", "--catalog", "xi1"}).out.find("exponential growth: true") != std::string::npos);
  CHECK(cli({"growth", "--catalog", "squares"}).out.find("exponential growth: false") != std::string::npos);
  const auto dil = cli({"dilation", "--catalog", "tm-morphic", "--n", "1024"});
  CHECK(dil.out.find("min W(n)/n for n <= 1024: 2 ") != std::string::npos);
  const auto eq = cli({"equiv", "--catalog", "xi2", "--pop"});
  REQUIRE(eq.code == 0);
  CHECK(eq.out.find("pair: (1, 5)") != std::string::npos);
  CHECK(eq.out.find("size: 6") != std::string::npos);
  const auto dist = cli({"equiv", "--catalog", "xi2", "--distinguish", "1,2", "--depth", "3"});
  CHECK(dist.out.find("distinguished by w = \"1\"") != std::string::npos);
  const auto cf = cli({"cf", "--d", "7", "--count", "8"});
  CHECK(cf.out.find("period: [1,1,1,4]") != std::string::npos);
  CHECK(cf.out.find("11141114") != std::string::npos);
  const auto list = cli({"catalog", "list"});
  for (const auto* name : {"xi0", "tm", "xi1", "squares", "xi2"}) CHECK(list.out.find(name) != std::string::npos);
  const auto all = cli({"catalog", "export", "--all", "--dir", path("catalog")});
  CHECK(all.code == 0);
  CHECK(fs::exists(path("catalog") + "/xi2.json"));
}

TEST_CASE("outputs are byte-identical across runs") {
  const std::vector<std::vector<std::string>> runs = {
      {"analyze", "--catalog", "xi2", "--complexity", "1..32", "--dio", "2^4..2^10", "--format", "json"},
      {"certify", "--catalog", "xi1", "--depth", "8"},
      {"imitate", "--stream", "surd:2", "--base", "2", "--states", "2", "--len", "64"},
      {"equiv", "--catalog", "push-only", "--pop"},
  };
  for (const auto& args : runs) {
    const auto a = cli(args), b = cli(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}

TEST_CASE("certificates verify in a separate process") {
  const std::string exe = AUTOSEQ_CLI;
  for (const auto* name : {"xi0", "tm", "xi1", "xi2", "push-only", "tm-morphic", "tm-dpao"}) {
    const auto machine = exported(name);
    const auto cert = path(std::string(name) + ".cert.json");
    INFO(name);
    REQUIRE(shell(exe + " certify --machine " + machine + " --out " + cert + " > /dev/null") == 0);
    CHECK(shell(exe + " verify --machine " + machine + " --cert " + cert + " --extra-depth 2 > /dev/null") == 0);
  }
  const auto cert = path("xi3.cert.json");
  REQUIRE(shell(exe + " certify --pair 10,20 --stream xi3 --out " + cert + " > /dev/null") == 0);
  CHECK(shell(exe + " verify --stream xi3 --cert " + cert + " > /dev/null") == 0);
  CHECK(shell(exe + " verify --stream surd:2 --cert " + cert + " > /dev/null 2>&1") == 2);

  auto j = nlohmann::json::parse(slurp(path("xi2.cert.json")));
  j["witnesses"][3]["ext"] = j["witnesses"][3]["ext"].get<std::uint64_t>() + 1;
  spit(path("tampered.json"), j.dump());
  CHECK(shell(exe + " verify --machine " + exported("xi2") + " --cert " + path("tampered.json") +
              " > /dev/null 2>&1") == 2);
  CHECK(shell(exe + " verify --machine " + exported("tm") + " --cert " + path("xi2.cert.json") +
              " > /dev/null 2>&1") == 2);
}

}  // TEST_SUITE
