#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "melonet/cli.hpp"
#include "tempdir.hpp"

using namespace melonet;
using namespace fixtures;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;

  std::vector<std::string> lines() const {
    std::vector<std::string> v;
    std::istringstream in(out);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
  }
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "melonet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string example_path() { return (dir() / "example.mel").string(); }

}  // namespace

TEST_CASE("build writes the requested exports") {
  TempDir tmp;
  const auto r = cli({"build", example_path(), "--out", tmp.path().string(), "--export", "json,gexf,dot"});
  REQUIRE(r.code == kExitOk);
  const auto lines = r.lines();
  REQUIRE(lines.size() == 3);
  for (const auto& l : lines) CHECK(std::filesystem::exists(l));
  const auto j = nlohmann::json::parse(slurp(tmp / "example.network.json"));
  CHECK(j["nodes"].size() == 6);
  CHECK(j["edges"].size() == 7);
}

TEST_CASE("build --remove-rests --undirected") {
  TempDir tmp;
  const auto r = cli({"build", example_path(), "--out", tmp.path().string(), "--remove-rests", "--undirected"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(tmp / "example.network.json"));
  CHECK(j["directed"] == false);
  CHECK(j["nodes"].size() == 5);
}

TEST_CASE("metrics writes report and distributions") {
  TempDir tmp;
  const auto r = cli({"metrics", example_path(), "--out", tmp.path().string(), "--ensemble", "20", "--seed", "7"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.lines().size() == 3);
  const auto j = nlohmann::json::parse(slurp(tmp / "example.metrics.json"));
  CHECK(j["node_count"] == 6);
  CHECK(j["small_world"]["seed"] == 7);
  CHECK(j["config"]["ensemble"] == 20);
  CHECK(slurp(tmp / "example.degree_cdf.csv").rfind("degree,cumulative\n", 0) == 0);
}

TEST_CASE("metrics is reproducible and honours MELONET_SEED") {
  TempDir tmp;
  cli({"metrics", example_path(), "--out", (tmp / "a").string(), "--ensemble", "15"});
  cli({"metrics", example_path(), "--out", (tmp / "b").string(), "--ensemble", "15", "--threads", "2"});
  CHECK(slurp(tmp / "a" / "example.metrics.json") == slurp(tmp / "b" / "example.metrics.json"));

  ::setenv("MELONET_SEED", "99", 1);
  cli({"metrics", example_path(), "--out", (tmp / "c").string(), "--ensemble", "15"});
  ::unsetenv("MELONET_SEED");
  const auto j = nlohmann::json::parse(slurp(tmp / "c" / "example.metrics.json"));
  CHECK(j["small_world"]["seed"] == 99);
}

TEST_CASE("metrics --no-smallworld") {
  TempDir tmp;
  REQUIRE(cli({"metrics", example_path(), "--out", tmp.path().string(), "--no-smallworld"}).code == kExitOk);
  CHECK_FALSE(nlohmann::json::parse(slurp(tmp / "example.metrics.json")).contains("small_world"));
}

TEST_CASE("communities on the two-clique fixture") {
  TempDir tmp;
  const auto r = cli({"communities", (dir() / "two_cliques.edges").string(), "--out", tmp.path().string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.lines().size() == 3);
  CHECK(slurp(tmp / "two_cliques.communities.csv") ==
        "node,community\na,0\nb,0\nc,0\nd,0\ne,1\nf,1\ng,1\nh,1\n");
  const auto j = nlohmann::json::parse(slurp(tmp / "two_cliques.communities.json"));
  CHECK(j["community_count"] == 2);
}

TEST_CASE("corpus subcommand") {
  TempDir tmp;
  const auto r = cli({"corpus", (dir() / "corpus").string(), "--out", tmp.path().string(), "--ensemble", "10",
                      "--bins", "4", "--metrics", "length,node_count"});
  REQUIRE(r.code == kExitOk);
  CHECK(std::filesystem::exists(tmp / "corpus.csv"));
  CHECK(std::filesystem::exists(tmp / "dist_length.csv"));
  CHECK(std::filesystem::exists(tmp / "cdf_node_count.csv"));
  CHECK(std::filesystem::exists(tmp / "corpus_config.json"));
  CHECK_FALSE(std::filesystem::exists(tmp / "dist_sigma.csv"));
}

TEST_CASE("convert MusicXML to .mel") {
  const auto r = cli({"convert", (dir() / "example.musicxml").string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == slurp(dir() / "example.mel").substr(slurp(dir() / "example.mel").find("note")));
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(cli({}).code == kExitInputError);
  CHECK(cli({"frobnicate"}).code == kExitInputError);
  CHECK(cli({"build", (tmp / "missing.mel").string()}).code == kExitInputError);
  const auto bad = tmp.write("bad.mel", "note C 4 1/4\nnote Q 4 1/4\n");
  const auto r = cli({"build", bad.string(), "--out", tmp.path().string()});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(cli({"build", example_path(), "--export", "png", "--out", tmp.path().string()}).code == kExitInputError);
  CHECK(cli({"corpus", (tmp / "empty").string(), "--out", tmp.path().string()}).code == kExitCorpusEmpty);
  CHECK(cli({"corpus", bad.string(), "--out", tmp.path().string()}).code == kExitCorpusEmpty);
  CHECK(cli({"metrics", example_path(), "--r2-threshold", "2"}).code == kExitInputError);
  CHECK(cli({"--help"}).code == kExitOk);
}
