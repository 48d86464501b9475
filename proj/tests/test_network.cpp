#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "melonet/errors.hpp"
#include "melonet/export.hpp"
#include "melonet/network.hpp"

using namespace melonet;
using namespace fixtures;

TEST_CASE("node labels") {
  const auto events = mel("note D 4 1/8\nrest 1/8\nchord G/4,C/4,E/4 1/2\nnote Bb 3 3/8").events;
  CHECK(node_label(events[0]) == "D4:1/8");
  CHECK(node_label(events[1]) == "R:1/8");
  CHECK(node_label(events[2]) == "C4+E4+G4:1/2");
  CHECK(node_label(events[3]) == "A#3:3/8");
  for (const auto& e : events) {
    auto shape = parse_label(node_label(e));
    shape.position = e.position;
    CHECK(shape == e);
  }
  CHECK(is_rest_label("R:1/4"));
  CHECK_FALSE(is_rest_label("C4:1/4"));
  CHECK_THROWS_AS(parse_label("C4"), ParseError);
  CHECK_THROWS_AS(parse_label("Cb4:1/4"), ParseError);
  CHECK_THROWS_AS(parse_label("E4+C4:1/4"), ParseError);
  CHECK_THROWS_AS(parse_label("X:1/4"), ParseError);
}

TEST_CASE("build_network on the worked example") {
  const auto net = example();
  CHECK(net.node_count() == 6);
  CHECK(net.edge_count() == 7);
  CHECK(net.weight(kC, kD) == 2.0);
  CHECK(net.weight(kD, kD) == 1.0);
  CHECK(net.weight(kD, kC) == 1.0);
  CHECK(net.weight(kD, kG8) == 1.0);
  CHECK(net.weight(kG8, kRest) == 1.0);
  CHECK(net.weight(kRest, kG4) == 1.0);
  CHECK(net.weight(kG4, kG2) == 1.0);
  CHECK(net.total_weight() == 8.0);
  // Nodes appear in first-occurrence order.
  CHECK(net.labels() == std::vector<std::string>{kC, kD, kG8, kRest, kG4, kG2});
}

TEST_CASE("build_network edge cases") {
  SUBCASE("single event") {
    const auto net = build_network(mel("note A 4 1/4").events);
    CHECK(net.node_count() == 1);
    CHECK(net.edge_count() == 0);
  }
  SUBCASE("repeated note makes one weighted self-loop") {
    const auto net = build_network(mel("note A 4 1/4\nnote A 4 1/4\nnote A 4 1/4\nnote A 4 1/4\nnote A 4 1/4").events);
    CHECK(net.node_count() == 1);
    CHECK(net.edge_count() == 1);
    CHECK(net.weight("A4:1/4", "A4:1/4") == 4.0);
  }
  SUBCASE("empty melody") {
    CHECK_THROWS_WITH_AS(build_network(std::vector<MelodyEvent>{}), "empty melody", DomainError);
  }
  SUBCASE("positions must be consecutive") {
    auto events = mel("note A 4 1/4\nnote B 4 1/4").events;
    events[1].position = 5;
    CHECK_THROWS_AS(build_network(events), DomainError);
  }
}

TEST_CASE("reconstruct_events") {
  const auto net = example();
  CHECK(reconstruct_events(net) == std::vector<std::string>{kC, kD, kD, kC, kD, kG8, kRest, kG4, kG2});
  CHECK(build_network_from_labels(reconstruct_events(net), "example") == net);
  CHECK(reconstruct_events(build_network(mel("note E 2 1/2").events)) == std::vector<std::string>{"E2:1/2"});
  CHECK_THROWS_WITH_AS(reconstruct_events(edges("a b 1")), "no sequence stored", DomainError);
}

TEST_CASE("remove_rests") {
  SUBCASE("worked example") {
    const auto net = remove_rests(example());
    CHECK(net.node_count() == 5);
    CHECK(net.edge_count() == 5);
    CHECK_FALSE(net.find(kRest));
    CHECK(net.weight(kG8, kG4) == 0.0);  // no bridge across the deleted rest
    CHECK(net.weight(kG4, kG2) == 1.0);
    CHECK(net.weight(kC, kD) == 2.0);
    CHECK(net.sequence().empty());
  }
  SUBCASE("no rests") {
    const auto original = build_network(mel("note C 4 1/4\nnote D 4 1/4\nnote C 4 1/4").events);
    const auto net = remove_rests(original);
    CHECK(net.labels() == original.labels());
    CHECK(net.edges() == original.edges());
  }
  SUBCASE("only rests") {
    const auto net = remove_rests(build_network(mel("rest 1/4\nrest 1/4").events));
    CHECK(net.empty());
    CHECK(net.edge_count() == 0);
  }
}

TEST_CASE("undirected_projection") {
  SUBCASE("reciprocal weights add") {
    const auto u = undirected_projection(edges("a b 2\nb a 3"), false);
    CHECK_FALSE(u.directed());
    CHECK(u.edge_count() == 1);
    CHECK(u.weight("a", "b") == 5.0);
    CHECK(u.weight("b", "a") == 5.0);
  }
  SUBCASE("worked example") {
    const auto dropped = undirected_projection(example(), false);
    CHECK(dropped.edge_count() == 5);
    CHECK(dropped.weight(kC, kD) == 3.0);
    const auto kept = undirected_projection(example(), true);
    CHECK(kept.edge_count() == 6);
    CHECK(kept.weight(kD, kD) == 1.0);
  }
  SUBCASE("directed cycle becomes a triangle") {
    const auto u = undirected_projection(edges("a b 1\nb c 1\nc a 1"), false);
    CHECK(u.edge_count() == 3);
    CHECK(u.weight("a", "c") == 1.0);
  }
}

TEST_CASE("network invariants over generated melodies") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> len(1, 60), pick(0, 6 + trial % 10);
    std::vector<std::string> labels;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      const int p = pick(rng);
      labels.push_back(p == 0 ? "R:1/8" : "C" + std::to_string(p % 9) + ":1/" + std::to_string(1 << (p % 4)));
    }
    const auto net = build_network_from_labels(labels);
    CHECK(net.total_weight() == static_cast<double>(labels.size() - 1));
    for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
      double count = 0;
      for (std::size_t j = 0; j + 1 < labels.size(); ++j) count += labels[j] == labels[i] && labels[j + 1] == labels[i + 1];
      CHECK(net.weight(labels[i], labels[i + 1]) == count);
    }
    const auto stripped = remove_rests(net);
    CHECK(stripped.node_count() <= net.node_count());
    CHECK(stripped.edge_count() <= net.edge_count());
    const auto u = undirected_projection(net, true);
    for (const auto& [key, w] : u.edges()) CHECK(u.weight(key.second, key.first) == w);
    CHECK(u.total_weight() == net.total_weight());
  }
}

TEST_CASE("JSON export is sorted") {
  const auto j = network_to_json(example());
  CHECK(j["name"] == "example");
  CHECK(j["nodes"].size() == 6);
  CHECK(j["nodes"][0] == kC);
  CHECK(j["nodes"][5] == kRest);
  CHECK(j["edges"].size() == 7);
  CHECK(j["edges"][0]["source"] == kC);
  CHECK(j["edges"][0]["target"] == kD);
  CHECK(j["edges"][0]["weight"] == 2.0);
  CHECK(j["sequence"].size() == 9);
}

TEST_CASE("GEXF and DOT exports") {
  const auto net = example();
  const auto gexf = network_to_gexf(net);
  CHECK(gexf.find("version=\"1.2\"") != std::string::npos);
  CHECK(gexf.find("defaultedgetype=\"directed\"") != std::string::npos);
  CHECK(gexf.find("label=\"C4:1/8\"") != std::string::npos);
  CHECK(gexf.find("weight=\"2\"") != std::string::npos);
  CHECK(gexf.find("attvalue") == std::string::npos);

  CommunityMap communities;
  for (const auto& l : net.labels()) communities[l] = l == kRest ? 1 : 0;
  const auto colored = network_to_gexf(net, communities);
  CHECK(colored.find("<attribute id=\"community\"") != std::string::npos);
  CHECK(colored.find("value=\"1\"") != std::string::npos);

  const auto dot = network_to_dot(net);
  CHECK(dot.rfind("digraph \"example\" {", 0) == 0);
  CHECK(dot.find("\"C4:1/8\" -> \"D4:1/8\" [weight=2, penwidth=2];") != std::string::npos);
  CHECK(network_to_dot(undirected_projection(net, false)).find(" -- ") != std::string::npos);
}
