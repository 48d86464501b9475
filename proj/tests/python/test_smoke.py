import math
import os
from pathlib import Path

import pytest

import melonet

FIXTURES = Path(os.environ.get("MELONET_FIXTURE_DIR", Path(__file__).resolve().parents[1] / "fixtures"))

EXAMPLE = ["C4:1/8", "D4:1/8", "D4:1/8", "C4:1/8", "D4:1/8", "G4:1/8", "R:1/8", "G4:1/4", "G5:1/4"]


@pytest.fixture
def example():
    return melonet.load_network(FIXTURES / "example.mel")


def test_worked_example(example):
    assert example.node_count == 6
    assert example.edge_count == 7
    assert example.weight("C4:1/8", "D4:1/8") == 2.0
    assert example.total_weight() == 8.0
    assert melonet.density(example) == pytest.approx(7 / 36)
    assert melonet.reconstruct_events(example) == EXAMPLE
    assert melonet.build_network_from_labels(EXAMPLE).edges == example.edges


def test_parsing_round_trip():
    score = melonet.parse_mel_text("note Bb 3 1/4\nrest 1/8\nchord E/4,C/4 1/2\n")
    assert [e.label for e in score.events] == ["A#3:1/4", "R:1/8", "C4+E4:1/2"]
    again = melonet.parse_mel_text(melonet.serialize_mel(score.events))
    assert again.events == score.events


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError, match="line 2"):
        melonet.parse_mel_text("note C 4 1/4\nnote H 4 1/4\n")
    with pytest.raises(melonet.ParseError):
        melonet.parse_edge_list("a b -1")


def test_metrics(example):
    report = melonet.full_report(example)
    assert report["node_count"] == 6
    assert report["max_degree"] == 5
    assert melonet.betweenness(example)["G4:1/8"] == 6.0
    d = melonet.distances(example, "undirected")
    assert d["reachable_fraction"] == 1.0
    fit = melonet.fit_power_law({k: k ** -2.0 for k in range(1, 9)})
    assert fit["lambda"] == pytest.approx(2.0, abs=1e-9)
    assert melonet.clustering(melonet.build_network_from_labels(["A4:1/4"]))["degenerate"]


def test_small_world():
    k6 = melonet.random_graph(6, 15, 1)
    assert melonet.small_world_sigma(k6, 10, 3)["sigma"] == 1.0
    ring = melonet.watts_strogatz(100, 4, 0.05, 7)
    result = melonet.small_world_sigma(ring, 30, 1)
    assert result["sigma"] > 3.0
    assert result == melonet.small_world_sigma(ring, 30, 1)


def test_communities():
    net = melonet.load_network(FIXTURES / "two_cliques.edges")
    found = melonet.detect_communities(net)
    assert found["community_count"] == 2
    assert found["modularity_q"] == pytest.approx(melonet.modularity_of(net, found["membership"]))
    assert set(found["membership"].values()) == {0, 1}


def test_corpus(tmp_path):
    corpus_csv, failures_csv = melonet.analyze_corpus([FIXTURES / "corpus"], ensemble_size=10)
    lines = corpus_csv.strip().splitlines()
    assert lines[0].startswith("track,length,node_count")
    assert len(lines) == 4
    assert failures_csv == "path,error\n"
    with pytest.raises(melonet.CorpusError):
        melonet.analyze_corpus([tmp_path])


def test_exports(example):
    assert example.to_dot().startswith('digraph "example"')
    assert "<gexf" in example.to_gexf({})
    assert math.isclose(example.to_json()["edges"][0]["weight"], 2.0)
