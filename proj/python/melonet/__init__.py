"""Note-transition networks of symbolic melodies and their complex-network metrics."""

from ._core import (
    CorpusError,
    DomainError,
    MelodyEvent,
    MelodyNetwork,
    ParseError,
    ParsedScore,
    analyze_corpus,
    betweenness,
    build_network,
    build_network_from_labels,
    clustering,
    degree_distribution,
    degree_table,
    density,
    detect_communities,
    distances,
    fit_power_law,
    full_report,
    load_network,
    modularity_of,
    parse_edge_list,
    parse_mel_text,
    parse_musicxml,
    random_graph,
    reconstruct_events,
    remove_rests,
    serialize_mel,
    small_world_sigma,
    undirected_projection,
    watts_strogatz,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
