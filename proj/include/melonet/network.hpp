#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "melonet/score.hpp"

namespace melonet {

using NodeId = std::size_t;

// ---------------------------------------------------------------------------
// Node labels
// ---------------------------------------------------------------------------

/// Canonical node identity of an event, position ignored:
///   note   `D4:1/8`
///   rest   `R:1/8`
///   chord  `C4+E4+G4:1/2`   (pitches ascending)
std::string node_label(const MelodyEvent& event);

/// Event shape recovered from a label. Throws ParseError on malformed text.
MelodyEvent parse_label(std::string_view label);

bool is_rest_label(std::string_view label) noexcept;

// ---------------------------------------------------------------------------
// Network
// ---------------------------------------------------------------------------

/// Weighted graph of note transitions.
///
/// Nodes keep first-insertion order and are addressed by dense NodeId. Edges
/// map (source, target) to a positive weight; in an undirected network the
/// key is stored with source <= target. Self-loops are allowed. When built
/// from a score the full label order is kept in `sequence()` so the melody
/// can be read back.
class MelodyNetwork {
 public:
  using EdgeMap = std::map<std::pair<NodeId, NodeId>, double>;

  explicit MelodyNetwork(std::string name = {}, bool directed = true)
      : name_(std::move(name)), directed_(directed) {}

  const std::string& name() const noexcept { return name_; }
  bool directed() const noexcept { return directed_; }

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(NodeId id) const { return labels_.at(id); }
  std::optional<NodeId> find(std::string_view label) const;

  const EdgeMap& edges() const noexcept { return edges_; }
  /// 0 when the edge is absent. Symmetric for undirected networks.
  double weight(NodeId source, NodeId target) const;
  double weight(std::string_view source, std::string_view target) const;
  double total_weight() const;

  const std::vector<NodeId>& sequence() const noexcept { return sequence_; }
  std::vector<std::string> sequence_labels() const;

  // Builder interface. Values are treated as immutable once handed out.
  NodeId add_node(const std::string& label);
  void add_edge(NodeId source, NodeId target, double weight);
  void append_to_sequence(NodeId id) { sequence_.push_back(id); }
  void clear_sequence() noexcept { sequence_.clear(); }

  friend bool operator==(const MelodyNetwork&, const MelodyNetwork&) = default;

 private:
  std::string name_;
  bool directed_ = true;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  EdgeMap edges_;
  std::vector<NodeId> sequence_;
};

/// Transition network of a melody: a node per distinct label, an edge per
/// consecutive pair weighted by its number of occurrences.
/// Throws DomainError("empty melody") when `events` is empty.
MelodyNetwork build_network(std::span<const MelodyEvent> events, std::string name = {});

/// Same construction over labels that are already canonical.
MelodyNetwork build_network_from_labels(std::span<const std::string> labels, std::string name = {});

/// The stored label order. Throws DomainError("no sequence stored").
std::vector<std::string> reconstruct_events(const MelodyNetwork& net);

/// Drops rest nodes and their incident edges without bridging neighbours.
/// The sequence is cleared since it no longer describes the network.
MelodyNetwork remove_rests(const MelodyNetwork& net);

/// Undirected copy: each unordered pair gets w(u->v) + w(v->u).
MelodyNetwork undirected_projection(const MelodyNetwork& net, bool keep_self_loops);

}  // namespace melonet
