#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "melonet/network.hpp"

namespace melonet::detail {

/// Unweighted neighbour lists without self-loops or repeats, each sorted.
struct Adjacency {
  std::vector<std::vector<NodeId>> out;
  std::vector<std::vector<NodeId>> in;

  std::size_t size() const noexcept { return out.size(); }
};

/// Follows edge direction; undirected networks get both directions.
Adjacency directed_adjacency(const MelodyNetwork& net);

/// Symmetric adjacency ignoring direction (`in` == `out`).
Adjacency undirected_adjacency(const MelodyNetwork& net);

/// Breadth-first hop counts from `source`; -1 marks unreachable nodes.
void bfs_distances(const Adjacency& adj, NodeId source, std::vector<long>& dist);

/// Calls `fn(i)` for every i in [0, count) on up to `threads` workers
/// (0 = hardware concurrency). `fn` must only write to slot i of its output.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        try {
          for (std::size_t i = next++; i < count; i = next++) fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace melonet::detail
