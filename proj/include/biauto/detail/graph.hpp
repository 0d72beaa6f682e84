#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <vector>

namespace biauto::detail {

// Strongly connected components (iterative Tarjan). comp[v] numbers the
// components in reverse topological order: edges go from higher to lower or
// stay inside a component.
struct Components {
  std::vector<std::size_t> comp;
  std::size_t count = 0;
};

inline Components strongly_connected(std::vector<std::vector<std::size_t>> const& adj) {
  std::size_t n = adj.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  Components out;
  out.comp.assign(n, kUnset);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::size_t counter = 0;
  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::size_t v = f.v;
      if (low[v] == index[v]) {
        while (true) {
          std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.comp[w] = out.count;
          if (w == v) break;
        }
        ++out.count;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return out;
}

inline std::vector<char> reachable_from(std::vector<std::vector<std::size_t>> const& adj,
                                        std::vector<std::size_t> const& sources) {
  std::vector<char> seen(adj.size(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t s : sources) {
    if (!seen[s]) {
      seen[s] = 1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

inline std::vector<std::vector<std::size_t>> reversed(std::vector<std::vector<std::size_t>> const& adj) {
  std::vector<std::vector<std::size_t>> rev(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v) {
    for (std::size_t w : adj[v]) rev[w].push_back(v);
  }
  return rev;
}

}  // namespace biauto::detail
