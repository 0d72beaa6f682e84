#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biauto/automaton.hpp"
#include "biauto/detail/graph.hpp"
#include "biauto/detail/rational_lp.hpp"
#include "biauto/group.hpp"
#include "biauto/structure.hpp"
#include "biauto/verdict.hpp"

namespace biauto {

namespace detail {

struct DfaEdge {
  State from;
  Letter letter;
  State to;
};

inline std::vector<DfaEdge> dfa_edges(Automaton const& d) {
  std::vector<DfaEdge> out;
  for (State q = 0; q < d.size(); ++q) {
    for (Letter x = 0; x < d.alphabet().size(); ++x) {
      if (auto t = d.next(q, x)) out.push_back({q, x, *t});
    }
  }
  return out;
}

inline Word shortest_between(Automaton const& d, State from, State to) {
  auto w = shortest_word(d, {from}, [&](State q) { return q == to; });
  if (!w) throw Error("finite_to_one: state not reachable while building a witness");
  return w->first;
}

inline Word shortest_to_accepting(Automaton const& d, State from) {
  auto w = shortest_word(d, {from}, [&](State q) { return d.accepting(q); });
  if (!w) throw Error("finite_to_one: automaton is not trimmed");
  return w->first;
}

inline Word power(Word const& w, std::uint64_t times) {
  Word out;
  for (std::uint64_t i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

// Two accepted words: a shortest path through the waypoints in order, with
// every cycle inserted `scale` times its multiplicity at its state.
inline Word thread_cycles(Automaton const& d, std::vector<CycleUse> const& cycles, std::uint64_t scale) {
  Word out;
  State cur = d.initial().front();
  for (auto const& c : cycles) {
    Word hop = shortest_between(d, cur, c.state);
    out.insert(out.end(), hop.begin(), hop.end());
    Word body = power(c.label, c.multiplicity * scale);
    out.insert(out.end(), body.begin(), body.end());
    cur = c.state;
  }
  Word tail = shortest_to_accepting(d, cur);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

// Decompose a nonnegative integer circulation into cycles. Walks start at
// the lowest accepting state carrying flow, else the lowest such state.
inline std::vector<CycleUse> decompose_circulation(Automaton const& d, std::vector<DfaEdge> const& edges,
                                                   std::vector<Integer> flow) {
  std::map<std::pair<State, Word>, std::uint64_t> merged;
  std::vector<std::pair<State, Word>> order;
  auto out_edge = [&](State q) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].from == q && flow[i] > 0) return i;
    }
    return std::nullopt;
  };
  while (true) {
    std::optional<State> start;
    for (int pass = 0; pass < 2 && !start; ++pass) {
      for (State q = 0; q < d.size(); ++q) {
        if ((pass == 1 || d.accepting(q)) && out_edge(q)) {
          start = q;
          break;
        }
      }
    }
    if (!start) break;
    std::vector<std::size_t> walk;
    std::map<State, std::size_t> pos{{*start, 0}};
    State cur = *start;
    while (true) {
      std::size_t e = *out_edge(cur);
      walk.push_back(e);
      cur = edges[e].to;
      if (auto it = pos.find(cur); it != pos.end()) {
        std::vector<std::size_t> cyc(walk.begin() + static_cast<std::ptrdiff_t>(it->second), walk.end());
        Integer m = flow[cyc.front()];
        for (std::size_t i : cyc) m = std::min(m, flow[i]);
        Word label;
        for (std::size_t i : cyc) {
          flow[i] -= m;
          label.push_back(edges[i].letter);
        }
        auto key = std::pair{cur, label};
        if (!merged.contains(key)) order.push_back(key);
        merged[key] += static_cast<std::uint64_t>(m);
        break;
      }
      pos.emplace(cur, walk.size());
    }
  }
  std::vector<CycleUse> out;
  for (auto const& key : order) out.push_back({key.first, key.second, merged[key]});
  return out;
}

// Zero-weight circulation on the internal edges of the given components.
inline std::optional<std::vector<CycleUse>> zero_circulation(Automaton const& d, GroupBackend const& g,
                                                             std::vector<DfaEdge> const& edges,
                                                             Components const& comps,
                                                             std::vector<char> const& chosen) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::size_t c = comps.comp[edges[i].from];
    if (chosen[c] && c == comps.comp[edges[i].to]) vars.push_back(i);
  }
  if (vars.empty()) return std::nullopt;
  std::size_t rank = g.rank();
  std::size_t rows = d.size() + rank + 1;
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(vars.size(), 0));
  std::vector<Rational> b(rows, 0);
  for (std::size_t j = 0; j < vars.size(); ++j) {
    DfaEdge const& e = edges[vars[j]];
    a[e.from][j] += 1;
    a[e.to][j] -= 1;
    for (std::size_t i = 0; i < rank; ++i) a[d.size() + i][j] = g.image(e.letter)[i];
    a[rows - 1][j] = 1;
  }
  b[rows - 1] = 1;
  auto x = feasible_point(a, b);
  if (!x) return std::nullopt;
  auto ints = scale_to_integers(*x);
  std::vector<Integer> flow(edges.size(), 0);
  for (std::size_t j = 0; j < vars.size(); ++j) flow[vars[j]] = ints[j];
  return decompose_circulation(d, edges, std::move(flow));
}

inline std::optional<FiberWitness> abelian_fiber(Automaton const& d, GroupBackend const& g, Status& status,
                                                 std::size_t chain_limit) {
  auto edges = dfa_edges(d);
  std::vector<std::vector<std::size_t>> adj(d.size());
  for (auto const& e : edges) adj[e.from].push_back(e.to);
  Components comps = strongly_connected(adj);
  // Earlier components in the chain have larger Tarjan numbers.
  auto finish = [&](std::vector<CycleUse> cycles) {
    std::stable_sort(cycles.begin(), cycles.end(), [&](CycleUse const& x, CycleUse const& y) {
      return comps.comp[x.state] > comps.comp[y.state];
    });
    FiberWitness w;
    w.cycles = std::move(cycles);
    w.first = thread_cycles(d, w.cycles, 1);
    w.second = thread_cycles(d, w.cycles, 2);
    return w;
  };
  // Single components first, ordered by their smallest state.
  std::vector<std::size_t> seen_comp;
  for (State q = 0; q < d.size(); ++q) {
    std::size_t c = comps.comp[q];
    if (std::find(seen_comp.begin(), seen_comp.end(), c) != seen_comp.end()) continue;
    seen_comp.push_back(c);
    std::vector<char> chosen(comps.count, 0);
    chosen[c] = 1;
    if (auto cyc = zero_circulation(d, g, edges, comps, chosen)) return finish(std::move(*cyc));
  }
  // Then maximal chains of the condensation starting at the initial component.
  std::vector<std::vector<std::size_t>> dag(comps.count);
  for (auto const& e : edges) {
    std::size_t a = comps.comp[e.from], b = comps.comp[e.to];
    if (a != b && std::find(dag[a].begin(), dag[a].end(), b) == dag[a].end()) dag[a].push_back(b);
  }
  for (auto& succ : dag) std::sort(succ.begin(), succ.end(), std::greater<>());
  std::size_t chains = 0;
  std::vector<char> chosen(comps.count, 0);
  std::optional<FiberWitness> found;
  auto dfs = [&](auto&& self, std::size_t c) -> void {
    if (found || status == Status::unknown) return;
    chosen[c] = 1;
    if (dag[c].empty()) {
      if (++chains > chain_limit) {
        status = Status::unknown;
      } else if (auto cyc = zero_circulation(d, g, edges, comps, chosen)) {
        found = finish(std::move(*cyc));
      }
    }
    for (std::size_t next : dag[c]) self(self, next);
    chosen[c] = 0;
  };
  dfs(dfs, comps.comp[d.initial().front()]);
  return found;
}

// Free groups: E(p, r) is the set of path labels p -> r that reduce to the
// identity, generated by  E(p,p) ∋ ε,  E(p,r) ⊇ a E(p',r') a^-1,
// E(p,r) ⊇ E(p,m) E(m,r).  The language has an infinite fibre exactly when
// this grammar has a derivation cycle that adds letters.
inline std::optional<FiberWitness> free_group_fiber(Automaton const& d, GroupBackend const& g) {
  Alphabet const& alpha = d.alphabet();
  std::size_t n = d.size();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  auto idx = [n](State p, State r) { return static_cast<std::size_t>(p) * n + r; };
  std::vector<std::optional<Word>> any(n * n), nonempty(n * n);
  for (State p = 0; p < n; ++p) any[idx(p, p)] = Word{};
  auto len = [&](std::optional<Word> const& w) { return w ? w->size() : kInf; };
  auto improve = [&](std::optional<Word>& slot, Word candidate) {
    if (!slot || candidate.size() < slot->size() || (candidate.size() == slot->size() && candidate < *slot)) {
      slot = std::move(candidate);
      return true;
    }
    return false;
  };
  // Letters that cancel: x followed by a letter with the inverse image.
  auto cancels = [&](Letter x, Letter y) { return g.multiply(g.image(x), g.image(y)) == g.identity(); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (State p = 0; p < n; ++p) {
      for (Letter x = 0; x < alpha.size(); ++x) {
        auto p2 = d.next(p, x);
        if (!p2) continue;
        for (State r2 = 0; r2 < n; ++r2) {
          auto const& inner = any[idx(*p2, r2)];
          if (!inner) continue;
          for (Letter y = 0; y < alpha.size(); ++y) {
            auto r = d.next(r2, y);
            if (!r || !cancels(x, y)) continue;
            Word w{x};
            w.insert(w.end(), inner->begin(), inner->end());
            w.push_back(y);
            changed |= improve(nonempty[idx(p, *r)], w);
            changed |= improve(any[idx(p, *r)], std::move(w));
          }
        }
      }
    }
    for (State p = 0; p < n; ++p) {
      for (State m = 0; m < n; ++m) {
        if (!any[idx(p, m)]) continue;
        for (State r = 0; r < n; ++r) {
          if (!any[idx(m, r)]) continue;
          if (len(any[idx(p, m)]) + len(any[idx(m, r)]) < len(any[idx(p, r)])) {
            changed |= improve(any[idx(p, r)], concat(*any[idx(p, m)], *any[idx(m, r)]));
          }
          if (nonempty[idx(p, m)]) changed |= improve(nonempty[idx(p, r)], concat(*nonempty[idx(p, m)], *any[idx(m, r)]));
          if (nonempty[idx(m, r)]) changed |= improve(nonempty[idx(p, r)], concat(*any[idx(p, m)], *nonempty[idx(m, r)]));
        }
      }
    }
  }

  auto build = [&](State p, State r, Word const& left, Word const& core, Word const& right) {
    FiberWitness w;
    if (!left.empty()) w.cycles.push_back({p, left, 1});
    if (!right.empty()) w.cycles.push_back({r, right, 1});
    w.pump = Pump{p, r, left, core, right};
    Word pre = shortest_between(d, d.initial().front(), p);
    Word suf = shortest_to_accepting(d, r);
    for (std::uint64_t i = 1; i <= 2; ++i) {
      Word word = concat(concat(concat(concat(pre, power(left, i)), core), power(right, i)), suf);
      (i == 1 ? w.first : w.second) = std::move(word);
    }
    return w;
  };

  // A closed walk with identity label: prefer accepting states, then index.
  for (int pass = 0; pass < 2; ++pass) {
    for (State q = 0; q < n; ++q) {
      if ((pass == 0) != d.accepting(q)) continue;
      if (auto const& c = nonempty[idx(q, q)]) return build(q, q, *c, {}, {});
    }
  }

  // General case: a cycle through a growing edge in the derivation graph.
  struct GEdge {
    std::size_t to;
    bool grows;
    Word left, right;
  };
  std::vector<std::vector<GEdge>> graph(n * n);
  for (State p = 0; p < n; ++p) {
    for (State r = 0; r < n; ++r) {
      std::size_t v = idx(p, r);
      if (!any[v]) continue;
      for (Letter x = 0; x < alpha.size(); ++x) {
        auto p2 = d.next(p, x);
        if (!p2) continue;
        for (State r2 = 0; r2 < n; ++r2) {
          if (!any[idx(*p2, r2)]) continue;
          for (Letter y = 0; y < alpha.size(); ++y) {
            if (d.next(r2, y) == std::optional<State>(r) && cancels(x, y)) {
              graph[v].push_back({idx(*p2, r2), true, {x}, {y}});
            }
          }
        }
      }
      for (State m = 0; m < n; ++m) {
        std::size_t left = idx(p, m), right = idx(m, r);
        if (!any[left] || !any[right]) continue;
        if (nonempty[right]) graph[v].push_back({left, true, {}, *nonempty[right]});
        else graph[v].push_back({left, false, {}, *any[right]});
        if (nonempty[left]) graph[v].push_back({right, true, *nonempty[left], {}});
        else graph[v].push_back({right, false, *any[left], {}});
      }
    }
  }
  std::vector<std::vector<std::size_t>> adj(n * n);
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (auto const& e : graph[v]) adj[v].push_back(e.to);
  }
  Components comps = strongly_connected(adj);
  for (std::size_t v = 0; v < graph.size(); ++v) {
    for (auto const& grow : graph[v]) {
      if (!grow.grows || comps.comp[grow.to] != comps.comp[v]) continue;
      // Path grow.to -> v inside the component, breadth first.
      std::vector<std::pair<std::size_t, std::size_t>> parent(n * n, {kInf, 0});
      std::deque<std::size_t> queue{grow.to};
      std::vector<char> seen(n * n, 0);
      seen[grow.to] = 1;
      while (!queue.empty() && !seen[v]) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < graph[u].size(); ++i) {
          std::size_t w = graph[u][i].to;
          if (seen[w] || comps.comp[w] != comps.comp[v]) continue;
          seen[w] = 1;
          parent[w] = {u, i};
          queue.push_back(w);
        }
      }
      std::vector<GEdge const*> chain{&grow};
      std::vector<GEdge const*> back;
      for (std::size_t u = v; u != grow.to; u = parent[u].first) back.push_back(&graph[parent[u].first][parent[u].second]);
      chain.insert(chain.end(), back.rbegin(), back.rend());
      Word left, right;
      for (auto const* e : chain) {
        left = concat(left, e->left);
        right = concat(e->right, right);
      }
      auto p = static_cast<State>(v / n);
      auto r = static_cast<State>(v % n);
      return build(p, r, left, *any[v], right);
    }
  }
  return std::nullopt;
}

// Finite groups: cycles of the product of the automaton with the Cayley
// action, restricted to accessible and co-accessible pairs.
inline std::optional<FiberWitness> table_fiber(Automaton const& d, GroupBackend const& g) {
  std::size_t order = g.order();
  std::size_t n = d.size();
  auto id = [order](State q, std::size_t e) { return static_cast<std::size_t>(q) * order + e; };
  std::vector<std::vector<std::size_t>> adj(n * order);
  std::vector<std::vector<Letter>> lab(n * order);
  for (State q = 0; q < n; ++q) {
    for (std::size_t e = 0; e < order; ++e) {
      for (Letter x = 0; x < d.alphabet().size(); ++x) {
        if (auto t = d.next(q, x)) {
          adj[id(q, e)].push_back(id(*t, static_cast<std::size_t>(g.multiply(GroupElement{static_cast<std::int64_t>(e)}, g.image(x))[0])));
          lab[id(q, e)].push_back(x);
        }
      }
    }
  }
  auto fwd = reachable_from(adj, {id(d.initial().front(), g.identity_index())});
  std::vector<std::size_t> acc;
  for (State q = 0; q < n; ++q) {
    if (!d.accepting(q)) continue;
    for (std::size_t e = 0; e < order; ++e) acc.push_back(id(q, e));
  }
  auto bwd = reachable_from(reversed(adj), acc);
  std::vector<std::vector<std::size_t>> live(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (!fwd[v] || !bwd[v]) continue;
    for (std::size_t w : adj[v]) {
      if (fwd[w] && bwd[w]) live[v].push_back(w);
    }
  }
  Components comps = strongly_connected(live);
  for (std::size_t v = 0; v < live.size(); ++v) {
    bool cyclic = false;
    for (std::size_t w : live[v]) cyclic = cyclic || comps.comp[w] == comps.comp[v];
    if (!cyclic) continue;
    // Shortest closed walk at v.
    std::vector<std::pair<std::size_t, Letter>> parent(adj.size(), {static_cast<std::size_t>(-1), 0});
    std::vector<char> seen(adj.size(), 0);
    std::deque<std::size_t> queue;
    std::optional<std::pair<std::size_t, Letter>> closing;
    for (std::size_t i = 0; i < adj[v].size() && !closing; ++i) {
      std::size_t w = adj[v][i];
      if (!fwd[w] || !bwd[w] || comps.comp[w] != comps.comp[v]) continue;
      if (w == v) {
        closing = std::pair{v, lab[v][i]};
        break;
      }
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = {v, lab[v][i]};
        queue.push_back(w);
      }
    }
    while (!queue.empty() && !closing) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < adj[u].size(); ++i) {
        std::size_t w = adj[u][i];
        if (w == v) {
          closing = std::pair{u, lab[u][i]};
          break;
        }
        if (seen[w] || !fwd[w] || !bwd[w] || comps.comp[w] != comps.comp[v]) continue;
        seen[w] = 1;
        parent[w] = {u, lab[u][i]};
        queue.push_back(w);
      }
    }
    Word label{closing->second};
    for (std::size_t u = closing->first; u != v; u = parent[u].first) label.push_back(parent[u].second);
    std::reverse(label.begin(), label.end());
    FiberWitness w;
    auto q = static_cast<State>(v / order);
    w.cycles.push_back({q, label, 1});
    // Reach the pair (q, e) itself, not just q, so the cycle returns there.
    std::vector<std::pair<std::size_t, Letter>> par(adj.size(), {static_cast<std::size_t>(-1), 0});
    std::vector<char> vis(adj.size(), 0);
    std::size_t root = id(d.initial().front(), g.identity_index());
    std::deque<std::size_t> bfs{root};
    vis[root] = 1;
    while (!bfs.empty() && !vis[v]) {
      std::size_t u = bfs.front();
      bfs.pop_front();
      for (std::size_t i = 0; i < adj[u].size(); ++i) {
        std::size_t x = adj[u][i];
        if (vis[x]) continue;
        vis[x] = 1;
        par[x] = {u, lab[u][i]};
        bfs.push_back(x);
      }
    }
    Word pre;
    for (std::size_t u = v; u != root; u = par[u].first) pre.push_back(par[u].second);
    std::reverse(pre.begin(), pre.end());
    Word suf = shortest_to_accepting(d, q);
    w.first = concat(concat(pre, label), suf);
    w.second = concat(concat(pre, power(label, 2)), suf);
    return w;
  }
  return std::nullopt;
}

}  // namespace detail

// Decide whether π restricted to the language is finite-to-one.
//   HOLDS  every group element has finitely many representatives in L;
//   FAILS  with a witness: cycles (or a pump) whose insertion keeps the
//          image fixed, and two distinct accepted words with equal image.
// UNKNOWN only when the free-abelian chain enumeration exceeds chain_limit.
inline Verdict check_finite_to_one(Structure const& s, std::size_t chain_limit = 100000) {
  Verdict v;
  v.condition = "finite-to-one";
  v.evidence = "exact";
  v.status = Status::holds;
  Automaton const& d = s.dfa();
  if (d.size() == 0) return v;
  std::optional<FiberWitness> w;
  switch (s.backend().kind()) {
    case GroupKind::free_abelian:
      w = detail::abelian_fiber(d, s.backend(), v.status, chain_limit);
      break;
    case GroupKind::free_group:
      w = detail::free_group_fiber(d, s.backend());
      break;
    case GroupKind::finite_table:
      w = detail::table_fiber(d, s.backend());
      break;
  }
  if (w) {
    v.status = Status::fails;
    v.fiber = std::move(w);
  }
  return v;
}

// Independent re-check of a fibre witness: both words accepted, distinct,
// same image.
inline bool verify_fiber_witness(Structure const& s, FiberWitness const& w) {
  return w.first != w.second && s.accepts(w.first) && s.accepts(w.second) &&
         s.backend().evaluate(w.first) == s.backend().evaluate(w.second);
}

}  // namespace biauto
