#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "biauto/checkers.hpp"
#include "biauto/detail/graph.hpp"
#include "biauto/detail/rational_lp.hpp"
#include "biauto/paths.hpp"
#include "biauto/structure.hpp"
#include "biauto/verdict.hpp"

namespace biauto {

enum class Sidedness { right, two_sided };

namespace detail {

// Synchronous reading of a padded pair (w1 with its slack letters, w2) by
// the minimal DFA, tracking the word difference g = π(u)^-1 π(v) of the
// prefixes read so far. Left track codes: DFA states, then FIN, then START
// (two-sided only: before the optional leading letter). Right track: DFA
// states, then FIN.
class DifferenceMachine {
 public:
  static constexpr int kPad = -1;

  struct Move {
    std::uint32_t to;
    int letter;  // kPad for a padding step
  };

  DifferenceMachine(Structure const& s, Sidedness sided)
      : s_(s), dfa_(s.dfa()), n_(static_cast<std::uint32_t>(dfa_.size())), two_sided_(sided == Sidedness::two_sided) {
    left_.resize(n_ + 2);
    right_.resize(n_ + 1);
    std::uint32_t letters = static_cast<std::uint32_t>(s.alphabet().size());
    for (std::uint32_t q = 0; q < n_; ++q) {
      for (Letter x = 0; x < letters; ++x) {
        if (auto t = dfa_.next(q, x)) {
          left_[q].push_back({*t, static_cast<int>(x)});
          right_[q].push_back({*t, static_cast<int>(x)});
        }
      }
      if (dfa_.accepting(q)) {
        // Slack letter after w1, then padding.
        for (Letter x = 0; x < letters; ++x) left_[q].push_back({fin(), static_cast<int>(x)});
        left_[q].push_back({fin(), kPad});
        right_[q].push_back({fin(), kPad});
      }
    }
    left_[fin()].push_back({fin(), kPad});
    right_[fin()].push_back({fin(), kPad});
    if (n_ > 0) {
      for (Letter x = 0; x < letters; ++x) left_[start()].push_back({dfa_.initial().front(), static_cast<int>(x)});
    }
  }

  std::uint32_t fin() const noexcept { return n_; }
  std::uint32_t start() const noexcept { return n_ + 1; }
  std::uint32_t left_codes() const noexcept { return n_ + 2; }
  std::uint32_t right_codes() const noexcept { return n_ + 1; }
  bool empty_language() const noexcept { return n_ == 0; }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> initial_pairs() const {
    std::uint32_t q0 = dfa_.initial().front();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out{{q0, q0}};
    if (two_sided_) out.emplace_back(start(), q0);
    return out;
  }

  std::vector<Move> const& left_moves(std::uint32_t l) const { return left_[l]; }
  std::vector<Move> const& right_moves(std::uint32_t r) const { return right_[r]; }

  bool left_done(std::uint32_t l) const { return l == fin() || (l < n_ && dfa_.accepting(l)); }
  bool right_done(std::uint32_t r) const { return r == fin() || dfa_.accepting(r); }
  bool idle(std::uint32_t l, std::uint32_t r) const { return l == fin() && r == fin(); }

  GroupElement step(GroupElement const& g, int left, int right) const {
    GroupBackend const& b = s_.backend();
    GroupElement out = g;
    if (left != kPad) out = b.multiply(b.inverse(b.image(static_cast<Letter>(left))), out);
    if (right != kPad) out = b.multiply(out, b.image(static_cast<Letter>(right)));
    return out;
  }

  std::string left_name(std::uint32_t l) const {
    if (l == fin()) return "FIN";
    if (l == start()) return "START";
    return std::to_string(l);
  }
  std::string right_name(std::uint32_t r) const { return r == fin() ? "FIN" : std::to_string(r); }

 private:
  Structure const& s_;
  Automaton const& dfa_;
  std::uint32_t n_;
  bool two_sided_;
  std::vector<std::vector<Move>> left_;
  std::vector<std::vector<Move>> right_;
};

// Over-approximation of "a run from (l, r, g) can still end with g = e",
// using only the track-pair graph. For free abelian groups the displacement
// available from the remaining strongly connected components is tested by an
// exact rational LP; for other groups any co-reachable pair counts as possible.
class EscapeOracle {
 public:
  EscapeOracle(DifferenceMachine const& m, GroupBackend const& backend) : m_(m), backend_(backend) {
    std::uint32_t rc = m.right_codes();
    nodes_ = static_cast<std::size_t>(m.left_codes()) * rc;
    adj_.resize(nodes_);
    edges_.resize(nodes_);
    std::vector<std::size_t> terminal;
    for (std::uint32_t l = 0; l < m.left_codes(); ++l) {
      for (std::uint32_t r = 0; r < rc; ++r) {
        std::size_t v = id(l, r);
        if (m.left_done(l) && m.right_done(r)) terminal.push_back(v);
        if (m.idle(l, r)) continue;
        for (auto const& lm : m.left_moves(l)) {
          for (auto const& rm : m.right_moves(r)) {
            std::size_t w = id(lm.to, rm.to);
            adj_[v].push_back(w);
            edges_[v].push_back({w, delta(lm.letter, rm.letter)});
          }
        }
      }
    }
    co_reach_ = reachable_from(reversed(adj_), terminal);
    comps_ = strongly_connected(adj_);
  }

  bool possibly_accepting(std::uint32_t l, std::uint32_t r, GroupElement const& g) {
    std::size_t v = id(l, r);
    if (!co_reach_[v]) return false;
    if (backend_.kind() != GroupKind::free_abelian) return true;
    Summary const& sum = summary(v);
    // Unbounded use of edges inside components, at most (components - 1)
    // edges between them.
    std::size_t rank = backend_.rank();
    std::size_t vars = sum.inner.size() + sum.between.size() + 1;
    std::vector<std::vector<Rational>> a(rank + 1, std::vector<Rational>(vars, 0));
    std::vector<Rational> b(rank + 1, 0);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = 0; j < sum.inner.size(); ++j) a[i][j] = sum.inner[j][i];
      for (std::size_t j = 0; j < sum.between.size(); ++j) a[i][sum.inner.size() + j] = sum.between[j][i];
      b[i] = -g[i];
    }
    for (std::size_t j = 0; j < sum.between.size(); ++j) a[rank][sum.inner.size() + j] = 1;
    a[rank][vars - 1] = 1;
    b[rank] = static_cast<std::int64_t>(sum.components) - 1;
    return feasible_point(a, b).has_value();
  }

 private:
  using Delta = std::vector<std::int64_t>;
  struct Edge {
    std::size_t to;
    Delta delta;
  };
  struct Summary {
    std::vector<Delta> inner;
    std::vector<Delta> between;
    std::size_t components = 0;
  };

  std::size_t id(std::uint32_t l, std::uint32_t r) const { return static_cast<std::size_t>(l) * m_.right_codes() + r; }

  Delta delta(int left, int right) const {
    Delta d(backend_.kind() == GroupKind::free_abelian ? backend_.rank() : 0, 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (right != DifferenceMachine::kPad) d[i] += backend_.image(static_cast<Letter>(right))[i];
      if (left != DifferenceMachine::kPad) d[i] -= backend_.image(static_cast<Letter>(left))[i];
    }
    return d;
  }

  Summary const& summary(std::size_t v) {
    if (auto it = cache_.find(v); it != cache_.end()) return it->second;
    auto from = reachable_from(adj_, {v});
    Summary sum;
    std::set<Delta> inner, between;
    std::set<std::size_t> comps;
    for (std::size_t u = 0; u < nodes_; ++u) {
      if (!from[u] || !co_reach_[u]) continue;
      comps.insert(comps_.comp[u]);
      for (auto const& e : edges_[u]) {
        if (!co_reach_[e.to]) continue;
        if (comps_.comp[e.to] == comps_.comp[u]) {
          inner.insert(e.delta);
        } else {
          between.insert(e.delta);
        }
      }
    }
    sum.inner.assign(inner.begin(), inner.end());
    sum.between.assign(between.begin(), between.end());
    sum.components = comps.size();
    return cache_.emplace(v, std::move(sum)).first->second;
  }

  DifferenceMachine const& m_;
  GroupBackend const& backend_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<char> co_reach_;
  Components comps_;
  std::unordered_map<std::size_t, Summary> cache_;
};

}  // namespace detail

// Attempt an exact decision of the fellow-traveller condition through the
// word-difference automaton restricted to the ball of radius cutoff.
//
//   FAILS    an accepted padded pair passes a difference of norm > k while
//            staying inside the ball; the shortest one is returned.
//   HOLDS    no such pair, and no configuration leaving the ball can still
//            be accepted (over-approximation, see EscapeOracle).
//   UNKNOWN  otherwise; the unresolved configurations are listed.
//
// For finite groups the ball is widened to the whole group, which makes the
// answer exact.
inline Verdict certify_ft(Structure const& s, std::int64_t k, std::size_t cutoff, Sidedness sided,
                          std::size_t boundary_limit = 16) {
  if (k < 0 || cutoff < static_cast<std::size_t>(k)) {
    throw ValidationError("certify_ft: cutoff must be at least k");
  }
  GroupBackend const& backend = s.backend();
  Verdict v;
  v.condition = to_string(sided == Sidedness::right ? Condition::right_ft : Condition::two_sided_ft);
  v.k = k;
  v.evidence = "certified";
  std::size_t radius = backend.kind() == GroupKind::finite_table ? std::max(cutoff, backend.order()) : cutoff;
  v.bound_used = static_cast<std::int64_t>(radius);

  detail::DifferenceMachine m(s, sided);
  Certificate cert;
  cert.cutoff = radius;
  if (m.empty_language()) {
    v.status = Status::holds;
    v.certificate = cert;
    return v;
  }

  Ball ball = backend.ball(radius);
  ElementMap<std::uint32_t> gid;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) gid.emplace(ball.elements[i], static_cast<std::uint32_t>(i));
  std::vector<char> violating(ball.elements.size());
  for (std::size_t i = 0; i < ball.elements.size(); ++i) violating[i] = backend.norm(ball.elements[i]) > k;
  std::uint32_t e = gid.at(backend.identity());

  std::uint64_t rc = m.right_codes(), gc = ball.elements.size();
  auto pack = [&](std::uint32_t l, std::uint32_t r, std::uint32_t g) { return (static_cast<std::uint64_t>(l) * rc + r) * gc + g; };
  auto terminal = [&](std::uint32_t l, std::uint32_t r, std::uint32_t g) { return g == e && m.left_done(l) && m.right_done(r); };

  // Pass 1: shortest accepted pair that passes a violating difference.
  struct Node {
    std::uint64_t key;
    bool flag;
    std::size_t parent;
    int left, right;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::uint64_t, std::size_t> seen;  // key*2+flag -> node
  std::deque<std::size_t> queue;
  std::optional<std::size_t> hit;
  for (auto [l, r] : m.initial_pairs()) {
    std::uint64_t key = pack(l, r, e);
    if (seen.emplace(key * 2, nodes.size()).second) {
      nodes.push_back({key, false, static_cast<std::size_t>(-1), 0, 0});
      queue.push_back(nodes.size() - 1);
    }
  }
  while (!queue.empty() && !hit) {
    std::size_t cur = queue.front();
    queue.pop_front();
    std::uint64_t key = nodes[cur].key;
    auto g = static_cast<std::uint32_t>(key % gc);
    auto r = static_cast<std::uint32_t>((key / gc) % rc);
    auto l = static_cast<std::uint32_t>(key / gc / rc);
    if (m.idle(l, r)) continue;
    for (auto const& lm : m.left_moves(l)) {
      for (auto const& rm : m.right_moves(r)) {
        GroupElement next = m.step(ball.elements[g], lm.letter, rm.letter);
        auto it = gid.find(next);
        if (it == gid.end()) continue;
        bool flag = nodes[cur].flag || violating[it->second];
        std::uint64_t nk = pack(lm.to, rm.to, it->second);
        if (!seen.emplace(nk * 2 + flag, nodes.size()).second) continue;
        nodes.push_back({nk, flag, cur, lm.letter, rm.letter});
        if (flag && terminal(lm.to, rm.to, it->second)) {
          hit = nodes.size() - 1;
          break;
        }
        queue.push_back(nodes.size() - 1);
      }
      if (hit) break;
    }
  }
  if (hit) {
    std::vector<std::size_t> trail;
    for (std::size_t c = *hit; c != static_cast<std::size_t>(-1); c = nodes[c].parent) trail.push_back(c);
    std::reverse(trail.begin(), trail.end());
    auto left_code = [&](std::size_t c) { return static_cast<std::uint32_t>(nodes[c].key / gc / rc); };
    FtWitness w;
    w.two_sided = sided == Sidedness::two_sided;
    Word& trailing = w.two_sided ? w.b : w.a;
    for (std::size_t i = 1; i < trail.size(); ++i) {
      Node const& step = nodes[trail[i]];
      if (step.left != detail::DifferenceMachine::kPad) {
        auto x = static_cast<Letter>(step.left);
        if (left_code(trail[i - 1]) == m.start()) {
          w.a = {x};
        } else if (left_code(trail[i]) == m.fin()) {
          trailing = {x};
        } else {
          w.w1.push_back(x);
        }
      }
      if (step.right != detail::DifferenceMachine::kPad) w.w2.push_back(static_cast<Letter>(step.right));
    }
    HatPath p = path_of(backend, w.compared_word());
    HatPath q = path_of(backend, w.w2);
    DistanceAt d = synchronous_distance_at(p, q);
    w.time = d.time;
    w.distance = d.distance;
    v.status = Status::fails;
    v.witness = std::move(w);
    cert.explored = nodes.size();
    v.certificate = std::move(cert);
    return v;
  }

  // Pass 2: reachable configurations without the flag, co-reachability to
  // acceptance, and the moves that leave the ball.
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<std::uint64_t> configs;
  std::vector<std::vector<std::size_t>> adj;
  struct Escape {
    std::uint32_t l, r;
    GroupElement g;
  };
  std::vector<Escape> escapes;
  std::set<std::tuple<std::uint32_t, std::uint32_t, GroupElement>> escape_seen;
  auto intern = [&](std::uint64_t key) {
    auto [it, fresh] = index.emplace(key, configs.size());
    if (fresh) {
      configs.push_back(key);
      adj.emplace_back();
    }
    return it->second;
  };
  for (auto [l, r] : m.initial_pairs()) intern(pack(l, r, e));
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::uint64_t key = configs[c];
    auto g = static_cast<std::uint32_t>(key % gc);
    auto r = static_cast<std::uint32_t>((key / gc) % rc);
    auto l = static_cast<std::uint32_t>(key / gc / rc);
    if (m.idle(l, r)) continue;
    for (auto const& lm : m.left_moves(l)) {
      for (auto const& rm : m.right_moves(r)) {
        GroupElement next = m.step(ball.elements[g], lm.letter, rm.letter);
        auto it = gid.find(next);
        if (it == gid.end()) {
          if (escape_seen.emplace(lm.to, rm.to, next).second) escapes.push_back({lm.to, rm.to, std::move(next)});
          continue;
        }
        std::size_t t = intern(pack(lm.to, rm.to, it->second));
        adj[c].push_back(t);
      }
    }
  }
  std::vector<std::size_t> accepting;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    std::uint64_t key = configs[c];
    if (terminal(static_cast<std::uint32_t>(key / gc / rc), static_cast<std::uint32_t>((key / gc) % rc),
                 static_cast<std::uint32_t>(key % gc))) {
      accepting.push_back(c);
    }
  }
  auto co = detail::reachable_from(detail::reversed(adj), accepting);
  std::set<std::string> diffs;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    if (co[c]) diffs.insert(backend.serialize(ball.elements[configs[c] % gc]));
  }
  cert.explored = configs.size();
  cert.differences.assign(diffs.begin(), diffs.end());

  detail::EscapeOracle oracle(m, backend);
  for (auto const& esc : escapes) {
    if (!oracle.possibly_accepting(esc.l, esc.r, esc.g)) continue;
    cert.boundary.push_back("(" + m.left_name(esc.l) + "," + m.right_name(esc.r) + "," + backend.serialize(esc.g) + ")");
    if (cert.boundary.size() >= boundary_limit) break;
  }
  v.status = cert.boundary.empty() ? Status::holds : Status::unknown;
  v.certificate = std::move(cert);
  return v;
}

}  // namespace biauto
