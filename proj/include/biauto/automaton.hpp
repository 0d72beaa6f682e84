#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "biauto/alphabet.hpp"
#include "biauto/error.hpp"

namespace biauto {

using State = std::uint32_t;

// Finite automaton over an Alphabet, deterministic or not.
//
// Successor lists are kept sorted and duplicate free, so two automata built by
// the same sequence of operations compare equal and print identically.
class Automaton {
 public:
  Automaton() = default;
  explicit Automaton(Alphabet alphabet, std::size_t states = 0) : alphabet_(std::move(alphabet)) {
    for (std::size_t i = 0; i < states; ++i) add_state();
  }

  Alphabet const& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return accepting_.size(); }

  State add_state(bool accepting = false) {
    accepting_.push_back(accepting ? 1 : 0);
    delta_.emplace_back(alphabet_.size());
    return static_cast<State>(accepting_.size() - 1);
  }

  void add_transition(State from, Letter a, State to) {
    check_state(from);
    check_state(to);
    if (a >= alphabet_.size()) throw AlphabetError("add_transition: letter outside the alphabet");
    auto& succ = delta_[from][a];
    auto it = std::lower_bound(succ.begin(), succ.end(), to);
    if (it == succ.end() || *it != to) succ.insert(it, to);
  }

  void add_initial(State q) {
    check_state(q);
    auto it = std::lower_bound(initial_.begin(), initial_.end(), q);
    if (it == initial_.end() || *it != q) initial_.insert(it, q);
  }

  void set_accepting(State q, bool value = true) {
    check_state(q);
    accepting_[q] = value ? 1 : 0;
  }

  std::vector<State> const& initial() const noexcept { return initial_; }
  bool accepting(State q) const { return accepting_.at(q) != 0; }
  std::vector<State> const& successors(State q, Letter a) const { return delta_.at(q).at(a); }

  std::optional<State> next(State q, Letter a) const {
    auto const& s = delta_[q][a];
    if (s.empty()) return std::nullopt;
    return s.front();
  }

  bool is_deterministic() const noexcept {
    if (initial_.size() > 1) return false;
    for (auto const& row : delta_) {
      for (auto const& succ : row) {
        if (succ.size() > 1) return false;
      }
    }
    return true;
  }

  bool is_complete() const noexcept {
    for (auto const& row : delta_) {
      for (auto const& succ : row) {
        if (succ.empty()) return false;
      }
    }
    return !initial_.empty();
  }

  std::size_t transition_count() const noexcept {
    std::size_t n = 0;
    for (auto const& row : delta_) {
      for (auto const& succ : row) n += succ.size();
    }
    return n;
  }

  friend bool operator==(Automaton const&, Automaton const&) = default;

 private:
  void check_state(State q) const {
    if (q >= size()) throw Error("automaton: state " + std::to_string(q) + " out of range");
  }

  Alphabet alphabet_;
  std::vector<State> initial_;
  std::vector<char> accepting_;
  std::vector<std::vector<std::vector<State>>> delta_;
};

namespace detail {

inline void require_same_alphabet(Automaton const& a, Automaton const& b) {
  if (!(a.alphabet() == b.alphabet())) throw MismatchError("automata over different alphabets");
}

inline std::vector<char> forward_reachable(Automaton const& a, std::vector<State> const& from) {
  std::vector<char> seen(a.size(), 0);
  std::deque<State> queue;
  for (State q : from) {
    if (!seen[q]) {
      seen[q] = 1;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      for (State r : a.successors(q, x)) {
        if (!seen[r]) {
          seen[r] = 1;
          queue.push_back(r);
        }
      }
    }
  }
  return seen;
}

inline std::vector<char> co_reachable(Automaton const& a) {
  std::vector<std::vector<State>> rev(a.size());
  for (State q = 0; q < a.size(); ++q) {
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      for (State r : a.successors(q, x)) rev[r].push_back(q);
    }
  }
  std::vector<char> seen(a.size(), 0);
  std::deque<State> queue;
  for (State q = 0; q < a.size(); ++q) {
    if (a.accepting(q)) {
      seen[q] = 1;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (State p : rev[q]) {
      if (!seen[p]) {
        seen[p] = 1;
        queue.push_back(p);
      }
    }
  }
  return seen;
}

// Restrict to the states with keep[q] set, preserving relative order.
inline Automaton restrict_states(Automaton const& a, std::vector<char> const& keep) {
  std::vector<State> index(a.size(), 0);
  Automaton out(a.alphabet());
  for (State q = 0; q < a.size(); ++q) {
    if (keep[q]) index[q] = out.add_state(a.accepting(q));
  }
  for (State q : a.initial()) {
    if (keep[q]) out.add_initial(index[q]);
  }
  for (State q = 0; q < a.size(); ++q) {
    if (!keep[q]) continue;
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      for (State r : a.successors(q, x)) {
        if (keep[r]) out.add_transition(index[q], x, index[r]);
      }
    }
  }
  return out;
}

}  // namespace detail

inline bool member(Automaton const& a, Word const& w) {
  std::vector<char> current(a.size(), 0);
  for (State q : a.initial()) current[q] = 1;
  for (Letter x : w) {
    if (x >= a.alphabet().size()) throw AlphabetError("member: letter outside the alphabet");
    std::vector<char> next(a.size(), 0);
    bool any = false;
    for (State q = 0; q < a.size(); ++q) {
      if (!current[q]) continue;
      for (State r : a.successors(q, x)) {
        next[r] = 1;
        any = true;
      }
    }
    if (!any) return false;
    current = std::move(next);
  }
  for (State q = 0; q < a.size(); ++q) {
    if (current[q] && a.accepting(q)) return true;
  }
  return false;
}

// Keep only states that are both accessible and co-accessible.
inline Automaton trim(Automaton const& a) {
  auto fwd = detail::forward_reachable(a, a.initial());
  auto bwd = detail::co_reachable(a);
  std::vector<char> keep(a.size());
  for (State q = 0; q < a.size(); ++q) keep[q] = fwd[q] && bwd[q];
  return detail::restrict_states(a, keep);
}

inline bool is_trim(Automaton const& a) { return trim(a).size() == a.size(); }

inline bool is_empty(Automaton const& a) { return trim(a).size() == 0; }

// Subset construction. States are numbered in breadth-first discovery order,
// letters explored in alphabet order; the empty subset is never created.
inline Automaton determinize(Automaton const& a) {
  Automaton out(a.alphabet());
  if (a.initial().empty()) return out;
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](std::vector<State> s) -> State {
    auto [it, fresh] = index.emplace(s, static_cast<State>(subsets.size()));
    if (fresh) {
      bool acc = std::any_of(s.begin(), s.end(), [&](State q) { return a.accepting(q); });
      out.add_state(acc);
      subsets.push_back(std::move(s));
    }
    return it->second;
  };
  out.add_initial(intern(a.initial()));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      std::vector<State> target;
      for (State q : subsets[i]) {
        auto const& succ = a.successors(q, x);
        target.insert(target.end(), succ.begin(), succ.end());
      }
      if (target.empty()) continue;
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      State t = intern(std::move(target));
      out.add_transition(static_cast<State>(i), x, t);
    }
  }
  return out;
}

// Deterministic and complete: a non-accepting sink absorbs missing moves.
inline Automaton complete(Automaton const& a) {
  Automaton d = a.is_deterministic() && !a.initial().empty() ? a : determinize(a);
  if (d.is_complete()) return d;
  State sink = d.add_state(false);
  if (d.initial().empty()) d.add_initial(sink);
  for (State q = 0; q < d.size(); ++q) {
    for (Letter x = 0; x < d.alphabet().size(); ++x) {
      if (d.successors(q, x).empty()) d.add_transition(q, x, sink);
    }
  }
  return d;
}

inline Automaton complement(Automaton const& a) {
  Automaton d = complete(a);
  for (State q = 0; q < d.size(); ++q) d.set_accepting(q, !d.accepting(q));
  return d;
}

// Intersection of the two languages (accessible part of the product).
inline Automaton product(Automaton const& a, Automaton const& b) {
  detail::require_same_alphabet(a, b);
  Automaton out(a.alphabet());
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State p, State q) {
    auto [it, fresh] = index.emplace(std::pair{p, q}, static_cast<State>(pairs.size()));
    if (fresh) {
      out.add_state(a.accepting(p) && b.accepting(q));
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  for (State p : a.initial()) {
    for (State q : b.initial()) out.add_initial(intern(p, q));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      for (State p2 : a.successors(p, x)) {
        for (State q2 : b.successors(q, x)) {
          out.add_transition(static_cast<State>(i), x, intern(p2, q2));
        }
      }
    }
  }
  return out;
}

// Language equality via emptiness of the symmetric difference.
inline bool equivalent(Automaton const& a, Automaton const& b) {
  detail::require_same_alphabet(a, b);
  Automaton da = complete(a);
  Automaton db = complete(b);
  std::map<std::pair<State, State>, char> seen;
  std::deque<std::pair<State, State>> queue;
  std::pair<State, State> start{da.initial().front(), db.initial().front()};
  seen[start] = 1;
  queue.push_back(start);
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    if (da.accepting(p) != db.accepting(q)) return false;
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      std::pair<State, State> next{*da.next(p, x), *db.next(q, x)};
      if (seen.emplace(next, 1).second) queue.push_back(next);
    }
  }
  return true;
}

// Minimal trimmed DFA (Moore refinement), states in breadth-first order.
inline Automaton minimize(Automaton const& a) {
  Automaton d = complete(a);
  std::size_t n = d.size();
  std::size_t k = d.alphabet().size();
  std::vector<std::size_t> cls(n);
  for (State q = 0; q < n; ++q) cls[q] = d.accepting(q) ? 1 : 0;
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_index;
    std::vector<std::size_t> next(n);
    for (State q = 0; q < n; ++q) {
      std::vector<std::size_t> sig{cls[q]};
      for (Letter x = 0; x < k; ++x) sig.push_back(cls[*d.next(q, x)]);
      next[q] = sig_index.emplace(std::move(sig), sig_index.size()).first->second;
    }
    bool stable = sig_index.size() == classes;
    classes = sig_index.size();
    cls = std::move(next);
    if (stable) break;
  }
  // Renumber classes breadth-first from the initial class.
  std::vector<State> order(classes, static_cast<State>(-1));
  std::vector<State> rep;
  Automaton out(d.alphabet());
  std::deque<State> queue;
  State q0 = d.initial().front();
  order[cls[q0]] = out.add_state(d.accepting(q0));
  rep.push_back(q0);
  out.add_initial(0);
  queue.push_back(q0);
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < k; ++x) {
      State r = *d.next(q, x);
      if (order[cls[r]] == static_cast<State>(-1)) {
        order[cls[r]] = out.add_state(d.accepting(r));
        rep.push_back(r);
        queue.push_back(r);
      }
      out.add_transition(order[cls[q]], x, order[cls[r]]);
    }
  }
  return trim(out);
}

// The formal inverse language { reverse_invert_word(w) : w in L(a) }.
inline Automaton reverse_invert(Automaton const& a) {
  Automaton out(a.alphabet(), a.size());
  Alphabet const& alpha = a.alphabet();
  for (State q = 0; q < a.size(); ++q) {
    if (a.accepting(q)) out.add_initial(q);
    for (Letter x = 0; x < alpha.size(); ++x) {
      for (State r : a.successors(q, x)) out.add_transition(r, alpha.inverse(x), q);
    }
  }
  for (State q : a.initial()) out.set_accepting(q);
  return out;
}

// Labels of the nonempty closed walks at q. `a` must be trimmed.
inline Automaton loop_language(Automaton const& a, State q) {
  if (q >= a.size() || !is_trim(a)) {
    throw Error("loop_language: state " + std::to_string(q) + " is not in the trimmed automaton");
  }
  Automaton out(a.alphabet(), a.size());
  State start = out.add_state(false);
  out.add_initial(start);
  out.set_accepting(q);
  for (State p = 0; p < a.size(); ++p) {
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      for (State r : a.successors(p, x)) {
        out.add_transition(p, x, r);
        if (p == q) out.add_transition(start, x, r);
      }
    }
  }
  return trim(out);
}

// All accepted words of length <= max_len, ordered by length and then
// lexicographically by alphabet declaration order.
inline std::vector<Word> enumerate_words(Automaton const& a, std::size_t max_len) {
  std::vector<Word> out;
  Automaton d = trim(a.is_deterministic() ? a : determinize(a));
  if (d.size() == 0) return out;
  std::size_t k = d.alphabet().size();
  // reach[r][q]: an accepting state is reachable from q in exactly r steps.
  std::vector<std::vector<char>> reach(max_len + 1, std::vector<char>(d.size(), 0));
  for (State q = 0; q < d.size(); ++q) reach[0][q] = d.accepting(q);
  for (std::size_t r = 1; r <= max_len; ++r) {
    for (State q = 0; q < d.size(); ++q) {
      for (Letter x = 0; x < k && !reach[r][q]; ++x) {
        if (auto t = d.next(q, x); t && reach[r - 1][*t]) reach[r][q] = 1;
      }
    }
  }
  State q0 = d.initial().front();
  Word w;
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (!reach[len][q0]) continue;
    auto dfs = [&](auto&& self, State q, std::size_t remaining) -> void {
      if (remaining == 0) {
        out.push_back(w);
        return;
      }
      for (Letter x = 0; x < k; ++x) {
        auto t = d.next(q, x);
        if (!t || !reach[remaining - 1][*t]) continue;
        w.push_back(x);
        self(self, *t, remaining - 1);
        w.pop_back();
      }
    };
    dfs(dfs, q0, len);
  }
  return out;
}

// Shortest word (length-lex least) leading from some state in `from` to a
// state satisfying `goal`; nullopt when no such state is reachable.
template <typename Goal>
std::optional<std::pair<Word, State>> shortest_word(Automaton const& a, std::vector<State> const& from,
                                                    Goal goal) {
  std::vector<std::pair<State, Letter>> parent(a.size(), {static_cast<State>(-1), 0});
  std::vector<char> seen(a.size(), 0);
  std::deque<State> queue;
  for (State q : from) {
    if (!seen[q]) {
      seen[q] = 1;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (goal(q)) {
      Word w;
      for (State p = q; parent[p].first != static_cast<State>(-1); p = parent[p].first) {
        w.push_back(parent[p].second);
      }
      std::reverse(w.begin(), w.end());
      return std::pair{w, q};
    }
    for (Letter x = 0; x < a.alphabet().size(); ++x) {
      for (State r : a.successors(q, x)) {
        if (!seen[r]) {
          seen[r] = 1;
          parent[r] = {q, x};
          queue.push_back(r);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace biauto
