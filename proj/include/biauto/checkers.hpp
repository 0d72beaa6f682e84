#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "biauto/automaton.hpp"
#include "biauto/group.hpp"
#include "biauto/paths.hpp"
#include "biauto/structure.hpp"
#include "biauto/verdict.hpp"

namespace biauto {

enum class Condition { right_ft, two_sided_ft, inverse_right_ft };

inline char const* to_string(Condition c) {
  switch (c) {
    case Condition::right_ft:
      return "right-ft";
    case Condition::two_sided_ft:
      return "two-sided-ft";
    case Condition::inverse_right_ft:
      return "inverse-right-ft";
  }
  return "?";
}

// Optional progress sink: (stage, count). Called in a deterministic order.
using Progress = std::function<void(std::string const&, std::size_t)>;

struct LengthBound {
  std::int64_t N = 0;
  std::size_t n_states = 0;
  std::size_t ball_size = 0;
};

struct Theorem5Constants {
  std::int64_t biauto_reverse_bound = 0;
  std::int64_t two_sided_bound = 0;
};

namespace detail {

// Accepted words up to a length, their paths, and the fibres of π.
struct Enumeration {
  std::vector<HatPath> paths;
  ElementMap<std::vector<std::size_t>> fibers;
};

inline Enumeration enumerate_paths(Structure const& s, std::size_t max_len) {
  Enumeration e;
  for (auto& w : enumerate_words(s.dfa(), max_len)) {
    e.paths.emplace_back(s.backend(), std::move(w));
    e.fibers[e.paths.back().endpoint()].push_back(e.paths.size() - 1);
  }
  return e;
}

// Order of preference among violations: shorter comparisons first, then
// enumeration order.
using WitnessKey = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>;

inline Verdict bounded_ft(Structure const& s, bool two_sided, std::int64_t k, std::size_t max_len,
                          std::string condition, Progress const& progress) {
  GroupBackend const& g = s.backend();
  std::size_t letters = s.alphabet().size();
  Enumeration e = enumerate_paths(s, max_len);
  if (progress) progress("enumerated", e.paths.size());

  Verdict v;
  v.condition = std::move(condition);
  v.k = k;
  v.bound_used = static_cast<std::int64_t>(max_len);
  v.evidence = "bounded";
  std::optional<WitnessKey> best;
  std::int64_t observed = 0;
  std::size_t checked = 0;
  std::vector<GroupElement> points;

  std::size_t left_options = two_sided ? letters + 1 : 1;
  for (std::size_t i = 0; i < e.paths.size(); ++i) {
    HatPath const& p1 = e.paths[i];
    for (std::size_t ai = 0; ai < left_options; ++ai) {
      GroupElement lead = ai == 0 ? g.identity() : g.image(static_cast<Letter>(ai - 1));
      for (std::size_t bi = 0; bi <= letters; ++bi) {
        GroupElement end = g.multiply(lead, p1.endpoint());
        if (bi > 0) end = g.multiply(end, g.image(static_cast<Letter>(bi - 1)));
        auto fiber = e.fibers.find(end);
        if (fiber == e.fibers.end()) continue;
        std::size_t len1 = p1.length() + (ai > 0) + (bi > 0);
        bool built = false;
        for (std::size_t j : fiber->second) {
          HatPath const& p2 = e.paths[j];
          WitnessKey key{std::max(len1, p2.length()), len1 + p2.length(), i, ai, bi, j};
          if (best && key >= *best) continue;
          if (!built) {
            points.clear();
            if (ai > 0) points.push_back(g.identity());
            for (auto const& x : p1.points()) points.push_back(ai > 0 ? g.multiply(lead, x) : x);
            if (bi > 0) points.push_back(g.multiply(points.back(), g.image(static_cast<Letter>(bi - 1))));
            built = true;
          }
          ++checked;
          DistanceAt d = synchronous_distance(g, points, p2.points());
          if (d.distance > k) {
            best = key;
            FtWitness w;
            w.two_sided = two_sided;
            w.w1 = p1.word();
            w.w2 = p2.word();
            if (two_sided) {
              if (ai > 0) w.a = {static_cast<Letter>(ai - 1)};
              if (bi > 0) w.b = {static_cast<Letter>(bi - 1)};
            } else if (bi > 0) {
              w.a = {static_cast<Letter>(bi - 1)};
            }
            w.time = d.time;
            w.distance = d.distance;
            v.witness = std::move(w);
          } else {
            observed = std::max(observed, d.distance);
          }
        }
      }
    }
  }
  if (progress) progress("pairs", checked);
  v.checked = checked;
  if (v.witness) {
    v.status = Status::fails;
  } else {
    v.status = Status::holds;
    v.observed_max = observed;
  }
  return v;
}

}  // namespace detail

// Right fellow travelling on words of length <= max_len: for w1, w2 in L and
// a in A ∪ {ε} with π(w1 a) = π(w2), the paths of w1 a and w2 stay within k.
inline Verdict check_right_ft_bounded(Structure const& s, std::int64_t k, std::size_t max_len,
                                      Progress const& progress = {}) {
  return detail::bounded_ft(s, false, k, max_len, to_string(Condition::right_ft), progress);
}

// Two-sided condition: π(a w1 b) = π(w2) with a, b in A ∪ {ε}.
inline Verdict check_two_sided_ft_bounded(Structure const& s, std::int64_t k, std::size_t max_len,
                                          Progress const& progress = {}) {
  return detail::bounded_ft(s, true, k, max_len, to_string(Condition::two_sided_ft), progress);
}

inline Verdict search_witness(Structure const& s, Condition condition, std::int64_t k, std::size_t max_len,
                              Progress const& progress = {}) {
  switch (condition) {
    case Condition::right_ft:
      return check_right_ft_bounded(s, k, max_len, progress);
    case Condition::two_sided_ft:
      return check_two_sided_ft_bounded(s, k, max_len, progress);
    case Condition::inverse_right_ft:
      return detail::bounded_ft(s.inverse(), false, k, max_len, to_string(condition), progress);
  }
  return {};
}

// Right fellow travelling for L and for its formal inverse.
inline std::pair<Verdict, Verdict> check_biautomatic_bounded(Structure const& s, std::int64_t k,
                                                             std::size_t max_len,
                                                             Progress const& progress = {}) {
  return {check_right_ft_bounded(s, k, max_len, progress),
          search_witness(s, Condition::inverse_right_ft, k, max_len, progress)};
}

// Re-check a witness from its words alone: membership, endpoint condition and
// a violating distance, recomputed by direct path simulation.
inline bool verify_witness(Structure const& s, FtWitness const& w, std::int64_t k) {
  if (!s.accepts(w.w1) || !s.accepts(w.w2)) return false;
  if (w.a.size() > 1 || w.b.size() > 1 || (!w.two_sided && !w.b.empty())) return false;
  HatPath p = path_of(s.backend(), w.compared_word());
  HatPath q = path_of(s.backend(), w.w2);
  if (p.endpoint() != q.endpoint()) return false;
  DistanceAt d = synchronous_distance_at(p, q);
  return d.distance > k && d.distance == w.distance && d.time == w.time;
}

// n times the size of the k-ball, n the state count of the minimal trimmed DFA.
inline LengthBound lemma4_bound(Structure const& s, std::int64_t k) {
  LengthBound b;
  b.n_states = s.dfa().size();
  b.ball_size = s.backend().ball(static_cast<std::size_t>(std::max<std::int64_t>(k, 0))).elements.size();
  b.N = static_cast<std::int64_t>(b.n_states * b.ball_size);
  return b;
}

// For all a in A ∪ {ε} and w1, w2 in L up to max_len whose paths (a w1, w2)
// stay within k, the lengths of w1 and w2 differ by at most lemma4_bound.N.
inline Verdict verify_lemma4_empirically(Structure const& s, std::int64_t k, std::size_t max_len,
                                         Progress const& progress = {}) {
  GroupBackend const& g = s.backend();
  LengthBound bound = lemma4_bound(s, k);
  auto e = detail::enumerate_paths(s, max_len);
  if (progress) progress("enumerated", e.paths.size());
  Verdict v;
  v.condition = "lemma4";
  v.k = k;
  v.bound_used = bound.N;
  v.evidence = "bounded";
  std::int64_t observed = 0;
  std::size_t checked = 0;
  std::vector<GroupElement> points;
  for (std::size_t ai = 0; ai <= s.alphabet().size() && !v.witness; ++ai) {
    for (std::size_t i = 0; i < e.paths.size() && !v.witness; ++i) {
      HatPath const& p1 = e.paths[i];
      points.clear();
      if (ai > 0) {
        GroupElement lead = g.image(static_cast<Letter>(ai - 1));
        points.push_back(g.identity());
        for (auto const& x : p1.points()) points.push_back(g.multiply(lead, x));
      } else {
        points = p1.points();
      }
      for (std::size_t j = 0; j < e.paths.size(); ++j) {
        HatPath const& p2 = e.paths[j];
        if (g.word_metric(points.back(), p2.endpoint()) > k) continue;
        ++checked;
        if (synchronous_distance(g, points, p2.points()).distance > k) continue;
        auto diff = static_cast<std::int64_t>(p1.length()) - static_cast<std::int64_t>(p2.length());
        diff = diff < 0 ? -diff : diff;
        observed = std::max(observed, diff);
        if (diff > bound.N) {
          FtWitness w;
          w.two_sided = true;
          w.w1 = p1.word();
          w.w2 = p2.word();
          if (ai > 0) w.a = {static_cast<Letter>(ai - 1)};
          w.distance = diff;
          v.witness = std::move(w);
          break;
        }
      }
    }
  }
  v.checked = checked;
  v.observed_max = observed;
  v.status = v.witness ? Status::fails : Status::holds;
  return v;
}

inline Theorem5Constants theorem5_constants(std::int64_t k, std::int64_t N) {
  return {N + k, N + 2 * k + 1};
}

// Advisory check that every element of the ball of `radius` is the image of
// some accepted word of length <= max_len. Returns the first miss, if any.
inline std::optional<GroupElement> bounded_surjectivity(Structure const& s, std::size_t radius,
                                                        std::size_t max_len) {
  ElementSet hit;
  for (auto const& w : enumerate_words(s.dfa(), max_len)) hit.insert(s.backend().evaluate(w));
  auto ball = s.backend().ball(radius);
  for (auto const& g : ball.elements) {
    if (!hit.contains(g)) return g;
  }
  return std::nullopt;
}

}  // namespace biauto
