#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biauto/alphabet.hpp"
#include "biauto/error.hpp"
#include "biauto/group.hpp"

namespace biauto {

// The path of a word in the Cayley graph: starts at the identity, moves one
// edge per unit of time, and stays at the endpoint once the word is read.
//
// Time is sampled at integers only. Both paths of a comparison move at unit
// speed, so the continuous-time supremum exceeds the integer-time maximum by
// less than one.
class HatPath {
 public:
  HatPath() = default;
  HatPath(GroupBackend const& backend, Word word) : backend_(&backend), word_(std::move(word)) {
    points_.reserve(word_.size() + 1);
    points_.push_back(backend.identity());
    for (Letter a : word_) {
      if (a >= backend.alphabet().size()) throw AlphabetError("path_of: letter outside the alphabet");
      points_.push_back(backend.multiply(points_.back(), backend.image(a)));
    }
  }

  GroupBackend const& backend() const { return *backend_; }
  Word const& word() const noexcept { return word_; }
  std::size_t length() const noexcept { return word_.size(); }
  std::vector<GroupElement> const& points() const noexcept { return points_; }

  GroupElement const& at(std::size_t t) const { return points_[std::min(t, word_.size())]; }
  GroupElement const& endpoint() const { return points_.back(); }

 private:
  GroupBackend const* backend_ = nullptr;
  Word word_;
  std::vector<GroupElement> points_;
};

inline HatPath path_of(GroupBackend const& backend, Word word) { return HatPath(backend, std::move(word)); }

inline GroupElement const& point_at(HatPath const& p, std::size_t t) { return p.at(t); }

// Reversal of a path as a word: reverse_invert_word.
inline Word reverse_path_word(Alphabet const& alphabet, Word const& w) {
  return reverse_invert_word(alphabet, w);
}

struct DistanceAt {
  std::int64_t distance = 0;
  std::size_t time = 0;  // first time at which `distance` is attained
};

// Synchronous distance between two point sequences, each held at its last
// point after it ends.
inline DistanceAt synchronous_distance(GroupBackend const& backend, std::span<GroupElement const> p,
                                       std::span<GroupElement const> q) {
  DistanceAt best;
  std::size_t horizon = std::max(p.size(), q.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    auto const& x = p[std::min(t, p.size() - 1)];
    auto const& y = q[std::min(t, q.size() - 1)];
    std::int64_t d = backend.word_metric(x, y);
    if (d > best.distance) best = {d, t};
  }
  return best;
}

inline DistanceAt synchronous_distance_at(HatPath const& p, HatPath const& q) {
  if (&p.backend() != &q.backend() && !(p.backend() == q.backend())) {
    throw MismatchError("synchronous_distance: paths over different backends");
  }
  return synchronous_distance(p.backend(), p.points(), q.points());
}

inline std::int64_t synchronous_distance(HatPath const& p, HatPath const& q) {
  return synchronous_distance_at(p, q).distance;
}

// Canonical element strings along the path, as used in reports and plots.
inline std::vector<std::string> serialize_points(HatPath const& p) {
  std::vector<std::string> out;
  out.reserve(p.points().size());
  for (auto const& g : p.points()) out.push_back(p.backend().serialize(g));
  return out;
}

}  // namespace biauto
