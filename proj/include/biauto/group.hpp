#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "biauto/alphabet.hpp"
#include "biauto/error.hpp"

namespace biauto {

enum class GroupKind { free_abelian, free_group, finite_table };

inline char const* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::free_abelian:
      return "free_abelian";
    case GroupKind::free_group:
      return "free_group";
    case GroupKind::finite_table:
      return "finite_table";
  }
  return "?";
}

// Kind-agnostic element storage; the owning backend gives it meaning:
//   free_abelian  coordinate vector of length rank
//   free_group    reduced word, basis letter i encoded as +(i+1), its inverse as -(i+1)
//   finite_table  a single table index
class GroupElement {
 public:
  using Storage = boost::container::small_vector<std::int64_t, 4>;

  GroupElement() = default;
  explicit GroupElement(Storage data) : data_(std::move(data)) {}
  GroupElement(std::initializer_list<std::int64_t> data) : data_(data.begin(), data.end()) {}

  std::span<std::int64_t const> data() const noexcept { return {data_.data(), data_.size()}; }
  Storage& storage() noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::int64_t operator[](std::size_t i) const { return data_[i]; }

  friend bool operator==(GroupElement const& a, GroupElement const& b) {
    return std::ranges::equal(a.data_, b.data_);
  }
  friend std::strong_ordering operator<=>(GroupElement const& a, GroupElement const& b) {
    return std::lexicographical_compare_three_way(a.data_.begin(), a.data_.end(),
                                                  b.data_.begin(), b.data_.end());
  }

 private:
  Storage data_;
};

struct GroupElementHash {
  std::size_t operator()(GroupElement const& g) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL ^ g.size();
    for (std::int64_t v : g.data()) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

template <typename T>
using ElementMap = std::unordered_map<GroupElement, T, GroupElementHash>;
using ElementSet = std::unordered_set<GroupElement, GroupElementHash>;

struct Ball {
  GroupElement center;
  std::size_t radius = 0;
  std::vector<GroupElement> elements;
};

// A group together with the images of the alphabet letters.
//
// Evaluation is a monoid homomorphism from words to the group; the word
// metric is measured in the Cayley graph of the images. Closed forms are used
// for the standard generating sets (L1 norm on Z^r, reduced length in F_r);
// anything else falls back to breadth-first search.
class GroupBackend {
 public:
  // Radius up to which breadth-first search is attempted for non-standard images.
  static constexpr std::size_t kSearchRadiusLimit = 64;
  static constexpr std::size_t kSearchNodeLimit = 2'000'000;

  GroupBackend() = default;

  static GroupBackend free_abelian(Alphabet alphabet, std::size_t rank,
                                   std::vector<std::vector<std::int64_t>> const& images) {
    GroupBackend g;
    g.kind_ = GroupKind::free_abelian;
    g.rank_ = rank;
    g.alphabet_ = std::move(alphabet);
    if (images.size() != g.alphabet_.size()) {
      throw ValidationError("free_abelian: expected one image per generator");
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].size() != rank) {
        throw ValidationError(std::string("free_abelian: image of '") + g.alphabet_.symbol(i) +
                              "' has wrong rank");
      }
      g.images_.emplace_back(GroupElement::Storage(images[i].begin(), images[i].end()));
    }
    g.finish();
    return g;
  }

  // basis[i] names the i-th free generator and inverse_basis[i] its inverse;
  // images are words over those names.
  static GroupBackend free_group(Alphabet alphabet, std::string basis, std::string inverse_basis,
                                 std::vector<std::string> const& images) {
    GroupBackend g;
    g.kind_ = GroupKind::free_group;
    g.rank_ = basis.size();
    g.alphabet_ = std::move(alphabet);
    if (inverse_basis.size() != basis.size()) {
      throw ValidationError("free_group: basis and inverse basis differ in length");
    }
    g.basis_ = std::move(basis);
    g.inverse_basis_ = std::move(inverse_basis);
    if (images.size() != g.alphabet_.size()) {
      throw ValidationError("free_group: expected one image per generator");
    }
    for (auto const& img : images) g.images_.push_back(g.parse_free_word(img));
    g.finish();
    return g;
  }

  static GroupBackend finite_table(Alphabet alphabet, std::vector<std::vector<std::size_t>> table,
                                   std::size_t identity, std::vector<std::size_t> const& images) {
    GroupBackend g;
    g.kind_ = GroupKind::finite_table;
    g.alphabet_ = std::move(alphabet);
    g.table_ = std::move(table);
    g.identity_index_ = identity;
    g.validate_table();
    if (images.size() != g.alphabet_.size()) {
      throw ValidationError("finite_table: expected one image per generator");
    }
    for (std::size_t img : images) {
      if (img >= g.table_.size()) throw ValidationError("finite_table: image index out of range");
      g.images_.push_back(GroupElement{static_cast<std::int64_t>(img)});
    }
    g.finish();
    return g;
  }

  GroupKind kind() const noexcept { return kind_; }
  std::size_t rank() const noexcept { return rank_; }
  Alphabet const& alphabet() const noexcept { return alphabet_; }
  GroupElement const& image(Letter a) const { return images_.at(a); }
  std::string const& basis() const noexcept { return basis_; }
  std::string const& inverse_basis() const noexcept { return inverse_basis_; }
  std::vector<std::vector<std::size_t>> const& table() const noexcept { return table_; }
  std::size_t identity_index() const noexcept { return identity_index_; }
  std::size_t order() const noexcept { return table_.size(); }
  bool has_standard_metric() const noexcept { return standard_metric_; }

  GroupElement identity() const {
    switch (kind_) {
      case GroupKind::free_abelian:
        return GroupElement(GroupElement::Storage(rank_, 0));
      case GroupKind::free_group:
        return GroupElement();
      case GroupKind::finite_table:
        return GroupElement{static_cast<std::int64_t>(identity_index_)};
    }
    return {};
  }

  GroupElement multiply(GroupElement const& g, GroupElement const& h) const {
    switch (kind_) {
      case GroupKind::free_abelian: {
        GroupElement::Storage out(g.data().begin(), g.data().end());
        for (std::size_t i = 0; i < rank_; ++i) out[i] += h[i];
        return GroupElement(std::move(out));
      }
      case GroupKind::free_group: {
        GroupElement::Storage out(g.data().begin(), g.data().end());
        for (std::int64_t x : h.data()) {
          if (!out.empty() && out.back() == -x) {
            out.pop_back();
          } else {
            out.push_back(x);
          }
        }
        return GroupElement(std::move(out));
      }
      case GroupKind::finite_table:
        return GroupElement{static_cast<std::int64_t>(table_[g[0]][h[0]])};
    }
    return {};
  }

  GroupElement inverse(GroupElement const& g) const {
    switch (kind_) {
      case GroupKind::free_abelian: {
        GroupElement::Storage out(g.data().begin(), g.data().end());
        for (auto& v : out) v = -v;
        return GroupElement(std::move(out));
      }
      case GroupKind::free_group: {
        GroupElement::Storage out(g.data().rbegin(), g.data().rend());
        for (auto& v : out) v = -v;
        return GroupElement(std::move(out));
      }
      case GroupKind::finite_table:
        return GroupElement{static_cast<std::int64_t>(table_inverse_[g[0]])};
    }
    return {};
  }

  GroupElement evaluate(Word const& w) const {
    GroupElement g = identity();
    for (Letter a : w) {
      if (a >= alphabet_.size()) throw AlphabetError("evaluate: letter outside the alphabet");
      g = multiply(g, images_[a]);
    }
    return g;
  }

  // Word-metric length of g, i.e. distance from the identity.
  std::int64_t norm(GroupElement const& g) const {
    if (standard_metric_) {
      switch (kind_) {
        case GroupKind::free_abelian: {
          std::int64_t s = 0;
          for (std::int64_t v : g.data()) s += v < 0 ? -v : v;
          return s;
        }
        case GroupKind::free_group:
          return static_cast<std::int64_t>(g.size());
        case GroupKind::finite_table:
          break;
      }
    }
    if (kind_ == GroupKind::finite_table) {
      std::int64_t d = table_norm_[g[0]];
      if (d < 0) throw UnreachableError("word_metric: element " + serialize(g) +
                                        " is not generated by the images");
      return d;
    }
    return search_norm(g);
  }

  std::int64_t word_metric(GroupElement const& g, GroupElement const& h) const {
    if (standard_metric_ && kind_ == GroupKind::free_abelian) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < rank_; ++i) s += std::abs(h[i] - g[i]);
      return s;
    }
    return norm(multiply(inverse(g), h));
  }

  // Closed ball about the identity, sorted by canonical serialization.
  Ball ball(std::size_t radius) const {
    Ball b;
    b.center = identity();
    b.radius = radius;
    ElementSet seen{b.center};
    std::vector<GroupElement> frontier{b.center};
    for (std::size_t r = 0; r < radius && !frontier.empty(); ++r) {
      std::vector<GroupElement> next;
      for (auto const& g : frontier) {
        for (auto const& img : images_) {
          GroupElement h = multiply(g, img);
          if (seen.insert(h).second) next.push_back(std::move(h));
        }
      }
      frontier = std::move(next);
    }
    b.elements.assign(seen.begin(), seen.end());
    std::vector<std::pair<std::string, std::size_t>> keys;
    keys.reserve(b.elements.size());
    for (std::size_t i = 0; i < b.elements.size(); ++i) keys.emplace_back(serialize(b.elements[i]), i);
    std::sort(keys.begin(), keys.end());
    std::vector<GroupElement> sorted;
    sorted.reserve(keys.size());
    for (auto const& [key, i] : keys) sorted.push_back(b.elements[i]);
    b.elements = std::move(sorted);
    return b;
  }

  // "(v1,...,vr)" for free_abelian, the reduced word for free_group (empty
  // string for the identity), the decimal index for finite_table.
  std::string serialize(GroupElement const& g) const {
    switch (kind_) {
      case GroupKind::free_abelian: {
        std::string s = "(";
        for (std::size_t i = 0; i < g.size(); ++i) {
          if (i) s += ",";
          s += std::to_string(g[i]);
        }
        return s + ")";
      }
      case GroupKind::free_group: {
        std::string s;
        for (std::int64_t x : g.data()) {
          s.push_back(x > 0 ? basis_[x - 1] : inverse_basis_[-x - 1]);
        }
        return s;
      }
      case GroupKind::finite_table:
        return std::to_string(g[0]);
    }
    return {};
  }

  GroupElement parse_free_word(std::string const& text) const {
    GroupElement::Storage out;
    for (char c : text) {
      std::int64_t x = 0;
      if (auto p = basis_.find(c); p != std::string::npos) {
        x = static_cast<std::int64_t>(p) + 1;
      } else if (auto q = inverse_basis_.find(c); q != std::string::npos) {
        x = -(static_cast<std::int64_t>(q) + 1);
      } else {
        throw ValidationError(std::string("free_group: '") + c + "' is not a basis letter");
      }
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return GroupElement(std::move(out));
  }

  friend bool operator==(GroupBackend const& a, GroupBackend const& b) {
    return a.kind_ == b.kind_ && a.rank_ == b.rank_ && a.alphabet_ == b.alphabet_ &&
           a.images_ == b.images_ && a.basis_ == b.basis_ && a.inverse_basis_ == b.inverse_basis_ &&
           a.table_ == b.table_ && a.identity_index_ == b.identity_index_;
  }

 private:
  void validate_table() {
    std::size_t n = table_.size();
    if (n == 0) throw ValidationError("finite_table: empty table");
    for (auto const& row : table_) {
      if (row.size() != n) throw ValidationError("finite_table: table is not square");
      for (std::size_t v : row) {
        if (v >= n) throw ValidationError("finite_table: entry out of range");
      }
    }
    if (identity_index_ >= n) throw ValidationError("finite_table: identity out of range");
    for (std::size_t i = 0; i < n; ++i) {
      if (table_[identity_index_][i] != i || table_[i][identity_index_] != i) {
        throw ValidationError("finite_table: identity is not neutral at " + std::to_string(i));
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
            throw ValidationError("finite_table: not associative at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
    table_inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (table_[a][b] == identity_index_ && table_[b][a] == identity_index_) {
          table_inverse_[a] = b;
          break;
        }
      }
      if (table_inverse_[a] == n) {
        throw ValidationError("finite_table: element " + std::to_string(a) + " has no inverse");
      }
    }
  }

  void finish() {
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      if (images_[alphabet_.inverse(a)] != inverse(images_[a])) {
        throw ValidationError(std::string("generators: image of inverse of '") + alphabet_.symbol(a) +
                              "' is not the group inverse of its image");
      }
    }
    standard_metric_ = detect_standard();
    if (kind_ == GroupKind::finite_table) {
      table_norm_.assign(table_.size(), -1);
      table_norm_[identity_index_] = 0;
      std::deque<std::size_t> queue{identity_index_};
      while (!queue.empty()) {
        std::size_t g = queue.front();
        queue.pop_front();
        for (auto const& img : images_) {
          std::size_t h = table_[g][img[0]];
          if (table_norm_[h] < 0) {
            table_norm_[h] = table_norm_[g] + 1;
            queue.push_back(h);
          }
        }
      }
    }
  }

  bool detect_standard() const {
    if (kind_ == GroupKind::finite_table) return false;
    // Every image is a unit step (or trivial) and every unit step occurs.
    std::vector<int> hit(2 * rank_, 0);
    for (auto const& img : images_) {
      if (kind_ == GroupKind::free_abelian) {
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < rank_; ++i) {
          if (img[i] == 0) continue;
          if (img[i] != 1 && img[i] != -1) return false;
          ++nonzero;
          hit[2 * i + (img[i] < 0 ? 1 : 0)] = 1;
        }
        if (nonzero > 1) return false;
      } else {
        if (img.size() > 1) return false;
        if (img.size() == 1) {
          std::int64_t x = img[0];
          hit[2 * (std::abs(x) - 1) + (x < 0 ? 1 : 0)] = 1;
        }
      }
    }
    return std::all_of(hit.begin(), hit.end(), [](int v) { return v == 1; });
  }

  std::int64_t search_norm(GroupElement const& target) const {
    GroupElement e = identity();
    if (target == e) return 0;
    ElementSet seen{e};
    std::vector<GroupElement> frontier{e};
    for (std::size_t r = 1; r <= kSearchRadiusLimit && !frontier.empty(); ++r) {
      std::vector<GroupElement> next;
      for (auto const& g : frontier) {
        for (auto const& img : images_) {
          GroupElement h = multiply(g, img);
          if (h == target) return static_cast<std::int64_t>(r);
          if (seen.insert(h).second) next.push_back(std::move(h));
        }
      }
      if (seen.size() > kSearchNodeLimit) break;
      frontier = std::move(next);
    }
    throw UnreachableError("word_metric: element " + serialize(target) +
                           " not reached by search over the generator images");
  }

  GroupKind kind_ = GroupKind::free_abelian;
  std::size_t rank_ = 0;
  Alphabet alphabet_;
  std::vector<GroupElement> images_;
  std::string basis_;
  std::string inverse_basis_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> table_inverse_;
  std::vector<std::int64_t> table_norm_;
  std::size_t identity_index_ = 0;
  bool standard_metric_ = false;
};

// Standard presentations used throughout the fixtures and tests.
inline GroupBackend standard_free_abelian(std::size_t rank) {
  static constexpr char kNames[] = "xyzwuv";
  if (rank == 0 || rank > 6) throw ValidationError("standard_free_abelian: rank must be 1..6");
  Alphabet alphabet = Alphabet::with_uppercase_inverses(std::string_view(kNames, rank));
  std::vector<std::vector<std::int64_t>> images(2 * rank, std::vector<std::int64_t>(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) {
    images[i][i] = 1;
    images[rank + i][i] = -1;
  }
  return GroupBackend::free_abelian(std::move(alphabet), rank, images);
}

inline GroupBackend standard_free_group(std::size_t rank) {
  static constexpr char kNames[] = "xyzwuv";
  if (rank == 0 || rank > 6) throw ValidationError("standard_free_group: rank must be 1..6");
  std::string lower(kNames, rank);
  Alphabet alphabet = Alphabet::with_uppercase_inverses(lower);
  std::string upper;
  for (char c : lower) upper.push_back(static_cast<char>(c - 'a' + 'A'));
  std::vector<std::string> images;
  for (char c : lower) images.emplace_back(1, c);
  for (char c : upper) images.emplace_back(1, c);
  return GroupBackend::free_group(std::move(alphabet), lower, upper, images);
}

}  // namespace biauto
