#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biauto/alphabet.hpp"
#include "biauto/automaton.hpp"

namespace biauto {

enum class Status { holds, fails, unknown };

inline char const* to_string(Status s) {
  switch (s) {
    case Status::holds:
      return "HOLDS";
    case Status::fails:
      return "FAILS";
    case Status::unknown:
      return "UNKNOWN";
  }
  return "?";
}

// A violating tuple of a fellow-traveller condition. For the right condition
// the compared word is w1·a (and b is empty); for the two-sided condition it
// is a·w1·b.
struct FtWitness {
  Word w1;
  Word a;
  Word b;
  Word w2;
  bool two_sided = false;
  std::size_t time = 0;
  std::int64_t distance = 0;

  Word compared_word() const {
    if (two_sided) return concat(concat(a, w1), b);
    return concat(w1, a);
  }
};

// Exploration summary of the word-difference certifier.
struct Certificate {
  std::size_t cutoff = 0;
  std::size_t explored = 0;
  std::vector<std::string> differences;  // co-reachable word differences, canonical strings
  std::vector<std::string> boundary;     // unresolved configurations beyond the cutoff
};

struct CycleUse {
  State state = 0;
  Word label;
  std::uint64_t multiplicity = 1;
};

// Context pumping inside a single path p -> r: left^i core right^i all lie in
// the same π-fiber.
struct Pump {
  State from = 0;
  State to = 0;
  Word left;
  Word core;
  Word right;
};

// Evidence that π is infinite-to-one on the language: either a family of
// cycles whose combined image is the identity, or a pump; `first` and
// `second` are two distinct accepted words with the same image.
struct FiberWitness {
  std::vector<CycleUse> cycles;
  std::optional<Pump> pump;
  Word first;
  Word second;
};

struct Verdict {
  Status status = Status::unknown;
  std::string condition;
  std::int64_t k = 0;
  std::int64_t bound_used = 0;
  std::string evidence;  // "bounded", "certified", "exact"
  std::optional<FtWitness> witness;
  std::optional<Certificate> certificate;
  std::optional<FiberWitness> fiber;
  std::optional<std::int64_t> observed_max;
  std::size_t checked = 0;

  bool holds() const noexcept { return status == Status::holds; }
  bool fails() const noexcept { return status == Status::fails; }
};

}  // namespace biauto
