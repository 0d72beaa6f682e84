#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "biauto/alphabet.hpp"
#include "biauto/error.hpp"
#include "biauto/group.hpp"
#include "biauto/paths.hpp"
#include "biauto/regex.hpp"
#include "biauto/structure.hpp"

namespace biauto {

using WordPair = std::pair<Word, Word>;
using WitnessFamily = std::function<WordPair(std::int64_t)>;

struct Fixture {
  std::string name;
  Structure structure;
  std::map<std::string, std::int64_t> documented_constants;
  std::map<std::string, WitnessFamily> witness_families;
};

struct Figure1Words {
  Word w1;
  Word w2;
  Letter a = 0;
  Letter b = 0;
};

namespace detail {

inline Word repeat(Alphabet const& alphabet, std::string_view block, std::int64_t times) {
  Word out;
  Word unit = alphabet.parse(block);
  for (std::int64_t i = 0; i < times; ++i) out.insert(out.end(), unit.begin(), unit.end());
  return out;
}

inline Structure regex_structure(GroupBackend backend, std::string_view regex) {
  Automaton a = compile_regex(backend.alphabet(), regex);
  return Structure(std::move(backend), a);
}

}  // namespace detail

// Words (yxYX)^n x^n and x^n of the inverse Z² language. Their paths end
// together but are n+1 apart after the loops.
inline WordPair witness_family_z2(std::int64_t n) {
  if (n < 1) throw ValidationError("witness_family_z2: n must be at least 1");
  static Structure const inverse =
      detail::regex_structure(standard_free_abelian(2), "(x*|X*)(y*|Y*)(xyXY)*").inverse();
  Alphabet const& alpha = inverse.alphabet();
  WordPair out{concat(detail::repeat(alpha, "yxYX", n), detail::repeat(alpha, "x", n)),
               detail::repeat(alpha, "x", n)};
  if (!inverse.accepts(out.first) || !inverse.accepts(out.second)) {
    throw Error("witness_family_z2: generated words left the inverse language");
  }
  return out;
}

// Words (xX)^n x^n and x^n of the inverse Z language, n apart.
inline WordPair witness_family_z(std::int64_t n) {
  if (n < 1) throw ValidationError("witness_family_z: n must be at least 1");
  static Structure const inverse = detail::regex_structure(standard_free_abelian(1), "(x*|X*)(xX)*").inverse();
  Alphabet const& alpha = inverse.alphabet();
  WordPair out{concat(detail::repeat(alpha, "xX", n), detail::repeat(alpha, "x", n)),
               detail::repeat(alpha, "x", n)};
  if (!inverse.accepts(out.first) || !inverse.accepts(out.second)) {
    throw Error("witness_family_z: generated words left the inverse language");
  }
  return out;
}

inline Fixture fixture_z2() {
  return {"z2",
          detail::regex_structure(standard_free_abelian(2), "(x*|X*)(y*|Y*)(xyXY)*"),
          {{"right_ft_k", 3}, {"two_sided_k", 4}},
          {{"inverse_right_ft", witness_family_z2}}};
}

inline Fixture fixture_z() {
  return {"z",
          detail::regex_structure(standard_free_abelian(1), "(x*|X*)(xX)*"),
          {{"right_ft_k", 2}, {"two_sided_k", 2}},
          {{"inverse_right_ft", witness_family_z}}};
}

inline Fixture fixture_control() {
  return {"control",
          detail::regex_structure(standard_free_abelian(2), "(x*|X*)(y*|Y*)"),
          {{"right_ft_k", 2}, {"two_sided_k", 4}},
          {}};
}

// Figure-1 configuration: w2 = x^m y^n, w1 = x^(m+1) y^(n+1) (xyXY)^k,
// a = Y, b = X, so that π(a w1 b) = π(w2).
inline Figure1Words figure1_words(std::int64_t m, std::int64_t n, std::int64_t k) {
  if (m < 0 || n < 0 || k < 0) throw ValidationError("figure1_words: m, n, k must be nonnegative");
  static GroupBackend const z2 = standard_free_abelian(2);
  Alphabet const& alpha = z2.alphabet();
  Figure1Words f;
  f.w2 = concat(detail::repeat(alpha, "x", m), detail::repeat(alpha, "y", n));
  f.w1 = concat(concat(detail::repeat(alpha, "x", m + 1), detail::repeat(alpha, "y", n + 1)),
                detail::repeat(alpha, "xyXY", k));
  f.a = alpha.letter('Y');
  f.b = alpha.letter('X');
  Word lhs = concat(concat(Word{f.a}, f.w1), Word{f.b});
  if (z2.evaluate(lhs) != z2.evaluate(f.w2)) throw Error("figure1_words: endpoints differ");
  return f;
}

}  // namespace biauto
