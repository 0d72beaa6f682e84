#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biauto/error.hpp"

namespace biauto {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

// A finite generating alphabet closed under a formal inversion.
//
// Letters are indices into the declaration order, which is also the order
// used for every lexicographic enumeration in the library. Symbols are single
// printable characters; the fixtures follow the convention X = x^-1.
class Alphabet {
 public:
  Alphabet() = default;

  // symbols[i] has inverse inverses[i]; both strings list the same characters.
  Alphabet(std::string_view symbols, std::string_view inverses) {
    if (symbols.size() != inverses.size()) {
      throw AlphabetError("alphabet: symbol and inverse lists differ in length");
    }
    symbols_.assign(symbols.begin(), symbols.end());
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (symbols_[i] == symbols_[j]) {
          throw AlphabetError(std::string("alphabet: duplicate symbol '") + symbols_[i] + "'");
        }
      }
    }
    inverse_.resize(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      auto inv = find(inverses[i]);
      if (!inv) {
        throw AlphabetError(std::string("alphabet: inverse '") + inverses[i] + "' of '" +
                              symbols_[i] + "' is not a symbol");
      }
      inverse_[i] = *inv;
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (inverse_[inverse_[i]] != i) {
        throw AlphabetError(std::string("alphabet: inversion is not an involution at '") +
                              symbols_[i] + "'");
      }
    }
  }

  // Alphabet "abc..ABC.." style: every lowercase symbol paired with its
  // uppercase form, declared lowercase first.
  static Alphabet with_uppercase_inverses(std::string_view lower) {
    std::string symbols(lower);
    std::string inverses;
    for (char c : lower) inverses.push_back(upper(c));
    for (char c : lower) symbols.push_back(upper(c));
    inverses.append(lower);
    return Alphabet(symbols, inverses);
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  char symbol(Letter a) const { return symbols_.at(a); }
  Letter inverse(Letter a) const { return inverse_.at(a); }
  std::string const& symbols() const noexcept { return symbols_; }

  std::optional<Letter> find(char c) const noexcept {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i] == c) return static_cast<Letter>(i);
    }
    return std::nullopt;
  }

  Letter letter(char c) const {
    auto a = find(c);
    if (!a) throw AlphabetError(std::string("unknown letter '") + c + "'");
    return *a;
  }

  Word parse(std::string_view text) const {
    Word w;
    w.reserve(text.size());
    for (char c : text) w.push_back(letter(c));
    return w;
  }

  std::string format(Word const& w) const {
    std::string s;
    s.reserve(w.size());
    for (Letter a : w) s.push_back(symbol(a));
    return s;
  }

  bool contains(Word const& w) const noexcept {
    for (Letter a : w) {
      if (a >= size()) return false;
    }
    return true;
  }

  friend bool operator==(Alphabet const&, Alphabet const&) = default;

 private:
  static char upper(char c) {
    return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
  }

  std::string symbols_;
  std::vector<Letter> inverse_;
};

// Reverse the word and invert every letter: the formal inverse w^-1.
inline Word reverse_invert_word(Alphabet const& alphabet, Word const& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& a : out) a = alphabet.inverse(a);
  return out;
}

// Cancel adjacent letter/inverse pairs until none remain.
inline Word free_reduce(Alphabet const& alphabet, Word const& w) {
  Word out;
  out.reserve(w.size());
  for (Letter a : w) {
    if (!out.empty() && out.back() == alphabet.inverse(a)) {
      out.pop_back();
    } else {
      out.push_back(a);
    }
  }
  return out;
}

inline Word concat(Word a, Word const& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace biauto
