#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "biauto/alphabet.hpp"
#include "biauto/automaton.hpp"
#include "biauto/error.hpp"

namespace biauto {

// Regular expression syntax tree: empty word, letter, concatenation, union, star.
struct Regex {
  enum class Kind { epsilon, letter, concat, alternate, star };

  Kind kind = Kind::epsilon;
  Letter letter = 0;
  std::vector<Regex> children;

  static Regex eps() { return {}; }
  static Regex sym(Letter a) { return {Kind::letter, a, {}}; }
  static Regex cat(std::vector<Regex> parts) { return {Kind::concat, 0, std::move(parts)}; }
  static Regex alt(std::vector<Regex> parts) { return {Kind::alternate, 0, std::move(parts)}; }
  static Regex kleene(Regex inner) { return {Kind::star, 0, {std::move(inner)}}; }
};

namespace detail {

// Recursive descent; precedence star > concatenation > union. Whitespace is
// skipped and an empty operand stands for the empty word.
class RegexParser {
 public:
  RegexParser(Alphabet const& alphabet, std::string_view text) : alphabet_(alphabet) {
    for (char c : text) {
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') text_.push_back(c);
    }
  }

  Regex parse() {
    Regex r = parse_union();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  Regex parse_union() {
    std::vector<Regex> parts{parse_concat()};
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      parts.push_back(parse_concat());
    }
    return parts.size() == 1 ? std::move(parts.front()) : Regex::alt(std::move(parts));
  }

  Regex parse_concat() {
    std::vector<Regex> parts;
    while (pos_ < text_.size() && text_[pos_] != '|' && text_[pos_] != ')') {
      parts.push_back(parse_star());
    }
    if (parts.empty()) return Regex::eps();
    return parts.size() == 1 ? std::move(parts.front()) : Regex::cat(std::move(parts));
  }

  Regex parse_star() {
    Regex r = parse_atom();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      r = Regex::kleene(std::move(r));
    }
    return r;
  }

  Regex parse_atom() {
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Regex inner = parse_union();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '*') fail("'*' without operand");
    auto a = alphabet_.find(c);
    if (!a) throw AlphabetError(std::string("regex: letter '") + c + "' outside the alphabet");
    ++pos_;
    return Regex::sym(*a);
  }

  [[noreturn]] void fail(std::string const& what) const {
    throw ParseError("regex: " + what + " at position " + std::to_string(pos_));
  }

  Alphabet const& alphabet_;
  std::string text_;
  std::size_t pos_ = 0;
};

// Position (Glushkov) automaton: one state per letter occurrence plus a start
// state, no empty transitions.
class Glushkov {
 public:
  struct Info {
    bool nullable = false;
    std::vector<std::size_t> first;
    std::vector<std::size_t> last;
  };

  explicit Glushkov(Regex const& r) { root_ = visit(r); }

  Automaton build(Alphabet const& alphabet) const {
    Automaton a(alphabet, positions_.size() + 1);
    a.add_initial(0);
    if (root_.nullable) a.set_accepting(0);
    for (std::size_t p : root_.first) a.add_transition(0, positions_[p], static_cast<State>(p + 1));
    for (std::size_t p : root_.last) a.set_accepting(static_cast<State>(p + 1));
    for (std::size_t p = 0; p < positions_.size(); ++p) {
      for (std::size_t q : follow_[p]) {
        a.add_transition(static_cast<State>(p + 1), positions_[q], static_cast<State>(q + 1));
      }
    }
    return a;
  }

 private:
  Info visit(Regex const& r) {
    switch (r.kind) {
      case Regex::Kind::epsilon:
        return {true, {}, {}};
      case Regex::Kind::letter: {
        std::size_t p = positions_.size();
        positions_.push_back(r.letter);
        follow_.emplace_back();
        return {false, {p}, {p}};
      }
      case Regex::Kind::alternate: {
        Info out;
        for (auto const& c : r.children) {
          Info i = visit(c);
          out.nullable = out.nullable || i.nullable;
          out.first.insert(out.first.end(), i.first.begin(), i.first.end());
          out.last.insert(out.last.end(), i.last.begin(), i.last.end());
        }
        return out;
      }
      case Regex::Kind::concat: {
        Info out{true, {}, {}};
        for (auto const& c : r.children) {
          Info i = visit(c);
          for (std::size_t p : out.last) {
            follow_[p].insert(follow_[p].end(), i.first.begin(), i.first.end());
          }
          if (out.nullable) out.first.insert(out.first.end(), i.first.begin(), i.first.end());
          if (i.nullable) {
            out.last.insert(out.last.end(), i.last.begin(), i.last.end());
          } else {
            out.last = i.last;
          }
          out.nullable = out.nullable && i.nullable;
        }
        return out;
      }
      case Regex::Kind::star: {
        Info i = visit(r.children.front());
        for (std::size_t p : i.last) {
          follow_[p].insert(follow_[p].end(), i.first.begin(), i.first.end());
        }
        i.nullable = true;
        return i;
      }
    }
    return {};
  }

  Info root_;
  std::vector<Letter> positions_;
  std::vector<std::vector<std::size_t>> follow_;
};

}  // namespace detail

inline Regex parse_regex(Alphabet const& alphabet, std::string_view text) {
  return detail::RegexParser(alphabet, text).parse();
}

// Nondeterministic automaton accepting exactly the language of `r`.
inline Automaton compile_regex(Alphabet const& alphabet, Regex const& r) {
  auto check = [&](auto&& self, Regex const& node) -> void {
    if (node.kind == Regex::Kind::letter && node.letter >= alphabet.size()) {
      throw AlphabetError("regex: letter outside the alphabet");
    }
    for (auto const& c : node.children) self(self, c);
  };
  check(check, r);
  return detail::Glushkov(r).build(alphabet);
}

inline Automaton compile_regex(Alphabet const& alphabet, std::string_view text) {
  return compile_regex(alphabet, parse_regex(alphabet, text));
}

}  // namespace biauto
