#pragma once

#include <memory>
#include <string>
#include <utility>

#include "biauto/alphabet.hpp"
#include "biauto/automaton.hpp"
#include "biauto/error.hpp"
#include "biauto/group.hpp"

namespace biauto {

// A candidate (bi)automatic structure: inverse-closed alphabet, group backend
// and regular language over the alphabet.
//
// The language is stored trimmed, alongside its minimal trimmed DFA; both are
// computed eagerly so a Structure is immutable once built. Surjectivity onto
// the group is not validated here (see `bounded_surjectivity`).
class Structure {
 public:
  Structure(GroupBackend backend, Automaton const& language)
      : backend_(std::make_shared<GroupBackend const>(std::move(backend))) {
    if (!(language.alphabet() == backend_->alphabet())) {
      throw MismatchError("structure: language and backend use different alphabets");
    }
    language_ = trim(language);
    dfa_ = minimize(language_);
  }

  Alphabet const& alphabet() const noexcept { return backend_->alphabet(); }
  GroupBackend const& backend() const noexcept { return *backend_; }
  std::shared_ptr<GroupBackend const> const& backend_ptr() const noexcept { return backend_; }
  Automaton const& language() const noexcept { return language_; }
  Automaton const& dfa() const noexcept { return dfa_; }

  // Same alphabet and group, language replaced by its formal inverse.
  Structure inverse() const { return Structure(backend_, reverse_invert(language_)); }

  Word parse(std::string_view text) const { return alphabet().parse(text); }
  std::string format(Word const& w) const { return alphabet().format(w); }
  bool accepts(Word const& w) const { return member(dfa_, w); }

 private:
  Structure(std::shared_ptr<GroupBackend const> backend, Automaton const& language)
      : backend_(std::move(backend)) {
    language_ = trim(language);
    dfa_ = minimize(language_);
  }

  std::shared_ptr<GroupBackend const> backend_;
  Automaton language_;
  Automaton dfa_;
};

}  // namespace biauto
