#pragma once

#include <stdexcept>
#include <string>

namespace biauto {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A letter or symbol that does not belong to the alphabet in use.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

// Two automata, paths or structures built over different alphabets/backends.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// A group element that cannot be written over the generator images.
class UnreachableError : public Error {
 public:
  using Error::Error;
};

// Malformed regex, JSON document or structure definition.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates an invariant (group axioms, inverse pairing).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace biauto
