#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcfgi {

// Thrown when an input file or in-memory structure violates a structural
// invariant (unknown identifiers, non-total tables, ...).
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an operation is called outside its domain (arity mismatch,
// fan-out bound exceeded, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Elem = int;  // monoid element, index into FiniteMonoid::names

// Componentwise h-type of a tuple: one monoid element per component.
using HType = std::vector<Elem>;

// A finite monoid given by an explicit multiplication table.
// Elements are interned to indices 0..size()-1 at construction; all
// downstream types store indices.
class FiniteMonoid {
 public:
  FiniteMonoid(std::vector<std::string> names, Elem identity,
               std::vector<Elem> table);

  int size() const { return static_cast<int>(names_.size()); }
  Elem identity() const { return identity_; }

  Elem mul(Elem a, Elem b) const {
    check_elem(a);
    check_elem(b);
    return table_[static_cast<size_t>(a) * names_.size() + b];
  }

  const std::string& name(Elem e) const {
    check_elem(e);
    return names_[e];
  }
  const std::vector<std::string>& names() const { return names_; }

  // Index of a named element; structural error if unknown.
  Elem elem(std::string_view name) const;

  Elem product(const std::vector<Elem>& seq) const;

 private:
  void check_elem(Elem e) const {
    if (e < 0 || e >= size()) throw StructuralError("unknown monoid element index");
  }
  void verify() const;  // identity + associativity, exhaustive

  std::vector<std::string> names_;
  Elem identity_;
  std::vector<Elem> table_;  // row-major |M| x |M|
};

// A homomorphism Sigma* -> M, fixed by the letter values.
class Homomorphism {
 public:
  Homomorphism(const FiniteMonoid* monoid, std::vector<char> alphabet,
               std::map<char, Elem> letter_values);

  const FiniteMonoid& monoid() const { return *monoid_; }
  const std::vector<char>& alphabet() const { return alphabet_; }

  bool has_letter(char c) const { return letter_values_.count(c) != 0; }
  Elem letter(char c) const;

  // h(w): ordered product of letter values, empty word maps to identity.
  Elem word(std::string_view w) const;

  // Componentwise h-type; arity must be in [1, fanout_bound].
  HType type_of(const std::vector<std::string>& tuple, int fanout_bound) const;

 private:
  const FiniteMonoid* monoid_;
  std::vector<char> alphabet_;
  std::map<char, Elem> letter_values_;
};

// A total deterministic finite automaton over single-character letters.
// Accepting states are not used by the transition-monoid construction and
// are kept only so input files can mention them.
struct Dfa {
  std::vector<std::string> states;
  int start = 0;
  std::vector<char> alphabet;
  // trans[state][letter index] = state
  std::vector<std::vector<int>> trans;
  std::vector<int> accepting;  // optional, ignored
};

// A monoid together with a homomorphism into it.  The shared_ptr keeps the
// element addresses stable so the homomorphism's back pointer survives moves.
struct Typing {
  std::shared_ptr<const FiniteMonoid> monoid;
  Homomorphism hom;
};

// The transition monoid of a DFA together with the morphism sending each
// letter to its state map.  Elements are canonicalized as state-map vectors
// in declared state order; closure by breadth-first product saturation.
Typing transition_monoid(const Dfa& dfa);

}  // namespace mcfgi
