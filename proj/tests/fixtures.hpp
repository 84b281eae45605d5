#pragma once

// Shared in-code fixtures: the two-element monoid, the a*b*c* DFA and its
// transition monoid, and the two reference grammars.

#include <memory>

#include "mcfgi/formats.hpp"
#include "mcfgi/grammar.hpp"
#include "mcfgi/monoid.hpp"

namespace fixtures {

using namespace mcfgi;

// {e, s} with s*s = e.
inline std::shared_ptr<const FiniteMonoid> z2() {
  return std::make_shared<const FiniteMonoid>(std::vector<std::string>{"e", "s"}, 0,
                                              std::vector<Elem>{0, 1, 1, 0});
}

// h(a) = s, h(b) = e over {a,b}: the transport worked example.
inline Typing z2_ab() {
  auto m = z2();
  Homomorphism h(m.get(), {'a', 'b'}, {{'a', 1}, {'b', 0}});
  return Typing{std::move(m), std::move(h)};
}

// h(a) = h(b) = s, h(c) = e over {a,b,c}: the placement example.
inline Typing z2_abc() {
  auto m = z2();
  Homomorphism h(m.get(), {'a', 'b', 'c'}, {{'a', 1}, {'b', 1}, {'c', 0}});
  return Typing{std::move(m), std::move(h)};
}

// Four-state DFA for a*b*c* with a rejecting sink.
inline Dfa l3_dfa() {
  Dfa d;
  d.states = {"0", "1", "2", "sink"};
  d.start = 0;
  d.alphabet = {'a', 'b', 'c'};
  d.trans = {
      {0, 1, 2},  // from 0
      {3, 1, 2},  // from 1
      {3, 3, 2},  // from 2
      {3, 3, 3},  // from sink
  };
  return d;
}

inline Typing h_r() { return transition_monoid(l3_dfa()); }

inline const char* l3_grammar_text() {
  return "alphabet: a b c\n"
         "start S\n"
         "fanout S=1, T=1, A=2, A_a=1, A_b=1, A_c=1\n"
         "S -> T\n"
         "A_a -> 'a'\n"
         "A_b -> 'b'\n"
         "A_c -> 'c'\n"
         "A -> (x1, y1)(A_a, A_b)\n"
         "A -> (a x1, b x2 y1)(A, A_c)\n"
         "T -> (x1 x2 y1)(A, A_c)\n";
}

inline Grammar l3_grammar() { return parse_grammar_text(l3_grammar_text()); }

inline const char* example1_grammar_text() {
  return "alphabet: a b c\n"
         "start S\n"
         "fanout S=1, T=1, A=2, D=1, P=1, Q=1\n"
         "S -> T\n"
         "P -> 'a'\n"
         "Q -> 'b'\n"
         "D -> 'c'\n"
         "A -> (x1, y1)(P, Q)\n"
         "T -> (x1 y1 x2)(A, D)\n"
         "T -> (x2 y1 x1)(A, D)\n";
}

inline Grammar example1_grammar() { return parse_grammar_text(example1_grammar_text()); }

inline std::string l3_word(int n) {
  return std::string(n, 'a') + std::string(n, 'b') + std::string(n, 'c');
}

}  // namespace fixtures
