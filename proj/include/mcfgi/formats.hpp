#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcfgi/grammar.hpp"
#include "mcfgi/monoid.hpp"

namespace mcfgi {

// Monoid/homomorphism text format:
//   elements: e s
//   identity: e
//   table:
//   e * e = e
//   ...
//   h:
//   a -> s
Typing parse_monoid_text(const std::string& text);
std::string monoid_to_text(const FiniteMonoid& m, const Homomorphism& h);

// DFA text format (accepting states optional and ignored):
//   states: 0 1 2 sink
//   start: 0
//   0 --a--> 0
Dfa parse_dfa_text(const std::string& text);

// Grammar text format:
//   alphabet: a b c
//   start S
//   fanout A=2, T=1, A_a=1, A_b=1, A_c=1, S=1
//   S -> T
//   A_a -> 'a'
//   A -> (x1, y1)(A_a, A_b)
//   A -> (a x1, b x2 y1)(A, A_c)
Grammar parse_grammar_text(const std::string& text);
std::string grammar_to_text(const Grammar& g);

std::vector<std::string> parse_sample_text(const std::string& text);

std::string read_file(const std::string& path);            // throws on I/O failure
void write_file(const std::string& path, const std::string& content);

}  // namespace mcfgi
