#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcfgi/grammar.hpp"
#include "mcfgi/transport.hpp"

namespace mcfgi {

// A typed copy A_p^tau of a base nonterminal.  Symbol id 0 of the typed
// rule system is the fresh start symbol, which carries no type data.
struct TypedSymbol {
  int base = -1;
  HType out;
  InterfaceType iface;

  friend bool operator<(const TypedSymbol& a, const TypedSymbol& b) {
    if (a.base != b.base) return a.base < b.base;
    if (a.out != b.out) return a.out < b.out;
    return a.iface < b.iface;
  }
  friend bool operator==(const TypedSymbol& a, const TypedSymbol& b) {
    return a.base == b.base && a.out == b.out && a.iface == b.iface;
  }
};

struct TypedGrammar {
  const Grammar* base = nullptr;
  const Homomorphism* hom = nullptr;
  RuleSystem sys;                    // symbol 0 = fresh start
  std::vector<TypedSymbol> symbols;  // parallel to sys symbol ids; [0] unused
  std::vector<int> base_rule_of;     // per typed rule, originating base rule (-1 for none)

  int find(const TypedSymbol& s) const;  // -1 when absent
  std::string symbol_name(int id) const;
  std::string rule_name(int rule_index) const;
};

// The trimmed typed refinement: productive output types bottom-up, typed
// copies forward-generated from the start interface through the transport
// maps, then restricted to reachable-and-productive copies.
// Requires a valid reduced grammar of fan-out <= fanout_bound.
TypedGrammar build_trimmed_refinement(const Grammar& g, const Homomorphism& h,
                                      int fanout_bound);

inline std::vector<Tuple> typed_tuple_language(const TypedGrammar& tg, int symbol,
                                               int max_total_len) {
  return enumerate_tuples(tg.sys, symbol, max_total_len);
}

// h-type of the tuple equals the symbol's output type, and forgetting the
// annotations leaves a derivable base tuple.
bool check_typing_invariant(const TypedGrammar& tg, int symbol, const Tuple& t);

// One line per typed nonterminal and per rule, stable-sorted.
std::string refinement_report(const TypedGrammar& tg);

}  // namespace mcfgi
