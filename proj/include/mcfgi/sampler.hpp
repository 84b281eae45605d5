#pragma once

#include <map>
#include <string>
#include <vector>

#include "mcfgi/refinement.hpp"

namespace mcfgi {

// Anchor, witness context and exposing context of one typed nonterminal.
struct Exposure {
  int symbol = -1;
  Tuple anchor;              // least tuple of L_X under the fixed tuple order
  SentenceContext witness;   // excised from a minimal successful derivation
  SentenceContext exposing;  // least context with matching interface accepting the anchor
};

Tuple anchor(const TypedGrammar& tg, int symbol);
SentenceContext witness_context(const TypedGrammar& tg, int symbol);
SentenceContext exposing_context(const TypedGrammar& tg, int symbol,
                                 MembershipOracle& target);

// Exposures for every typed nonterminal (symbol ids 1..N).
std::vector<Exposure> compute_exposures(const TypedGrammar& tg, MembershipOracle& target);

struct CharacteristicSample {
  std::vector<std::string> words;  // length-lex sorted, unique
  std::map<std::string, std::vector<std::string>> provenance;

  int size_plus() const;  // sum of max(1, |w|)
};

// obs_NT for every typed nonterminal and obs_Rule for every non-start rule.
CharacteristicSample observations(const TypedGrammar& tg, MembershipOracle& target);

struct ExposureMetrics {
  int n_nt = 0;      // typed nonterminals, fresh start excluded
  int n_rule = 0;    // non-start typed rules
  int cs_size = 0;   // |CS|
  int cs_size_plus = 0;
  int exposure_bound = 0;  // B(G,h): max positive length over observations
  bool size_bound_holds = false;       // |CS| <= N_NT + N_Rule
  bool size_plus_bound_holds = false;  // ||CS||+ <= (N_NT + N_Rule) * B

  std::string to_string() const;
};

ExposureMetrics exposure_metrics(const TypedGrammar& tg, const CharacteristicSample& cs);

}  // namespace mcfgi
