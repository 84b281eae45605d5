#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcfgi/context.hpp"
#include "mcfgi/grammar.hpp"
#include "mcfgi/monoid.hpp"

namespace mcfgi {

// An observed typed tuple [x : tau]: one hypothesis nonterminal.
struct ObservedNt {
  int tuple = -1;  // tuple pool id
  int iface = -1;  // interface pool id
};

// Directed typed substitution rule with one recorded shared concrete context.
struct UnitRule {
  int from = -1;
  int to = -1;
  int shared_context = -1;  // context string pool id
};

// Materialized binary witness rule [z:tau] -> tmpl([x:tau_B],[y:tau_C]).
struct LearnerBinaryRule {
  int parent = -1;
  Template tmpl;
  int child_b = -1;
  int child_c = -1;
};

struct SegContext;

// Lightweight view of one binary rule during streaming enumeration; the
// template is only built when materialize() is called.
struct BinaryRuleView {
  int parent = -1;
  int child_b = -1;
  int child_c = -1;
  const SegContext* seg = nullptr;
  LearnerBinaryRule materialize() const;
};

// A typed binary witness: a concrete parent occurrence plus the induced rule.
struct LearnerWitness {
  std::string parent_context;  // canonical context string with [k] holes
  LearnerBinaryRule rule;
};

struct LearnerMetrics {
  long long sample_words = 0;
  long long sample_size_plus = 0;  // sum of max(1,|w|)
  long long observed_tuples = 0;   // hypothesis nonterminals
  long long concrete_pairs = 0;    // observed (context, tuple) pairs
  long long start_rules = 0;
  long long terminal_rules = 0;
  long long substitution_rules = 0;  // directed, reflexive included
  long long binary_rules = -1;       // -1 until counted
  double build_seconds = 0.0;
  double binary_count_seconds = 0.0;

  std::string to_string() const;
};

// The canonical hypothesis G^(K): a pure function of (K, f, h).  Start,
// terminal and substitution rules are materialized; binary witness rules are
// enumerated on demand from the observed decompositions, which keeps large
// samples tractable.
class Hypothesis {
 public:
  static Hypothesis build(const std::vector<std::string>& sample,
                          const Homomorphism& h, int fanout_bound);

  const Homomorphism& hom() const { return *h_; }
  int fanout_bound() const { return f_; }
  const std::vector<std::string>& sample() const { return sample_; }
  bool unit_free() const { return unit_free_; }

  int nt_count() const { return static_cast<int>(nts_.size()); }
  Tuple nt_tuple(int nt) const;
  const InterfaceType& nt_iface(int nt) const { return ifaces_[nts_[nt].iface]; }
  HType nt_htype(int nt) const { return tuple_types_[nts_[nt].tuple]; }
  std::string nt_name(int nt) const;
  int find_nt(const Tuple& t, const InterfaceType& iface) const;  // -1 if absent

  // Witness contexts recorded for one nonterminal (canonical strings).
  std::vector<std::string> nt_witness_contexts(int nt) const;

  const std::vector<int>& start_nts() const { return start_nts_; }
  const std::vector<int>& terminal_nts() const { return terminal_nts_; }
  const std::vector<UnitRule>& unit_rules() const { return unit_rules_; }
  std::string context_string(int ctx_id) const { return ctx_strs_[ctx_id]; }

  // Streaming count of binary witness rules (cached).  Rules are distinct by
  // construction: one per (parent nonterminal, segmentation).
  long long binary_rule_count() const;

  // Visits binary rules; the callback returns false to stop early.
  void for_each_binary_rule(const std::function<bool(const BinaryRuleView&)>& fn) const;
  // Throws DomainError when the rule count exceeds the limit.
  std::vector<LearnerBinaryRule> materialize_binary_rules(long long limit) const;

  // Full typed-witness enumeration (concrete parent occurrences included);
  // intended for desk-scale samples and audits.
  std::vector<LearnerWitness> enumerate_witnesses(long long limit) const;

  // L(G^(K)) restricted to length <= bound, via anchored saturation.
  std::vector<std::string> language_up_to(int bound) const;

  // Unit elimination: reflexive-transitive closure composed into the rule
  // families, unit rules deleted.  Bounded language is preserved.
  Hypothesis eliminate_units() const;
  long long unit_free_binary_rule_count() const;

  const LearnerMetrics& metrics() const { return metrics_; }
  LearnerMetrics& metrics() { return metrics_; }

  // Plain-text report; binary rules listed only up to the given limit.
  std::string report(long long rule_listing_limit) const;

 private:
  friend struct SaturationEngine;
  friend struct SegContext;

  // ---- pools ----
  int intern_str(const std::string& s);
  int intern_tuple(const std::vector<int>& comp_ids);
  int intern_iface(const InterfaceType& t);
  int intern_nt(int tuple, int iface);

  struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
      size_t h = 1469598103934665603ull;
      for (int x : v) {
        h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  struct PairHash {
    size_t operator()(const std::pair<int, int>& p) const {
      return (static_cast<size_t>(p.first) << 32) ^ static_cast<unsigned>(p.second);
    }
  };

  const Homomorphism* h_ = nullptr;
  int f_ = 2;
  std::vector<std::string> sample_;
  bool unit_free_ = false;

  std::vector<std::string> strs_;
  std::unordered_map<std::string, int> str_ids_;
  std::vector<std::vector<int>> tuples_;  // component string ids
  std::vector<HType> tuple_types_;
  std::unordered_map<std::vector<int>, int, VecHash> tuple_ids_;
  std::vector<InterfaceType> ifaces_;
  std::unordered_map<std::vector<int>, int, VecHash> iface_ids_;  // encoded
  std::vector<ObservedNt> nts_;
  std::unordered_map<std::pair<int, int>, int, PairHash> nt_ids_;

  std::vector<std::string> ctx_strs_;  // canonical concrete contexts
  std::unordered_map<std::string, int> ctx_ids_;

  std::vector<std::vector<int>> nt_witnesses_;   // per NT: context ids
  std::vector<std::vector<int>> nts_by_tuple_;   // tuple id -> NT ids
  std::vector<std::vector<int>> pairs_by_ctx_;   // ctx id -> tuple ids

  std::vector<int> start_nts_;
  std::vector<int> terminal_nts_;
  std::vector<UnitRule> unit_rules_;

  // Unit closure for the unit-free variant: per NT the U*-predecessors
  // (every A with A U* B receives B's direct rules).
  std::vector<std::vector<int>> co_closure_;

  mutable long long binary_rule_count_ = -1;
  mutable LearnerMetrics metrics_;

  std::vector<int> iface_encode(const InterfaceType& t) const;
};

}  // namespace mcfgi
