#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcfgi/context.hpp"
#include "mcfgi/monoid.hpp"

namespace mcfgi {

// One item of a binary-rule template word: a terminal letter, an x-side
// variable (component of the B child) or a y-side variable (C child).
struct TemplateItem {
  enum Kind : uint8_t { Terminal, XVar, YVar };
  Kind kind = Terminal;
  char ch = 0;
  int index = 0;  // 1-based component index for variables

  friend bool operator==(const TemplateItem& a, const TemplateItem& b) {
    return a.kind == b.kind && a.ch == b.ch && a.index == b.index;
  }
};

using TemplateWord = std::vector<TemplateItem>;

struct Template {
  std::vector<TemplateWord> components;

  int arity() const { return static_cast<int>(components.size()); }
  int terminal_count() const;
  // Counts of x- and y-variables (each must occur exactly once overall).
  int count_vars(TemplateItem::Kind kind) const;
  std::string to_string() const;

  friend bool operator==(const Template& a, const Template& b) {
    return a.components == b.components;
  }
};

// Simultaneous substitution of u_i for x^i and v_j for y^j.
Tuple apply_template(const Template& t, const Tuple& u, const Tuple& v);

struct Rule {
  enum Kind : uint8_t { Start, Terminal, Binary };
  Kind kind = Start;
  int lhs = 0;
  int child_b = -1;  // Start child or binary B child
  int child_c = -1;  // binary C child
  char terminal = 0;
  Template tmpl;
};

// The shared structural core of base grammars and typed refinements:
// symbols with fan-outs, a start symbol of fan-out one, and start /
// terminal / binary rules.
struct RuleSystem {
  std::vector<int> fanout;
  int start = 0;
  std::vector<Rule> rules;

  int symbol_count() const { return static_cast<int>(fanout.size()); }
  std::vector<std::vector<int>> rules_by_lhs() const;
};

// Exactly { w in L_sym : total length <= max_total_len }, by bottom-up
// saturation; nondeleting rules and one-letter terminal rules bound the
// search.  Results are in the fixed tuple order.
std::vector<Tuple> enumerate_tuples(const RuleSystem& sys, int symbol,
                                    int max_total_len);

// L(sys) restricted to words of length <= n, in length-lex order.
std::vector<std::string> language_up_to(const RuleSystem& sys, int n);

// Minimum derivable total length per symbol (INT_MAX when unproductive).
std::vector<int> min_derivable_length(const RuleSystem& sys);

std::vector<bool> productive_symbols(const RuleSystem& sys);
std::vector<bool> reachable_symbols(const RuleSystem& sys);

struct DerivTree {
  int rule = -1;
  std::vector<DerivTree> children;
};

// Yield of a derivation subtree rooted at the given rule's left-hand side.
Tuple yield_of(const RuleSystem& sys, const DerivTree& t);

// All successful derivation trees from `symbol` with yield total length
// <= bound (desk-scale enumeration, used by invariant checks and witnesses).
std::vector<DerivTree> derivations_up_to(const RuleSystem& sys, int symbol, int bound);

struct ComparisonResult {
  bool equal = true;
  std::optional<std::string> counterexample;  // length-lex first difference
};

ComparisonResult languages_equal_up_to(const RuleSystem& a, const RuleSystem& b, int n);

// A working binary linear nondeleting MCFG over a concrete alphabet.
struct Grammar {
  std::vector<char> alphabet;
  std::vector<std::string> names;  // per symbol id
  RuleSystem sys;

  int symbol(const std::string& name) const;  // structural error if unknown
  bool has_symbol(const std::string& name) const;
  const std::string& name(int id) const { return names[id]; }
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;  // e.g. non-reduced input
  bool reduced = false;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const Grammar& g, int fanout_bound);

// Drops unproductive and unreachable symbols (and rules mentioning them).
Grammar trim_to_reduced(const Grammar& g);

// Membership oracle over one grammar with bound-keyed memoization.
class MembershipOracle {
 public:
  explicit MembershipOracle(const Grammar* g) : g_(g) {}
  bool member(const std::string& w);
  const Grammar& grammar() const { return *g_; }

 private:
  const Grammar* g_;
  int cached_bound_ = -1;
  std::set<std::string> words_;
};

bool member(const Grammar& g, const std::string& w);

}  // namespace mcfgi
