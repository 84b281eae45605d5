#include "mcfgi/refinement.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace mcfgi {

int TypedGrammar::find(const TypedSymbol& s) const {
  for (size_t i = 1; i < symbols.size(); ++i)
    if (symbols[i] == s) return static_cast<int>(i);
  return -1;
}

std::string TypedGrammar::symbol_name(int id) const {
  if (id == 0) return "S~";
  const TypedSymbol& s = symbols[id];
  std::ostringstream os;
  os << base->name(s.base) << " [p=";
  for (size_t i = 0; i < s.out.size(); ++i)
    os << (i ? "," : "") << hom->monoid().name(s.out[i]);
  os << "] [tau=" << s.iface.to_string(hom->monoid()) << "]";
  return os.str();
}

std::string TypedGrammar::rule_name(int ri) const {
  const Rule& r = sys.rules[ri];
  std::ostringstream os;
  switch (r.kind) {
    case Rule::Start:
      os << symbol_name(r.lhs) << " -> " << symbol_name(r.child_b);
      break;
    case Rule::Terminal:
      os << symbol_name(r.lhs) << " -> '" << r.terminal << "'";
      break;
    case Rule::Binary:
      os << symbol_name(r.lhs) << " -> " << r.tmpl.to_string() << "("
         << symbol_name(r.child_b) << ", " << symbol_name(r.child_c) << ")";
      break;
  }
  return os.str();
}

namespace {

// Productive componentwise output types per base nonterminal.
std::vector<std::set<HType>> productive_output_types(const Grammar& g,
                                                     const Homomorphism& h) {
  const int ns = g.sys.symbol_count();
  std::vector<std::set<HType>> prod(ns);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.sys.rules) {
      switch (r.kind) {
        case Rule::Terminal:
          changed |= prod[r.lhs].insert(HType{h.letter(r.terminal)}).second;
          break;
        case Rule::Binary:
          for (const auto& q : prod[r.child_b])
            for (const auto& rr : prod[r.child_c])
              changed |= prod[r.lhs].insert(template_eval(r.tmpl, h, q, rr)).second;
          break;
        case Rule::Start:
          break;
      }
    }
  }
  return prod;
}

}  // namespace

TypedGrammar build_trimmed_refinement(const Grammar& g, const Homomorphism& h,
                                      int fanout_bound) {
  auto rep = validate(g, fanout_bound);
  if (!rep.ok())
    throw DomainError("refinement requires a valid grammar: " + rep.violations.front());
  if (!rep.reduced)
    throw DomainError("refinement requires a reduced grammar; trim first");

  TypedGrammar tg;
  tg.base = &g;
  tg.hom = &h;
  tg.sys.fanout.push_back(1);  // fresh start
  tg.sys.start = 0;
  tg.symbols.push_back(TypedSymbol{});  // sentinel for id 0

  const auto prod = productive_output_types(g, h);

  std::map<TypedSymbol, int> ids;
  std::queue<int> work;
  auto intern = [&](TypedSymbol s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(tg.symbols.size());
    tg.sys.fanout.push_back(g.sys.fanout[s.base]);
    tg.symbols.push_back(s);
    ids.emplace(std::move(s), id);
    work.push(id);
    return id;
  };

  const InterfaceType tau_st = start_interface(h.monoid());

  // Start rules: only output types productive for the start child.
  for (const auto& r : g.sys.rules) {
    if (r.kind != Rule::Start) continue;
    for (const auto& p : prod[r.child_b]) {
      int child = intern(TypedSymbol{r.child_b, p, tau_st});
      tg.sys.rules.push_back(Rule{Rule::Start, 0, child, -1, 0, {}});
      tg.base_rule_of.push_back(static_cast<int>(&r - g.sys.rules.data()));
    }
  }

  // Forward generation through the transport maps, siblings restricted to
  // productive output types.
  while (!work.empty()) {
    const int id = work.front();
    work.pop();
    const TypedSymbol sym = tg.symbols[id];  // copy: vector may grow
    for (size_t ri = 0; ri < g.sys.rules.size(); ++ri) {
      const Rule& r = g.sys.rules[ri];
      if (r.lhs != sym.base) continue;
      if (r.kind == Rule::Terminal) {
        if (sym.out == HType{h.letter(r.terminal)}) {
          tg.sys.rules.push_back(Rule{Rule::Terminal, id, -1, -1, r.terminal, {}});
          tg.base_rule_of.push_back(static_cast<int>(ri));
        }
      } else if (r.kind == Rule::Binary) {
        for (const auto& q : prod[r.child_b]) {
          for (const auto& rr : prod[r.child_c]) {
            if (template_eval(r.tmpl, h, q, rr) != sym.out) continue;
            InterfaceType tb = transport_b(r.tmpl, h, sym.iface, rr);
            InterfaceType tc = transport_c(r.tmpl, h, sym.iface, q);
            int bid = intern(TypedSymbol{r.child_b, q, std::move(tb)});
            int cid = intern(TypedSymbol{r.child_c, rr, std::move(tc)});
            tg.sys.rules.push_back(Rule{Rule::Binary, id, bid, cid, 0, r.tmpl});
            tg.base_rule_of.push_back(static_cast<int>(ri));
          }
        }
      }
    }
  }

  // Keep copies both productive and reachable within the productive part.
  auto prod_sym = productive_symbols(tg.sys);
  RuleSystem pruned = tg.sys;
  pruned.rules.clear();
  std::vector<int> pruned_base;
  for (size_t i = 0; i < tg.sys.rules.size(); ++i) {
    const Rule& r = tg.sys.rules[i];
    bool keep = prod_sym[r.lhs] && (r.child_b < 0 || prod_sym[r.child_b]) &&
                (r.child_c < 0 || prod_sym[r.child_c]);
    if (keep) {
      pruned.rules.push_back(r);
      pruned_base.push_back(tg.base_rule_of[i]);
    }
  }
  auto reach = reachable_symbols(pruned);

  TypedGrammar out;
  out.base = &g;
  out.hom = &h;
  out.sys.start = 0;
  std::vector<int> remap(tg.sys.symbol_count(), -1);
  for (int s = 0; s < tg.sys.symbol_count(); ++s) {
    if (s == 0 || (prod_sym[s] && reach[s])) {
      remap[s] = static_cast<int>(out.symbols.size());
      out.symbols.push_back(tg.symbols[s]);
      out.sys.fanout.push_back(tg.sys.fanout[s]);
    }
  }
  for (size_t i = 0; i < pruned.rules.size(); ++i) {
    const Rule& r = pruned.rules[i];
    if (remap[r.lhs] < 0 || (r.child_b >= 0 && remap[r.child_b] < 0) ||
        (r.child_c >= 0 && remap[r.child_c] < 0))
      continue;
    Rule nr = r;
    nr.lhs = remap[r.lhs];
    if (nr.child_b >= 0) nr.child_b = remap[r.child_b];
    if (nr.child_c >= 0) nr.child_c = remap[r.child_c];
    out.sys.rules.push_back(std::move(nr));
    out.base_rule_of.push_back(pruned_base[i]);
  }
  return out;
}

bool check_typing_invariant(const TypedGrammar& tg, int symbol, const Tuple& t) {
  if (symbol <= 0 || symbol >= static_cast<int>(tg.symbols.size())) return false;
  const TypedSymbol& s = tg.symbols[symbol];
  HType ht;
  for (const auto& w : t) ht.push_back(tg.hom->word(w));
  if (ht != s.out) return false;
  // Forgetting annotations must leave a base-derivable tuple.
  auto base_tuples = enumerate_tuples(tg.base->sys, s.base, total_length(t));
  return std::find(base_tuples.begin(), base_tuples.end(), t) != base_tuples.end();
}

std::string refinement_report(const TypedGrammar& tg) {
  std::vector<std::string> nts, rules;
  for (size_t i = 1; i < tg.symbols.size(); ++i) nts.push_back(tg.symbol_name(static_cast<int>(i)));
  for (size_t i = 0; i < tg.sys.rules.size(); ++i) rules.push_back(tg.rule_name(static_cast<int>(i)));
  std::sort(nts.begin(), nts.end());
  std::sort(rules.begin(), rules.end());
  std::ostringstream os;
  os << "typed nonterminals: " << nts.size() << "\n";
  for (const auto& s : nts) os << "  " << s << "\n";
  os << "typed rules: " << rules.size() << "\n";
  for (const auto& s : rules) os << "  " << s << "\n";
  return os.str();
}

}  // namespace mcfgi
