#include "mcfgi/sampler.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace mcfgi {

namespace {

// Deterministic minimal-yield derivation tree for a symbol: smallest total
// yield, ties by rule index, then by child trees.
DerivTree min_tree(const RuleSystem& sys, const std::vector<int>& ml, int symbol) {
  if (ml[symbol] == INT_MAX) throw DomainError("min_tree: unproductive symbol");
  auto by = sys.rules_by_lhs();
  int best = -1;
  for (int ri : by[symbol]) {
    const Rule& r = sys.rules[ri];
    int cost = INT_MAX;
    switch (r.kind) {
      case Rule::Terminal: cost = 1; break;
      case Rule::Start: cost = ml[r.child_b]; break;
      case Rule::Binary:
        if (ml[r.child_b] != INT_MAX && ml[r.child_c] != INT_MAX)
          cost = ml[r.child_b] + ml[r.child_c] + r.tmpl.terminal_count();
        break;
    }
    if (cost == ml[symbol]) {
      best = ri;
      break;  // rules_by_lhs preserves rule order, first hit is canonical
    }
  }
  const Rule& r = sys.rules[best];
  switch (r.kind) {
    case Rule::Terminal: return DerivTree{best, {}};
    case Rule::Start: return DerivTree{best, {min_tree(sys, ml, r.child_b)}};
    case Rule::Binary:
      return DerivTree{best, {min_tree(sys, ml, r.child_b), min_tree(sys, ml, r.child_c)}};
  }
  throw DomainError("min_tree: corrupt rule");
}

struct ContextPath {
  // Rules from the start rule down to the distinguished symbol and, per
  // binary step, which side the path continues on (0 = B, 1 = C).
  std::vector<std::pair<int, int>> steps;  // (rule index, side); side unused for start
};

// Minimal extra yield of the surrounding context per symbol, with
// deterministic backpointers (cost, then rule index, then side).
ContextPath min_context_path(const RuleSystem& sys, const std::vector<int>& ml,
                             int target) {
  const int ns = sys.symbol_count();
  std::vector<int> cost(ns, INT_MAX);
  std::vector<std::pair<int, int>> back(ns, {-1, -1});

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t ri = 0; ri < sys.rules.size(); ++ri) {
      const Rule& r = sys.rules[ri];
      auto relax = [&](int child, int c, int side) {
        const std::pair<int, int> bp{static_cast<int>(ri), side};
        if (c < cost[child] || (c == cost[child] && bp < back[child])) {
          cost[child] = c;
          back[child] = bp;
          changed = true;
        }
      };
      switch (r.kind) {
        case Rule::Start:
          relax(r.child_b, 0, 0);
          break;
        case Rule::Binary: {
          if (cost[r.lhs] == INT_MAX) break;
          if (ml[r.child_c] != INT_MAX)
            relax(r.child_b, cost[r.lhs] + ml[r.child_c] + r.tmpl.terminal_count(), 0);
          if (ml[r.child_b] != INT_MAX)
            relax(r.child_c, cost[r.lhs] + ml[r.child_b] + r.tmpl.terminal_count(), 1);
          break;
        }
        case Rule::Terminal:
          break;
      }
    }
  }
  if (cost[target] == INT_MAX)
    throw DomainError("min_context_path: symbol unreachable from the start");

  ContextPath path;
  int s = target;
  while (true) {
    auto [ri, side] = back[s];
    path.steps.push_back({ri, side});
    const Rule& r = sys.rules[ri];
    if (r.kind == Rule::Start) break;
    s = r.lhs;
  }
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

using ItemWord = std::vector<CtxItem>;
using ItemTuple = std::vector<ItemWord>;

ItemTuple eval_items(const RuleSystem& sys, const DerivTree& t);

ItemTuple apply_template_items(const Template& tmpl, const ItemTuple& u,
                               const ItemTuple& v) {
  ItemTuple out;
  out.reserve(tmpl.components.size());
  for (const auto& w : tmpl.components) {
    ItemWord s;
    for (const auto& it : w) {
      switch (it.kind) {
        case TemplateItem::Terminal: s.push_back(CtxItem{-1, it.ch}); break;
        case TemplateItem::XVar: {
          const auto& part = u[it.index - 1];
          s.insert(s.end(), part.begin(), part.end());
          break;
        }
        case TemplateItem::YVar: {
          const auto& part = v[it.index - 1];
          s.insert(s.end(), part.begin(), part.end());
          break;
        }
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

ItemTuple eval_items(const RuleSystem& sys, const DerivTree& t) {
  const Rule& r = sys.rules[t.rule];
  switch (r.kind) {
    case Rule::Terminal: return {{CtxItem{-1, r.terminal}}};
    case Rule::Start: return eval_items(sys, t.children.at(0));
    case Rule::Binary:
      return apply_template_items(r.tmpl, eval_items(sys, t.children.at(0)),
                                  eval_items(sys, t.children.at(1)));
  }
  throw DomainError("eval_items: corrupt tree");
}

}  // namespace

Tuple anchor(const TypedGrammar& tg, int symbol) {
  auto ml = min_derivable_length(tg.sys);
  if (ml[symbol] == INT_MAX) throw DomainError("anchor: unproductive typed symbol");
  auto tuples = enumerate_tuples(tg.sys, symbol, ml[symbol]);
  return tuples.front();  // already in the fixed tuple order
}

SentenceContext witness_context(const TypedGrammar& tg, int symbol) {
  const RuleSystem& sys = tg.sys;
  auto ml = min_derivable_length(sys);
  auto path = min_context_path(sys, ml, symbol);

  // Walk the path top-down; around it, siblings take minimal trees; the
  // distinguished subtree is replaced by named holes.
  const int d = sys.fanout[symbol];
  ItemTuple holes;
  for (int i = 0; i < d; ++i) holes.push_back({CtxItem{i, 0}});

  auto build = [&](auto&& self, size_t step) -> ItemTuple {
    if (step == path.steps.size()) return holes;
    auto [ri, side] = path.steps[step];
    const Rule& r = sys.rules[ri];
    if (r.kind == Rule::Start) return self(self, step + 1);
    ItemTuple inner = self(self, step + 1);
    if (side == 0) {
      ItemTuple sib = eval_items(sys, min_tree(sys, ml, r.child_c));
      return apply_template_items(r.tmpl, inner, sib);
    }
    ItemTuple sib = eval_items(sys, min_tree(sys, ml, r.child_b));
    return apply_template_items(r.tmpl, sib, inner);
  };

  ItemTuple top = build(build, 0);
  if (top.size() != 1)
    throw DomainError("witness_context: start yield is not unary");
  return SentenceContext(d, top[0]);
}

SentenceContext exposing_context(const TypedGrammar& tg, int symbol,
                                 MembershipOracle& target) {
  const Tuple om = anchor(tg, symbol);
  const SentenceContext wit = witness_context(tg, symbol);
  const InterfaceType& want = tg.symbols[symbol].iface;
  ContextOrder order{&tg.base->alphabet};
  auto max_key = order.key(wit);

  SentenceContext found;
  bool have = false;
  enumerate_contexts(tg.base->alphabet, tg.sys.fanout[symbol], max_key,
                     [&](const SentenceContext& e) {
                       if (interface_type(*tg.hom, e) != want) return true;
                       if (!target.member(e.fill(om))) return true;
                       found = e;
                       have = true;
                       return false;
                     });
  if (!have)
    throw DomainError("exposing_context: witness context did not qualify");
  return found;
}

std::vector<Exposure> compute_exposures(const TypedGrammar& tg, MembershipOracle& target) {
  std::vector<Exposure> out;
  for (int s = 1; s < static_cast<int>(tg.symbols.size()); ++s) {
    Exposure e;
    e.symbol = s;
    e.anchor = anchor(tg, s);
    e.witness = witness_context(tg, s);
    e.exposing = exposing_context(tg, s, target);
    out.push_back(std::move(e));
  }
  return out;
}

int CharacteristicSample::size_plus() const {
  int n = 0;
  for (const auto& w : words) n += std::max<int>(1, static_cast<int>(w.size()));
  return n;
}

CharacteristicSample observations(const TypedGrammar& tg, MembershipOracle& target) {
  auto exposures = compute_exposures(tg, target);
  std::map<int, const Exposure*> by_symbol;
  for (const auto& e : exposures) by_symbol[e.symbol] = &e;

  CharacteristicSample cs;
  auto add = [&](const std::string& w, const std::string& label) {
    cs.provenance[w].push_back(label);
  };

  for (const auto& e : exposures)
    add(e.exposing.fill(e.anchor), "obs_NT(" + tg.symbol_name(e.symbol) + ")");

  for (size_t ri = 0; ri < tg.sys.rules.size(); ++ri) {
    const Rule& r = tg.sys.rules[ri];
    if (r.kind == Rule::Start) continue;
    const Exposure& ex = *by_symbol.at(r.lhs);
    if (r.kind == Rule::Terminal) {
      add(ex.exposing.fill({std::string(1, r.terminal)}),
          "obs_Rule(" + tg.rule_name(static_cast<int>(ri)) + ")");
    } else {
      Tuple z = apply_template(r.tmpl, by_symbol.at(r.child_b)->anchor,
                               by_symbol.at(r.child_c)->anchor);
      add(ex.exposing.fill(z), "obs_Rule(" + tg.rule_name(static_cast<int>(ri)) + ")");
    }
  }

  for (const auto& [w, labels] : cs.provenance) cs.words.push_back(w);
  std::sort(cs.words.begin(), cs.words.end(),
            [](const std::string& a, const std::string& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return cs;
}

std::string ExposureMetrics::to_string() const {
  std::ostringstream os;
  os << "N_NT = " << n_nt << "\n"
     << "N_Rule = " << n_rule << "\n"
     << "|CS| = " << cs_size << "\n"
     << "||CS||+ = " << cs_size_plus << "\n"
     << "B(G,h) = " << exposure_bound << "\n"
     << "|CS| <= N_NT + N_Rule: " << (size_bound_holds ? "yes" : "NO") << "\n"
     << "||CS||+ <= (N_NT + N_Rule) * B(G,h): " << (size_plus_bound_holds ? "yes" : "NO")
     << "\n";
  return os.str();
}

ExposureMetrics exposure_metrics(const TypedGrammar& tg, const CharacteristicSample& cs) {
  ExposureMetrics m;
  m.n_nt = static_cast<int>(tg.symbols.size()) - 1;
  for (const auto& r : tg.sys.rules)
    if (r.kind != Rule::Start) ++m.n_rule;
  m.cs_size = static_cast<int>(cs.words.size());
  m.cs_size_plus = cs.size_plus();
  for (const auto& w : cs.words)
    m.exposure_bound = std::max(m.exposure_bound, std::max(1, static_cast<int>(w.size())));
  m.size_bound_holds = m.cs_size <= m.n_nt + m.n_rule;
  m.size_plus_bound_holds = m.cs_size_plus <= (m.n_nt + m.n_rule) * m.exposure_bound;
  return m;
}

}  // namespace mcfgi
