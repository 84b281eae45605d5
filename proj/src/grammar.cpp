#include "mcfgi/grammar.hpp"

#include <algorithm>
#include <climits>
#include <queue>
#include <sstream>

namespace mcfgi {

int Template::terminal_count() const {
  int n = 0;
  for (const auto& w : components)
    for (const auto& it : w)
      if (it.kind == TemplateItem::Terminal) ++n;
  return n;
}

int Template::count_vars(TemplateItem::Kind kind) const {
  int n = 0;
  for (const auto& w : components)
    for (const auto& it : w)
      if (it.kind == kind) ++n;
  return n;
}

std::string Template::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < components.size(); ++i) {
    if (i) os << ", ";
    bool first = true;
    for (const auto& it : components[i]) {
      if (!first) os << " ";
      first = false;
      switch (it.kind) {
        case TemplateItem::Terminal: os << it.ch; break;
        case TemplateItem::XVar: os << "x" << it.index; break;
        case TemplateItem::YVar: os << "y" << it.index; break;
      }
    }
  }
  os << ")";
  return os.str();
}

Tuple apply_template(const Template& t, const Tuple& u, const Tuple& v) {
  Tuple out;
  out.reserve(t.components.size());
  for (const auto& w : t.components) {
    std::string s;
    for (const auto& it : w) {
      switch (it.kind) {
        case TemplateItem::Terminal:
          s.push_back(it.ch);
          break;
        case TemplateItem::XVar:
          if (it.index < 1 || it.index > static_cast<int>(u.size()))
            throw DomainError("template x-variable outside B arity");
          s += u[it.index - 1];
          break;
        case TemplateItem::YVar:
          if (it.index < 1 || it.index > static_cast<int>(v.size()))
            throw DomainError("template y-variable outside C arity");
          s += v[it.index - 1];
          break;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<int>> RuleSystem::rules_by_lhs() const {
  std::vector<std::vector<int>> by(fanout.size());
  for (size_t i = 0; i < rules.size(); ++i) by[rules[i].lhs].push_back(static_cast<int>(i));
  return by;
}

std::vector<Tuple> enumerate_tuples(const RuleSystem& sys, int symbol,
                                    int max_total_len) {
  if (max_total_len < 0) throw DomainError("negative length bound");
  const int ns = sys.symbol_count();
  std::vector<std::set<Tuple, TupleOrder>> facts(ns);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : sys.rules) {
      switch (r.kind) {
        case Rule::Terminal: {
          if (max_total_len < 1) break;
          Tuple t{std::string(1, r.terminal)};
          changed |= facts[r.lhs].insert(std::move(t)).second;
          break;
        }
        case Rule::Start: {
          for (const auto& t : facts[r.child_b])
            changed |= facts[r.lhs].insert(t).second;
          break;
        }
        case Rule::Binary: {
          const int gap = r.tmpl.terminal_count();
          for (const auto& u : facts[r.child_b]) {
            const int lu = total_length(u);
            if (lu + gap + 1 > max_total_len) continue;
            for (const auto& v : facts[r.child_c]) {
              if (lu + gap + total_length(v) > max_total_len) continue;
              changed |= facts[r.lhs].insert(apply_template(r.tmpl, u, v)).second;
            }
          }
          break;
        }
      }
    }
  }
  if (symbol < 0 || symbol >= ns) throw DomainError("unknown symbol");
  return {facts[symbol].begin(), facts[symbol].end()};
}

std::vector<std::string> language_up_to(const RuleSystem& sys, int n) {
  auto tuples = enumerate_tuples(sys, sys.start, n);
  std::vector<std::string> words;
  words.reserve(tuples.size());
  for (auto& t : tuples) words.push_back(t[0]);
  std::sort(words.begin(), words.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

std::vector<int> min_derivable_length(const RuleSystem& sys) {
  std::vector<int> ml(sys.symbol_count(), INT_MAX);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : sys.rules) {
      int cand = INT_MAX;
      switch (r.kind) {
        case Rule::Terminal: cand = 1; break;
        case Rule::Start: cand = ml[r.child_b]; break;
        case Rule::Binary:
          if (ml[r.child_b] == INT_MAX || ml[r.child_c] == INT_MAX) break;
          cand = ml[r.child_b] + ml[r.child_c] + r.tmpl.terminal_count();
          break;
      }
      if (cand < ml[r.lhs]) {
        ml[r.lhs] = cand;
        changed = true;
      }
    }
  }
  return ml;
}

std::vector<bool> productive_symbols(const RuleSystem& sys) {
  auto ml = min_derivable_length(sys);
  std::vector<bool> p(ml.size());
  for (size_t i = 0; i < ml.size(); ++i) p[i] = ml[i] != INT_MAX;
  return p;
}

std::vector<bool> reachable_symbols(const RuleSystem& sys) {
  std::vector<bool> seen(sys.symbol_count(), false);
  std::queue<int> q;
  seen[sys.start] = true;
  q.push(sys.start);
  auto by = sys.rules_by_lhs();
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int ri : by[s]) {
      const Rule& r = sys.rules[ri];
      for (int c : {r.child_b, r.child_c}) {
        if (c >= 0 && !seen[c]) {
          seen[c] = true;
          q.push(c);
        }
      }
    }
  }
  return seen;
}

Tuple yield_of(const RuleSystem& sys, const DerivTree& t) {
  const Rule& r = sys.rules[t.rule];
  switch (r.kind) {
    case Rule::Terminal:
      return {std::string(1, r.terminal)};
    case Rule::Start:
      return yield_of(sys, t.children.at(0));
    case Rule::Binary:
      return apply_template(r.tmpl, yield_of(sys, t.children.at(0)),
                            yield_of(sys, t.children.at(1)));
  }
  throw DomainError("corrupt derivation tree");
}

std::vector<DerivTree> derivations_up_to(const RuleSystem& sys, int symbol, int bound) {
  // Bottom-up: per symbol, all (yield, tree) pairs with total length <= bound.
  const int ns = sys.symbol_count();
  struct Entry {
    Tuple t;
    DerivTree tree;
  };
  std::vector<std::vector<Entry>> facts(ns);
  std::vector<std::set<std::vector<int>>> keys(ns);  // dedup by tree shape

  auto tree_key = [](const DerivTree& t) {
    std::vector<int> k;
    auto rec = [&](auto&& self, const DerivTree& n) -> void {
      k.push_back(n.rule);
      for (const auto& c : n.children) self(self, c);
      k.push_back(-1);
    };
    rec(rec, t);
    return k;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t ri = 0; ri < sys.rules.size(); ++ri) {
      const Rule& r = sys.rules[ri];
      auto add = [&](Tuple t, DerivTree tree) {
        if (total_length(t) > bound) return;
        auto k = tree_key(tree);
        if (!keys[r.lhs].insert(std::move(k)).second) return;
        facts[r.lhs].push_back(Entry{std::move(t), std::move(tree)});
        changed = true;
      };
      switch (r.kind) {
        case Rule::Terminal:
          add({std::string(1, r.terminal)}, DerivTree{static_cast<int>(ri), {}});
          break;
        case Rule::Start:
          for (const auto& e : facts[r.child_b])
            add(e.t, DerivTree{static_cast<int>(ri), {e.tree}});
          break;
        case Rule::Binary: {
          const int gap = r.tmpl.terminal_count();
          // Iterate over snapshots; newly added entries are picked up on the
          // next outer pass.
          const auto bu = facts[r.child_b];
          const auto cv = facts[r.child_c];
          for (const auto& eu : bu) {
            if (total_length(eu.t) + gap + 1 > bound) continue;
            for (const auto& ev : cv) {
              if (total_length(eu.t) + gap + total_length(ev.t) > bound) continue;
              add(apply_template(r.tmpl, eu.t, ev.t),
                  DerivTree{static_cast<int>(ri), {eu.tree, ev.tree}});
            }
          }
          break;
        }
      }
    }
  }
  std::vector<DerivTree> out;
  for (auto& e : facts[symbol]) out.push_back(std::move(e.tree));
  return out;
}

ComparisonResult languages_equal_up_to(const RuleSystem& a, const RuleSystem& b, int n) {
  auto la = language_up_to(a, n);
  auto lb = language_up_to(b, n);
  if (la == lb) return {true, std::nullopt};
  // First symmetric-difference word in length-lex order.
  std::set<std::string> sa(la.begin(), la.end()), sb(lb.begin(), lb.end());
  std::vector<std::string> diff;
  for (const auto& w : la)
    if (!sb.count(w)) diff.push_back(w);
  for (const auto& w : lb)
    if (!sa.count(w)) diff.push_back(w);
  std::sort(diff.begin(), diff.end(), [](const std::string& x, const std::string& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return {false, diff.front()};
}

int Grammar::symbol(const std::string& nm) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == nm) return static_cast<int>(i);
  throw StructuralError("unknown nonterminal: " + nm);
}

bool Grammar::has_symbol(const std::string& nm) const {
  return std::find(names.begin(), names.end(), nm) != names.end();
}

ValidationReport validate(const Grammar& g, int fanout_bound) {
  ValidationReport rep;
  auto bad = [&](const std::string& msg) { rep.violations.push_back(msg); };

  const auto& sys = g.sys;
  const int ns = sys.symbol_count();
  if (ns == 0) {
    bad("grammar declares no nonterminals");
    return rep;
  }
  for (int s = 0; s < ns; ++s) {
    if (sys.fanout[s] < 1) bad("fan-out of " + g.names[s] + " must be >= 1");
    if (sys.fanout[s] > fanout_bound)
      bad("fan-out of " + g.names[s] + " exceeds bound " + std::to_string(fanout_bound));
  }
  if (sys.fanout[sys.start] != 1) bad("start symbol must have fan-out 1");

  for (size_t ri = 0; ri < sys.rules.size(); ++ri) {
    const Rule& r = sys.rules[ri];
    const std::string where = "rule #" + std::to_string(ri + 1);
    auto check_sym = [&](int s) {
      if (s < 0 || s >= ns) bad(where + ": undeclared symbol reference");
    };
    check_sym(r.lhs);
    switch (r.kind) {
      case Rule::Start: {
        check_sym(r.child_b);
        if (r.lhs != sys.start) bad(where + ": start rule must have the start symbol on the left");
        if (r.child_b == sys.start) bad(where + ": start-separated: S -> S is not allowed");
        if (r.child_b >= 0 && r.child_b < ns && sys.fanout[r.child_b] != 1)
          bad(where + ": start child must have fan-out 1");
        break;
      }
      case Rule::Terminal: {
        if (r.lhs == sys.start) bad(where + ": start-separated: no terminal rule for S");
        if (r.lhs >= 0 && r.lhs < ns && sys.fanout[r.lhs] != 1)
          bad(where + ": terminal left-hand side must have fan-out 1");
        if (std::find(g.alphabet.begin(), g.alphabet.end(), r.terminal) == g.alphabet.end())
          bad(where + ": terminal letter outside declared alphabet");
        break;
      }
      case Rule::Binary: {
        check_sym(r.child_b);
        check_sym(r.child_c);
        if (r.lhs == sys.start) bad(where + ": start-separated: no binary rule for S");
        if (r.child_b == sys.start || r.child_c == sys.start)
          bad(where + ": start-separated: S on a right-hand side");
        if (r.lhs < 0 || r.lhs >= ns || r.child_b < 0 || r.child_b >= ns || r.child_c < 0 ||
            r.child_c >= ns)
          break;
        const int e = sys.fanout[r.lhs], db = sys.fanout[r.child_b], dc = sys.fanout[r.child_c];
        if (r.tmpl.arity() != e)
          bad(where + ": template arity " + std::to_string(r.tmpl.arity()) +
              " does not match fan-out " + std::to_string(e));
        std::vector<int> xs(db, 0), ys(dc, 0);
        bool range_ok = true;
        for (const auto& w : r.tmpl.components)
          for (const auto& it : w) {
            if (it.kind == TemplateItem::Terminal) {
              if (std::find(g.alphabet.begin(), g.alphabet.end(), it.ch) == g.alphabet.end())
                bad(where + ": template letter outside declared alphabet");
            } else if (it.kind == TemplateItem::XVar) {
              if (it.index < 1 || it.index > db) {
                bad(where + ": x" + std::to_string(it.index) + " outside B fan-out");
                range_ok = false;
              } else
                ++xs[it.index - 1];
            } else {
              if (it.index < 1 || it.index > dc) {
                bad(where + ": y" + std::to_string(it.index) + " outside C fan-out");
                range_ok = false;
              } else
                ++ys[it.index - 1];
            }
          }
        if (range_ok) {
          for (int j = 0; j < db; ++j) {
            if (xs[j] == 0) bad(where + ": nondeleting: x" + std::to_string(j + 1) + " unused");
            if (xs[j] > 1) bad(where + ": linear: x" + std::to_string(j + 1) + " used twice");
          }
          for (int j = 0; j < dc; ++j) {
            if (ys[j] == 0) bad(where + ": nondeleting: y" + std::to_string(j + 1) + " unused");
            if (ys[j] > 1) bad(where + ": linear: y" + std::to_string(j + 1) + " used twice");
          }
        }
        break;
      }
    }
  }

  if (rep.ok()) {
    auto prod = productive_symbols(sys);
    auto reach = reachable_symbols(sys);
    rep.reduced = true;
    for (int s = 0; s < ns; ++s) {
      if (!prod[s] || !reach[s]) {
        rep.reduced = false;
        rep.warnings.push_back("nonterminal " + g.names[s] +
                               (prod[s] ? " is unreachable" : " is unproductive") +
                               "; trim before refinement");
      }
    }
  }
  return rep;
}

Grammar trim_to_reduced(const Grammar& g) {
  auto prod = productive_symbols(g.sys);
  auto reach = reachable_symbols(g.sys);
  // Productive first, then reachable within the productive part.
  RuleSystem pruned = g.sys;
  pruned.rules.clear();
  for (const auto& r : g.sys.rules) {
    bool keep = prod[r.lhs];
    if (r.child_b >= 0) keep = keep && prod[r.child_b];
    if (r.child_c >= 0) keep = keep && prod[r.child_c];
    if (keep) pruned.rules.push_back(r);
  }
  auto reach2 = reachable_symbols(pruned);

  std::vector<int> remap(g.sys.symbol_count(), -1);
  Grammar out;
  out.alphabet = g.alphabet;
  for (int s = 0; s < g.sys.symbol_count(); ++s) {
    if ((prod[s] && reach2[s]) || s == g.sys.start) {
      remap[s] = static_cast<int>(out.names.size());
      out.names.push_back(g.names[s]);
      out.sys.fanout.push_back(g.sys.fanout[s]);
    }
  }
  out.sys.start = remap[g.sys.start];
  for (const auto& r : pruned.rules) {
    bool keep = remap[r.lhs] >= 0 && (r.child_b < 0 || remap[r.child_b] >= 0) &&
                (r.child_c < 0 || remap[r.child_c] >= 0);
    if (!keep) continue;
    Rule nr = r;
    nr.lhs = remap[r.lhs];
    if (nr.child_b >= 0) nr.child_b = remap[r.child_b];
    if (nr.child_c >= 0) nr.child_c = remap[r.child_c];
    out.sys.rules.push_back(std::move(nr));
  }
  (void)reach;
  return out;
}

bool MembershipOracle::member(const std::string& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return false;  // epsilon-free formalism
  if (n > cached_bound_) {
    auto words = language_up_to(g_->sys, n);
    words_.insert(words.begin(), words.end());
    cached_bound_ = n;
  }
  return words_.count(w) != 0;
}

bool member(const Grammar& g, const std::string& w) {
  MembershipOracle o(&g);
  return o.member(w);
}

}  // namespace mcfgi
