#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "mcfgi/formats.hpp"
#include "mcfgi/grammar.hpp"

using namespace mcfgi;

namespace {

// Independent range-based deductive recognizer, used only to cross-check
// member().  Items are (symbol, one position range per component); ranges
// come from stitching child ranges through the template.
bool range_recognize(const Grammar& g, const std::string& w) {
  using Range = std::pair<int, int>;
  using Ranges = std::vector<Range>;
  const int n = static_cast<int>(w.size());
  std::vector<std::set<Ranges>> items(g.sys.symbol_count());

  // All placements of one template component, given the child ranges:
  // components with a variable are anchored by it, all-terminal components
  // may start anywhere.
  auto stitch_comp = [&](const TemplateWord& comp, const Ranges& u, const Ranges& v) {
    std::vector<Range> results;
    auto range_of = [&](const TemplateItem& it) -> Range {
      return it.kind == TemplateItem::XVar ? u[it.index - 1] : v[it.index - 1];
    };
    auto try_from = [&](int start) -> bool {
      if (start < 0) return false;
      int pos = start;
      for (const auto& it : comp) {
        if (it.kind == TemplateItem::Terminal) {
          if (pos >= n || w[pos] != it.ch) return false;
          ++pos;
        } else {
          Range r = range_of(it);
          if (r.first != pos) return false;
          pos = r.second;
        }
      }
      results.push_back({start, pos});
      return true;
    };
    int first_var = -1;
    for (size_t i = 0; i < comp.size(); ++i)
      if (comp[i].kind != TemplateItem::Terminal) {
        first_var = static_cast<int>(i);
        break;
      }
    if (first_var < 0) {
      for (int s = 0; s <= n - static_cast<int>(comp.size()); ++s) try_from(s);
    } else {
      try_from(range_of(comp[first_var]).first - first_var);
    }
    return results;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.sys.rules) {
      switch (r.kind) {
        case Rule::Terminal:
          for (int i = 0; i < n; ++i)
            if (w[i] == r.terminal)
              changed |= items[r.lhs].insert(Ranges{{i, i + 1}}).second;
          break;
        case Rule::Start:
          for (const auto& rs : items[r.child_b])
            changed |= items[r.lhs].insert(rs).second;
          break;
        case Rule::Binary:
          for (const auto& u : items[r.child_b])
            for (const auto& v : items[r.child_c]) {
              std::vector<std::vector<Range>> per_comp;
              bool ok = true;
              for (const auto& comp : r.tmpl.components) {
                per_comp.push_back(stitch_comp(comp, u, v));
                if (per_comp.back().empty()) {
                  ok = false;
                  break;
                }
              }
              if (!ok) continue;
              // cartesian product over component placements
              std::vector<size_t> idx(per_comp.size(), 0);
              while (true) {
                Ranges out;
                for (size_t k = 0; k < per_comp.size(); ++k)
                  out.push_back(per_comp[k][idx[k]]);
                changed |= items[r.lhs].insert(out).second;
                size_t k = 0;
                while (k < idx.size() && ++idx[k] == per_comp[k].size()) idx[k++] = 0;
                if (k == idx.size()) break;
              }
            }
          break;
      }
    }
  }
  return n > 0 && items[g.sys.start].count(Ranges{{0, n}}) != 0;
}

Grammar grammar_with_rule_line(const std::string& line) {
  std::string text = std::string("alphabet: a b\nstart S\nfanout S=1, A=1, B=2\n") +
                     "S -> A\nA -> 'a'\nB -> (x1, a y1)(A, A)\n" + line + "\n";
  return parse_grammar_text(text);
}

}  // namespace

TEST_CASE("the reference fan-out-two grammar validates as reduced") {
  Grammar g = fixtures::l3_grammar();
  auto rep = validate(g, 2);
  CHECK(rep.ok());
  CHECK(rep.reduced);
  CHECK(rep.violations.empty());
}

TEST_CASE("validation flags deletion, reuse and start separation") {
  {  // x1 dropped
    Grammar g = grammar_with_rule_line("A -> (y1, y2)(B, B)");
    auto rep = validate(g, 2);
    bool found = false;
    for (const auto& v : rep.violations) found |= v.find("nondeleting") != std::string::npos;
    CHECK(!rep.ok());
    CHECK(found);
  }
  {  // S on a right-hand side
    Grammar g = grammar_with_rule_line("B -> (x1, y1)(S, A)");
    auto rep = validate(g, 2);
    bool found = false;
    for (const auto& v : rep.violations)
      found |= v.find("start-separated") != std::string::npos;
    CHECK(!rep.ok());
    CHECK(found);
  }
  {  // variable used twice
    Grammar g = grammar_with_rule_line("B -> (x1 x1, y1)(A, A)");
    auto rep = validate(g, 2);
    CHECK(!rep.ok());
  }
  {  // fan-out bound exceeded
    Grammar g = fixtures::l3_grammar();
    auto rep = validate(g, 1);
    CHECK(!rep.ok());
  }
}

TEST_CASE("non-reduced input validates with a warning and trims away") {
  std::string text =
      "alphabet: a\nstart S\nfanout S=1, A=1, U=1\nS -> A\nA -> 'a'\nU -> 'a'\n";
  Grammar g = parse_grammar_text(text);
  auto rep = validate(g, 2);
  CHECK(rep.ok());
  CHECK(!rep.reduced);
  CHECK(!rep.warnings.empty());
  Grammar t = trim_to_reduced(g);
  CHECK(t.sys.symbol_count() == 2);
  CHECK(validate(t, 2).reduced);
  CHECK(languages_equal_up_to(g.sys, t.sys, 5).equal);
}

TEST_CASE("rule application by simultaneous substitution") {
  Grammar g = fixtures::l3_grammar();
  const Rule& rec = g.sys.rules[5];  // A -> (a x1, b x2 y1)(A, A_c)
  REQUIRE(rec.kind == Rule::Binary);
  CHECK(apply_template(rec.tmpl, {"a", "b"}, {"c"}) == Tuple{"aa", "bbc"});

  Template routing;
  routing.components = {{TemplateItem{TemplateItem::XVar, 0, 1}},
                        {TemplateItem{TemplateItem::YVar, 0, 1}}};
  CHECK(apply_template(routing, {"w"}, {"z"}) == Tuple{"w", "z"});

  Template fig1;  // (y1 x2 a, b x1)
  fig1.components = {{TemplateItem{TemplateItem::YVar, 0, 1},
                      TemplateItem{TemplateItem::XVar, 0, 2},
                      TemplateItem{TemplateItem::Terminal, 'a', 0}},
                     {TemplateItem{TemplateItem::Terminal, 'b', 0},
                      TemplateItem{TemplateItem::XVar, 0, 1}}};
  CHECK(apply_template(fig1, {"a", "b"}, {"a"}) == Tuple{"aba", "ba"});

  CHECK_THROWS_AS(apply_template(fig1, {"a"}, {"a"}), DomainError);
}

TEST_CASE("nondeletion: output length is input lengths plus terminals") {
  std::mt19937 rng(7);
  Grammar g = fixtures::l3_grammar();
  std::uniform_int_distribution<int> len(0, 5), letter(0, 2);
  const char sigma[] = {'a', 'b', 'c'};
  auto rand_word = [&]() {
    std::string w;
    for (int k = len(rng); k > 0; --k) w.push_back(sigma[letter(rng)]);
    return w;
  };
  for (const auto& r : g.sys.rules) {
    if (r.kind != Rule::Binary) continue;
    for (int i = 0; i < 50; ++i) {
      Tuple u, v;
      for (int k = 0; k < g.sys.fanout[r.child_b]; ++k) u.push_back(rand_word());
      for (int k = 0; k < g.sys.fanout[r.child_c]; ++k) v.push_back(rand_word());
      Tuple out = apply_template(r.tmpl, u, v);
      CHECK(total_length(out) ==
            total_length(u) + total_length(v) + r.tmpl.terminal_count());
    }
  }
}

TEST_CASE("bounded tuple enumeration of the reference grammar") {
  Grammar g = fixtures::l3_grammar();
  const int A = g.symbol("A"), T = g.symbol("T");
  CHECK(enumerate_tuples(g.sys, A, 5) ==
        std::vector<Tuple>{{"a", "b"}, {"aa", "bbc"}});
  CHECK(enumerate_tuples(g.sys, A, 0).empty());
  CHECK(enumerate_tuples(g.sys, T, 6) == std::vector<Tuple>{{"abc"}, {"aabbcc"}});
}

TEST_CASE("membership and bounded language of the reference grammar") {
  Grammar g = fixtures::l3_grammar();
  CHECK(member(g, "abc"));
  CHECK(!member(g, ""));
  CHECK(!member(g, "aabbc"));
  CHECK(language_up_to(g.sys, 6) == std::vector<std::string>{"abc", "aabbcc"});
  CHECK(language_up_to(g.sys, 0).empty());
  CHECK(language_up_to(g.sys, 2).empty());
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::string> want;
    for (int i = 1; i <= k; ++i) want.push_back(fixtures::l3_word(i));
    CHECK(language_up_to(g.sys, 3 * k) == want);
  }
}

TEST_CASE("member agrees with the range recognizer on all words up to length 8") {
  for (const Grammar& g : {fixtures::l3_grammar(), fixtures::example1_grammar()}) {
    MembershipOracle oracle(&g);
    std::vector<std::string> words{""};
    for (size_t i = 0; i < words.size(); ++i) {
      if (words[i].size() == 8) continue;
      for (char c : g.alphabet) words.push_back(words[i] + c);
    }
    for (const auto& w : words)
      if (!w.empty()) CHECK(oracle.member(w) == range_recognize(g, w));
  }
}

TEST_CASE("grammar text round-trips") {
  Grammar g = fixtures::l3_grammar();
  Grammar g2 = parse_grammar_text(grammar_to_text(g));
  CHECK(g2.names == g.names);
  CHECK(g2.sys.fanout == g.sys.fanout);
  CHECK(g2.sys.rules.size() == g.sys.rules.size());
  CHECK(languages_equal_up_to(g.sys, g2.sys, 9).equal);
}

TEST_CASE("language comparison reports the first difference in length-lex order") {
  Grammar l3 = fixtures::l3_grammar();
  Grammar e1 = fixtures::example1_grammar();
  CHECK(languages_equal_up_to(l3.sys, l3.sys, 9).equal);
  auto res = languages_equal_up_to(l3.sys, e1.sys, 3);
  CHECK(!res.equal);
  CHECK(*res.counterexample == "abc");
}

TEST_CASE("zero-rule grammars are valid and empty") {
  Grammar g = parse_grammar_text("alphabet: a\nstart S\nfanout S=1\n");
  auto rep = validate(g, 2);
  CHECK(rep.ok());
  CHECK(language_up_to(g.sys, 5).empty());
}
