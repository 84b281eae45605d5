#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "mcfgi/context.hpp"

using namespace mcfgi;

TEST_CASE("fill substitutes components by hole name") {
  CHECK(SentenceContext::parse("[1]b[2]").fill({"a", "c"}) == "abc");
  CHECK(SentenceContext::parse("[1]").fill({"whole"}) == "whole");
  CHECK(SentenceContext::parse("[1]abb[2]c").fill({"aab", "cc"}) == "aababbccc");
  CHECK(SentenceContext::parse("[2]c[1]").fill({"a", "b"}) == "bca");
  CHECK_THROWS_AS(SentenceContext::parse("[1]b[2]").fill({"a"}), DomainError);
}

TEST_CASE("context structure: permutation and boundaries") {
  auto e = SentenceContext::parse("u[2]vv[1]w");
  CHECK(e.arity() == 2);
  CHECK(e.permutation() == std::vector<int>{1, 0});
  CHECK(e.boundaries() == std::vector<std::string>{"u", "vv", "w"});
  CHECK(e.terminal_length() == 4);
  CHECK(e.to_string() == "u[2]vv[1]w");
  // reconstructing from permutation and boundaries reproduces the items
  auto bs = e.boundaries();
  auto perm = e.permutation();
  std::string rebuilt = bs[0];
  for (size_t i = 0; i < perm.size(); ++i)
    rebuilt += "[" + std::to_string(perm[i] + 1) + "]" + bs[i + 1];
  CHECK(rebuilt == e.to_string());
  CHECK_THROWS_AS(SentenceContext::parse("[1][1]"), StructuralError);
}

TEST_CASE("interface types of the placement example") {
  auto ty = fixtures::z2_abc();
  const FiniteMonoid& m = *ty.monoid;
  CHECK(interface_type(ty.hom, SentenceContext::parse("[1]c[2]")).to_string(m) ==
        "(id2;e,e,e)");
  CHECK(interface_type(ty.hom, SentenceContext::parse("[2]c[1]")).to_string(m) ==
        "(2 1;e,e,e)");
  CHECK(interface_type(ty.hom, SentenceContext::parse("[1]")) ==
        start_interface(m));
}

TEST_CASE("occurrence enumeration: unary occurrences of 'ab'") {
  auto occs = enumerate_occurrences("ab", 1, 2);
  // intervals [0,1), [1,2), [0,2) and zero-length cuts at 0, 1, 2
  CHECK(occs.size() == 6);
  std::set<std::string> contexts;
  for (const auto& o : occs) {
    CHECK(o.context().fill(o.tuple()) == "ab");
    contexts.insert(o.context().to_string());
  }
  CHECK(contexts == std::set<std::string>{"[1]", "[1]ab", "a[1]b", "ab[1]", "[1]b",
                                          "a[1]"});
}

TEST_CASE("occurrence counts match the closed form for arity one") {
  for (int n = 0; n <= 6; ++n) {
    std::string w(n, 'a');
    auto occs = enumerate_occurrences(w, 1, 2);
    CHECK(static_cast<int>(occs.size()) == n * (n + 1) / 2 + (n + 1));
  }
}

TEST_CASE("occurrences: fill after decompose returns the word, ties distinct") {
  const std::vector<char> sigma{'a', 'b'};
  std::vector<std::string> words{""};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::string> next;
    for (const auto& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (char c : sigma) next.push_back(w + c);
    words.insert(words.end(), next.begin(), next.end());
  }
  for (const auto& w : words) {
    for (int d = 1; d <= 2; ++d) {
      auto occs = enumerate_occurrences(w, d, 2);
      std::set<std::pair<std::string, Tuple>> seen;
      for (const auto& o : occs) {
        auto ctx = o.context();
        CHECK(ctx.fill(o.tuple()) == w);
        // occurrences are pairwise distinct as (context, tuple) pairs
        CHECK(seen.emplace(ctx.to_string(), o.tuple()).second);
      }
    }
  }
}

TEST_CASE("two empty components at one cut appear in both tie orders") {
  auto occs = enumerate_occurrences("a", 2, 2);
  std::set<std::string> ctxs;
  for (const auto& o : occs) ctxs.insert(o.context().to_string());
  CHECK(ctxs.count("[1][2]a"));
  CHECK(ctxs.count("[2][1]a"));
}

TEST_CASE("context order: terminal length first, terminals before holes") {
  const std::vector<char> sigma{'a', 'b'};
  ContextOrder ord{&sigma};
  auto lt = [&](const char* x, const char* y) {
    return ord(SentenceContext::parse(x), SentenceContext::parse(y));
  };
  CHECK(lt("[1]", "a[1]"));   // terminal length 0 < 1
  CHECK(lt("a[1]", "[1]a"));  // equal length, 'a' sorts before the hole
  CHECK(lt("a[1]", "b[1]"));
  CHECK(lt("[1][2]", "[2][1]"));
}

TEST_CASE("context order is total on enumerated sets and the minimum is unique") {
  const std::vector<char> sigma{'a', 'b'};
  ContextOrder ord{&sigma};
  for (int d = 1; d <= 2; ++d) {
    std::vector<SentenceContext> all;
    // max_key high enough to collect every context of terminal length <= 3
    enumerate_contexts(sigma, d, {3, std::vector<int>(16, 9)},
                       [&](const SentenceContext& e) {
                         all.push_back(e);
                         return true;
                       });
    // emitted in strictly increasing order: antisymmetric, transitive, unique min
    for (size_t i = 1; i < all.size(); ++i) {
      CHECK(ord(all[i - 1], all[i]));
      CHECK(!ord(all[i], all[i - 1]));
    }
    // count bound: d! * C(T+d, d) * |Sigma|^T per terminal length T
    std::map<int, int> by_t;
    for (const auto& e : all) ++by_t[e.terminal_length()];
    auto choose = [](int n, int k) {
      long long r = 1;
      for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
      return r;
    };
    const int dfact = d == 1 ? 1 : 2;
    for (int t = 0; t <= 3; ++t) {
      long long bound = dfact * choose(t + d, d);
      for (int i = 0; i < t; ++i) bound *= 2;
      CHECK(by_t[t] <= bound);
      CHECK(by_t[t] > 0);
    }
  }
}

TEST_CASE("tuple order: total length first, then componentwise with separator low") {
  CHECK(tuple_less({"a"}, {"ab"}));
  CHECK(tuple_less({"a", "b"}, {"ab"}));  // separator below terminals
  CHECK(tuple_less({"ab"}, {"b", "a"}));  // first letters decide
  CHECK(!tuple_less({"ab"}, {"a", "b"}));
  CHECK(!tuple_less({"a"}, {"a"}));
}
