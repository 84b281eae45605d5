#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mcfgi/monoid.hpp"

using namespace mcfgi;

TEST_CASE("two-element monoid table") {
  auto m = fixtures::z2();
  const Elem e = m->elem("e"), s = m->elem("s");
  CHECK(m->mul(s, s) == e);  // s^2 = e
  CHECK(m->mul(e, s) == s);
  CHECK(m->mul(s, e) == s);
  CHECK(m->identity() == e);
}

TEST_CASE("monoid load-time checks reject bad tables") {
  // identity not two-sided: e*s comes out as e
  CHECK_THROWS_AS(FiniteMonoid({"e", "s"}, 0, {0, 0, 1, 0}), StructuralError);
  // valid identity but (a*a)*a != a*(a*a)
  CHECK_THROWS_AS(FiniteMonoid({"e", "a", "b"}, 0, {0, 1, 2, 1, 2, 2, 2, 1, 0}),
                  StructuralError);
  // entry out of range
  CHECK_THROWS_AS(FiniteMonoid({"e"}, 0, {2}), StructuralError);
  // table not total
  CHECK_THROWS_AS(FiniteMonoid({"e", "s"}, 0, {0, 1, 1}), StructuralError);
}

TEST_CASE("word images under the worked-example homomorphism") {
  auto ty = fixtures::z2_ab();
  const Elem e = ty.monoid->elem("e"), s = ty.monoid->elem("s");
  CHECK(ty.hom.word("ab") == s);  // h(a)=s, h(b)=e
  CHECK(ty.hom.word("") == e);
  CHECK(ty.hom.word("aa") == e);  // s*s
  CHECK_THROWS_AS(ty.hom.word("az"), StructuralError);
}

TEST_CASE("componentwise h-type") {
  auto ty = fixtures::z2_ab();
  const Elem e = ty.monoid->elem("e"), s = ty.monoid->elem("s");
  CHECK(ty.hom.type_of({"a", "b"}, 2) == HType{s, e});
  CHECK(ty.hom.type_of({"", ""}, 2) == HType{e, e});
  CHECK(ty.hom.type_of({"aa", "ab"}, 2) == HType{e, s});
  CHECK_THROWS_AS(ty.hom.type_of({}, 2), DomainError);
  CHECK_THROWS_AS(ty.hom.type_of({"a", "b", "a"}, 2), DomainError);
}

TEST_CASE("transition monoid of the a*b*c* DFA") {
  auto ty = fixtures::h_r();
  const FiniteMonoid& m = *ty.monoid;

  // Composition agrees with word images: mul(h(a), h(b)) is the
  // a-then-b state map, i.e. 0->1 and everything else to the sink.
  const Elem ab = m.mul(ty.hom.letter('a'), ty.hom.letter('b'));
  CHECK(ab == ty.hom.word("ab"));
  CHECK(m.name(ab) == "[1,sink,sink,sink]");

  // Saturation count, pinned as a regression constant: identity, the three
  // letter maps, ab, ac, bc, and the all-sink zero map.
  CHECK(m.size() == 8);

  // Only the empty word induces the identity transformation (exhaustive up
  // to length 4).
  const std::string sigma = "abc";
  std::vector<std::string> words{""};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::string> next;
    for (const auto& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (char c : sigma) next.push_back(w + c);
    for (const auto& w : next) {
      CHECK(ty.hom.word(w) != m.identity());
      words.push_back(w);
    }
  }
}

TEST_CASE("single-state DFA yields the trivial monoid") {
  Dfa d;
  d.states = {"q"};
  d.start = 0;
  d.alphabet = {'a'};
  d.trans = {{0}};
  auto ty = transition_monoid(d);
  CHECK(ty.monoid->size() == 1);
  CHECK(ty.hom.word("aaa") == ty.monoid->identity());
}

TEST_CASE("transition monoid rejects non-total tables") {
  Dfa d;
  d.states = {"q", "r"};
  d.start = 0;
  d.alphabet = {'a'};
  d.trans = {{0}};  // missing row for r
  CHECK_THROWS_AS(transition_monoid(d), StructuralError);
}

TEST_CASE("homomorphism property on random word pairs") {
  auto ty = fixtures::h_r();
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> len(0, 8), letter(0, 2);
  const char sigma[] = {'a', 'b', 'c'};
  for (int i = 0; i < 500; ++i) {
    std::string u, v;
    for (int k = len(rng); k > 0; --k) u.push_back(sigma[letter(rng)]);
    for (int k = len(rng); k > 0; --k) v.push_back(sigma[letter(rng)]);
    CHECK(ty.hom.word(u + v) == ty.monoid->mul(ty.hom.word(u), ty.hom.word(v)));
  }
}
