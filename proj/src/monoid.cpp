#include "mcfgi/monoid.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace mcfgi {

FiniteMonoid::FiniteMonoid(std::vector<std::string> names, Elem identity,
                           std::vector<Elem> table)
    : names_(std::move(names)), identity_(identity), table_(std::move(table)) {
  if (names_.empty()) throw StructuralError("monoid has no elements");
  if (table_.size() != names_.size() * names_.size())
    throw StructuralError("monoid table is not total");
  for (Elem e : table_)
    if (e < 0 || e >= size())
      throw StructuralError("monoid table entry is not an element");
  if (identity_ < 0 || identity_ >= size())
    throw StructuralError("monoid identity is not an element");
  verify();
}

void FiniteMonoid::verify() const {
  const int n = size();
  for (Elem m = 0; m < n; ++m) {
    if (mul(identity_, m) != m || mul(m, identity_) != m)
      throw StructuralError("monoid identity is not two-sided at element " + names_[m]);
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw StructuralError("monoid multiplication is not associative at (" +
                                names_[a] + "," + names_[b] + "," + names_[c] + ")");
}

Elem FiniteMonoid::elem(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  throw StructuralError("unknown monoid element: " + std::string(name));
}

Elem FiniteMonoid::product(const std::vector<Elem>& seq) const {
  Elem acc = identity_;
  for (Elem e : seq) acc = mul(acc, e);
  return acc;
}

Homomorphism::Homomorphism(const FiniteMonoid* monoid, std::vector<char> alphabet,
                           std::map<char, Elem> letter_values)
    : monoid_(monoid), alphabet_(std::move(alphabet)),
      letter_values_(std::move(letter_values)) {
  if (letter_values_.size() != alphabet_.size())
    throw StructuralError("letter values do not cover exactly the alphabet");
  for (char c : alphabet_) {
    auto it = letter_values_.find(c);
    if (it == letter_values_.end())
      throw StructuralError(std::string("no h-value for letter ") + c);
    if (it->second < 0 || it->second >= monoid_->size())
      throw StructuralError(std::string("h-value for letter ") + c + " is not an element");
  }
}

Elem Homomorphism::letter(char c) const {
  auto it = letter_values_.find(c);
  if (it == letter_values_.end())
    throw StructuralError(std::string("letter outside alphabet: ") + c);
  return it->second;
}

Elem Homomorphism::word(std::string_view w) const {
  Elem acc = monoid_->identity();
  for (char c : w) acc = monoid_->mul(acc, letter(c));
  return acc;
}

HType Homomorphism::type_of(const std::vector<std::string>& tuple,
                            int fanout_bound) const {
  if (tuple.empty() || static_cast<int>(tuple.size()) > fanout_bound)
    throw DomainError("tuple arity outside [1, fan-out bound]");
  HType t;
  t.reserve(tuple.size());
  for (const auto& w : tuple) t.push_back(word(w));
  return t;
}

Typing transition_monoid(const Dfa& dfa) {
  const int ns = static_cast<int>(dfa.states.size());
  if (ns == 0) throw StructuralError("DFA has no states");
  if (dfa.trans.size() != static_cast<size_t>(ns))
    throw StructuralError("DFA transition table is not total");
  for (const auto& row : dfa.trans) {
    if (row.size() != dfa.alphabet.size())
      throw StructuralError("DFA transition table is not total");
    for (int q : row)
      if (q < 0 || q >= ns) throw StructuralError("DFA transition to unknown state");
  }

  using StateMap = std::vector<int>;
  StateMap id(ns);
  for (int i = 0; i < ns; ++i) id[i] = i;

  auto compose = [ns](const StateMap& f, const StateMap& g) {
    // f then g, matching h(xy) = h(x)h(y) with left-to-right action
    StateMap r(ns);
    for (int i = 0; i < ns; ++i) r[i] = g[f[i]];
    return r;
  };

  std::map<StateMap, Elem> index;
  std::vector<StateMap> elems;
  auto intern = [&](const StateMap& m) {
    auto it = index.find(m);
    if (it != index.end()) return std::make_pair(it->second, false);
    Elem e = static_cast<Elem>(elems.size());
    index.emplace(m, e);
    elems.push_back(m);
    return std::make_pair(e, true);
  };

  intern(id);
  std::vector<StateMap> gens;
  std::map<char, Elem> letter_values;
  for (size_t a = 0; a < dfa.alphabet.size(); ++a) {
    StateMap m(ns);
    for (int q = 0; q < ns; ++q) m[q] = dfa.trans[q][a];
    letter_values[dfa.alphabet[a]] = intern(m).first;
    gens.push_back(m);
  }

  std::queue<Elem> frontier;
  for (Elem e = 0; e < static_cast<Elem>(elems.size()); ++e) frontier.push(e);
  while (!frontier.empty()) {
    Elem e = frontier.front();
    frontier.pop();
    for (const auto& g : gens) {
      auto [ne, fresh] = intern(compose(elems[e], g));
      if (fresh) frontier.push(ne);
    }
  }

  const int n = static_cast<int>(elems.size());
  std::vector<Elem> table(static_cast<size_t>(n) * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      auto it = index.find(compose(elems[a], elems[b]));
      if (it == index.end())
        throw StructuralError("transition monoid closure failed");  // unreachable
      table[static_cast<size_t>(a) * n + b] = it->second;
    }

  auto render = [&](const StateMap& m) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < ns; ++i) {
      if (i) os << ",";
      os << dfa.states[m[i]];
    }
    os << "]";
    return os.str();
  };
  std::vector<std::string> names;
  names.reserve(elems.size());
  for (const auto& m : elems) names.push_back(render(m));

  auto monoid = std::make_shared<const FiniteMonoid>(std::move(names), index.at(id),
                                                     std::move(table));
  Homomorphism hom(monoid.get(), dfa.alphabet, std::move(letter_values));
  return Typing{std::move(monoid), std::move(hom)};
}

}  // namespace mcfgi
