#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mcfgi/monoid.hpp"

namespace mcfgi {

using Tuple = std::vector<std::string>;

inline int total_length(const Tuple& t) {
  int n = 0;
  for (const auto& w : t) n += static_cast<int>(w.size());
  return n;
}

// Fixed total order on tuples: by total length, then lexicographic over the
// component sequence with a separator ordered below all terminals.
bool tuple_less(const Tuple& a, const Tuple& b);

struct TupleOrder {
  bool operator()(const Tuple& a, const Tuple& b) const { return tuple_less(a, b); }
};

// One item of a sentence context: a terminal letter or a named hole.
struct CtxItem {
  int hole = -1;  // 0-based hole name, or -1 for a terminal
  char ch = 0;
  bool is_hole() const { return hole >= 0; }
  friend bool operator==(const CtxItem& a, const CtxItem& b) {
    return a.hole == b.hole && a.ch == b.ch;
  }
};

// A word over terminals and holes [1]..[d], each hole exactly once.
class SentenceContext {
 public:
  SentenceContext() = default;
  SentenceContext(int arity, std::vector<CtxItem> items);

  // Convenience: parse "a[1]b[2]cc" style strings (holes as [k]).
  static SentenceContext parse(const std::string& text);

  int arity() const { return arity_; }
  const std::vector<CtxItem>& items() const { return items_; }

  // Left-to-right hole names (0-based): perm[i] = name of the i-th hole.
  std::vector<int> permutation() const;
  // Boundary strings u_0..u_d around the holes in reading order.
  std::vector<std::string> boundaries() const;

  int terminal_length() const;

  // Substitute t[i] for hole i.
  std::string fill(const Tuple& t) const;

  std::string to_string() const;  // holes rendered as [1]..[d]

  friend bool operator==(const SentenceContext& a, const SentenceContext& b) {
    return a.items_ == b.items_;
  }
  friend bool operator!=(const SentenceContext& a, const SentenceContext& b) {
    return !(a == b);
  }

 private:
  int arity_ = 0;
  std::vector<CtxItem> items_;
};

// (sigma; m_0..m_d): the finite external state of a tuple occurrence.
struct InterfaceType {
  std::vector<int> perm;       // 0-based; perm[i] = name of the i-th hole
  std::vector<Elem> boundary;  // d+1 monoid elements

  int arity() const { return static_cast<int>(perm.size()); }

  friend bool operator==(const InterfaceType& a, const InterfaceType& b) {
    return a.perm == b.perm && a.boundary == b.boundary;
  }
  friend bool operator!=(const InterfaceType& a, const InterfaceType& b) {
    return !(a == b);
  }
  friend bool operator<(const InterfaceType& a, const InterfaceType& b) {
    if (a.perm != b.perm) return a.perm < b.perm;
    return a.boundary < b.boundary;
  }

  std::string to_string(const FiniteMonoid& m) const;
};

InterfaceType interface_type(const Homomorphism& h, const SentenceContext& e);

// tau_st = (id_1; 1, 1), the interface of the empty unary context.
InterfaceType start_interface(const FiniteMonoid& m);

// One slot of a tuple occurrence: component `comp` covers word positions
// [begin, end); begin == end marks a zero-length slot at that cut.
struct OccSlot {
  int comp = 0;
  int begin = 0;
  int end = 0;
  friend bool operator==(const OccSlot& a, const OccSlot& b) {
    return a.comp == b.comp && a.begin == b.begin && a.end == b.end;
  }
  friend bool operator<(const OccSlot& a, const OccSlot& b) {
    if (a.begin != b.begin) return a.begin < b.begin;
    if (a.end != b.end) return a.end < b.end;
    return a.comp < b.comp;
  }
};

// A pair (E, x) with E[x] = w, stored as the left-to-right slot sequence.
// Slots are ordered by position; zero-length slots sharing a cut appear in
// their tie order.  Two occurrences differing only in tie order are distinct.
struct TupleOccurrence {
  std::string word;
  int arity = 0;
  std::vector<OccSlot> slots;  // in reading order

  Tuple tuple() const;
  SentenceContext context() const;

  friend bool operator==(const TupleOccurrence& a, const TupleOccurrence& b) {
    return a.word == b.word && a.arity == b.arity && a.slots == b.slots;
  }
};

// All arity-d occurrences in w per the tie-order convention, emitted in
// (context order key, slot sequence) order.
std::vector<TupleOccurrence> enumerate_occurrences(const std::string& w, int d,
                                                   int fanout_bound);

// Total order on contexts: first by terminal length, then lexicographically
// over the encoded item sequence, terminals (in declared alphabet order)
// before holes, holes by index.
struct ContextOrder {
  const std::vector<char>* alphabet;

  int symbol_code(const CtxItem& it) const;
  // (terminal length, encoded items); usable as a sort key.
  std::pair<int, std::vector<int>> key(const SentenceContext& e) const;
  bool operator()(const SentenceContext& a, const SentenceContext& b) const;
};

// Enumerates arity-d contexts in ContextOrder, calling visit on each until it
// returns false or every context with key <= max_key has been seen.
void enumerate_contexts(const std::vector<char>& alphabet, int d,
                        const std::pair<int, std::vector<int>>& max_key,
                        const std::function<bool(const SentenceContext&)>& visit);

}  // namespace mcfgi
