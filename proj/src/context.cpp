#include "mcfgi/context.hpp"

#include <algorithm>
#include <sstream>

namespace mcfgi {

bool tuple_less(const Tuple& a, const Tuple& b) {
  const int la = total_length(a), lb = total_length(b);
  if (la != lb) return la < lb;
  // Componentwise stream with a separator below every terminal.
  auto stream = [](const Tuple& t) {
    std::vector<int> s;
    s.reserve(total_length(t) + t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) s.push_back(-1);
      for (char c : t[i]) s.push_back(static_cast<unsigned char>(c));
    }
    return s;
  };
  return stream(a) < stream(b);
}

SentenceContext::SentenceContext(int arity, std::vector<CtxItem> items)
    : arity_(arity), items_(std::move(items)) {
  std::vector<int> seen(arity_, 0);
  for (const auto& it : items_) {
    if (it.is_hole()) {
      if (it.hole >= arity_) throw StructuralError("context hole name exceeds arity");
      ++seen[it.hole];
    }
  }
  for (int i = 0; i < arity_; ++i)
    if (seen[i] != 1)
      throw StructuralError("context hole " + std::to_string(i + 1) +
                            " must appear exactly once");
}

SentenceContext SentenceContext::parse(const std::string& text) {
  std::vector<CtxItem> items;
  int arity = 0;
  for (size_t i = 0; i < text.size();) {
    if (text[i] == '[') {
      size_t j = text.find(']', i);
      if (j == std::string::npos) throw StructuralError("unterminated hole in context");
      int name = std::stoi(text.substr(i + 1, j - i - 1));
      items.push_back(CtxItem{name - 1, 0});
      arity = std::max(arity, name);
      i = j + 1;
    } else {
      items.push_back(CtxItem{-1, text[i]});
      ++i;
    }
  }
  return SentenceContext(arity, std::move(items));
}

std::vector<int> SentenceContext::permutation() const {
  std::vector<int> perm;
  perm.reserve(arity_);
  for (const auto& it : items_)
    if (it.is_hole()) perm.push_back(it.hole);
  return perm;
}

std::vector<std::string> SentenceContext::boundaries() const {
  std::vector<std::string> bs(arity_ + 1);
  int k = 0;
  for (const auto& it : items_) {
    if (it.is_hole())
      ++k;
    else
      bs[k].push_back(it.ch);
  }
  return bs;
}

int SentenceContext::terminal_length() const {
  return static_cast<int>(items_.size()) - arity_;
}

std::string SentenceContext::fill(const Tuple& t) const {
  if (static_cast<int>(t.size()) != arity_)
    throw DomainError("fill: tuple arity does not match context arity");
  std::string out;
  for (const auto& it : items_) {
    if (it.is_hole())
      out += t[it.hole];
    else
      out.push_back(it.ch);
  }
  return out;
}

std::string SentenceContext::to_string() const {
  std::string out;
  for (const auto& it : items_) {
    if (it.is_hole()) {
      out += "[";
      out += std::to_string(it.hole + 1);
      out += "]";
    } else {
      out.push_back(it.ch);
    }
  }
  return out;
}

std::string InterfaceType::to_string(const FiniteMonoid& m) const {
  std::ostringstream os;
  os << "(";
  bool id = true;
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) id = false;
  if (id) {
    os << "id" << perm.size();
  } else {
    for (size_t i = 0; i < perm.size(); ++i) os << (i ? " " : "") << perm[i] + 1;
  }
  os << ";";
  for (size_t i = 0; i < boundary.size(); ++i)
    os << (i ? "," : "") << m.name(boundary[i]);
  os << ")";
  return os.str();
}

InterfaceType interface_type(const Homomorphism& h, const SentenceContext& e) {
  InterfaceType t;
  t.perm = e.permutation();
  for (const auto& u : e.boundaries()) t.boundary.push_back(h.word(u));
  return t;
}

InterfaceType start_interface(const FiniteMonoid& m) {
  return InterfaceType{{0}, {m.identity(), m.identity()}};
}

Tuple TupleOccurrence::tuple() const {
  Tuple t(arity);
  for (const auto& s : slots) t[s.comp] = word.substr(s.begin, s.end - s.begin);
  return t;
}

SentenceContext TupleOccurrence::context() const {
  std::vector<CtxItem> items;
  int pos = 0;
  for (const auto& s : slots) {
    for (; pos < s.begin; ++pos) items.push_back(CtxItem{-1, word[pos]});
    items.push_back(CtxItem{s.comp, 0});
    pos = s.end;
  }
  for (; pos < static_cast<int>(word.size()); ++pos)
    items.push_back(CtxItem{-1, word[pos]});
  return SentenceContext(arity, std::move(items));
}

std::vector<TupleOccurrence> enumerate_occurrences(const std::string& w, int d,
                                                   int fanout_bound) {
  if (d < 1 || d > fanout_bound)
    throw DomainError("occurrence arity outside [1, fan-out bound]");
  const int n = static_cast<int>(w.size());
  std::vector<TupleOccurrence> out;
  std::vector<OccSlot> slots;
  std::vector<bool> used(d, false);

  // Slots are chosen in reading order; a zero-length slot at the end cut of a
  // preceding positive slot is reachable, one strictly inside is not.
  auto rec = [&](auto&& self, int pos, int placed) -> void {
    if (placed == d) {
      out.push_back(TupleOccurrence{w, d, slots});
      return;
    }
    for (int c = 0; c < d; ++c) {
      if (used[c]) continue;
      used[c] = true;
      for (int s = pos; s <= n; ++s)
        for (int e = s; e <= n; ++e) {
          slots.push_back(OccSlot{c, s, e});
          self(self, e, placed + 1);
          slots.pop_back();
        }
      used[c] = false;
    }
  };
  rec(rec, 0, 0);

  // Deterministic emission: by induced-context shape, then slot sequence.
  auto key = [](const TupleOccurrence& o) {
    std::vector<int> k;
    k.reserve(o.slots.size() * 3);
    for (const auto& s : o.slots) {
      k.push_back(s.begin);
      k.push_back(s.end);
      k.push_back(s.comp);
    }
    return k;
  };
  std::sort(out.begin(), out.end(), [&](const TupleOccurrence& a, const TupleOccurrence& b) {
    const int ta = static_cast<int>(a.word.size()) - (total_length(a.tuple()));
    const int tb = static_cast<int>(b.word.size()) - (total_length(b.tuple()));
    if (ta != tb) return ta < tb;
    return key(a) < key(b);
  });
  return out;
}

int ContextOrder::symbol_code(const CtxItem& it) const {
  if (it.is_hole()) return static_cast<int>(alphabet->size()) + it.hole;
  auto pos = std::find(alphabet->begin(), alphabet->end(), it.ch);
  if (pos == alphabet->end())
    throw StructuralError(std::string("context letter outside alphabet: ") + it.ch);
  return static_cast<int>(pos - alphabet->begin());
}

std::pair<int, std::vector<int>> ContextOrder::key(const SentenceContext& e) const {
  std::vector<int> enc;
  enc.reserve(e.items().size());
  for (const auto& it : e.items()) enc.push_back(symbol_code(it));
  return {e.terminal_length(), std::move(enc)};
}

bool ContextOrder::operator()(const SentenceContext& a, const SentenceContext& b) const {
  return key(a) < key(b);
}

void enumerate_contexts(const std::vector<char>& alphabet, int d,
                        const std::pair<int, std::vector<int>>& max_key,
                        const std::function<bool(const SentenceContext&)>& visit) {
  const int nsym = static_cast<int>(alphabet.size());
  bool stop = false;
  for (int tlen = 0; tlen <= max_key.first && !stop; ++tlen) {
    std::vector<CtxItem> items;
    std::vector<bool> hole_used(d, false);
    // Recursive generation in ascending symbol-code order yields contexts in
    // lexicographic encoded order within this terminal length.
    auto rec = [&](auto&& self, int holes_left, int terms_left) -> void {
      if (stop) return;
      if (holes_left == 0 && terms_left == 0) {
        SentenceContext e(d, items);
        if (tlen == max_key.first) {
          std::vector<int> enc;
          for (const auto& it : items)
            enc.push_back(it.is_hole() ? nsym + it.hole
                                       : static_cast<int>(std::find(alphabet.begin(),
                                                                    alphabet.end(), it.ch) -
                                                          alphabet.begin()));
          if (enc > max_key.second) {
            stop = true;
            return;
          }
        }
        if (!visit(e)) stop = true;
        return;
      }
      if (terms_left > 0) {
        for (int a = 0; a < nsym && !stop; ++a) {
          items.push_back(CtxItem{-1, alphabet[a]});
          self(self, holes_left, terms_left - 1);
          items.pop_back();
        }
      }
      if (holes_left > 0) {
        for (int hname = 0; hname < d && !stop; ++hname) {
          if (hole_used[hname]) continue;
          hole_used[hname] = true;
          items.push_back(CtxItem{hname, 0});
          self(self, holes_left - 1, terms_left);
          items.pop_back();
          hole_used[hname] = false;
        }
      }
    };
    rec(rec, d, tlen);
  }
}

}  // namespace mcfgi
