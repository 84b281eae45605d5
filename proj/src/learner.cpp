#include "mcfgi/learner.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_set>

namespace mcfgi {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// One variable interval of a segmentation, in reading order per component.
struct VarSlot {
  bool y_side = false;
  int index = 0;  // 1-based component index on its side
  int begin = 0;
  int end = 0;
};

}  // namespace

// Per-parent-tuple scratch: component strings, interval string ids, interval
// h-values, and the segmentation recursions.
struct SegContext {
  const Hypothesis& H;
  std::vector<std::string> comps;
  std::vector<int> len;
  int arity = 0;
  int total_len = 0;
  // triangular tables per component, entry (a,b) with a <= b
  std::vector<std::vector<int>> sub_id;  // string pool id or -1
  std::vector<std::vector<Elem>> hval;

  std::vector<std::vector<VarSlot>> slots;  // per component, reading order

  SegContext(const Hypothesis& h, const Tuple& parent) : H(h) {
    arity = static_cast<int>(parent.size());
    comps = parent;
    slots.resize(arity);
    const FiniteMonoid& m = H.hom().monoid();
    for (const auto& s : comps) {
      const int n = static_cast<int>(s.size());
      len.push_back(n);
      total_len += n;
      std::vector<int> ids((n + 1) * (n + 2) / 2, -1);
      std::vector<Elem> hv((n + 1) * (n + 2) / 2, m.identity());
      for (int a = 0; a <= n; ++a) {
        for (int b = a; b <= n; ++b) {
          const int k = tri(n, a, b);
          if (b > a) hv[k] = m.mul(hv[tri(n, a, b - 1)], H.hom().letter(s[b - 1]));
          auto it = H.str_ids_.find(s.substr(a, b - a));
          ids[k] = it == H.str_ids_.end() ? -1 : it->second;
        }
      }
      sub_id.push_back(std::move(ids));
      hval.push_back(std::move(hv));
    }
  }

  static int tri(int n, int a, int b) { return a * (n + 1) - a * (a - 1) / 2 + (b - a); }
  int str_at(int c, int a, int b) const { return sub_id[c][tri(len[c], a, b)]; }
  Elem h_at(int c, int a, int b) const { return hval[c][tri(len[c], a, b)]; }

  // All segmentations with d_b x-variables and d_c y-variables; visit()
  // inspects `slots`.
  template <typename Fn>
  void enumerate(int d_b, int d_c, Fn&& visit) {
    rec(0, 0, 0, 0, d_b, d_c, visit);
  }

  // Constrained variant: variable contents must equal the given component
  // strings (empty strings allowed).
  template <typename Fn>
  void enumerate_matching(const Tuple& x, const Tuple& y, Fn&& visit) {
    rec_match(0, 0, 0, 0, x, y, visit);
  }

  // Placements of one side only; `slots` holds just those on each visit.
  template <typename Fn>
  void enumerate_placements(const Tuple& fixed, bool fixed_is_y, Fn&& visit) {
    rec_place(0, 0, 0, fixed, fixed_is_y, visit);
  }

  // Free sibling variables interleaved around a pinned placement (the
  // current contents of `slots`).  The visitor returns false to stop.
  template <typename Fn>
  bool enumerate_pinned_free(const std::vector<std::vector<VarSlot>>& pinned,
                             bool other_is_y, int d_other, Fn&& visit) {
    for (auto& s : slots) s.clear();
    return rec_pinned(0, 0, 0, 0, pinned, other_is_y, d_other, visit);
  }

  // Content-anchored variables interleaved around a pinned placement.
  template <typename Fn>
  void enumerate_pinned_matching(const std::vector<std::vector<VarSlot>>& pinned,
                                 bool other_is_y, const Tuple& other, Fn&& visit) {
    for (auto& s : slots) s.clear();
    rec_pinned_match(0, 0, 0, 0, pinned, other_is_y, other, visit);
  }


 private:
  template <typename Fn>
  void rec(int c, int pos, int used_x, int used_y, int d_b, int d_c, Fn&& visit) {
    if (c == arity) {
      if (used_x == (1 << d_b) - 1 && used_y == (1 << d_c) - 1) visit();
      return;
    }
    rec(c + 1, 0, used_x, used_y, d_b, d_c, visit);  // close this component
    const int n = len[c];
    for (int side = 0; side < 2; ++side) {
      const int d = side ? d_c : d_b;
      const int used = side ? used_y : used_x;
      for (int v = 0; v < d; ++v) {
        if (used & (1 << v)) continue;
        const int nused_x = side ? used_x : (used_x | (1 << v));
        const int nused_y = side ? (used_y | (1 << v)) : used_y;
        for (int s = pos; s <= n; ++s)
          for (int e = s; e <= n; ++e) {
            slots[c].push_back(VarSlot{side == 1, v + 1, s, e});
            rec(c, e, nused_x, nused_y, d_b, d_c, visit);
            slots[c].pop_back();
          }
      }
    }
  }

  template <typename Fn>
  void rec_pinned_match(int c, int pos, size_t k, int used,
                        const std::vector<std::vector<VarSlot>>& pinned, bool other_is_y,
                        const Tuple& other, Fn&& visit) {
    const int d = static_cast<int>(other.size());
    if (c == arity) {
      if (used == (1 << d) - 1) visit();
      return;
    }
    const auto& pin = pinned[c];
    if (k == pin.size()) {
      rec_pinned_match(c + 1, 0, 0, used, pinned, other_is_y, other, visit);
    } else if (pin[k].begin >= pos) {
      slots[c].push_back(pin[k]);
      rec_pinned_match(c, pin[k].end, k + 1, used, pinned, other_is_y, other, visit);
      slots[c].pop_back();
    }
    const int limit = k < pin.size() ? pin[k].begin : len[c];
    const std::string& w = comps[c];
    for (int v = 0; v < d; ++v) {
      if (used & (1 << v)) continue;
      const std::string& want = other[v];
      const int wl = static_cast<int>(want.size());
      for (int s = pos; s + wl <= limit; ++s) {
        if (w.compare(s, wl, want) != 0) continue;
        slots[c].push_back(VarSlot{other_is_y, v + 1, s, s + wl});
        rec_pinned_match(c, s + wl, k, used | (1 << v), pinned, other_is_y, other, visit);
        slots[c].pop_back();
      }
    }
  }

  template <typename Fn>
  void rec_match(int c, int pos, int used_x, int used_y, const Tuple& x, const Tuple& y,
                 Fn&& visit) {
    const int d_b = static_cast<int>(x.size()), d_c = static_cast<int>(y.size());
    if (c == arity) {
      if (used_x == (1 << d_b) - 1 && used_y == (1 << d_c) - 1) visit();
      return;
    }
    rec_match(c + 1, 0, used_x, used_y, x, y, visit);
    const int n = len[c];
    const std::string& w = comps[c];
    for (int side = 0; side < 2; ++side) {
      const Tuple& t = side ? y : x;
      const int d = side ? d_c : d_b;
      const int used = side ? used_y : used_x;
      for (int v = 0; v < d; ++v) {
        if (used & (1 << v)) continue;
        const std::string& want = t[v];
        const int wl = static_cast<int>(want.size());
        const int nused_x = side ? used_x : (used_x | (1 << v));
        const int nused_y = side ? (used_y | (1 << v)) : used_y;
        for (int s = pos; s + wl <= n; ++s) {
          if (w.compare(s, wl, want) != 0) continue;
          slots[c].push_back(VarSlot{side == 1, v + 1, s, s + wl});
          rec_match(c, s + wl, nused_x, nused_y, x, y, visit);
          slots[c].pop_back();
        }
      }
    }
  }

  template <typename Fn>
  void rec_place(int c, int pos, int used, const Tuple& fixed, bool fixed_is_y,
                 Fn&& visit) {
    const int d = static_cast<int>(fixed.size());
    if (c == arity) {
      if (used == (1 << d) - 1) visit();
      return;
    }
    rec_place(c + 1, 0, used, fixed, fixed_is_y, visit);
    const int n = len[c];
    const std::string& w = comps[c];
    for (int v = 0; v < d; ++v) {
      if (used & (1 << v)) continue;
      const std::string& want = fixed[v];
      const int wl = static_cast<int>(want.size());
      for (int s = pos; s + wl <= n; ++s) {
        if (w.compare(s, wl, want) != 0) continue;
        slots[c].push_back(VarSlot{fixed_is_y, v + 1, s, s + wl});
        rec_place(c, s + wl, used | (1 << v), fixed, fixed_is_y, visit);
        slots[c].pop_back();
      }
    }
  }

  // Keeps the pinned slots in order; free variables may take any interval
  // between them (a zero-length free slot on a pinned boundary lands before
  // or after it depending on which side of the pinned slot it is emitted).
  template <typename Fn>
  bool rec_pinned(int c, int pos, size_t k, int used, const std::vector<std::vector<VarSlot>>& pinned,
                  bool other_is_y, int d_other, Fn&& visit) {
    if (c == arity) {
      if (used == (1 << d_other) - 1)
        if (!visit()) return false;
      return true;
    }
    const auto& pin = pinned[c];
    if (k == pin.size()) {
      if (!rec_pinned(c + 1, 0, 0, used, pinned, other_is_y, d_other, visit)) return false;
    } else if (pin[k].begin >= pos) {
      slots[c].push_back(pin[k]);
      if (!rec_pinned(c, pin[k].end, k + 1, used, pinned, other_is_y, d_other, visit)) {
        slots[c].pop_back();
        return false;
      }
      slots[c].pop_back();
    }
    const int limit = k < pin.size() ? pin[k].begin : len[c];
    for (int v = 0; v < d_other; ++v) {
      if (used & (1 << v)) continue;
      for (int s = pos; s <= limit; ++s)
        for (int e = s; e <= limit; ++e) {
          slots[c].push_back(VarSlot{other_is_y, v + 1, s, e});
          const bool go =
              rec_pinned(c, e, k, used | (1 << v), pinned, other_is_y, d_other, visit);
          slots[c].pop_back();
          if (!go) return false;
        }
    }
    return true;
  }

};

namespace {

// Walks a segmentation in the parent interface's reading order, computing
// both transported child interfaces in one pass.
struct TransportScratch {
  std::vector<int> kb, kc;
  std::vector<Elem> nb, nc;
  std::vector<int> enc;  // reused encoding buffer

  void compute(const SegContext& sc, const InterfaceType& tau, const FiniteMonoid& m) {
    kb.clear();
    kc.clear();
    nb.clear();
    nc.clear();
    Elem acc_b = tau.boundary[0], acc_c = tau.boundary[0];
    for (int i = 0; i < sc.arity; ++i) {
      const int c = tau.perm[i];
      int pos = 0;
      for (const auto& sl : sc.slots[c]) {
        const Elem gap = sc.h_at(c, pos, sl.begin);
        acc_b = m.mul(acc_b, gap);
        acc_c = m.mul(acc_c, gap);
        const Elem content = sc.h_at(c, sl.begin, sl.end);
        if (!sl.y_side) {
          nb.push_back(acc_b);
          acc_b = m.identity();
          kb.push_back(sl.index - 1);
          acc_c = m.mul(acc_c, content);
        } else {
          nc.push_back(acc_c);
          acc_c = m.identity();
          kc.push_back(sl.index - 1);
          acc_b = m.mul(acc_b, content);
        }
        pos = sl.end;
      }
      const Elem tail = sc.h_at(c, pos, sc.len[c]);
      acc_b = m.mul(m.mul(acc_b, tail), tau.boundary[i + 1]);
      acc_c = m.mul(m.mul(acc_c, tail), tau.boundary[i + 1]);
    }
    nb.push_back(acc_b);
    nc.push_back(acc_c);
  }

  bool b_side_equals(const InterfaceType& t) const {
    return t.perm == kb && t.boundary == nb;
  }
  bool c_side_equals(const InterfaceType& t) const {
    return t.perm == kc && t.boundary == nc;
  }

  const std::vector<int>& encode_b() {
    enc.clear();
    enc.push_back(static_cast<int>(kb.size()));
    enc.insert(enc.end(), kb.begin(), kb.end());
    enc.insert(enc.end(), nb.begin(), nb.end());
    return enc;
  }
  const std::vector<int>& encode_c() {
    enc.clear();
    enc.push_back(static_cast<int>(kc.size()));
    enc.insert(enc.end(), kc.begin(), kc.end());
    enc.insert(enc.end(), nc.begin(), nc.end());
    return enc;
  }
};

Template template_from_slots(const SegContext& sc) {
  Template t;
  t.components.resize(sc.arity);
  for (int c = 0; c < sc.arity; ++c) {
    TemplateWord& w = t.components[c];
    int pos = 0;
    for (const auto& sl : sc.slots[c]) {
      for (int i = pos; i < sl.begin; ++i)
        w.push_back(TemplateItem{TemplateItem::Terminal, sc.comps[c][i], 0});
      w.push_back(
          TemplateItem{sl.y_side ? TemplateItem::YVar : TemplateItem::XVar, 0, sl.index});
      pos = sl.end;
    }
    for (int i = pos; i < sc.len[c]; ++i)
      w.push_back(TemplateItem{TemplateItem::Terminal, sc.comps[c][i], 0});
  }
  return t;
}

}  // namespace

LearnerBinaryRule BinaryRuleView::materialize() const {
  return LearnerBinaryRule{parent, template_from_slots(*seg), child_b, child_c};
}

// ---------------------------------------------------------------------------
// pools

int Hypothesis::intern_str(const std::string& s) {
  auto it = str_ids_.find(s);
  if (it != str_ids_.end()) return it->second;
  int id = static_cast<int>(strs_.size());
  strs_.push_back(s);
  str_ids_.emplace(s, id);
  return id;
}

int Hypothesis::intern_tuple(const std::vector<int>& comp_ids) {
  auto it = tuple_ids_.find(comp_ids);
  if (it != tuple_ids_.end()) return it->second;
  int id = static_cast<int>(tuples_.size());
  tuples_.push_back(comp_ids);
  HType ht;
  for (int sid : comp_ids) ht.push_back(h_->word(strs_[sid]));
  tuple_types_.push_back(std::move(ht));
  tuple_ids_.emplace(comp_ids, id);
  if (static_cast<int>(nts_by_tuple_.size()) <= id) nts_by_tuple_.resize(id + 1);
  return id;
}

std::vector<int> Hypothesis::iface_encode(const InterfaceType& t) const {
  std::vector<int> enc;
  enc.reserve(1 + t.perm.size() + t.boundary.size());
  enc.push_back(t.arity());
  enc.insert(enc.end(), t.perm.begin(), t.perm.end());
  enc.insert(enc.end(), t.boundary.begin(), t.boundary.end());
  return enc;
}

int Hypothesis::intern_iface(const InterfaceType& t) {
  auto enc = iface_encode(t);
  auto it = iface_ids_.find(enc);
  if (it != iface_ids_.end()) return it->second;
  int id = static_cast<int>(ifaces_.size());
  ifaces_.push_back(t);
  iface_ids_.emplace(std::move(enc), id);
  return id;
}

int Hypothesis::intern_nt(int tuple, int iface) {
  auto key = std::make_pair(tuple, iface);
  auto it = nt_ids_.find(key);
  if (it != nt_ids_.end()) return it->second;
  int id = static_cast<int>(nts_.size());
  nts_.push_back(ObservedNt{tuple, iface});
  nt_witnesses_.emplace_back();
  nt_ids_.emplace(key, id);
  nts_by_tuple_[tuple].push_back(id);
  return id;
}

Tuple Hypothesis::nt_tuple(int nt) const {
  Tuple t;
  for (int sid : tuples_[nts_[nt].tuple]) t.push_back(strs_[sid]);
  return t;
}

std::string Hypothesis::nt_name(int nt) const {
  std::ostringstream os;
  os << "[(";
  const auto& comps = tuples_[nts_[nt].tuple];
  for (size_t i = 0; i < comps.size(); ++i)
    os << (i ? "," : "") << "'" << strs_[comps[i]] << "'";
  os << ") : " << ifaces_[nts_[nt].iface].to_string(h_->monoid()) << "]";
  return os.str();
}

int Hypothesis::find_nt(const Tuple& t, const InterfaceType& iface) const {
  std::vector<int> comp_ids;
  for (const auto& s : t) {
    auto it = str_ids_.find(s);
    if (it == str_ids_.end()) return -1;
    comp_ids.push_back(it->second);
  }
  auto tit = tuple_ids_.find(comp_ids);
  if (tit == tuple_ids_.end()) return -1;
  auto iit = iface_ids_.find(iface_encode(iface));
  if (iit == iface_ids_.end()) return -1;
  auto nit = nt_ids_.find(std::make_pair(tit->second, iit->second));
  return nit == nt_ids_.end() ? -1 : nit->second;
}

std::vector<std::string> Hypothesis::nt_witness_contexts(int nt) const {
  std::vector<std::string> out;
  for (int c : nt_witnesses_[nt]) out.push_back(ctx_strs_[c]);
  return out;
}

// ---------------------------------------------------------------------------
// build

Hypothesis Hypothesis::build(const std::vector<std::string>& sample,
                             const Homomorphism& h, int fanout_bound) {
  const auto t0 = std::chrono::steady_clock::now();
  if (fanout_bound < 1) throw DomainError("fan-out bound must be >= 1");
  Hypothesis H;
  H.h_ = &h;
  H.f_ = fanout_bound;

  H.sample_ = sample;
  std::sort(H.sample_.begin(), H.sample_.end(),
            [](const std::string& a, const std::string& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  H.sample_.erase(std::unique(H.sample_.begin(), H.sample_.end()), H.sample_.end());
  for (const auto& w : H.sample_)
    for (char c : w)
      if (!h.has_letter(c))
        throw StructuralError(std::string("sample letter outside alphabet: ") + c);

  H.metrics_.sample_words = static_cast<long long>(H.sample_.size());
  for (const auto& w : H.sample_)
    H.metrics_.sample_size_plus += std::max<size_t>(1, w.size());

  const InterfaceType tau_st = start_interface(h.monoid());
  H.intern_iface(tau_st);

  // Observation pass: every occurrence of every arity registers an observed
  // typed tuple and a concrete (context, tuple) pair.
  for (const auto& w : H.sample_) {
    for (int d = 1; d <= fanout_bound; ++d) {
      for (const auto& occ : enumerate_occurrences(w, d, fanout_bound)) {
        SentenceContext e = occ.context();
        Tuple x = occ.tuple();
        std::vector<int> comp_ids;
        for (const auto& s : x) comp_ids.push_back(H.intern_str(s));
        const int tid = H.intern_tuple(comp_ids);
        const int iid = H.intern_iface(interface_type(h, e));
        const int nt = H.intern_nt(tid, iid);

        const std::string es = e.to_string();
        int ctx;
        auto cit = H.ctx_ids_.find(es);
        if (cit == H.ctx_ids_.end()) {
          ctx = static_cast<int>(H.ctx_strs_.size());
          H.ctx_strs_.push_back(es);
          H.ctx_ids_.emplace(es, ctx);
          H.pairs_by_ctx_.emplace_back();
        } else {
          ctx = cit->second;
        }
        H.nt_witnesses_[nt].push_back(ctx);
        H.pairs_by_ctx_[ctx].push_back(tid);
        ++H.metrics_.concrete_pairs;
      }
    }
  }
  H.metrics_.observed_tuples = H.nt_count();

  // Start rules: words observed via the concrete empty unary context.
  for (const auto& w : H.sample_) {
    int nt = H.find_nt(Tuple{w}, tau_st);
    if (nt >= 0) H.start_nts_.push_back(nt);
  }
  std::sort(H.start_nts_.begin(), H.start_nts_.end());
  H.start_nts_.erase(std::unique(H.start_nts_.begin(), H.start_nts_.end()),
                     H.start_nts_.end());
  H.metrics_.start_rules = static_cast<long long>(H.start_nts_.size());

  // Terminal rules: every observed single-letter unary tuple.
  for (int nt = 0; nt < H.nt_count(); ++nt) {
    const auto& comps = H.tuples_[H.nts_[nt].tuple];
    if (comps.size() == 1 && H.strs_[comps[0]].size() == 1)
      H.terminal_nts_.push_back(nt);
  }
  H.metrics_.terminal_rules = static_cast<long long>(H.terminal_nts_.size());

  // Typed substitution rules: group concrete pairs by (context, h-type) and
  // emit both directed rules for every ordered pair within a group.
  {
    std::set<std::pair<int, int>> seen;
    for (int ctx = 0; ctx < static_cast<int>(H.ctx_strs_.size()); ++ctx) {
      auto& tids = H.pairs_by_ctx_[ctx];
      std::sort(tids.begin(), tids.end());
      tids.erase(std::unique(tids.begin(), tids.end()), tids.end());
      if (tids.empty()) continue;
      const int iid =
          H.intern_iface(interface_type(h, SentenceContext::parse(H.ctx_strs_[ctx])));
      std::map<HType, std::vector<int>> by_type;
      for (int tid : tids) by_type[H.tuple_types_[tid]].push_back(tid);
      for (const auto& [ht, members] : by_type) {
        for (int a : members)
          for (int b : members) {
            const int from = H.nt_ids_.at({a, iid});
            const int to = H.nt_ids_.at({b, iid});
            if (seen.emplace(from, to).second)
              H.unit_rules_.push_back(UnitRule{from, to, ctx});
          }
      }
    }
  }
  H.metrics_.substitution_rules = static_cast<long long>(H.unit_rules_.size());

  H.metrics_.build_seconds = seconds_since(t0);
  return H;
}

// ---------------------------------------------------------------------------
// binary rule enumeration

void Hypothesis::for_each_binary_rule(
    const std::function<bool(const BinaryRuleView&)>& fn) const {
  const FiniteMonoid& m = h_->monoid();
  TransportScratch ts;
  std::vector<int> xs, ys;
  bool stop = false;
  for (int tid = 0; tid < static_cast<int>(tuples_.size()) && !stop; ++tid) {
    const auto& parents = nts_by_tuple_[tid];
    if (parents.empty()) continue;
    Tuple parent_tuple;
    for (int sid : tuples_[tid]) parent_tuple.push_back(strs_[sid]);
    SegContext sc(*this, parent_tuple);
    for (int d_b = 1; d_b <= f_ && !stop; ++d_b) {
      for (int d_c = 1; d_c <= f_ && !stop; ++d_c) {
        sc.enumerate(d_b, d_c, [&]() {
          if (stop) return;
          xs.assign(d_b, -1);
          ys.assign(d_c, -1);
          for (int c = 0; c < sc.arity; ++c)
            for (const auto& sl : sc.slots[c]) {
              const int sid = sc.str_at(c, sl.begin, sl.end);
              if (sl.y_side)
                ys[sl.index - 1] = sid;
              else
                xs[sl.index - 1] = sid;
            }
          for (int v : xs)
            if (v < 0) return;  // component string never observed anywhere
          for (int v : ys)
            if (v < 0) return;
          auto xit = tuple_ids_.find(xs);
          if (xit == tuple_ids_.end()) return;
          auto yit = tuple_ids_.find(ys);
          if (yit == tuple_ids_.end()) return;

          for (int parent : parents) {
            const InterfaceType& tau = ifaces_[nts_[parent].iface];
            ts.compute(sc, tau, m);
            auto bi = iface_ids_.find(ts.encode_b());
            if (bi == iface_ids_.end()) continue;
            auto ci = iface_ids_.find(ts.encode_c());
            if (ci == iface_ids_.end()) continue;
            auto bnt = nt_ids_.find({xit->second, bi->second});
            if (bnt == nt_ids_.end()) continue;
            auto cnt = nt_ids_.find({yit->second, ci->second});
            if (cnt == nt_ids_.end()) continue;
            if (!fn(BinaryRuleView{parent, bnt->second, cnt->second, &sc})) {
              stop = true;
              return;
            }
          }
        });
      }
    }
  }
}

long long Hypothesis::binary_rule_count() const {
  if (binary_rule_count_ >= 0) return binary_rule_count_;
  const auto t0 = std::chrono::steady_clock::now();
  long long n = 0;
  for_each_binary_rule([&](const BinaryRuleView&) {
    ++n;
    return true;
  });
  binary_rule_count_ = n;
  metrics_.binary_rules = n;
  metrics_.binary_count_seconds = seconds_since(t0);
  return n;
}

std::vector<LearnerBinaryRule> Hypothesis::materialize_binary_rules(long long limit) const {
  std::vector<LearnerBinaryRule> out;
  bool overflow = false;
  for_each_binary_rule([&](const BinaryRuleView& r) {
    if (static_cast<long long>(out.size()) >= limit) {
      overflow = true;
      return false;
    }
    out.push_back(r.materialize());
    return true;
  });
  if (overflow) throw DomainError("binary rule set exceeds the materialization limit");
  return out;
}

std::vector<LearnerWitness> Hypothesis::enumerate_witnesses(long long limit) const {
  // Each concrete parent occurrence of a parent nonterminal carries each of
  // the parent's segmentation rules as one typed witness.
  std::vector<std::vector<LearnerBinaryRule>> rules_by_parent(nt_count());
  for_each_binary_rule([&](const BinaryRuleView& r) {
    rules_by_parent[r.parent].push_back(r.materialize());
    return true;
  });
  std::vector<LearnerWitness> out;
  for (int nt = 0; nt < nt_count(); ++nt) {
    for (int ctx : nt_witnesses_[nt])
      for (const auto& r : rules_by_parent[nt]) {
        if (static_cast<long long>(out.size()) >= limit)
          throw DomainError("witness set exceeds the enumeration limit");
        out.push_back(LearnerWitness{ctx_strs_[ctx], r});
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// bounded-language saturation
//
// Every nonterminal [z:tau] derives its own tuple z whenever z either is a
// single-letter unary tuple or has at least two letters (peel one letter off
// and recurse; the child symbols exist because the decomposition's induced
// contexts are themselves observed).  Facts other than z require a
// substitution rule somewhere in the derivation, so the engine tracks only
// nonterminals whose fact sets can exceed {z}: it seeds them from the unit
// rules, finds the segmentation rules around them by anchored placement
// search, and joins fact sets semi-naively.  Untracked symbols contribute
// exactly their own tuple.  The equivalence with plain saturation over the
// full rule family is cross-checked in the tests.

struct SaturationEngine {
  const Hypothesis& H;
  const int bound;

  struct EngineRule {
    int parent;  // direct parent NT (rules fire into its unit predecessors
                 // when the hypothesis is unit-free)
    int child_b, child_c;
    bool b_tracked, c_tracked;
    int parent_tuple;
    std::vector<int> layout;  // per component: -1 marker, then slot triples
  };

  Tuple apply_layout(const EngineRule& r, const Tuple& u, const Tuple& v) {
    const Tuple& z = seg(r.parent_tuple).comps;
    Tuple out;
    size_t i = 0;
    int comp = -1;
    int pos = 0;
    std::string cur;
    auto close = [&]() {
      if (comp >= 0) {
        cur += z[comp].substr(pos);
        out.push_back(std::move(cur));
        cur.clear();
      }
    };
    while (i < r.layout.size()) {
      if (r.layout[i] == INT_MIN) {
        close();
        ++comp;
        pos = 0;
        ++i;
        continue;
      }
      const int signed_index = r.layout[i];
      const int begin = r.layout[i + 1];
      const int end = r.layout[i + 2];
      i += 3;
      cur += z[comp].substr(pos, begin - pos);
      if (signed_index > 0)
        cur += v[signed_index - 1];
      else
        cur += u[-signed_index - 1];
      pos = end;
    }
    close();
    return out;
  }

  std::vector<Tuple> fact_tuples;
  std::unordered_map<std::string, int> fact_ids;

  std::unordered_map<int, int> tracked_idx;  // nt -> index
  std::vector<int> tracked_nts;
  std::vector<std::vector<int>> tfacts;
  std::vector<std::unordered_set<int>> tseen;
  std::vector<int> min_nonself;   // per tracked index, INT_MAX when none
  std::vector<int> discovered_r;  // free-sibling remainder already searched
  std::vector<int> tracked_self;  // self fact id, -1 when underivable

  std::vector<EngineRule> rules;
  std::unordered_map<std::vector<int>, int, Hypothesis::VecHash> rule_ids;
  std::vector<std::vector<int>> rules_by_child;  // per tracked index

  std::vector<std::vector<int>> unit_sources;  // nt -> unit predecessors
  std::deque<std::pair<int, int>> queue;       // (tracked index, fact id)
  std::deque<int> rediscover;                  // tracked indices to re-search
  std::vector<int> parent_tuples;              // sorted by total length
  std::vector<std::unique_ptr<SegContext>> seg_cache;
  std::unordered_map<uint64_t, int> pair_gap_done;  // searched gap radius per pair
  long long diag_place_visits = 0, diag_pin_visits = 0, diag_match_visits = 0,
            diag_pair_checks = 0, diag_registered = 0, diag_joins = 0;

  SaturationEngine(const Hypothesis& h, int b) : H(h), bound(b) {
    unit_sources.resize(H.nt_count());
    if (!H.unit_free()) {
      for (const auto& u : H.unit_rules())
        if (u.from != u.to) unit_sources[u.to].push_back(u.from);
    }
    for (int t = 0; t < static_cast<int>(H.tuples_.size()); ++t)
      if (!H.nts_by_tuple_[t].empty()) parent_tuples.push_back(t);
    std::sort(parent_tuples.begin(), parent_tuples.end(), [&](int a, int b) {
      const int la = tuple_letters(a), lb = tuple_letters(b);
      if (la != lb) return la < lb;
      return a < b;
    });
    seg_cache.resize(H.tuples_.size());
  }

  int tuple_letters(int tuple_id) const {
    int n = 0;
    for (int sid : H.tuples_[tuple_id]) n += static_cast<int>(H.strs_[sid].size());
    return n;
  }

  static int letters_of(const Tuple& t) { return total_length(t); }

  bool selfable(int nt) const {
    const Tuple t = H.nt_tuple(nt);
    const int letters = letters_of(t);
    return letters >= 2 || (letters == 1 && t.size() == 1);
  }

  int self_fact(int nt) {
    return intern_fact(H.nt_tuple(nt));
  }

  int intern_fact(const Tuple& t) {
    std::string key;
    for (const auto& s : t) {
      key += s;
      key.push_back('\x01');
    }
    auto it = fact_ids.find(key);
    if (it != fact_ids.end()) return it->second;
    int id = static_cast<int>(fact_tuples.size());
    fact_tuples.push_back(t);
    fact_ids.emplace(std::move(key), id);
    return id;
  }

  SegContext& seg(int tuple_id) {
    auto& p = seg_cache[tuple_id];
    if (!p) {
      Tuple t;
      for (int sid : H.tuples_[tuple_id]) t.push_back(H.strs_[sid]);
      p = std::make_unique<SegContext>(H, t);
    }
    return *p;
  }

  // Static fact set of an untracked symbol: its own tuple when derivable.
  bool has_static_fact(int nt) const {
    return selfable(nt) && letters_of(H.nt_tuple(nt)) <= bound;
  }

  int track(int nt) {
    auto it = tracked_idx.find(nt);
    if (it != tracked_idx.end()) return it->second;
    const int idx = static_cast<int>(tracked_nts.size());
    tracked_idx.emplace(nt, idx);
    tracked_nts.push_back(nt);
    tfacts.emplace_back();
    tseen.emplace_back();
    rules_by_child.emplace_back();
    min_nonself.push_back(INT_MAX);
    discovered_r.push_back(-1);
    tracked_self.push_back(-1);
    if (has_static_fact(nt)) {
      const int fid = self_fact(nt);
      tracked_self[idx] = fid;
      tseen[idx].insert(fid);
      tfacts[idx].push_back(fid);
      queue.emplace_back(idx, fid);
    }
    return idx;
  }

  void add_fact(int nt, int fid) {
    // The symbol's own tuple is implicit while it stays untracked; tracking
    // on self-facts would cascade through every ancestor.
    const bool is_self =
        has_static_fact(nt) && fact_tuples[fid] == H.nt_tuple(nt);
    if (!tracked_idx.count(nt) && is_self) return;
    const int idx = track(nt);
    if (!tseen[idx].insert(fid).second) return;
    tfacts[idx].push_back(fid);
    queue.emplace_back(idx, fid);
    if (!is_self) {
      const int len = total_length(fact_tuples[fid]);
      if (len < min_nonself[idx]) {
        min_nonself[idx] = len;
        rediscover.push_back(idx);
      }
    }
  }

  const std::vector<int>& facts_of_tracked(int idx) const { return tfacts[idx]; }

  // Facts of a rule child: tracked children use their dynamic set, untracked
  // ones their static singleton.
  void child_facts(int nt, bool is_tracked, std::vector<int>& out) {
    out.clear();
    if (is_tracked) {
      out = tfacts[tracked_idx.at(nt)];
    } else if (has_static_fact(nt)) {
      out.push_back(self_fact(nt));
    }
  }

  void produce(int direct_parent, const Tuple& t) {
    if (total_length(t) > bound) return;
    const int fid = intern_fact(t);
    if (H.unit_free()) {
      for (int a : H.co_closure_[direct_parent]) add_fact(a, fid);
    } else {
      add_fact(direct_parent, fid);
    }
  }

  int tracked_self_of(int nt, bool is_tracked) const {
    return is_tracked ? tracked_self[tracked_idx.at(nt)] : -1;
  }

  // Both children on their own tuples only reproduces the parent tuple,
  // which is implicit; every other combination is joined.
  void join_rule(int ri) {
    ++diag_joins;
    const EngineRule r = rules[ri];  // copy: rules may grow during produce
    std::vector<int> fb, fc;
    child_facts(r.child_b, r.b_tracked, fb);
    child_facts(r.child_c, r.c_tracked, fc);
    const int self_b = tracked_self_of(r.child_b, r.b_tracked);
    const int self_c = tracked_self_of(r.child_c, r.c_tracked);
    for (int uf : fb)
      for (int vf : fc) {
        if (uf == self_b && vf == self_c && self_b >= 0 && self_c >= 0) continue;
        produce(r.parent, apply_layout(r, fact_tuples[uf], fact_tuples[vf]));
      }
  }

  // Structural key: parent, children, then the slot layout per component
  // (INT_MIN marks a component start; x-side indices are negated).
  std::vector<int> rule_key(int parent, int b, int c, const SegContext& sc) const {
    std::vector<int> k{parent, b, c};
    for (int comp = 0; comp < sc.arity; ++comp) {
      k.push_back(INT_MIN);
      for (const auto& sl : sc.slots[comp]) {
        k.push_back(sl.y_side ? sl.index : -sl.index);
        k.push_back(sl.begin);
        k.push_back(sl.end);
      }
    }
    return k;
  }

  // Returns true when the rule is (or already was) present.
  bool register_rule(int parent, int bnt, int cnt, const SegContext& sc) {
    const bool bt = tracked_idx.count(bnt) != 0;
    const bool ct = tracked_idx.count(cnt) != 0;
    if (!bt && !has_static_fact(bnt)) return false;
    if (!ct && !has_static_fact(cnt)) return false;
    auto key = rule_key(parent, bnt, cnt, sc);
    auto it = rule_ids.find(key);
    if (it != rule_ids.end()) {
      // upgrade static child slots if the child is tracked by now
      EngineRule& r = rules[it->second];
      bool upgraded = false;
      if (!r.b_tracked && bt) {
        r.b_tracked = true;
        rules_by_child[tracked_idx.at(bnt)].push_back(it->second);
        upgraded = true;
      }
      if (!r.c_tracked && ct) {
        r.c_tracked = true;
        rules_by_child[tracked_idx.at(cnt)].push_back(it->second);
        upgraded = true;
      }
      if (upgraded) join_rule(it->second);
      return true;
    }
    const int ri = static_cast<int>(rules.size());
    rules.push_back(EngineRule{parent, bnt, cnt, bt, ct, H.nts_[parent].tuple,
                               std::vector<int>(key.begin() + 3, key.end())});
    rule_ids.emplace(std::move(key), ri);
    if (bt) rules_by_child[tracked_idx.at(bnt)].push_back(ri);
    if (ct) rules_by_child[tracked_idx.at(cnt)].push_back(ri);
    join_rule(ri);
    return true;
  }

  // Minimum length of any fact the symbol can contribute.
  int min_fact_len(int nt) const {
    int m = INT_MAX;
    auto it = tracked_idx.find(nt);
    if (it != tracked_idx.end()) m = min_nonself[it->second];
    if (selfable(nt)) {
      const int l = letters_of(H.nt_tuple(nt));
      if (l <= bound) m = std::min(m, l);
    }
    return m;
  }

  static int add_sat(int a, int b) {
    return (a == INT_MAX || b == INT_MAX) ? INT_MAX : a + b;
  }

  // Locate segmentation rules in which `nt` occurs as a child.  Only the
  // symbol's non-self facts can give a parent anything new, so the search
  // radius follows min_nonself: with a free (untracked) sibling every
  // useful product has length >= remainder + min_nonself, and with a
  // tracked sibling the analogous bound is on the terminal gap.
  void discover(int idx) {
    const int nt = tracked_nts[idx];
    const Tuple x = H.nt_tuple(nt);
    const int lx = letters_of(x);
    const FiniteMonoid& m = H.hom().monoid();
    TransportScratch ts;

    std::vector<int> xs, ys;
    // Reads the children off the current slots and registers the rule for
    // one parent nonterminal; true when a rule was added or already known.
    auto try_register = [&](SegContext& sc, int parent) -> bool {
      xs.clear();
      ys.clear();
      int max_x = 0, max_y = 0;
      for (int c = 0; c < sc.arity; ++c)
        for (const auto& sl : sc.slots[c]) {
          if (sl.y_side)
            max_y = std::max(max_y, sl.index);
          else
            max_x = std::max(max_x, sl.index);
        }
      xs.assign(max_x, -1);
      ys.assign(max_y, -1);
      for (int c = 0; c < sc.arity; ++c)
        for (const auto& sl : sc.slots[c]) {
          const int sid = sc.str_at(c, sl.begin, sl.end);
          if (sl.y_side)
            ys[sl.index - 1] = sid;
          else
            xs[sl.index - 1] = sid;
        }
      for (int v : xs)
        if (v < 0) return false;
      for (int v : ys)
        if (v < 0) return false;
      auto xit = H.tuple_ids_.find(xs);
      if (xit == H.tuple_ids_.end()) return false;
      auto yit = H.tuple_ids_.find(ys);
      if (yit == H.tuple_ids_.end()) return false;
      const InterfaceType& tau = H.ifaces_[H.nts_[parent].iface];
      ts.compute(sc, tau, m);
      auto bi = H.iface_ids_.find(ts.encode_b());
      if (bi == H.iface_ids_.end()) return false;
      auto ci = H.iface_ids_.find(ts.encode_c());
      if (ci == H.iface_ids_.end()) return false;
      auto bnt = H.nt_ids_.find({xit->second, bi->second});
      if (bnt == H.nt_ids_.end()) return false;
      auto cnt = H.nt_ids_.find({yit->second, ci->second});
      if (cnt == H.nt_ids_.end()) return false;
      // only rules in which `nt` itself is one of the children matter here
      if (bnt->second != nt && cnt->second != nt) return false;
      return register_rule(parent, bnt->second, cnt->second, sc);
    };

    const int mns = min_nonself[idx];
    if (mns == INT_MAX) return;

    auto contains_components = [&](int tid, const Tuple& t) {
      for (const auto& s : t) {
        if (s.empty()) continue;
        bool found = false;
        for (int sid : H.tuples_[tid])
          if (H.strs_[sid].find(s) != std::string::npos) {
            found = true;
            break;
          }
        if (!found) return false;
      }
      return true;
    };
    // parents sorted by total letter count
    auto parents_in = [&](int lo, int hi, auto&& body) {
      auto it = std::lower_bound(parent_tuples.begin(), parent_tuples.end(), lo,
                                 [&](int tid, int v) { return tuple_letters(tid) < v; });
      for (; it != parent_tuples.end() && tuple_letters(*it) <= hi; ++it) body(*it);
    };

    // (i) free sibling, incremental in the remainder radius.  With an
    // untracked sibling the product is the parent tuple with this symbol's
    // slots replaced, whatever the sibling arrangement, so one registered
    // rule per (parent, placement, role) carries all the facts; pairs whose
    // sibling later turns dynamic are re-found from the sibling's side.
    // The transported interface of the placed side does not depend on the
    // sibling arrangement (everything between its slots contracts to the
    // region product), so mismatching parents are rejected before any
    // sibling search.
    const int r_max = bound - mns;
    const int r_done = discovered_r[idx];
    if (r_max > r_done) {
      discovered_r[idx] = r_max;
      parents_in(lx + r_done + 1, lx + r_max, [&](int tid) {
        if (!contains_components(tid, x)) return;
        SegContext& sc = seg(tid);
        const InterfaceType& want = H.nt_iface(nt);
        for (int role = 0; role < 2; ++role) {
          const bool fixed_is_y = role == 1;
          sc.enumerate_placements(x, fixed_is_y, [&]() {
            ++diag_place_visits;
            const auto pinned = sc.slots;
            for (int parent : H.nts_by_tuple_[tid]) {
              ts.compute(sc, H.ifaces_[H.nts_[parent].iface], m);
              const auto& kk = fixed_is_y ? ts.kc : ts.kb;
              const auto& nn = fixed_is_y ? ts.nc : ts.nb;
              if (kk != want.perm || nn != want.boundary) continue;
              bool done = false;
              for (int d_other = 1; d_other <= H.f_ && !done; ++d_other) {
                sc.enumerate_pinned_free(pinned, !fixed_is_y, d_other, [&]() {
                  ++diag_pin_visits;
                  if (try_register(sc, parent)) {
                    done = true;
                    return false;
                  }
                  return true;
                });
              }
            }
            // restore the placement for the surrounding enumeration
            sc.slots = pinned;
          });
        }
      });
    }

    // (ii) tracked sibling; snapshot, tracking may grow during joins.
    // Incremental per pair in the terminal-gap radius.  Products in which
    // one side keeps its own tuple already flow through the free-sibling
    // rules of the other side, so only products with two proper facts
    // matter here.
    const std::vector<int> others = tracked_nts;
    for (int other_nt : others) {
      ++diag_pair_checks;
      const int oidx = tracked_idx.at(other_nt);
      const int useful = add_sat(mns, min_nonself[oidx]);
      if (useful == INT_MAX || useful > bound) continue;
      const int gap_max = bound - useful;
      const uint64_t pkey =
          (static_cast<uint64_t>(std::min(idx, oidx)) << 32) |
          static_cast<uint32_t>(std::max(idx, oidx));
      auto [pit, fresh] = pair_gap_done.emplace(pkey, -1);
      if (!fresh && pit->second >= gap_max) continue;
      const int gap_done = pit->second;
      pit->second = gap_max;
      const Tuple y = H.nt_tuple(other_nt);
      const int ly = letters_of(y);
      parents_in(lx + ly + gap_done + 1, lx + ly + gap_max, [&](int tid) {
        if (!contains_components(tid, x) || !contains_components(tid, y)) return;
        SegContext& sc = seg(tid);
        const InterfaceType& want = H.nt_iface(nt);
        // this symbol placed first; its transported side is independent of
        // the sibling placement, so mismatching parents stop early
        for (int role = 0; role < 2; ++role) {
          const bool nt_is_y = role == 1;
          if (other_nt == nt && nt_is_y) break;
          sc.enumerate_placements(x, nt_is_y, [&]() {
            const auto pinned = sc.slots;
            for (int parent : H.nts_by_tuple_[tid]) {
              ts.compute(sc, H.ifaces_[H.nts_[parent].iface], m);
              const auto& kk = nt_is_y ? ts.kc : ts.kb;
              const auto& nn = nt_is_y ? ts.nc : ts.nb;
              if (kk != want.perm || nn != want.boundary) continue;
              sc.enumerate_pinned_matching(pinned, !nt_is_y, y, [&]() {
                ++diag_match_visits;
                try_register(sc, parent);
              });
              sc.slots = pinned;
            }
            sc.slots = pinned;
          });
        }
      });
    }
  }

  void run() {
    // Seed: unit rules feed the target's derivable self-tuple to the source;
    // with units eliminated the closure plays the same role.
    if (!H.unit_free()) {
      for (const auto& u : H.unit_rules()) {
        if (u.from == u.to) continue;
        if (has_static_fact(u.to)) add_fact(u.from, self_fact(u.to));
        if (tracked_idx.count(u.to)) {
          // facts already collected at the target flow across
          for (int fid : tfacts[tracked_idx.at(u.to)]) add_fact(u.from, fid);
        }
      }
    } else {
      for (int b = 0; b < H.nt_count(); ++b) {
        if (H.co_closure_[b].size() <= 1) continue;
        if (!has_static_fact(b)) continue;
        for (int a : H.co_closure_[b])
          if (a != b) add_fact(a, self_fact(b));
      }
    }

    std::vector<int> discovered_mns;
    long long discover_runs = 0;
    while (!queue.empty() || !rediscover.empty()) {
      if (queue.empty()) {
        const int idx = rediscover.front();
        rediscover.pop_front();
        discovered_mns.resize(tracked_nts.size(), INT_MAX);
        if (discovered_mns[idx] == min_nonself[idx]) continue;
        discovered_mns[idx] = min_nonself[idx];
        ++discover_runs;
        if (getenv("MCFGI_ENGINE_DIAG") && discover_runs % 256 == 0)
          fprintf(stderr,
                  "[diag] discovers=%lld tracked=%zu rules=%zu facts=%zu place=%lld "
                  "pin=%lld match=%lld pairchk=%lld joins=%lld\n",
                  discover_runs, tracked_nts.size(), rules.size(), fact_tuples.size(),
                  diag_place_visits, diag_pin_visits, diag_match_visits,
                  diag_pair_checks, diag_joins);
        discover(idx);
        continue;
      }
      auto [idx, fid] = queue.front();
      queue.pop_front();
      // delta joins
      for (size_t k = 0; k < rules_by_child[idx].size(); ++k) {
        const int ri = rules_by_child[idx][k];
        const EngineRule r = rules[ri];
        std::vector<int> other;
        if (r.b_tracked && tracked_idx.at(r.child_b) == idx) {
          const int self_c = tracked_self_of(r.child_c, r.c_tracked);
          const bool fid_self = fid == tracked_self[idx];
          child_facts(r.child_c, r.c_tracked, other);
          for (int vf : other) {
            if (fid_self && vf == self_c && self_c >= 0) continue;
            produce(r.parent, apply_layout(r, fact_tuples[fid], fact_tuples[vf]));
          }
        }
        if (r.c_tracked && tracked_idx.at(r.child_c) == idx) {
          const int self_b = tracked_self_of(r.child_b, r.b_tracked);
          const bool fid_self = fid == tracked_self[idx];
          child_facts(r.child_b, r.b_tracked, other);
          for (int uf : other) {
            if (fid_self && uf == self_b && self_b >= 0) continue;
            produce(r.parent, apply_layout(r, fact_tuples[uf], fact_tuples[fid]));
          }
        }
      }
      // unit propagation
      if (!H.unit_free()) {
        const int nt = tracked_nts[idx];
        for (int src : unit_sources[nt]) add_fact(src, fid);
      }
    }
  }

  std::vector<int> final_facts(int nt) {
    std::vector<int> out;
    auto it = tracked_idx.find(nt);
    if (it != tracked_idx.end()) {
      out = tfacts[it->second];
    } else if (has_static_fact(nt)) {
      out.push_back(self_fact(nt));
    }
    return out;
  }
};

std::vector<std::string> Hypothesis::language_up_to(int bound) const {
  if (bound < 0) throw DomainError("negative length bound");
  SaturationEngine eng(*this, bound);
  eng.run();
  std::set<std::string> words;
  for (int nt : start_nts_)
    for (int fid : eng.final_facts(nt)) {
      const Tuple& t = eng.fact_tuples[fid];
      if (t.size() == 1 && static_cast<int>(t[0].size()) <= bound) words.insert(t[0]);
    }
  std::vector<std::string> out(words.begin(), words.end());
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// ---------------------------------------------------------------------------
// unit elimination

Hypothesis Hypothesis::eliminate_units() const {
  Hypothesis out = *this;
  out.unit_free_ = true;
  out.binary_rule_count_ = -1;
  out.metrics_.binary_rules = -1;

  // co_closure[b]: every nonterminal with a unit path to b (reflexive).
  const int n = nt_count();
  std::vector<std::vector<int>> radj(n);
  for (const auto& u : unit_rules_)
    if (u.from != u.to) radj[u.to].push_back(u.from);
  out.co_closure_.assign(n, {});
  std::vector<int> stamp(n, -1);
  std::vector<int> stack;
  for (int b = 0; b < n; ++b) {
    stack.assign(1, b);
    stamp[b] = b;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      out.co_closure_[b].push_back(s);
      for (int p : radj[s])
        if (stamp[p] != b) {
          stamp[p] = b;
          stack.push_back(p);
        }
    }
    std::sort(out.co_closure_[b].begin(), out.co_closure_[b].end());
  }
  out.unit_rules_.clear();
  out.metrics_.substitution_rules = 0;
  return out;
}

long long Hypothesis::unit_free_binary_rule_count() const {
  if (!unit_free_)
    throw DomainError("unit_free_binary_rule_count requires a unit-free hypothesis");
  std::vector<long long> direct(nt_count(), 0);
  for_each_binary_rule([&](const BinaryRuleView& r) {
    ++direct[r.parent];
    return true;
  });
  long long total = 0;
  for (int b = 0; b < nt_count(); ++b)
    total += direct[b] * static_cast<long long>(co_closure_[b].size());
  return total;
}

// ---------------------------------------------------------------------------
// reporting

std::string LearnerMetrics::to_string() const {
  std::ostringstream os;
  os << "sample words: " << sample_words << "\n"
     << "sample size ||K||+: " << sample_size_plus << "\n"
     << "observed typed tuples: " << observed_tuples << "\n"
     << "observed concrete pairs: " << concrete_pairs << "\n"
     << "start rules: " << start_rules << "\n"
     << "terminal rules: " << terminal_rules << "\n"
     << "substitution rules: " << substitution_rules << "\n"
     << "binary witness rules: ";
  if (binary_rules < 0)
    os << "(not counted)";
  else
    os << binary_rules;
  os << "\n"
     << "build seconds: " << build_seconds << "\n";
  if (binary_rules >= 0) os << "binary count seconds: " << binary_count_seconds << "\n";
  return os.str();
}

std::string Hypothesis::report(long long rule_listing_limit) const {
  std::ostringstream os;
  os << "hypothesis" << (unit_free_ ? " (unit-free)" : "") << "\n";
  os << metrics_.to_string();
  os << "start rules:\n";
  for (int nt : start_nts_) os << "  S^ -> " << nt_name(nt) << "\n";
  os << "terminal rules:\n";
  for (int nt : terminal_nts_)
    os << "  " << nt_name(nt) << " -> '" << nt_tuple(nt)[0] << "'\n";
  os << "substitution rules:\n";
  for (const auto& u : unit_rules_)
    os << "  " << nt_name(u.from) << " -> " << nt_name(u.to) << "   [shared context "
       << ctx_strs_[u.shared_context] << "]\n";
  os << "binary witness rules (first " << rule_listing_limit << "):\n";
  long long listed = 0;
  for_each_binary_rule([&](const BinaryRuleView& r) {
    if (listed >= rule_listing_limit) return false;
    const auto rule = r.materialize();
    os << "  " << nt_name(rule.parent) << " -> " << rule.tmpl.to_string() << "("
       << nt_name(rule.child_b) << ", " << nt_name(rule.child_c) << ")\n";
    ++listed;
    return true;
  });
  return os.str();
}

}  // namespace mcfgi
