#include "mcfgi/transport.hpp"

#include <sstream>

namespace mcfgi {

HType template_eval(const Template& t, const Homomorphism& h, const HType& q,
                    const HType& r) {
  if (t.count_vars(TemplateItem::XVar) != static_cast<int>(q.size()) ||
      t.count_vars(TemplateItem::YVar) != static_cast<int>(r.size()))
    throw DomainError("template_eval: child type arity mismatch");
  const FiniteMonoid& m = h.monoid();
  HType out;
  out.reserve(t.components.size());
  for (const auto& w : t.components) {
    Elem acc = m.identity();
    for (const auto& it : w) {
      switch (it.kind) {
        case TemplateItem::Terminal: acc = m.mul(acc, h.letter(it.ch)); break;
        case TemplateItem::XVar: acc = m.mul(acc, q[it.index - 1]); break;
        case TemplateItem::YVar: acc = m.mul(acc, r[it.index - 1]); break;
      }
    }
    out.push_back(acc);
  }
  return out;
}

namespace {

DecoratedTrace build_trace(const Template& t, const Homomorphism& h,
                           const InterfaceType& tau, const HType& sibling,
                           bool visible_x) {
  if (tau.arity() != t.arity())
    throw DomainError("trace: interface arity does not match template arity");
  const int need = t.count_vars(visible_x ? TemplateItem::YVar : TemplateItem::XVar);
  if (need != static_cast<int>(sibling.size()))
    throw DomainError("trace: sibling type arity mismatch");

  DecoratedTrace tr;
  tr.push_back(TraceItem{false, tau.boundary[0], 0});
  for (int i = 0; i < t.arity(); ++i) {
    const TemplateWord& w = t.components[tau.perm[i]];
    for (const auto& it : w) {
      switch (it.kind) {
        case TemplateItem::Terminal:
          tr.push_back(TraceItem{false, h.letter(it.ch), 0});
          break;
        case TemplateItem::XVar:
          if (visible_x)
            tr.push_back(TraceItem{true, 0, it.index});
          else
            tr.push_back(TraceItem{false, sibling[it.index - 1], 0});
          break;
        case TemplateItem::YVar:
          if (visible_x)
            tr.push_back(TraceItem{false, sibling[it.index - 1], 0});
          else
            tr.push_back(TraceItem{true, 0, it.index});
          break;
      }
    }
    tr.push_back(TraceItem{false, tau.boundary[i + 1], 0});
  }
  return tr;
}

}  // namespace

DecoratedTrace trace_b(const Template& t, const Homomorphism& h,
                       const InterfaceType& tau, const HType& r) {
  return build_trace(t, h, tau, r, /*visible_x=*/true);
}

DecoratedTrace trace_c(const Template& t, const Homomorphism& h,
                       const InterfaceType& tau, const HType& q) {
  return build_trace(t, h, tau, q, /*visible_x=*/false);
}

TraceNormalForm normalize(const DecoratedTrace& trace, const FiniteMonoid& m,
                          int var_count) {
  TraceNormalForm nf;
  nf.boundary.assign(var_count + 1, m.identity());
  int block = 0;
  for (const auto& it : trace) {
    if (it.visible) {
      nf.perm.push_back(it.var - 1);
      ++block;
      if (block > var_count) throw DomainError("normalize: more variables than announced");
    } else {
      nf.boundary[block] = m.mul(nf.boundary[block], it.elem);
    }
  }
  if (static_cast<int>(nf.perm.size()) != var_count)
    throw DomainError("normalize: missing variables in trace");
  return nf;
}

InterfaceType transport_b(const Template& t, const Homomorphism& h,
                          const InterfaceType& tau, const HType& r) {
  const int db = t.count_vars(TemplateItem::XVar);
  return normalize(trace_b(t, h, tau, r), h.monoid(), db).as_interface();
}

InterfaceType transport_c(const Template& t, const Homomorphism& h,
                          const InterfaceType& tau, const HType& q) {
  const int dc = t.count_vars(TemplateItem::YVar);
  return normalize(trace_c(t, h, tau, q), h.monoid(), dc).as_interface();
}

namespace {

SentenceContext build_induced(const Template& t, const SentenceContext& e,
                              const Tuple& filled, bool holes_on_x) {
  if (e.arity() != t.arity())
    throw DomainError("induced context: parent arity mismatch");
  const int need = t.count_vars(holes_on_x ? TemplateItem::YVar : TemplateItem::XVar);
  if (need != static_cast<int>(filled.size()))
    throw DomainError("induced context: substituted tuple arity mismatch");

  const auto perm = e.permutation();
  const auto bounds = e.boundaries();
  std::vector<CtxItem> items;
  auto emit_word = [&items](const std::string& s) {
    for (char c : s) items.push_back(CtxItem{-1, c});
  };
  emit_word(bounds[0]);
  for (int i = 0; i < e.arity(); ++i) {
    const TemplateWord& w = t.components[perm[i]];
    for (const auto& it : w) {
      switch (it.kind) {
        case TemplateItem::Terminal:
          items.push_back(CtxItem{-1, it.ch});
          break;
        case TemplateItem::XVar:
          if (holes_on_x)
            items.push_back(CtxItem{it.index - 1, 0});
          else
            emit_word(filled[it.index - 1]);
          break;
        case TemplateItem::YVar:
          if (holes_on_x)
            emit_word(filled[it.index - 1]);
          else
            items.push_back(CtxItem{it.index - 1, 0});
          break;
      }
    }
    emit_word(bounds[i + 1]);
  }
  const int d = holes_on_x ? t.count_vars(TemplateItem::XVar)
                           : t.count_vars(TemplateItem::YVar);
  return SentenceContext(d, std::move(items));
}

}  // namespace

SentenceContext induced_child_context_b(const Template& t, const SentenceContext& e,
                                        const Tuple& v) {
  return build_induced(t, e, v, /*holes_on_x=*/true);
}

SentenceContext induced_child_context_c(const Template& t, const SentenceContext& e,
                                        const Tuple& u) {
  return build_induced(t, e, u, /*holes_on_x=*/false);
}

std::string render_trace(const DecoratedTrace& tr, const FiniteMonoid& m,
                         char var_letter) {
  std::ostringstream os;
  bool first = true;
  for (const auto& it : tr) {
    if (!first) os << " ";
    first = false;
    if (it.visible)
      os << var_letter << it.var;
    else
      os << m.name(it.elem);
  }
  return os.str();
}

std::string render_reduced(const DecoratedTrace& tr, const FiniteMonoid& m,
                           char var_letter) {
  // Contract maximal underlined blocks; empty blocks disappear, nonempty
  // blocks show their product even when it is the identity.
  std::ostringstream os;
  bool first = true;
  auto put = [&](const std::string& s) {
    if (!first) os << " ";
    first = false;
    os << s;
  };
  bool in_block = false;
  Elem acc = m.identity();
  auto flush = [&]() {
    if (in_block) put(m.name(acc));
    in_block = false;
    acc = m.identity();
  };
  for (const auto& it : tr) {
    if (it.visible) {
      flush();
      put(std::string(1, var_letter) + std::to_string(it.var));
    } else {
      in_block = true;
      acc = m.mul(acc, it.elem);
    }
  }
  flush();
  return os.str();
}

}  // namespace mcfgi
