#pragma once

#include <string>
#include <vector>

#include "mcfgi/context.hpp"
#include "mcfgi/grammar.hpp"
#include "mcfgi/monoid.hpp"

namespace mcfgi {

// One item of a decorated trace: an underlined monoid element or a visible
// child variable (x-side in B-traces, y-side in C-traces).
struct TraceItem {
  bool visible = false;
  Elem elem = 0;  // underlined element when !visible
  int var = 0;    // 1-based variable index when visible
};

using DecoratedTrace = std::vector<TraceItem>;

// kappa plus the d+1 contracted boundary products (empty block -> identity).
struct TraceNormalForm {
  std::vector<int> perm;        // 0-based left-to-right variable order
  std::vector<Elem> boundary;   // var count + 1 products

  InterfaceType as_interface() const { return InterfaceType{perm, boundary}; }
};

// out_rho(q, r): replace terminals by h(a), x^i by q_i, y^j by r_j and
// multiply componentwise.
HType template_eval(const Template& t, const Homomorphism& h, const HType& q,
                    const HType& r);

// Gamma_B(tau, r): components in sigma order interleaved with tau's
// boundaries; terminals and y-variables underlined, x-variables visible.
DecoratedTrace trace_b(const Template& t, const Homomorphism& h,
                       const InterfaceType& tau, const HType& r);
DecoratedTrace trace_c(const Template& t, const Homomorphism& h,
                       const InterfaceType& tau, const HType& q);

// Single left-to-right block contraction; the var count must be known to
// size the boundary vector.
TraceNormalForm normalize(const DecoratedTrace& trace, const FiniteMonoid& m,
                          int var_count);

InterfaceType transport_b(const Template& t, const Homomorphism& h,
                          const InterfaceType& tau, const HType& r);
InterfaceType transport_c(const Template& t, const Homomorphism& h,
                          const InterfaceType& tau, const HType& q);

// E_B^{rho,E,v}: substitute v_j for y^j, turn x^i into hole i, read the
// expression t_0 alpha_{sigma(1)} t_1 ... left to right.  Hole names keep
// the original B component indices.
SentenceContext induced_child_context_b(const Template& t, const SentenceContext& e,
                                        const Tuple& v);
SentenceContext induced_child_context_c(const Template& t, const SentenceContext& e,
                                        const Tuple& u);

// Paper-notation renderings used by the worked-example command.
std::string render_trace(const DecoratedTrace& tr, const FiniteMonoid& m, char var_letter);
// The contracted trace word; empty blocks vanish, nonempty blocks show their
// product even when it is the identity.
std::string render_reduced(const DecoratedTrace& tr, const FiniteMonoid& m,
                           char var_letter);

}  // namespace mcfgi
