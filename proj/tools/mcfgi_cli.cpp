// Command-line surface for the typed-interface MCFG inference pipeline:
// validation, refinement, characteristic sampling, learning, bounded
// comparison, text simulation, and the built-in worked example.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcfgi/formats.hpp"
#include "mcfgi/learner.hpp"
#include "mcfgi/refinement.hpp"
#include "mcfgi/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mcfgi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
  std::string grammar_path;
  std::string monoid_path;
  std::string dfa_path;
  std::string sample_path;
  std::string out_dir;
  int fanout = 2;
  int bound = 12;
  bool eliminate_units = false;
  bool structured = false;
};

Typing load_typing(const CommonOpts& o) {
  if (!o.monoid_path.empty() && !o.dfa_path.empty())
    throw StructuralError("give either --monoid or --dfa, not both");
  if (!o.monoid_path.empty()) return parse_monoid_text(read_file(o.monoid_path));
  if (!o.dfa_path.empty()) return transition_monoid(parse_dfa_text(read_file(o.dfa_path)));
  throw StructuralError("a monoid is required: pass --monoid FILE or --dfa FILE");
}

void maybe_write(const CommonOpts& o, const std::string& name, const std::string& text) {
  if (o.out_dir.empty()) return;
  fs::create_directories(o.out_dir);
  write_file((fs::path(o.out_dir) / name).string(), text);
}

int cmd_validate(const CommonOpts& o) {
  Grammar g = parse_grammar_text(read_file(o.grammar_path));
  auto rep = validate(g, o.fanout);
  for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
  for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
  std::cout << (rep.ok() ? "valid" : "invalid") << ", "
            << (rep.reduced ? "reduced" : "not reduced") << "\n";
  if (o.structured) {
    json j{{"valid", rep.ok()},
           {"reduced", rep.reduced},
           {"violations", rep.violations},
           {"warnings", rep.warnings}};
    std::cout << j.dump(2) << "\n";
    maybe_write(o, "validate.json", j.dump(2));
  }
  return rep.ok() ? kExitOk : kExitViolation;
}

int cmd_refine(const CommonOpts& o) {
  Grammar g = parse_grammar_text(read_file(o.grammar_path));
  Typing ty = load_typing(o);
  TypedGrammar tg = build_trimmed_refinement(g, ty.hom, o.fanout);
  std::string rep = refinement_report(tg);
  std::cout << rep;
  maybe_write(o, "refinement.txt", rep);
  if (o.structured) {
    json j{{"typed_nonterminals", static_cast<int>(tg.symbols.size()) - 1},
           {"typed_rules", static_cast<int>(tg.sys.rules.size())}};
    std::cout << j.dump(2) << "\n";
    maybe_write(o, "refinement.json", j.dump(2));
  }
  return kExitOk;
}

int cmd_sample(const CommonOpts& o) {
  Grammar g = parse_grammar_text(read_file(o.grammar_path));
  Typing ty = load_typing(o);
  TypedGrammar tg = build_trimmed_refinement(g, ty.hom, o.fanout);
  MembershipOracle oracle(&g);
  CharacteristicSample cs = observations(tg, oracle);
  ExposureMetrics m = exposure_metrics(tg, cs);

  std::string words;
  for (const auto& w : cs.words) words += w + "\n";
  std::string prov;
  for (const auto& w : cs.words) {
    prov += w + "\n";
    for (const auto& label : cs.provenance.at(w)) prov += "  " + label + "\n";
  }
  std::cout << words << m.to_string();
  maybe_write(o, "cs.txt", words);
  maybe_write(o, "cs_provenance.txt", prov);
  maybe_write(o, "exposure_metrics.txt", m.to_string());
  if (o.structured) {
    json j{{"words", cs.words},
           {"n_nt", m.n_nt},
           {"n_rule", m.n_rule},
           {"cs_size", m.cs_size},
           {"cs_size_plus", m.cs_size_plus},
           {"exposure_bound", m.exposure_bound},
           {"size_bound_holds", m.size_bound_holds},
           {"size_plus_bound_holds", m.size_plus_bound_holds}};
    std::cout << j.dump(2) << "\n";
    maybe_write(o, "sample.json", j.dump(2));
  }
  return (m.size_bound_holds && m.size_plus_bound_holds) ? kExitOk : kExitViolation;
}

int cmd_learn(const CommonOpts& o) {
  // The learner sees only the sample, the fan-out bound and the monoid;
  // there is deliberately no --grammar flag on this subcommand.
  auto sample = parse_sample_text(read_file(o.sample_path));
  Typing ty = load_typing(o);
  Hypothesis hyp = Hypothesis::build(sample, ty.hom, o.fanout);
  hyp.binary_rule_count();
  std::string rep = hyp.report(200);
  std::cout << rep;
  maybe_write(o, "hypothesis.txt", rep);
  if (o.eliminate_units) {
    Hypothesis uf = hyp.eliminate_units();
    std::cout << "unit-free binary rules: " << uf.unit_free_binary_rule_count() << "\n";
    maybe_write(o, "hypothesis_unit_free.txt", uf.report(200));
  }
  if (o.structured) {
    const auto& m = hyp.metrics();
    json j{{"sample_words", m.sample_words},
           {"sample_size_plus", m.sample_size_plus},
           {"observed_tuples", m.observed_tuples},
           {"concrete_pairs", m.concrete_pairs},
           {"start_rules", m.start_rules},
           {"terminal_rules", m.terminal_rules},
           {"substitution_rules", m.substitution_rules},
           {"binary_rules", m.binary_rules},
           {"build_seconds", m.build_seconds},
           {"binary_count_seconds", m.binary_count_seconds}};
    std::cout << j.dump(2) << "\n";
    maybe_write(o, "learn.json", j.dump(2));
  }
  return kExitOk;
}

int cmd_compare(const CommonOpts& o, const std::string& grammar2_path) {
  Grammar g = parse_grammar_text(read_file(o.grammar_path));
  ComparisonResult res;
  if (!grammar2_path.empty()) {
    Grammar g2 = parse_grammar_text(read_file(grammar2_path));
    res = languages_equal_up_to(g.sys, g2.sys, o.bound);
  } else if (!o.sample_path.empty()) {
    // Compare against the hypothesis learned from the sample.
    Typing ty = load_typing(o);
    auto sample = parse_sample_text(read_file(o.sample_path));
    Hypothesis hyp = Hypothesis::build(sample, ty.hom, o.fanout);
    if (o.eliminate_units) hyp = hyp.eliminate_units();
    auto lg = language_up_to(g.sys, o.bound);
    auto lh = hyp.language_up_to(o.bound);
    if (lg == lh) {
      res = {true, std::nullopt};
    } else {
      std::set<std::string> sg(lg.begin(), lg.end()), sh(lh.begin(), lh.end());
      std::vector<std::string> diff;
      for (const auto& w : lg)
        if (!sh.count(w)) diff.push_back(w);
      for (const auto& w : lh)
        if (!sg.count(w)) diff.push_back(w);
      std::sort(diff.begin(), diff.end(),
                [](const std::string& a, const std::string& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
                });
      res = {false, diff.front()};
    }
  } else {
    throw StructuralError("compare needs --grammar2 or --sample");
  }
  if (res.equal) {
    std::cout << "equal up to length " << o.bound << "\n";
  } else {
    std::cout << "unequal up to length " << o.bound
              << "; counterexample: " << *res.counterexample << "\n";
  }
  if (o.structured) {
    json j{{"equal", res.equal}, {"bound", o.bound}};
    if (!res.equal) j["counterexample"] = *res.counterexample;
    std::cout << j.dump(2) << "\n";
    maybe_write(o, "compare.json", j.dump(2));
  }
  return res.equal ? kExitOk : kExitViolation;
}

int cmd_simulate_text(const CommonOpts& o, int text_bound) {
  Grammar g = parse_grammar_text(read_file(o.grammar_path));
  Typing ty = load_typing(o);
  const auto target = language_up_to(g.sys, o.bound);
  const auto text = language_up_to(g.sys, text_bound < 0 ? o.bound : text_bound);

  int convergence = -1;
  bool stable = true;
  std::vector<std::string> prefix;
  for (size_t i = 0; i < text.size(); ++i) {
    prefix.push_back(text[i]);
    Hypothesis hyp = Hypothesis::build(prefix, ty.hom, o.fanout);
    const bool eq = hyp.language_up_to(o.bound) == target;
    std::cout << "prefix " << i + 1 << ": " << (eq ? "equal" : "not equal") << "\n";
    if (eq && convergence < 0) convergence = static_cast<int>(i + 1);
    if (!eq && convergence >= 0) stable = false;
  }
  if (convergence < 0) {
    std::cout << "no convergence within the text\n";
    return kExitViolation;
  }
  std::cout << "converged at prefix " << convergence << ", "
            << (stable ? "stable afterwards" : "UNSTABLE afterwards") << "\n";
  if (o.structured) {
    json j{{"convergence_index", convergence},
           {"stable", stable},
           {"text_words", static_cast<int>(text.size())}};
    std::cout << j.dump(2) << "\n";
    maybe_write(o, "simulate.json", j.dump(2));
  }
  return stable ? kExitOk : kExitViolation;
}

int cmd_worked_example() {
  // Two-element monoid {e, s} with s*s = e; h(a) = s, h(b) = e.
  auto m = std::make_shared<const FiniteMonoid>(std::vector<std::string>{"e", "s"}, 0,
                                                std::vector<Elem>{0, 1, 1, 0});
  Homomorphism h(m.get(), {'a', 'b'}, {{'a', 1}, {'b', 0}});

  // rho: A -> (y1 x2 a, b x1)(B, C)
  Template tmpl;
  tmpl.components = {
      {TemplateItem{TemplateItem::YVar, 0, 1}, TemplateItem{TemplateItem::XVar, 0, 2},
       TemplateItem{TemplateItem::Terminal, 'a', 0}},
      {TemplateItem{TemplateItem::Terminal, 'b', 0},
       TemplateItem{TemplateItem::XVar, 0, 1}},
  };
  const Elem e = 0, s = 1;
  const HType q{s, e};
  const HType r{s};
  const InterfaceType tau{{0, 1}, {e, s, e}};

  int failures = 0;
  auto expect = [&](const std::string& what, const std::string& got,
                    const std::string& want) {
    const bool ok = got == want;
    std::cout << (ok ? "  ok  " : "  FAIL") << "  " << what << " = " << got;
    if (!ok) std::cout << "   (expected " << want << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  };

  std::cout << "rule: A -> (y1 x2 a, b x1)(B, C), q = (s,e), r = (s), tau = (id2;e,s,e)\n";

  HType out = template_eval(tmpl, h, q, r);
  expect("out(q,r)", "(" + m->name(out[0]) + "," + m->name(out[1]) + ")", "(e,s)");

  DecoratedTrace gb = trace_b(tmpl, h, tau, r);
  expect("Gamma_B", render_trace(gb, *m, 'x'), "e s x2 s s e x1 e");
  expect("red(Gamma_B)", render_reduced(gb, *m, 'x'), "s x2 e x1 e");
  expect("IT_B", transport_b(tmpl, h, tau, r).to_string(*m), "(2 1;s,e,e)");

  DecoratedTrace gc = trace_c(tmpl, h, tau, q);
  expect("Gamma_C", render_trace(gc, *m, 'y'), "e y1 e s s e s e");
  expect("red(Gamma_C)", render_reduced(gc, *m, 'y'), "e y1 s");
  expect("IT_C", transport_c(tmpl, h, tau, q).to_string(*m), "(id1;e,s)");

  // Placement example: h(a) = h(b) = s, h(c) = e; the induced contexts of
  // the fan-out-two child differ only in hole order.
  Homomorphism h2(m.get(), {'a', 'b', 'c'}, {{'a', 1}, {'b', 1}, {'c', 0}});
  SentenceContext e1 = SentenceContext::parse("[1]c[2]");
  SentenceContext e2 = SentenceContext::parse("[2]c[1]");
  expect("tau(E1)", interface_type(h2, e1).to_string(*m), "(id2;e,e,e)");
  expect("tau(E2)", interface_type(h2, e2).to_string(*m), "(2 1;e,e,e)");

  std::cout << (failures == 0 ? "worked example: all values match\n"
                              : "worked example: MISMATCH\n");
  return failures == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"typed-interface MCFG inference pipeline"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string grammar2_path;
  int text_bound = -1;

  auto add_common = [&](CLI::App* sub, bool grammar, bool monoid, bool sample) {
    if (grammar) sub->add_option("--grammar", o.grammar_path, "grammar file")->required();
    if (monoid) {
      sub->add_option("--monoid", o.monoid_path, "monoid/homomorphism file");
      sub->add_option("--dfa", o.dfa_path, "DFA file (transition monoid)");
    }
    if (sample)
      sub->add_option("--sample", o.sample_path, "sample file, one word per line");
    sub->add_option("--fanout", o.fanout, "fan-out bound f");
    sub->add_option("--bound", o.bound, "length bound for comparisons");
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_flag("--structured", o.structured, "also emit machine-readable JSON");
  };

  auto* validate_cmd = app.add_subcommand("validate", "validate a grammar file");
  add_common(validate_cmd, true, false, false);

  auto* refine_cmd = app.add_subcommand("refine", "build the trimmed typed refinement");
  add_common(refine_cmd, true, true, false);

  auto* sample_cmd =
      app.add_subcommand("sample", "extract the characteristic sample CS(G~)");
  add_common(sample_cmd, true, true, false);

  auto* learn_cmd = app.add_subcommand("learn", "build the hypothesis from a sample");
  add_common(learn_cmd, false, true, true);
  learn_cmd->add_flag("--eliminate-units", o.eliminate_units,
                      "also report the unit-free variant");

  auto* compare_cmd = app.add_subcommand(
      "compare",
      "bounded-language comparison (grammar vs grammar or grammar vs learned hypothesis)");
  add_common(compare_cmd, true, true, true);
  compare_cmd->add_option("--grammar2", grammar2_path, "second grammar file");
  compare_cmd->add_flag("--eliminate-units", o.eliminate_units,
                        "compare against the unit-free hypothesis");

  auto* simulate_cmd = app.add_subcommand(
      "simulate-text", "feed length-lex prefixes of the target language");
  add_common(simulate_cmd, true, true, false);
  simulate_cmd->add_option("--text-bound", text_bound,
                           "length bound for the fed text (default: --bound)");

  auto* worked_cmd =
      app.add_subcommand("worked-example", "recompute the built-in transport example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);  // --help
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o);
    if (refine_cmd->parsed()) return cmd_refine(o);
    if (sample_cmd->parsed()) return cmd_sample(o);
    if (learn_cmd->parsed()) return cmd_learn(o);
    if (compare_cmd->parsed()) return cmd_compare(o, grammar2_path);
    if (simulate_cmd->parsed()) return cmd_simulate_text(o, text_bound);
    if (worked_cmd->parsed()) return cmd_worked_example();
  } catch (const std::ios_base::failure& err) {
    std::cerr << "I/O error: " << err.what() << "\n";
    return kExitIo;
  } catch (const StructuralError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitViolation;
  } catch (const DomainError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
