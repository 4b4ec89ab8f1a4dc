#include "frobenius_internal.hpp"

namespace tqftwb::frob {

Span evaluate_traced(const AbelianModel& model, const cob::Term& term, const EvalOptions& opts,
                     const ComposeHook& hook) {
  switch (term.kind()) {
    case cob::Term::Kind::generator:
      return generator_span(model, term.gen());
    case cob::Term::Kind::identity:
      return identity_span(model, term.width());
    case cob::Term::Kind::tensor:
      return gpd::product(evaluate_traced(model, term.left(), opts, hook),
                          evaluate_traced(model, term.right(), opts, hook));
    case cob::Term::Kind::compose: {
      const Span inner = evaluate_traced(model, term.inner(), opts, hook);
      const Span outer = evaluate_traced(model, term.outer(), opts, hook);
      const Span s = gpd::compose_spans(inner, outer, gpd::CompositionMode::homotopy);
      if (hook) hook(inner, outer, s, cob::render(term));
      return gpd::skeletonize(s, opts.isotropy_bound).span;
    }
  }
  throw std::logic_error("evaluate: unknown term kind");
}

Span evaluate(const AbelianModel& model, const cob::Term& term, const EvalOptions& opts) {
  return evaluate_traced(model, term, opts, nullptr);
}

cob::Term closed_term(int genus) {
  if (genus < 0) throw InputError("closed term: genus must be >= 0");
  std::string text = "eps";
  for (int i = 0; i < genus; ++i) text += " . mu . delta";
  return cob::parse(text + " . eta");
}

Rational closed_invariant(const AbelianModel& model, int genus) {
  return gpd::cardinality(*evaluate(model, closed_term(genus)).apex);
}

}  // namespace tqftwb::frob
