#include <map>

#include "frobenius_internal.hpp"

namespace tqftwb::frob {

using gpd::AbelianGroupoid;
using gpd::ArrowId;
using gpd::GroupoidFunctor;
using gpd::ObjectId;
using gpd::StrongFibreProduct;
using json = nlohmann::ordered_json;

namespace {

FunctorVerdict verify(const std::string& name, const GroupoidFunctor& f, const Span& from,
                      const Span& to, std::uint64_t budget, std::uint64_t seed) {
  FunctorVerdict v;
  v.name = name;
  try {
    const auto dom = gpd::check_groupoid(*f.domain, budget, seed);
    const auto cod = gpd::check_groupoid(*f.codomain, budget, mix_seed(seed, 1));
    const auto fun = gpd::check_functor(f, budget, mix_seed(seed, 2));
    const auto legs = gpd::check_leg_compatibility(f, from, to, budget, mix_seed(seed, 3));
    v.functor_valid = dom.ok && cod.ok && fun.ok;
    v.legs_commute = legs.ok;
    v.exhaustive = dom.exhaustive && cod.exhaustive && fun.exhaustive && legs.exhaustive;
    if (!dom.ok) v.failure = "domain: " + dom.failure;
    else if (!cod.ok) v.failure = "codomain: " + cod.failure;
    else if (!fun.ok) v.failure = fun.failure;
    else if (!legs.ok) v.failure = legs.failure;
    if (v.functor_valid) {
      v.essential_equivalence = gpd::essential_equivalence_check(f);
      if (!v.essential_equivalence && v.failure.empty()) {
        v.failure = "not an essential equivalence";
      }
    }
  } catch (const std::exception& e) {
    v.failure = e.what();
  }
  return v;
}

ObjectId diagonal(ObjectId x, std::uint64_t n, std::uint64_t count) {
  // the diagonal object of an n^w-object product apex
  ObjectId y = 0;
  for (std::uint64_t c = 1; c < count; c *= n) y = y * n + x;
  return y;
}

struct Witness {
  std::string name;
  bool lhs = true;
  Span domain;
  std::function<std::pair<ObjectId, ObjectId>(ObjectId)> objects;
  std::function<std::pair<ArrowId, ArrowId>(ArrowId)> arrows;
};

using Factors = std::pair<Span, Span>;  // (inner, outer) of a composite side

// Witness with linear domain over the base: child coordinate blocks are the
// given integer combinations of the domain blocks.
Witness linear_witness(const AbelianModel& model, std::string name, bool lhs, Span domain,
                       const Factors& fs, Matrix in, Matrix out) {
  auto d = std::static_pointer_cast<const AbelianGroupoid>(domain.apex);
  auto a1 = std::static_pointer_cast<const AbelianGroupoid>(fs.first.apex);
  auto a2 = std::static_pointer_cast<const AbelianGroupoid>(fs.second.apex);
  const std::uint64_t n = model.base.size();
  std::vector<std::size_t> blocks;
  for (const auto& f : model.isotropy) blocks.push_back(f.size());
  Witness w;
  w.name = std::move(name);
  w.lhs = lhs;
  w.domain = std::move(domain);
  w.objects = [n, a1, a2](ObjectId x) {
    return std::make_pair(diagonal(x, n, a1->object_count()), diagonal(x, n, a2->object_count()));
  };
  auto image = [blocks, n](const AbelianGroupoid& g, const Matrix& m, ObjectId x,
                           const std::vector<std::int64_t>& c) {
    const std::size_t b = blocks[x];
    std::vector<std::int64_t> out(m.size() * b, 0);
    for (std::size_t j = 0; j < m.size(); ++j) {
      for (std::size_t i = 0; i < m[j].size(); ++i) {
        for (std::size_t t = 0; t < b; ++t) out[j * b + t] += m[j][i] * c[i * b + t];
      }
    }
    return g.arrow_at(diagonal(x, n, g.object_count()), out);
  };
  w.arrows = [d, a1, a2, in, out, image](ArrowId a) {
    const ObjectId x = d->source(a);
    const auto c = d->coords(a);
    return std::make_pair(image(*a1, in, x, c), image(*a2, out, x, c));
  };
  return w;
}

// Witnesses for "id . g" and "g . id": the generator's own apex, paired
// with its leg image in the identity factor.
Witness identity_law_witness(std::string name, const Span& g, bool id_outside) {
  Witness w;
  w.name = std::move(name);
  w.domain = g;
  const auto l = g.left_leg, r = g.right_leg;
  if (id_outside) {
    w.objects = [r](ObjectId x) { return std::make_pair(x, r.on_object(x)); };
    w.arrows = [r](ArrowId a) { return std::make_pair(a, r.on_arrow(a)); };
  } else {
    w.objects = [l](ObjectId x) { return std::make_pair(l.on_object(x), x); };
    w.arrows = [l](ArrowId a) { return std::make_pair(l.on_arrow(a), a); };
  }
  return w;
}

std::vector<Witness> witnesses_for(const AbelianModel& model, const std::string& rel,
                                   const std::optional<Factors>& lhs,
                                   const std::optional<Factors>& rhs) {
  const Matrix I1 = unit_matrix(1), I2 = unit_matrix(2), I3 = unit_matrix(3);
  const Matrix swap = {{0, 1}, {1, 0}};
  const Matrix ab_c = {{1, 1, 0}, {0, 0, 1}};
  const Matrix a_bc = {{1, 0, 0}, {0, 1, 1}};
  const Matrix sum3 = {{1, 1, 1}};
  const auto A = identity_span(model, 1);
  const auto mu = generator_span(model, cob::Generator::mu);
  const auto delta = generator_span(model, cob::Generator::delta);
  std::vector<Witness> w;
  auto lin = [&](const std::string& name, bool left_side, const Span& dom, const Matrix& in,
                 const Matrix& out) {
    w.push_back(linear_witness(model, name, left_side, dom, left_side ? *lhs : *rhs, in, out));
  };
  if (rel == "unit-left") {
    lin("A -> strong(lhs)", true, A, I1, {{0}, {1}});
  } else if (rel == "unit-right") {
    lin("A -> strong(lhs)", true, A, I1, {{1}, {0}});
  } else if (rel == "counit-left") {
    lin("A -> strong(lhs)", true, A, {{0}, {1}}, I1);
  } else if (rel == "counit-right") {
    lin("A -> strong(lhs)", true, A, {{1}, {0}}, I1);
  } else if (rel == "commutativity") {
    lin("A*A -> strong(lhs)", true, mu, I2, swap);
  } else if (rel == "cocommutativity") {
    lin("A*A -> strong(lhs)", true, delta, swap, swap);
  } else if (rel == "frobenius-left") {
    const Span dom = linear_span(model, 3, ab_c, a_bc);
    lin("A*A*A -> strong(lhs)", true, dom, I3, I3);
    lin("A*A*A -> strong(rhs), (a,b,c) -> (a+b, c, a, b+c)", false, dom, ab_c, a_bc);
  } else if (rel == "frobenius-right") {
    const Span dom = linear_span(model, 3, a_bc, ab_c);
    lin("A*A*A -> strong(lhs)", true, dom, I3, I3);
    lin("A*A*A -> strong(rhs), (a,b,c) -> (a, b+c, a+b, c)", false, dom, a_bc, ab_c);
  } else if (rel == "associativity") {
    const Span dom = linear_span(model, 3, I3, sum3);
    lin("A*A*A -> strong(lhs)", true, dom, I3, ab_c);
    lin("A*A*A -> strong(rhs)", false, dom, I3, a_bc);
  } else if (rel == "coassociativity") {
    const Span dom = linear_span(model, 3, sum3, I3);
    lin("A*A*A -> strong(lhs)", true, dom, ab_c, I3);
    lin("A*A*A -> strong(rhs)", false, dom, a_bc, I3);
  } else if (rel.starts_with("identity-after-")) {
    w.push_back(identity_law_witness("g -> strong(lhs)", lhs->first, true));
  } else if (rel.starts_with("identity-before-")) {
    w.push_back(identity_law_witness("g -> strong(lhs)", lhs->second, false));
  } else if (rel == "tau-involution") {
    w.push_back(identity_law_witness("A^2 -> strong(lhs)", lhs->first, true));
    w.back().domain = identity_span(model, 2);
  }
  return w;
}

FunctorVerdict run_witness(const Witness& w, const Factors& fs, std::uint64_t budget,
                           std::uint64_t seed) {
  FunctorVerdict v;
  v.name = w.name;
  try {
    const Span strong = gpd::compose_spans(fs.first, fs.second, gpd::CompositionMode::strong);
    auto sfp = std::static_pointer_cast<const StrongFibreProduct>(strong.apex);
    GroupoidFunctor f;
    f.domain = w.domain.apex;
    f.codomain = sfp;
    f.on_object = [sfp, obj = w.objects](ObjectId x) {
      const auto [x1, x2] = obj(x);
      const auto y = sfp->object_of(x1, x2);
      if (!y) throw std::runtime_error("witness object lies outside the strong fibre product");
      return *y;
    };
    f.on_arrow = [sfp, arr = w.arrows](ArrowId a) {
      const auto [l1, l2] = arr(a);
      const auto b = sfp->arrow_of(l1, l2);
      if (!b) throw std::runtime_error("witness arrow lies outside the strong fibre product");
      return *b;
    };
    return verify(w.name, f, w.domain, strong, budget, seed);
  } catch (const std::exception& e) {
    v.failure = e.what();
  }
  return v;
}

RelationResult run_instance(const AbelianModel& model, const std::string& name,
                            const std::string& lhs_text, const std::string& rhs_text,
                            bool named, const CheckOptions& opts, std::uint64_t stream) {
  RelationResult r;
  r.name = name;
  r.lhs = lhs_text;
  r.rhs = rhs_text;
  const EvalOptions eo;
  std::uint64_t check = 0;
  try {
    const cob::Term lhs = cob::parse(lhs_text), rhs = cob::parse(rhs_text);
    r.normal_forms_equal = cob::normalize(lhs) == cob::normalize(rhs);
    std::optional<Factors> top;  // factors of the last (outermost) composition
    auto hook = [&](const Span& inner, const Span& outer, const Span& homotopy,
                    const std::string& node) {
      top = Factors{inner, outer};
      const Span strong = gpd::compose_spans(inner, outer, gpd::CompositionMode::strong);
      FunctorVerdict v;
      v.name = "psi at " + node;
      try {
        v = verify(v.name, gpd::comparison_functor(strong, homotopy), strong, homotopy,
                   opts.functor_budget, mix_seed(opts.seed, stream * 1024 + check++));
        v.hypothesis = gpd::is_isofibration(inner.right_leg) || gpd::is_isofibration(outer.left_leg);
        if (!v.hypothesis && !v.essential_equivalence && v.failure == "not an essential equivalence") {
          v.failure.clear();
        }
      } catch (const std::exception& e) {
        v.failure = e.what();
      }
      r.comparisons.push_back(std::move(v));
    };
    const Span ls = evaluate_traced(model, lhs, eo, hook);
    const auto lfs = lhs.kind() == cob::Term::Kind::compose ? top : std::nullopt;
    top.reset();
    const Span rs = evaluate_traced(model, rhs, eo, hook);
    const auto rfs = rhs.kind() == cob::Term::Kind::compose ? top : std::nullopt;
    const auto lf = gpd::fingerprint(ls, opts.exec), rf = gpd::fingerprint(rs, opts.exec);
    r.lhs_digest = lf.digest();
    r.rhs_digest = rf.digest();
    r.fingerprints_equal = lf == rf;
    if (!r.fingerprints_equal) {
      r.failure = "fingerprints differ:\n" + lf.serialize() + "--\n" + rf.serialize();
    }
    if (named) {
      for (const auto& w : witnesses_for(model, name, lfs, rfs)) {
        r.witnesses.push_back(run_witness(w, w.lhs ? *lfs : *rfs, opts.functor_budget,
                                          mix_seed(opts.seed, stream * 1024 + check++)));
      }
    }
  } catch (const std::exception& e) {
    r.failure = e.what();
  }
  return r;
}

json verdict_json(const FunctorVerdict& v) {
  json j;
  j["name"] = v.name;
  j["ok"] = v.required_ok();
  j["functor_valid"] = v.functor_valid;
  j["legs_commute"] = v.legs_commute;
  j["essential_equivalence"] = v.essential_equivalence;
  j["exhaustive"] = v.exhaustive;
  if (!v.hypothesis) j["hypothesis"] = false;
  if (!v.failure.empty()) j["failure"] = v.failure;
  return j;
}

}  // namespace

bool RelationResult::pass() const {
  if (!normal_forms_equal || !fingerprints_equal || !failure.empty()) return false;
  for (const auto& v : comparisons) {
    if (!v.required_ok()) return false;
  }
  for (const auto& v : witnesses) {
    if (!v.ok()) return false;
  }
  return true;
}

bool RelationReport::all_pass() const {
  for (const auto& r : results) {
    if (!r.pass()) return false;
  }
  return !results.empty();
}

json RelationReport::to_json() const {
  json j;
  j["model"] = json::parse(model.to_json());
  j["seed"] = seed;
  j["all_pass"] = all_pass();
  json rel = json::array();
  for (const auto& r : results) {
    json e;
    e["name"] = r.name;
    e["lhs"] = r.lhs;
    e["rhs"] = r.rhs;
    e["pass"] = r.pass();
    e["normal_forms_equal"] = r.normal_forms_equal;
    e["fingerprints_equal"] = r.fingerprints_equal;
    e["lhs_digest"] = r.lhs_digest;
    e["rhs_digest"] = r.rhs_digest;
    e["comparisons"] = json::array();
    for (const auto& v : r.comparisons) e["comparisons"].push_back(verdict_json(v));
    e["witnesses"] = json::array();
    for (const auto& v : r.witnesses) e["witnesses"].push_back(verdict_json(v));
    if (!r.failure.empty()) e["failure"] = r.failure;
    rel.push_back(std::move(e));
  }
  j["relations"] = std::move(rel);
  return j;
}

RelationReport check_axioms(const AbelianModel& model, const CheckOptions& opts) {
  model.validate();
  struct Job {
    std::string name, lhs, rhs;
    bool named;
  };
  std::vector<Job> jobs;
  for (const auto& r : cob::relation_instances()) jobs.push_back({r.name, r.lhs, r.rhs, true});
  static const std::pair<int, int> kShapes[] = {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}, {2, 1},
                                                {1, 2}, {3, 0}, {0, 3}};
  for (int i = 0; i < opts.random_pairs; ++i) {
    Rng rng(mix_seed(opts.seed, 0x5eed0000ULL + static_cast<std::uint64_t>(i)));
    const auto [m, n] = kShapes[rng.below(std::size(kShapes))];
    const auto nf = cob::random_normal_form(m, n, 1, rng);
    cob::Term a = cob::realize(nf, rng), b = cob::realize(nf, rng);
    for (int tries = 0; tries < 8 && a == b; ++tries) b = cob::realize(nf, rng);
    jobs.push_back({"random-pair-" + std::to_string(i), cob::render(a), cob::render(b), false});
  }

  RelationReport report;
  report.model = model;
  report.seed = opts.seed;
  report.results.resize(jobs.size());
  const auto count = static_cast<std::int64_t>(jobs.size());
  auto one = [&](std::int64_t i) {
    const Job& j = jobs[static_cast<std::size_t>(i)];
    report.results[static_cast<std::size_t>(i)] =
        run_instance(model, j.name, j.lhs, j.rhs, j.named, opts, static_cast<std::uint64_t>(i));
  };
  if (opts.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) one(i);
  } else {
    for (std::int64_t i = 0; i < count; ++i) one(i);
  }
  return report;
}

}  // namespace tqftwb::frob
