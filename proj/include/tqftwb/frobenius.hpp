#pragma once

// The commutative Frobenius object attached to an abelian model, term
// evaluation, and the relation suite.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tqftwb/cob2.hpp"
#include "tqftwb/span.hpp"

namespace tqftwb::frob {

using gpd::AbelianModel;
using gpd::Span;

/// Additive notation throughout. mu: apex A*A over the base with left leg
/// (a, b) and right leg a + b; delta mirrors it. eta: trivial apex, legs to
/// the point and to the zero section; eps mirrors it. tau: A x A with the
/// right leg crossed.
Span generator_span(const AbelianModel& model, cob::Generator g);

/// Identity span of A^n.
Span identity_span(const AbelianModel& model, int n);

/// Apex over the base with isotropy {(a, b) in A^m x A^n : sum a = sum b}
/// and the projections as legs. Throws InputError for (0, 0).
Span genus0_span(const AbelianModel& model, int m, int n);

struct EvalOptions {
  std::uint64_t isotropy_bound = 1 << 16;
};

/// Structural recursion: generators, identities, products, and homotopy
/// composition followed by reduction to an equivalent skeletal span.
Span evaluate(const AbelianModel& model, const cob::Term& term, const EvalOptions& opts = {});

/// eps . (mu . delta)^g . eta
cob::Term closed_term(int genus);

/// Cardinality of the apex of the evaluated closed genus-g term.
Rational closed_invariant(const AbelianModel& model, int genus);

struct FunctorVerdict {
  std::string name;
  bool functor_valid = false;
  bool exhaustive = false;
  bool legs_commute = false;
  bool essential_equivalence = false;
  /// For psi: one leg into the shared boundary is an isofibration, so the
  /// strong composite must be equivalent to the homotopy one. Without it
  /// only functoriality and leg compatibility are required.
  bool hypothesis = true;
  std::string failure;
  bool ok() const { return functor_valid && legs_commute && essential_equivalence; }
  bool required_ok() const { return ok() || (!hypothesis && functor_valid && legs_commute); }
};

struct RelationResult {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool normal_forms_equal = false;
  bool fingerprints_equal = false;
  std::string lhs_digest;
  std::string rhs_digest;
  std::vector<FunctorVerdict> comparisons;  // psi at each composition node
  std::vector<FunctorVerdict> witnesses;    // named isomorphisms
  std::string failure;
  bool pass() const;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  Execution exec = Execution::parallel;
  /// Exhaustive functor checks up to this many arrows / composable pairs;
  /// a seeded sample beyond it.
  std::uint64_t functor_budget = 20'000;
  /// Extra instances: random pairs of distinct terms with equal normal form.
  int random_pairs = 4;
};

struct RelationReport {
  AbelianModel model;
  std::uint64_t seed = 0;
  std::vector<RelationResult> results;
  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
};

RelationReport check_axioms(const AbelianModel& model, const CheckOptions& opts = {});

}  // namespace tqftwb::frob
