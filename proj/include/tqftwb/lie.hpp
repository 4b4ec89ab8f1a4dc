#pragma once

// Exact Lie-theoretic checks: structure constants, (co)adjoint actions,
// centralizers, companion and Slodowy slices, and the two example groups.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tqftwb/common.hpp"
#include "tqftwb/linalg.hpp"

namespace tqftwb::lie {

enum class Family { sln, sl2_semidirect, sl3_centralizer };

/// "sln", "sl2-semidirect", "sl3-centralizer". Throws InputError.
Family parse_family(std::string_view name);
std::string family_name(Family f);

/// A matrix Lie algebra with a chosen basis and a coordinate pairing
/// <xi, y> = xi^T P y between dual coordinates and algebra coordinates.
struct LieAlgebraData {
  Family family = Family::sln;
  int n = 0;  // sl(n): n; otherwise the size of the matrix realization
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<std::string> dual_labels;
  std::vector<Matrix> basis;
  /// structure[i][j] = coordinates of [b_i, b_j].
  std::vector<std::vector<Vector>> structure;
  Matrix pairing;
  Matrix pairing_inverse;
  std::map<std::string, Vector> designated;
  std::size_t minimal_centralizer_dim = 0;

  Matrix element(const Vector& x) const;
  /// Throws InputError if m is not in the span of the basis.
  Vector coords(const Matrix& m) const;
  Vector bracket(const Vector& x, const Vector& y) const;
  Rational pair(const Vector& xi, const Vector& y) const;
  Vector unit(std::size_t i) const;

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // matrix entries read by coords
  Matrix solve;
};

/// sl(n) uses the trace form, so dual points are written as trace-free
/// matrices. n is ignored for the other two families. Throws InputError.
LieAlgebraData make_algebra(Family family, int n = 0);

struct StructureCheck {
  bool antisymmetric = false;
  bool jacobi = false;
  bool ok() const { return antisymmetric && jacobi; }
};
/// Exhaustive over basis pairs and triples.
StructureCheck validate_structure(const LieAlgebraData& alg);

struct ActionMatrices {
  Matrix ad;    // ad_x on algebra coordinates
  Matrix coad;  // ad*_x on dual coordinates, <ad*_x xi, y> = -<xi, [x, y]>
};
ActionMatrices action_matrices(const LieAlgebraData& alg, const Vector& x);

/// Columns ad*_{b_i} xi: the tangent space to the coadjoint orbit at xi.
Matrix orbit_tangent(const LieAlgebraData& alg, const Vector& xi);

enum class Convention { fixed, opposite };
std::string convention_name(Convention c);

/// Ad_g on algebra coordinates, g given in the matrix realization.
Matrix group_adjoint(const LieAlgebraData& alg, const Matrix& g);
/// fixed: <Ad*_g xi, y> = <xi, Ad_{g^-1} y>. opposite uses Ad_g.
Matrix group_coadjoint(const LieAlgebraData& alg, const Matrix& g, Convention c = Convention::fixed);

struct CentralizerReport {
  std::size_t dimension = 0;
  bool regular = false;
  bool abelian = false;
  std::vector<Vector> basis;
};
CentralizerReport centralizer_report(const LieAlgebraData& alg, const Vector& xi);

/// (f_0, ..., f_{n-2}) with det(tI - x) = t^n + f_{n-2} t^{n-2} + ... + f_0.
/// Throws InputError when x is not square or has nonzero trace.
std::vector<Rational> char_coeffs(const Matrix& x);

/// Ones on the superdiagonal, (0, a_{n-2}, ..., a_0) down the first column.
Matrix companion(const std::vector<Rational>& a);

/// f(companion(a)) == -a.
bool companion_section_holds(const std::vector<Rational>& a);

// Example groups.

struct SL2SD {
  Matrix g;  // 2x2, det 1
  Vector v;  // length 2
};
/// Throws InputError unless det g = 1.
SL2SD make_sl2sd(Matrix g, Vector v);
SL2SD multiply(const SL2SD& p, const SL2SD& q);  // (g1 g2, v1 + g1 v2)
Matrix to_matrix(const SL2SD& p);                // [[g, v], [0, 1]]
bool operator==(const SL2SD& p, const SL2SD& q);

struct SL3C {
  Rational r = 1, a = 0, b = 0, c = 0;
};
/// Throws InputError when r = 0.
SL3C make_sl3c(Rational r, Rational a, Rational b, Rational c);
SL3C multiply(const SL3C& p, const SL3C& q);
Matrix to_matrix(const SL3C& p);  // [[r, a, c], [0, r^-2, b], [0, 0, r]]
bool operator==(const SL3C& p, const SL3C& q);

// Reports.

struct Check {
  std::string name;
  bool pass = true;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  std::string failure;
};

struct CheckReport {
  std::string suite;
  Family family = Family::sln;
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool all_pass() const;
  const Check* find(std::string_view name) const;
  void append(const CheckReport& other);
  nlohmann::ordered_json to_json() const;
};

struct TrialOptions {
  int trials = 50;
  std::uint64_t seed = 0;
  Execution exec = Execution::parallel;
};

/// Random rational with |num| <= 9 and den in {1, 2, 3}.
Rational random_rational(Rng& rng);
Rational random_nonzero(Rng& rng);

/// Exhaustive structure validation and the duality identity on samples.
CheckReport structure_checks(Family family, int n, const TrialOptions& opts);

/// Companion section identity and regularity/abelianness at companion points.
CheckReport companion_checks(int n, const TrialOptions& opts);

/// Minimal-nilpotent Slodowy slice in sl(n), n >= 3.
CheckReport slodowy_checks(int n, const TrialOptions& opts);

/// Closed-form (co)adjoint formulas against the matrix oracle.
CheckReport coad_formula_check(Family family, int n, const TrialOptions& opts);

/// Stabilizer families of the example slices (semidirect and centralizer).
CheckReport stabilizer_family_check(Family family, const TrialOptions& opts);

/// Complement codimension, slice transversality, abelian stabilizers and,
/// for sl(n), the companion section.
CheckReport slice_report(Family family, int n, const TrialOptions& opts);

/// Every check that applies to the family.
CheckReport run_suite(Family family, int n, const TrialOptions& opts);

}  // namespace tqftwb::lie
