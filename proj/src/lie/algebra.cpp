#include <stdexcept>

#include "tqftwb/lie.hpp"

namespace tqftwb::lie {

Family parse_family(std::string_view name) {
  if (name == "sln") return Family::sln;
  if (name == "sl2-semidirect") return Family::sl2_semidirect;
  if (name == "sl3-centralizer") return Family::sl3_centralizer;
  throw InputError("unknown Lie family '" + std::string(name) + "' (expected sln, sl2-semidirect, sl3-centralizer)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::sln: return "sln";
    case Family::sl2_semidirect: return "sl2-semidirect";
    case Family::sl3_centralizer: return "sl3-centralizer";
  }
  return "?";
}

std::string convention_name(Convention c) { return c == Convention::fixed ? "fixed" : "opposite"; }

Matrix LieAlgebraData::element(const Vector& x) const {
  if (x.size() != basis.size()) throw InputError("element: expected " + std::to_string(dim) + " coordinates");
  Matrix m(basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) m = m + x[i] * basis[i];
  }
  return m;
}

Vector LieAlgebraData::coords(const Matrix& m) const {
  Vector entries(pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k) entries[k] = m(pivots[k].first, pivots[k].second);
  Vector x = solve * entries;
  if (!(element(x) == m)) throw InputError("matrix is not in the algebra");
  return x;
}

Vector LieAlgebraData::bracket(const Vector& x, const Vector& y) const {
  Vector out(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      const Rational s = x[i] * y[j];
      const Vector& c = structure[i][j];
      for (int k = 0; k < dim; ++k) out[k] += s * c[k];
    }
  }
  return out;
}

Rational LieAlgebraData::pair(const Vector& xi, const Vector& y) const { return dot(xi, pairing * y); }

Vector LieAlgebraData::unit(std::size_t i) const {
  Vector v(dim);
  v.at(i) = 1;
  return v;
}

namespace {

Matrix unit_matrix(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

// Structure constants, coordinate solver and pairing inverse from the basis.
void finish(LieAlgebraData& alg) {
  alg.dim = static_cast<int>(alg.basis.size());
  const std::size_t rows = alg.basis[0].rows(), cols = alg.basis[0].cols();
  // Pick matrix entries on which the basis is independent.
  std::vector<Vector> picked;
  for (std::size_t i = 0; i < rows && alg.pivots.size() < alg.basis.size(); ++i) {
    for (std::size_t j = 0; j < cols && alg.pivots.size() < alg.basis.size(); ++j) {
      Vector row(alg.basis.size());
      for (std::size_t k = 0; k < alg.basis.size(); ++k) row[k] = alg.basis[k](i, j);
      auto trial = picked;
      trial.push_back(row);
      if (rank(Matrix::from_columns(trial, alg.basis.size())) == trial.size()) {
        picked = std::move(trial);
        alg.pivots.emplace_back(i, j);
      }
    }
  }
  if (picked.size() != alg.basis.size()) throw std::logic_error("make_algebra: dependent basis");
  alg.solve = inverse(Matrix::from_columns(picked, alg.basis.size()).transpose());

  alg.structure.assign(alg.dim, std::vector<Vector>(alg.dim));
  for (int i = 0; i < alg.dim; ++i) {
    for (int j = 0; j < alg.dim; ++j) alg.structure[i][j] = alg.coords(commutator(alg.basis[i], alg.basis[j]));
  }
  alg.pairing_inverse = inverse(alg.pairing);
}

LieAlgebraData make_sln(int n) {
  if (n < 2) throw InputError("sl(n) needs n >= 2");
  if (n > 12) throw InputError("sl(n) is limited to n <= 12");
  LieAlgebraData alg;
  alg.family = Family::sln;
  alg.n = n;
  const auto N = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      if (i == j) continue;
      alg.basis.push_back(unit_matrix(N, i, j));
      alg.labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  for (std::size_t i = 0; i + 1 < N; ++i) {
    alg.basis.push_back(unit_matrix(N, i, i) - unit_matrix(N, i + 1, i + 1));
    alg.labels.push_back("H" + std::to_string(i + 1));
  }
  alg.dual_labels = alg.labels;
  const std::size_t d = alg.basis.size();
  alg.pairing = Matrix(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) alg.pairing(i, j) = (alg.basis[i] * alg.basis[j]).trace();
  }
  finish(alg);
  alg.designated["e"] = alg.coords(unit_matrix(N, 0, 1));
  alg.designated["h"] = alg.coords(unit_matrix(N, 0, 0) - unit_matrix(N, 1, 1));
  alg.designated["f"] = alg.coords(unit_matrix(N, 1, 0));
  alg.minimal_centralizer_dim = N - 1;
  return alg;
}

// sl2 x C^2 inside 3x3 matrices [[x, v], [0, 0]].
LieAlgebraData make_semidirect() {
  LieAlgebraData alg;
  alg.family = Family::sl2_semidirect;
  alg.n = 3;
  alg.basis = {unit_matrix(3, 0, 0) - unit_matrix(3, 1, 1), unit_matrix(3, 0, 1), unit_matrix(3, 1, 0),
               unit_matrix(3, 0, 2), unit_matrix(3, 1, 2)};
  alg.labels = {"x1", "x2", "x3", "v1", "v2"};
  alg.dual_labels = {"xi1", "xi2", "xi3", "eta1", "eta2"};
  // tr(xi x) + eta1 v2 - eta2 v1
  alg.pairing = Matrix(5, 5);
  alg.pairing(0, 0) = 2;
  alg.pairing(1, 2) = 1;
  alg.pairing(2, 1) = 1;
  alg.pairing(3, 4) = 1;
  alg.pairing(4, 3) = -1;
  finish(alg);
  alg.minimal_centralizer_dim = 1;
  return alg;
}

// [[t, x, z], [0, -2t, y], [0, 0, t]] with dual coordinates (s, u, v, w).
LieAlgebraData make_centralizer() {
  LieAlgebraData alg;
  alg.family = Family::sl3_centralizer;
  alg.n = 3;
  alg.basis = {unit_matrix(3, 0, 0) - 2 * unit_matrix(3, 1, 1) + unit_matrix(3, 2, 2), unit_matrix(3, 0, 1),
               unit_matrix(3, 1, 2), unit_matrix(3, 0, 2)};
  alg.labels = {"t", "x", "y", "z"};
  alg.dual_labels = {"s", "u", "v", "w"};
  alg.pairing = Matrix::identity(4);
  finish(alg);
  alg.minimal_centralizer_dim = 2;
  return alg;
}

}  // namespace

LieAlgebraData make_algebra(Family family, int n) {
  switch (family) {
    case Family::sln: return make_sln(n);
    case Family::sl2_semidirect: return make_semidirect();
    case Family::sl3_centralizer: return make_centralizer();
  }
  throw InputError("make_algebra: unknown family");
}

StructureCheck validate_structure(const LieAlgebraData& alg) {
  StructureCheck out;
  out.antisymmetric = true;
  for (int i = 0; i < alg.dim; ++i) {
    for (int j = 0; j < alg.dim; ++j) {
      if (!is_zero(alg.structure[i][j] + alg.structure[j][i])) out.antisymmetric = false;
    }
  }
  out.jacobi = true;
  for (int i = 0; i < alg.dim && out.jacobi; ++i) {
    for (int j = 0; j < alg.dim && out.jacobi; ++j) {
      for (int k = 0; k < alg.dim; ++k) {
        const Vector a = alg.unit(i), b = alg.unit(j), c = alg.unit(k);
        const Vector sum = alg.bracket(a, alg.bracket(b, c)) + alg.bracket(b, alg.bracket(c, a)) +
                           alg.bracket(c, alg.bracket(a, b));
        if (!is_zero(sum)) {
          out.jacobi = false;
          break;
        }
      }
    }
  }
  return out;
}

ActionMatrices action_matrices(const LieAlgebraData& alg, const Vector& x) {
  std::vector<Vector> cols;
  for (int j = 0; j < alg.dim; ++j) cols.push_back(alg.bracket(x, alg.unit(j)));
  ActionMatrices out;
  out.ad = Matrix::from_columns(cols, alg.dim);
  // A^T P = -P ad_x
  out.coad = Rational(-1) * (alg.pairing * out.ad * alg.pairing_inverse).transpose();
  return out;
}

Matrix orbit_tangent(const LieAlgebraData& alg, const Vector& xi) {
  std::vector<Vector> cols;
  for (int i = 0; i < alg.dim; ++i) cols.push_back(action_matrices(alg, alg.unit(i)).coad * xi);
  return Matrix::from_columns(cols, alg.dim);
}

Matrix group_adjoint(const LieAlgebraData& alg, const Matrix& g) {
  const Matrix gi = inverse(g);
  std::vector<Vector> cols;
  for (const auto& b : alg.basis) cols.push_back(alg.coords(g * b * gi));
  return Matrix::from_columns(cols, alg.dim);
}

Matrix group_coadjoint(const LieAlgebraData& alg, const Matrix& g, Convention c) {
  const Matrix m = group_adjoint(alg, c == Convention::fixed ? inverse(g) : g);
  return (alg.pairing * m * alg.pairing_inverse).transpose();
}

CentralizerReport centralizer_report(const LieAlgebraData& alg, const Vector& xi) {
  CentralizerReport out;
  out.basis = nullspace(orbit_tangent(alg, xi));
  out.dimension = out.basis.size();
  out.regular = out.dimension == alg.minimal_centralizer_dim;
  out.abelian = true;
  for (std::size_t i = 0; i < out.basis.size() && out.abelian; ++i) {
    for (std::size_t j = i + 1; j < out.basis.size(); ++j) {
      if (!is_zero(alg.bracket(out.basis[i], out.basis[j]))) {
        out.abelian = false;
        break;
      }
    }
  }
  return out;
}

std::vector<Rational> char_coeffs(const Matrix& x) {
  if (x.rows() != x.cols() || x.rows() < 2) throw InputError("char_coeffs: expected a square matrix, n >= 2");
  if (x.trace() != 0) throw InputError("char_coeffs: matrix has nonzero trace");
  auto c = charpoly(x);
  c.resize(x.rows() - 1);
  return c;
}

Matrix companion(const std::vector<Rational>& a) {
  const std::size_t n = a.size() + 1;
  if (n < 2) throw InputError("companion: need at least one parameter");
  Matrix t(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) t(i, i + 1) = 1;
  for (std::size_t i = 1; i < n; ++i) t(i, 0) = a[n - 1 - i];
  return t;
}

bool companion_section_holds(const std::vector<Rational>& a) {
  const auto f = char_coeffs(companion(a));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f[i] != -a[i]) return false;
  }
  return true;
}

SL2SD make_sl2sd(Matrix g, Vector v) {
  if (g.rows() != 2 || g.cols() != 2 || v.size() != 2) throw InputError("SL2SD: expected a 2x2 matrix and a 2-vector");
  if (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) != 1) throw InputError("SL2SD: determinant must be 1");
  return {std::move(g), std::move(v)};
}

SL2SD multiply(const SL2SD& p, const SL2SD& q) { return {p.g * q.g, p.v + p.g * q.v}; }

Matrix to_matrix(const SL2SD& p) {
  Matrix m(3, 3);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) m(i, j) = p.g(i, j);
    m(i, 2) = p.v[i];
  }
  m(2, 2) = 1;
  return m;
}

bool operator==(const SL2SD& p, const SL2SD& q) { return p.g == q.g && p.v == q.v; }

SL3C make_sl3c(Rational r, Rational a, Rational b, Rational c) {
  if (r == 0) throw InputError("SL3C: r must be nonzero");
  return {std::move(r), std::move(a), std::move(b), std::move(c)};
}

SL3C multiply(const SL3C& p, const SL3C& q) {
  const Rational qr2 = q.r * q.r, pr2 = p.r * p.r;
  return {p.r * q.r, p.r * q.a + p.a / qr2, q.b / pr2 + p.b * q.r, p.r * q.c + p.a * q.b + p.c * q.r};
}

Matrix to_matrix(const SL3C& p) {
  Matrix m(3, 3);
  m(0, 0) = p.r;
  m(0, 1) = p.a;
  m(0, 2) = p.c;
  m(1, 1) = 1 / (p.r * p.r);
  m(1, 2) = p.b;
  m(2, 2) = p.r;
  return m;
}

bool operator==(const SL3C& p, const SL3C& q) { return p.r == q.r && p.a == q.a && p.b == q.b && p.c == q.c; }

Rational random_rational(Rng& rng) {
  static constexpr int dens[] = {1, 2, 3};
  Rational q(static_cast<long>(rng.between(-9, 9)), dens[rng.below(3)]);
  q.canonicalize();
  return q;
}

Rational random_nonzero(Rng& rng) {
  Rational q = random_rational(rng);
  while (q == 0) q = random_rational(rng);
  return q;
}

}  // namespace tqftwb::lie
