#include "frobenius_internal.hpp"

namespace tqftwb::frob {

using gpd::AbelianGroupoid;
using gpd::ArrowId;
using gpd::Boundary;
using gpd::GroupoidFunctor;
using gpd::ObjectId;

namespace {

// Leg from a linear apex into the diagonal objects of A^p. Row j of `m`
// gives block j of the image as a combination of the apex blocks.
GroupoidFunctor diagonal_leg(const std::shared_ptr<const AbelianGroupoid>& apex,
                             const Boundary& target, const Matrix& m,
                             const std::vector<std::size_t>& blocks) {
  const auto b = target.group();
  const int p = target.width();
  const std::uint64_t n = apex->object_count();
  GroupoidFunctor f;
  f.domain = apex;
  f.codomain = b;
  f.on_object = [p, n](ObjectId x) {
    ObjectId y = 0;
    for (int j = 0; j < p; ++j) y = y * n + x;
    return y;
  };
  f.on_arrow = [apex, b, m, p, n, blocks](ArrowId a) {
    const ObjectId x = apex->source(a);
    const auto c = apex->coords(a);
    const std::size_t k = m.empty() ? 0 : m.front().size();
    const std::size_t block = blocks[x];
    std::vector<std::int64_t> out(static_cast<std::size_t>(p) * block, 0);
    for (int j = 0; j < p; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::int64_t coef = m[j][i];
        if (coef == 0) continue;
        for (std::size_t t = 0; t < block; ++t) out[j * block + t] += coef * c[i * block + t];
      }
    }
    ObjectId y = 0;
    for (int j = 0; j < p; ++j) y = y * n + x;
    return b->arrow_at(y, out);
  };
  return f;
}

}  // namespace

Span linear_span(const AbelianModel& model, int k, const Matrix& left, const Matrix& right) {
  model.validate();
  std::vector<std::vector<std::int64_t>> factors;
  for (const auto& f : model.isotropy) {
    std::vector<std::int64_t> all;
    for (int i = 0; i < k; ++i) all.insert(all.end(), f.begin(), f.end());
    factors.push_back(std::move(all));
  }
  auto apex = std::make_shared<AbelianGroupoid>(model.base, std::move(factors));
  std::vector<std::size_t> blocks;
  for (const auto& f : model.isotropy) blocks.push_back(f.size());
  Span s;
  s.apex = apex;
  s.left = Boundary::power(model, static_cast<int>(left.size()));
  s.right = Boundary::power(model, static_cast<int>(right.size()));
  s.left_leg = gpd::tabulate(diagonal_leg(apex, s.left, left, blocks));
  s.right_leg = gpd::tabulate(diagonal_leg(apex, s.right, right, blocks));
  return s;
}

Matrix unit_matrix(int k) {
  Matrix m(k, std::vector<std::int64_t>(k, 0));
  for (int i = 0; i < k; ++i) m[i][i] = 1;
  return m;
}

namespace {

Span swap_span(const AbelianModel& model) {
  const Boundary b = Boundary::power(model, 2);
  const auto g = b.group();
  const std::uint64_t n = model.base.size();
  Span s;
  s.apex = g;
  s.left = b;
  s.right = b;
  s.left_leg = gpd::identity_functor(g);
  s.right_leg.domain = g;
  s.right_leg.codomain = g;
  s.right_leg.on_object = [n](ObjectId x) { return (x % n) * n + x / n; };
  std::vector<std::size_t> blocks;
  for (const auto& f : model.isotropy) blocks.push_back(f.size());
  s.right_leg.on_arrow = [g, n, blocks](ArrowId a) {
    const ObjectId x = g->source(a);
    const ObjectId p = x / n, q = x % n;
    const auto c = g->coords(a);
    const std::size_t k = blocks[p];
    std::vector<std::int64_t> swapped(c.begin() + static_cast<std::ptrdiff_t>(k), c.end());
    swapped.insert(swapped.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
    return g->arrow_at(q * n + p, swapped);
  };
  s.right_leg = gpd::tabulate(s.right_leg);
  return s;
}

}  // namespace

Span generator_span(const AbelianModel& model, cob::Generator g) {
  switch (g) {
    case cob::Generator::mu:
      return linear_span(model, 2, unit_matrix(2), {{1, 1}});
    case cob::Generator::delta:
      return linear_span(model, 2, {{1, 1}}, unit_matrix(2));
    case cob::Generator::eta:
      return linear_span(model, 0, {}, {{}});
    case cob::Generator::eps:
      return linear_span(model, 0, {{}}, {});
    case cob::Generator::tau:
      return swap_span(model);
  }
  throw std::logic_error("generator_span: unknown generator");
}

Span identity_span(const AbelianModel& model, int n) {
  model.validate();
  if (n < 0) throw InputError("identity span: negative width");
  return gpd::identity_span(Boundary::power(model, n));
}

Span genus0_span(const AbelianModel& model, int m, int n) {
  if (m < 0 || n < 0) throw InputError("genus-0 span: negative boundary count");
  if (m == 0 && n == 0) throw InputError("genus-0 span: (m, n) = (0, 0) is excluded");
  // Free coordinates: a_1..a_m, b_1..b_{n-1}; b_n = sum a - sum b_{<n}.
  // With n = 0 the free coordinates are a_1..a_{m-1} and a_m = -sum a_{<m}.
  const int k = m + n - 1;
  Matrix left, right;
  if (n > 0) {
    for (int i = 0; i < m; ++i) {
      std::vector<std::int64_t> row(k, 0);
      row[i] = 1;
      left.push_back(row);
    }
    for (int j = 0; j < n - 1; ++j) {
      std::vector<std::int64_t> row(k, 0);
      row[m + j] = 1;
      right.push_back(row);
    }
    std::vector<std::int64_t> last(k, 0);
    for (int i = 0; i < m; ++i) last[i] = 1;
    for (int j = 0; j < n - 1; ++j) last[m + j] = -1;
    right.push_back(last);
  } else {
    for (int i = 0; i < m - 1; ++i) {
      std::vector<std::int64_t> row(k, 0);
      row[i] = 1;
      left.push_back(row);
    }
    left.push_back(std::vector<std::int64_t>(k, -1));
  }
  return linear_span(model, k, left, right);
}

}  // namespace tqftwb::frob
