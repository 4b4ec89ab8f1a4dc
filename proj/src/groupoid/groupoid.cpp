#include "tqftwb/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace tqftwb::gpd {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a != 0 && b > (std::uint64_t{1} << 62) / a) {
    throw LimitError(std::string(what) + " exceeds the 64-bit id space");
  }
  return a * b;
}

std::string join_coords(const std::vector<std::int64_t>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

}  // namespace

// ---- Groupoid defaults ----

std::string Groupoid::arrow_label(ArrowId a) const { return "#" + std::to_string(a); }

void Groupoid::for_each_out(ObjectId x, ArrowVisitor f) const {
  const std::uint64_t d = out_degree(x);
  for (std::uint64_t k = 0; k < d; ++k) f(out_arrow(x, k));
}

void Groupoid::for_each_hom(ObjectId x, ObjectId y, ArrowVisitor f) const {
  for_each_out(x, [&](ArrowId a) {
    if (target(a) == y) f(a);
  });
}

std::uint64_t Groupoid::hom_size(ObjectId x, ObjectId y) const {
  std::uint64_t n = 0;
  for_each_hom(x, y, [&](ArrowId) { ++n; });
  return n;
}

void Groupoid::for_each_generator_out(ObjectId x, ArrowVisitor f) const { for_each_out(x, f); }

std::uint64_t Groupoid::arrow_count() const {
  std::uint64_t n = 0;
  for (ObjectId x = 0; x < object_count(); ++x) n += out_degree(x);
  return n;
}

// ---- TableGroupoid ----

TableGroupoid::TableGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                             std::vector<ArrowId> identities, std::vector<ArrowId> inverses,
                             std::vector<std::int64_t> compose_table)
    : objects_(std::move(objects)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      inverses_(std::move(inverses)),
      table_(std::move(compose_table)) {
  const std::size_t n = arrows_.size();
  if (identities_.size() != objects_.size() || inverses_.size() != n || table_.size() != n * n) {
    throw InputError("table groupoid: inconsistent table sizes");
  }
  out_.resize(objects_.size());
  out_pos_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& arrow = arrows_[a];
    if (arrow.source >= objects_.size() || arrow.target >= objects_.size()) {
      throw InputError("table groupoid: arrow endpoint out of range");
    }
    out_pos_[a] = out_[arrow.source].size();
    out_[arrow.source].push_back(a);
  }
  for (std::size_t x = 0; x < objects_.size(); ++x) {
    const ArrowId e = identities_[x];
    if (e >= n || arrows_[e].source != x || arrows_[e].target != x) {
      throw InputError("table groupoid: identity at object " + std::to_string(x) + " is not a loop");
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const ArrowId b = inverses_[a];
    if (b >= n || arrows_[b].source != arrows_[a].target || arrows_[b].target != arrows_[a].source) {
      throw InputError("table groupoid: inverse of arrow " + std::to_string(a) + " has wrong ends");
    }
  }
}

ArrowId TableGroupoid::compose(ArrowId g, ArrowId h) const {
  const std::int64_t r = table_.at(g * arrows_.size() + h);
  if (r < 0) throw InputError("table groupoid: arrows are not composable");
  return static_cast<ArrowId>(r);
}

Materialized materialize(const Groupoid& g, std::uint64_t max_arrows, std::uint64_t shuffle_seed) {
  max_arrows = std::min<std::uint64_t>(max_arrows, 2048);
  const std::uint64_t n_obj = g.object_count();
  const std::uint64_t n_arr = g.arrow_count();
  if (n_arr > max_arrows) {
    throw LimitError("groupoid has " + std::to_string(n_arr) + " arrows; materialization limit is " +
                     std::to_string(max_arrows));
  }
  Rng rng(shuffle_seed);
  std::vector<ObjectId> obj_perm(n_obj);
  std::iota(obj_perm.begin(), obj_perm.end(), 0);
  std::vector<ArrowId> originals;
  originals.reserve(n_arr);
  for (ObjectId x = 0; x < n_obj; ++x) g.for_each_out(x, [&](ArrowId a) { originals.push_back(a); });
  std::vector<ArrowId> arr_perm(n_arr);
  std::iota(arr_perm.begin(), arr_perm.end(), 0);
  if (shuffle_seed != 0) {
    for (std::uint64_t i = n_obj; i > 1; --i) std::swap(obj_perm[i - 1], obj_perm[rng.below(i)]);
    for (std::uint64_t i = n_arr; i > 1; --i) std::swap(arr_perm[i - 1], arr_perm[rng.below(i)]);
  }
  Materialized m;
  m.object_to_table = obj_perm;
  m.table_to_arrow.resize(n_arr);
  for (std::uint64_t i = 0; i < n_arr; ++i) {
    m.arrow_to_table[originals[i]] = arr_perm[i];
    m.table_to_arrow[arr_perm[i]] = originals[i];
  }
  std::vector<std::string> objects(n_obj);
  std::vector<ArrowId> ids(n_obj);
  for (ObjectId x = 0; x < n_obj; ++x) {
    objects[obj_perm[x]] = g.object_label(x);
    ids[obj_perm[x]] = m.arrow_to_table.at(g.identity(x));
  }
  std::vector<TableGroupoid::Arrow> arrows(n_arr);
  std::vector<ArrowId> inverses(n_arr);
  std::vector<std::int64_t> table(n_arr * n_arr, -1);
  for (std::uint64_t t = 0; t < n_arr; ++t) {
    const ArrowId a = m.table_to_arrow[t];
    arrows[t] = {obj_perm[g.source(a)], obj_perm[g.target(a)], g.arrow_label(a)};
    inverses[t] = m.arrow_to_table.at(g.inverse(a));
  }
  for (std::uint64_t t = 0; t < n_arr; ++t) {
    const ArrowId h = m.table_to_arrow[t];
    g.for_each_out(g.target(h), [&](ArrowId k) {
      table[m.arrow_to_table.at(k) * n_arr + t] =
          static_cast<std::int64_t>(m.arrow_to_table.at(g.compose(k, h)));
    });
  }
  m.table = std::make_shared<TableGroupoid>(std::move(objects), std::move(arrows), std::move(ids),
                                            std::move(inverses), std::move(table));
  return m;
}

// ---- AbelianGroupoid ----

AbelianGroupoid::AbelianGroupoid(std::vector<std::string> labels,
                                 std::vector<std::vector<std::int64_t>> factors)
    : labels_(std::move(labels)), factors_(std::move(factors)) {
  if (labels_.size() != factors_.size()) throw InputError("abelian groupoid: label/factor mismatch");
  offsets_.assign(1, 0);
  for (const auto& f : factors_) {
    std::uint64_t order = 1;
    for (auto d : f) {
      if (d < 1) throw InputError("abelian groupoid: cyclic factor must be positive");
      order = checked_mul(order, static_cast<std::uint64_t>(d), "isotropy order");
    }
    offsets_.push_back(offsets_.back() + order);
    if (offsets_.back() > (std::uint64_t{1} << 62)) throw LimitError("abelian groupoid too large");
  }
}

ObjectId AbelianGroupoid::source(ArrowId a) const {
  if (a >= offsets_.back()) throw std::out_of_range("abelian groupoid: arrow id out of range");
  if (offsets_.size() == 2) return 0;
  return static_cast<ObjectId>(std::upper_bound(offsets_.begin(), offsets_.end(), a) -
                               offsets_.begin() - 1);
}

ArrowId AbelianGroupoid::arrow_at(ObjectId x, std::span<const std::int64_t> coords) const {
  const auto& f = factors_.at(x);
  if (coords.size() != f.size()) throw std::invalid_argument("abelian groupoid: coordinate count");
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::int64_t c = ((coords[i] % f[i]) + f[i]) % f[i];
    r = r * static_cast<std::uint64_t>(f[i]) + static_cast<std::uint64_t>(c);
  }
  return offsets_[x] + r;
}

std::vector<std::int64_t> AbelianGroupoid::coords(ArrowId a) const {
  const ObjectId x = source(a);
  const auto& f = factors_[x];
  std::uint64_t r = a - offsets_[x];
  std::vector<std::int64_t> c(f.size());
  for (std::size_t i = f.size(); i-- > 0;) {
    c[i] = static_cast<std::int64_t>(r % static_cast<std::uint64_t>(f[i]));
    r /= static_cast<std::uint64_t>(f[i]);
  }
  return c;
}

ArrowId AbelianGroupoid::compose(ArrowId g, ArrowId h) const {
  const ObjectId x = source(g);
  if (source(h) != x) throw std::invalid_argument("abelian groupoid: arrows are not composable");
  const auto& f = factors_[x];
  std::uint64_t a = g - offsets_[x], b = h - offsets_[x];
  std::uint64_t r = 0, place = 1;
  for (std::size_t i = f.size(); i-- > 0;) {
    const auto d = static_cast<std::uint64_t>(f[i]);
    r += ((a % d + b % d) % d) * place;
    a /= d;
    b /= d;
    place *= d;
  }
  return offsets_[x] + r;
}

ArrowId AbelianGroupoid::inverse(ArrowId g) const {
  const ObjectId x = source(g);
  const auto& f = factors_[x];
  std::uint64_t a = g - offsets_[x];
  std::uint64_t r = 0, place = 1;
  for (std::size_t i = f.size(); i-- > 0;) {
    const auto d = static_cast<std::uint64_t>(f[i]);
    r += ((d - a % d) % d) * place;
    a /= d;
    place *= d;
  }
  return offsets_[x] + r;
}

std::string AbelianGroupoid::arrow_label(ArrowId a) const {
  return labels_[source(a)] + ":" + join_coords(coords(a));
}

void AbelianGroupoid::for_each_hom(ObjectId x, ObjectId y, ArrowVisitor f) const {
  if (x != y) return;
  for (ArrowId a = offsets_.at(x); a < offsets_.at(x + 1); ++a) f(a);
}

void AbelianGroupoid::for_each_generator_out(ObjectId x, ArrowVisitor f) const {
  const auto& fs = factors_.at(x);
  std::uint64_t place = 1;
  for (std::size_t i = fs.size(); i-- > 0;) {
    if (fs[i] > 1) f(offsets_[x] + place);
    place *= static_cast<std::uint64_t>(fs[i]);
  }
}

std::shared_ptr<const AbelianGroupoid> abelian_product(const AbelianGroupoid& a,
                                                       const AbelianGroupoid& b) {
  std::vector<std::string> labels;
  std::vector<std::vector<std::int64_t>> factors;
  checked_mul(a.object_count(), b.object_count(), "product object count");
  for (ObjectId x = 0; x < a.object_count(); ++x) {
    for (ObjectId y = 0; y < b.object_count(); ++y) {
      labels.push_back("(" + a.object_label(x) + "," + b.object_label(y) + ")");
      auto f = a.factors(x);
      f.insert(f.end(), b.factors(y).begin(), b.factors(y).end());
      factors.push_back(std::move(f));
    }
  }
  return std::make_shared<AbelianGroupoid>(std::move(labels), std::move(factors));
}

// ---- ProductGroupoid ----

ProductGroupoid::ProductGroupoid(std::vector<GroupoidPtr> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    std::uint64_t d = 1;
    for (ObjectId x = 0; x < f->object_count(); ++x) d = std::max(d, f->out_degree(x));
    max_degree_.push_back(d);
    object_count_ = checked_mul(object_count_, f->object_count(), "product object count");
    arrow_stride_ = checked_mul(arrow_stride_, d, "product arrow stride");
  }
  checked_mul(std::max<std::uint64_t>(object_count_, 1), arrow_stride_, "product arrow ids");
}

ObjectId ProductGroupoid::object_of(std::span<const ObjectId> parts) const {
  ObjectId x = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) x = x * factors_[i]->object_count() + parts[i];
  return x;
}

std::vector<ObjectId> ProductGroupoid::object_parts(ObjectId x) const {
  std::vector<ObjectId> p(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    const auto n = factors_[i]->object_count();
    p[i] = x % n;
    x /= n;
  }
  return p;
}

ArrowId ProductGroupoid::arrow_of(std::span<const ArrowId> parts) const {
  std::vector<ObjectId> src(factors_.size());
  std::uint64_t local = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    src[i] = factors_[i]->source(parts[i]);
    local = local * max_degree_[i] + factors_[i]->out_index(parts[i]);
  }
  return object_of(src) * arrow_stride_ + local;
}

std::vector<ArrowId> ProductGroupoid::arrow_parts(ArrowId a) const {
  const auto src = object_parts(a / arrow_stride_);
  std::uint64_t local = a % arrow_stride_;
  std::vector<ArrowId> p(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    p[i] = factors_[i]->out_arrow(src[i], local % max_degree_[i]);
    local /= max_degree_[i];
  }
  return p;
}

std::string ProductGroupoid::object_label(ObjectId x) const {
  const auto p = object_parts(x);
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += factors_[i]->object_label(p[i]);
  }
  return s + ")";
}

std::string ProductGroupoid::arrow_label(ArrowId a) const {
  const auto p = arrow_parts(a);
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += factors_[i]->arrow_label(p[i]);
  }
  return s + ")";
}

ArrowId ProductGroupoid::identity(ObjectId x) const {
  const auto p = object_parts(x);
  std::vector<ArrowId> ids(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) ids[i] = factors_[i]->identity(p[i]);
  return arrow_of(ids);
}

ObjectId ProductGroupoid::target(ArrowId a) const {
  const auto p = arrow_parts(a);
  std::vector<ObjectId> t(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) t[i] = factors_[i]->target(p[i]);
  return object_of(t);
}

ArrowId ProductGroupoid::compose(ArrowId g, ArrowId h) const {
  auto pg = arrow_parts(g);
  const auto ph = arrow_parts(h);
  for (std::size_t i = 0; i < pg.size(); ++i) pg[i] = factors_[i]->compose(pg[i], ph[i]);
  return arrow_of(pg);
}

ArrowId ProductGroupoid::inverse(ArrowId a) const {
  auto p = arrow_parts(a);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = factors_[i]->inverse(p[i]);
  return arrow_of(p);
}

std::uint64_t ProductGroupoid::out_degree(ObjectId x) const {
  const auto p = object_parts(x);
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < p.size(); ++i) d *= factors_[i]->out_degree(p[i]);
  return d;
}

ArrowId ProductGroupoid::out_arrow(ObjectId x, std::uint64_t k) const {
  const auto p = object_parts(x);
  std::uint64_t local = 0, place = 1;
  for (std::size_t i = p.size(); i-- > 0;) {
    const auto d = factors_[i]->out_degree(p[i]);
    local += (k % d) * place;
    k /= d;
    place *= max_degree_[i];
  }
  return x * arrow_stride_ + local;
}

std::uint64_t ProductGroupoid::out_index(ArrowId a) const {
  const auto p = object_parts(a / arrow_stride_);
  std::uint64_t local = a % arrow_stride_;
  std::vector<std::uint64_t> k(p.size());
  for (std::size_t i = p.size(); i-- > 0;) {
    k[i] = local % max_degree_[i];
    local /= max_degree_[i];
  }
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < p.size(); ++i) r = r * factors_[i]->out_degree(p[i]) + k[i];
  return r;
}

void ProductGroupoid::for_each_hom(ObjectId x, ObjectId y, ArrowVisitor f) const {
  const auto px = object_parts(x), py = object_parts(y);
  std::vector<std::vector<ArrowId>> homs(px.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    factors_[i]->for_each_hom(px[i], py[i], [&](ArrowId a) { homs[i].push_back(a); });
    if (homs[i].empty()) return;
  }
  std::vector<std::size_t> idx(px.size(), 0);
  std::vector<ArrowId> parts(px.size());
  for (;;) {
    for (std::size_t i = 0; i < px.size(); ++i) parts[i] = homs[i][idx[i]];
    f(arrow_of(parts));
    std::size_t i = px.size();
    while (i > 0) {
      --i;
      if (++idx[i] < homs[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (px.empty()) return;
  }
}

std::uint64_t ProductGroupoid::hom_size(ObjectId x, ObjectId y) const {
  const auto px = object_parts(x), py = object_parts(y);
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < px.size(); ++i) n *= factors_[i]->hom_size(px[i], py[i]);
  return n;
}

void ProductGroupoid::for_each_generator_out(ObjectId x, ArrowVisitor f) const {
  const auto p = object_parts(x);
  std::vector<ArrowId> parts(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) parts[i] = factors_[i]->identity(p[i]);
  for (std::size_t i = 0; i < p.size(); ++i) {
    factors_[i]->for_each_generator_out(p[i], [&](ArrowId a) {
      auto q = parts;
      q[i] = a;
      f(arrow_of(q));
    });
  }
}

// ---- functors ----

GroupoidFunctor identity_functor(const GroupoidPtr& g) {
  return {g, g, [](ObjectId x) { return x; }, [](ArrowId a) { return a; }};
}

GroupoidFunctor compose_functors(const GroupoidFunctor& g, const GroupoidFunctor& f) {
  return {f.domain, g.codomain,
          [go = g.on_object, fo = f.on_object](ObjectId x) { return go(fo(x)); },
          [ga = g.on_arrow, fa = f.on_arrow](ArrowId a) { return ga(fa(a)); }};
}

GroupoidFunctor tabulate(const GroupoidFunctor& f, std::uint64_t max_arrows) {
  const auto* d = dynamic_cast<const AbelianGroupoid*>(f.domain.get());
  if (!d || d->arrow_count() > max_arrows) return f;
  auto objects = std::make_shared<std::vector<ObjectId>>(d->object_count());
  auto arrows = std::make_shared<std::vector<ArrowId>>(d->arrow_count());
  for (ObjectId x = 0; x < d->object_count(); ++x) (*objects)[x] = f.on_object(x);
  for (ArrowId a = 0; a < d->arrow_count(); ++a) (*arrows)[a] = f.on_arrow(a);
  return {f.domain, f.codomain, [objects](ObjectId x) { return objects->at(x); },
          [arrows](ArrowId a) { return arrows->at(a); }};
}

// ---- orbits and isotropy ----

Orbits orbits(const Groupoid& g, std::uint64_t max_objects) {
  const std::uint64_t n = g.object_count();
  if (n > max_objects) {
    throw LimitError("groupoid has " + std::to_string(n) + " objects; orbit limit is " +
                     std::to_string(max_objects));
  }
  std::vector<std::uint64_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint64_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (ObjectId x = 0; x < n; ++x) {
    g.for_each_generator_out(x, [&](ArrowId a) {
      auto r1 = find(x), r2 = find(g.target(a));
      if (r1 == r2) return;
      if (r1 > r2) std::swap(r1, r2);
      parent[r2] = r1;
    });
  }
  Orbits o;
  o.orbit_of.resize(n);
  std::vector<std::uint64_t> id_of_root(n, UINT64_MAX);
  for (ObjectId x = 0; x < n; ++x) {
    const auto r = find(x);
    if (id_of_root[r] == UINT64_MAX) {
      id_of_root[r] = o.representative.size();
      o.representative.push_back(x);
    }
    o.orbit_of[x] = id_of_root[r];
  }
  return o;
}

Rational cardinality(const Groupoid& g) {
  Rational total = 0;
  for (ObjectId x : orbits(g).representative) total += Rational(1, g.hom_size(x, x));
  total.canonicalize();
  return total;
}

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

// Smith normal form of a square relation matrix. Returns the diagonal and
// the accumulated column transform V with U R V = D.
std::pair<std::vector<BigInt>, BigMatrix> smith(BigMatrix a) {
  const std::size_t n = a.size();
  BigMatrix v(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) {
      std::swap(a[r][i], a[r][j]);
      std::swap(v[r][i], v[r][j]);
    }
  };
  // column j -= q * column i
  auto sub_col = [&](std::size_t j, std::size_t i, const BigInt& q) {
    for (std::size_t r = 0; r < n; ++r) {
      a[r][j] -= q * a[r][i];
      v[r][j] -= q * v[r][i];
    }
  };
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry in the trailing block
      std::size_t pr = n, pc = n;
      for (std::size_t r = t; r < n; ++r) {
        for (std::size_t c = t; c < n; ++c) {
          if (a[r][c] != 0 && (pr == n || abs(a[r][c]) < abs(a[pr][pc]))) pr = r, pc = c;
        }
      }
      if (pr == n) break;
      std::swap(a[t], a[pr]);
      if (pc != t) swap_cols(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < n; ++r) {
        if (a[r][t] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t c = t; c < n; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (a[t][c] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
        sub_col(c, t, q);
        if (a[t][c] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: fold a bad row into row t and go again
      std::size_t bad = n;
      for (std::size_t r = t + 1; r < n && bad == n; ++r) {
        for (std::size_t c = t + 1; c < n; ++c) {
          if (a[r][c] % a[t][t] != 0) {
            bad = r;
            break;
          }
        }
      }
      if (bad == n) break;
      for (std::size_t c = t; c < n; ++c) a[t][c] += a[bad][c];
    }
  }
  std::vector<BigInt> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = abs(a[i][i]);
  return {d, v};
}

}  // namespace

std::vector<std::int64_t> invariant_factors(std::span<const std::int64_t> factors) {
  const std::size_t n = factors.size();
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = static_cast<long>(factors[i]);
  auto [d, v] = smith(std::move(m));
  std::vector<std::int64_t> out;
  for (const auto& x : d) {
    if (x > 1) out.push_back(x.get_si());
  }
  std::sort(out.begin(), out.end());
  return out;
}

IsotropyStructure analyze_isotropy(const Groupoid& g, ObjectId x, std::uint64_t bound) {
  const std::uint64_t order = g.hom_size(x, x);
  if (order > bound) {
    throw LimitError("isotropy group of order " + std::to_string(order) + " at object " +
                     g.object_label(x) + " exceeds the bound " + std::to_string(bound));
  }
  std::vector<ArrowId> all;
  all.reserve(order);
  g.for_each_hom(x, x, [&](ArrowId a) { all.push_back(a); });
  std::sort(all.begin(), all.end());

  // Greedy generators g_j with relative orders k_j: every element is
  // uniquely prod g_j^{c_j} with 0 <= c_j < k_j.
  std::unordered_map<ArrowId, std::vector<std::int64_t>> coords;
  coords[g.identity(x)] = {};
  std::vector<ArrowId> gens;
  BigMatrix relations;
  for (ArrowId e : all) {
    if (coords.count(e)) continue;
    for (ArrowId h : gens) {
      if (g.compose(e, h) != g.compose(h, e)) {
        throw UnsupportedError("non-abelian isotropy at object " + g.object_label(x));
      }
    }
    std::int64_t k = 1;
    ArrowId p = e;
    while (!coords.count(p)) {
      p = g.compose(p, e);
      ++k;
    }
    const std::vector<std::int64_t> rel = coords.at(p);
    std::unordered_map<ArrowId, std::vector<std::int64_t>> next;
    next.reserve(coords.size() * static_cast<std::size_t>(k));
    for (const auto& [h, c] : coords) {
      ArrowId cur = h;
      for (std::int64_t i = 0; i < k; ++i) {
        auto cc = c;
        cc.resize(gens.size(), 0);
        cc.push_back(i);
        next.emplace(cur, std::move(cc));
        cur = g.compose(cur, e);
      }
    }
    coords = std::move(next);
    std::vector<BigInt> row(gens.size() + 1, 0);
    for (std::size_t i = 0; i < rel.size(); ++i) row[i] = -rel[i];
    row[gens.size()] = k;
    gens.push_back(e);
    relations.push_back(std::move(row));
  }
  if (coords.size() != order) {
    throw std::logic_error("isotropy enumeration is not closed under composition");
  }
  const std::size_t r = gens.size();
  for (auto& row : relations) row.resize(r, 0);
  auto [d, v] = smith(relations);

  IsotropyStructure s;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < r; ++i) {
    if (d[i] > 1) keep.push_back(i);
  }
  std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  for (auto i : keep) s.factors.push_back(d[i].get_si());
  s.elements.assign(order, 0);
  for (const auto& [arrow, c] : coords) {
    std::uint64_t idx = 0;
    for (std::size_t kk = 0; kk < keep.size(); ++kk) {
      const std::size_t col = keep[kk];
      BigInt val = 0;
      for (std::size_t j = 0; j < c.size(); ++j) val += c[j] * v[j][col];
      BigInt m;
      mpz_fdiv_r(m.get_mpz_t(), val.get_mpz_t(), d[col].get_mpz_t());
      idx = idx * static_cast<std::uint64_t>(s.factors[kk]) + m.get_ui();
    }
    s.elements[idx] = arrow;
    s.index_of[arrow] = idx;
  }
  if (s.index_of.size() != order) throw std::logic_error("invariant-factor coordinates not bijective");
  return s;
}

// ---- validity ----

namespace {

// Messages are built only on failure; labels are expensive on lazy groupoids.
struct Failure {
  Validity& v;
  template <class Message>
  bool operator()(bool cond, Message&& what) {
    ++v.checks;
    if (!cond && v.ok) {
      v.ok = false;
      v.failure = what();
    }
    return cond;
  }
};

}  // namespace

Validity check_groupoid(const Groupoid& g, std::uint64_t budget, std::uint64_t seed) {
  Validity v;
  Failure check{v};
  const std::uint64_t n = g.object_count();
  long double triples = 0, arrows = 0;
  for (ObjectId x = 0; x < n; ++x) {
    const long double d = static_cast<long double>(g.out_degree(x));
    arrows += d;
    triples += d * d * d;
  }
  auto arrow_laws = [&](ArrowId a) {
    const ObjectId s = g.source(a), t = g.target(a);
    if (!check(s < n && t < n,
               [&] { return std::string("arrow " + g.arrow_label(a) + " has an endpoint out of range"); })) return;
    check(g.out_arrow(s, g.out_index(a)) == a,
          [&] { return std::string("out-index of " + g.arrow_label(a) + " is inconsistent"); });
    check(g.compose(a, g.identity(s)) == a,
          [&] { return std::string("right unit law fails at " + g.arrow_label(a)); });
    check(g.compose(g.identity(t), a) == a,
          [&] { return std::string("left unit law fails at " + g.arrow_label(a)); });
    const ArrowId inv = g.inverse(a);
    check(g.source(inv) == t && g.target(inv) == s,
          [&] { return std::string("inverse of " + g.arrow_label(a) + " has wrong ends"); });
    check(g.compose(inv, a) == g.identity(s),
          [&] { return std::string("inverse law fails at " + g.arrow_label(a)); });
    check(g.compose(a, inv) == g.identity(t),
          [&] { return std::string("inverse law fails at " + g.arrow_label(a)); });
  };
  auto triple_laws = [&](ArrowId c, ArrowId b, ArrowId a) {
    const ArrowId bc = g.compose(b, c);
    check(g.source(bc) == g.source(c) && g.target(bc) == g.target(b),
          [&] { return std::string("composite " + g.arrow_label(b) + " o " + g.arrow_label(c) + " has wrong ends"); });
    check(g.compose(a, bc) == g.compose(g.compose(a, b), c),
          [&] { return std::string("associativity fails at " + g.arrow_label(a) + ", " + g.arrow_label(b) + ", " +
              g.arrow_label(c)); });
  };
  for (ObjectId x = 0; x < n; ++x) {
    check(g.source(g.identity(x)) == x && g.target(g.identity(x)) == x,
          [&] { return std::string("identity at " + g.object_label(x) + " is not a loop"); });
  }
  Rng rng(seed);
  if (arrows <= static_cast<long double>(budget)) {
    for (ObjectId x = 0; x < n; ++x) g.for_each_out(x, [&](ArrowId a) { arrow_laws(a); });
  } else {
    v.exhaustive = false;
    for (std::uint64_t i = 0; i < budget / 8 + 1; ++i) {
      const ObjectId x = rng.below(n);
      arrow_laws(g.out_arrow(x, rng.below(g.out_degree(x))));
    }
  }
  if (!v.ok) return v;
  if (triples <= static_cast<long double>(budget)) {
    for (ObjectId x = 0; x < n; ++x) {
      g.for_each_out(x, [&](ArrowId c) {
        g.for_each_out(g.target(c), [&](ArrowId b) {
          g.for_each_out(g.target(b), [&](ArrowId a) { triple_laws(c, b, a); });
        });
      });
    }
  } else {
    v.exhaustive = false;
    for (std::uint64_t i = 0; i < budget / 4 + 1 && n > 0; ++i) {
      const ObjectId x = rng.below(n);
      const ArrowId c = g.out_arrow(x, rng.below(g.out_degree(x)));
      const ObjectId y = g.target(c);
      const ArrowId b = g.out_arrow(y, rng.below(g.out_degree(y)));
      const ObjectId z = g.target(b);
      triple_laws(c, b, g.out_arrow(z, rng.below(g.out_degree(z))));
    }
  }
  return v;
}

Validity check_functor(const GroupoidFunctor& f, std::uint64_t budget, std::uint64_t seed) {
  Validity v;
  Failure check{v};
  const Groupoid& d = *f.domain;
  const Groupoid& c = *f.codomain;
  const std::uint64_t n = d.object_count();
  long double pairs = 0, arrows = 0;
  for (ObjectId x = 0; x < n; ++x) {
    const long double k = static_cast<long double>(d.out_degree(x));
    arrows += k;
    pairs += k * k;
  }
  for (ObjectId x = 0; x < n && v.ok; ++x) {
    const ObjectId fx = f.on_object(x);
    if (!check(fx < c.object_count(),
               [&] { return std::string("object " + d.object_label(x) + " maps out of range"); })) break;
    check(f.on_arrow(d.identity(x)) == c.identity(fx),
          [&] { return std::string("identity at " + d.object_label(x) + " is not preserved"); });
  }
  auto arrow_laws = [&](ArrowId a) {
    const ArrowId fa = f.on_arrow(a);
    check(c.source(fa) == f.on_object(d.source(a)) && c.target(fa) == f.on_object(d.target(a)),
          [&] { return std::string("arrow " + d.arrow_label(a) + " maps to an arrow with wrong ends"); });
  };
  auto pair_law = [&](ArrowId b, ArrowId a) {
    check(f.on_arrow(d.compose(a, b)) == c.compose(f.on_arrow(a), f.on_arrow(b)),
          [&] { return std::string("composition not preserved at " + d.arrow_label(a) + " o " + d.arrow_label(b)); });
  };
  Rng rng(seed);
  if (arrows <= static_cast<long double>(budget)) {
    for (ObjectId x = 0; x < n; ++x) d.for_each_out(x, [&](ArrowId a) { arrow_laws(a); });
  } else {
    v.exhaustive = false;
    for (std::uint64_t i = 0; i < budget / 4 + 1; ++i) {
      const ObjectId x = rng.below(n);
      arrow_laws(d.out_arrow(x, rng.below(d.out_degree(x))));
    }
  }
  if (!v.ok) return v;
  if (pairs <= static_cast<long double>(budget)) {
    for (ObjectId x = 0; x < n; ++x) {
      d.for_each_out(x, [&](ArrowId b) {
        d.for_each_out(d.target(b), [&](ArrowId a) { pair_law(b, a); });
      });
    }
  } else {
    v.exhaustive = false;
    for (std::uint64_t i = 0; i < budget / 2 + 1 && n > 0; ++i) {
      const ObjectId x = rng.below(n);
      const ArrowId b = d.out_arrow(x, rng.below(d.out_degree(x)));
      const ObjectId y = d.target(b);
      pair_law(b, d.out_arrow(y, rng.below(d.out_degree(y))));
    }
  }
  return v;
}

bool essential_equivalence_check(const GroupoidFunctor& f) {
  const Groupoid& d = *f.domain;
  const Groupoid& c = *f.codomain;
  const Orbits od = orbits(d);
  const Orbits oc = orbits(c);
  std::vector<char> hit(oc.representative.size(), 0);
  for (ObjectId x : od.representative) {
    const ObjectId fx = f.on_object(x);
    const auto orbit = oc.orbit_of.at(fx);
    if (hit[orbit]) return false;  // two domain orbits merge: not full
    hit[orbit] = 1;
    const std::uint64_t order = d.hom_size(x, x);
    if (c.hom_size(fx, fx) != order) return false;
    std::unordered_set<ArrowId> image;
    image.reserve(order);
    bool ok = true;
    d.for_each_hom(x, x, [&](ArrowId a) {
      if (!image.insert(f.on_arrow(a)).second) ok = false;
    });
    if (!ok) return false;
  }
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

bool is_isofibration(const GroupoidFunctor& f) {
  const Groupoid& d = *f.domain;
  const Groupoid& c = *f.codomain;
  std::unordered_set<ArrowId> image;
  for (ObjectId x = 0; x < d.object_count(); ++x) {
    const std::uint64_t need = c.out_degree(f.on_object(x));
    if (d.out_degree(x) < need) return false;
    image.clear();
    d.for_each_out(x, [&](ArrowId a) { image.insert(f.on_arrow(a)); });
    if (image.size() != need) return false;
  }
  return true;
}

bool essential_equivalence_exhaustive(const GroupoidFunctor& f, std::uint64_t max_pairs) {
  const Groupoid& d = *f.domain;
  const Groupoid& c = *f.codomain;
  const std::uint64_t n = d.object_count();
  if (n * n > max_pairs) throw LimitError("too many object pairs for the exhaustive check");
  for (ObjectId x = 0; x < n; ++x) {
    for (ObjectId y = 0; y < n; ++y) {
      std::unordered_set<ArrowId> image;
      bool ok = true;
      d.for_each_hom(x, y, [&](ArrowId a) {
        if (!image.insert(f.on_arrow(a)).second) ok = false;
      });
      if (!ok || image.size() != c.hom_size(f.on_object(x), f.on_object(y))) return false;
    }
  }
  const Orbits oc = orbits(c);
  std::vector<char> hit(oc.representative.size(), 0);
  for (ObjectId x = 0; x < n; ++x) hit[oc.orbit_of[f.on_object(x)]] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

}  // namespace tqftwb::gpd
