#include <algorithm>
#include <unordered_set>

#include "tqftwb/span.hpp"

namespace tqftwb::gpd {

namespace {

std::uint64_t max_out_degree(const Groupoid& g) {
  std::uint64_t d = 1;
  for (ObjectId x = 0; x < g.object_count(); ++x) d = std::max(d, g.out_degree(x));
  return d;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > (std::uint64_t{1} << 62) / a) {
    throw LimitError("fibre product exceeds the 64-bit id space");
  }
  return a * b;
}

// Arrow (a1, a2) of the product of two abelian boundary groups.
ArrowId pair_arrow(const AbelianGroupoid& prod, const AbelianGroupoid& g1, ArrowId a1,
                   const AbelianGroupoid& g2, ArrowId a2) {
  const ObjectId x = g1.source(a1) * g2.object_count() + g2.source(a2);
  auto c = g1.coords(a1);
  const auto c2 = g2.coords(a2);
  c.insert(c.end(), c2.begin(), c2.end());
  return prod.arrow_at(x, c);
}

GroupoidFunctor product_leg(const GroupoidPtr& apex, const std::shared_ptr<const AbelianGroupoid>& target,
                            const GroupoidFunctor& l1, const GroupoidFunctor& l2,
                            std::function<std::pair<ObjectId, ObjectId>(ObjectId)> split_object,
                            std::function<std::pair<ArrowId, ArrowId>(ArrowId)> split_arrow) {
  auto g1 = std::static_pointer_cast<const AbelianGroupoid>(l1.codomain);
  auto g2 = std::static_pointer_cast<const AbelianGroupoid>(l2.codomain);
  GroupoidFunctor f;
  f.domain = apex;
  f.codomain = target;
  f.on_object = [=, o1 = l1.on_object, o2 = l2.on_object](ObjectId x) {
    const auto [x1, x2] = split_object(x);
    return o1(x1) * g2->object_count() + o2(x2);
  };
  f.on_arrow = [=, a1f = l1.on_arrow, a2f = l2.on_arrow](ArrowId a) {
    const auto [a1, a2] = split_arrow(a);
    return pair_arrow(*target, *g1, a1f(a1), *g2, a2f(a2));
  };
  return f;
}

}  // namespace

Span identity_span(const Boundary& b) {
  const GroupoidPtr g = b.group();
  return {g, b, b, identity_functor(g), identity_functor(g)};
}

Span unit_span() { return identity_span(Boundary()); }

Span product(const Span& a, const Span& b) {
  Span s;
  s.left = a.left * b.left;
  s.right = a.right * b.right;
  auto aa = std::dynamic_pointer_cast<const AbelianGroupoid>(a.apex);
  auto ba = std::dynamic_pointer_cast<const AbelianGroupoid>(b.apex);
  std::function<std::pair<ObjectId, ObjectId>(ObjectId)> split_object;
  std::function<std::pair<ArrowId, ArrowId>(ArrowId)> split_arrow;
  if (aa && ba) {
    auto apex = abelian_product(*aa, *ba);
    s.apex = apex;
    const std::uint64_t n2 = ba->object_count();
    split_object = [n2](ObjectId x) { return std::make_pair(x / n2, x % n2); };
    split_arrow = [apex, aa, ba, n2](ArrowId a) {
      const ObjectId x = apex->source(a);
      const auto c = apex->coords(a);
      const std::size_t k = aa->factors(x / n2).size();
      const std::span<const std::int64_t> all(c);
      return std::make_pair(aa->arrow_at(x / n2, all.subspan(0, k)),
                            ba->arrow_at(x % n2, all.subspan(k)));
    };
  } else {
    auto apex = std::make_shared<ProductGroupoid>(std::vector<GroupoidPtr>{a.apex, b.apex});
    s.apex = apex;
    split_object = [apex](ObjectId x) {
      const auto p = apex->object_parts(x);
      return std::make_pair(p[0], p[1]);
    };
    split_arrow = [apex](ArrowId x) {
      const auto p = apex->arrow_parts(x);
      return std::make_pair(p[0], p[1]);
    };
  }
  s.left_leg = tabulate(
      product_leg(s.apex, s.left.group(), a.left_leg, b.left_leg, split_object, split_arrow));
  s.right_leg = tabulate(
      product_leg(s.apex, s.right.group(), a.right_leg, b.right_leg, split_object, split_arrow));
  return s;
}

Span product(const std::vector<Span>& spans) {
  if (spans.empty()) return unit_span();
  Span acc = spans.front();
  for (std::size_t i = 1; i < spans.size(); ++i) acc = product(acc, spans[i]);
  return acc;
}

GroupoidPtr product(const std::vector<GroupoidPtr>& groupoids) {
  return std::make_shared<ProductGroupoid>(groupoids);
}

// ---- homotopy fibre product ----

HomotopyFibreProduct::HomotopyFibreProduct(GroupoidFunctor f1, GroupoidFunctor f2)
    : f1_(std::move(f1)), f2_(std::move(f2)) {
  const Groupoid& g1 = *f1_.domain;
  const Groupoid& g2 = *f2_.domain;
  const Groupoid& b = *f1_.codomain;
  // Only pairs whose images share a B-orbit contribute objects.
  const Orbits ob = orbits(b);
  std::unordered_map<std::uint64_t, std::vector<ObjectId>> by_orbit;
  for (ObjectId x2 = 0; x2 < g2.object_count(); ++x2) {
    by_orbit[ob.orbit_of.at(f2_.on_object(x2))].push_back(x2);
  }
  for (ObjectId x1 = 0; x1 < g1.object_count(); ++x1) {
    const ObjectId b1 = f1_.on_object(x1);
    const auto it = by_orbit.find(ob.orbit_of.at(b1));
    if (it == by_orbit.end()) continue;
    for (ObjectId x2 : it->second) {
      const std::uint64_t start = homs_.size();
      b.for_each_hom(b1, f2_.on_object(x2), [&](ArrowId g) { homs_.push_back(g); });
      std::sort(homs_.begin() + static_cast<std::ptrdiff_t>(start), homs_.end());
      const std::uint64_t size = homs_.size() - start;
      if (size == 0) continue;
      block_index_[x1 * g2.object_count() + x2] = blocks_.size();
      blocks_.push_back({x1, x2, start, size});
      object_count_ += size;
    }
  }
  d1_ = max_out_degree(g1);
  d2_ = max_out_degree(g2);
  stride_ = checked_mul(d1_, d2_);
  checked_mul(std::max<std::uint64_t>(object_count_, 1), stride_);
}

const HomotopyFibreProduct::Block& HomotopyFibreProduct::block_of(ObjectId x) const {
  if (x >= object_count_) throw std::out_of_range("homotopy fibre product: object out of range");
  // homs_ is laid out block by block, so object ids and hom positions agree.
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), x,
                             [](ObjectId v, const Block& blk) { return v < blk.first; });
  return *(it - 1);
}

HomotopyFibreProduct::Parts HomotopyFibreProduct::object_parts(ObjectId x) const {
  const Block& blk = block_of(x);
  return {blk.x1, homs_[x], blk.x2};
}

std::optional<ObjectId> HomotopyFibreProduct::object_of(ObjectId x1, ArrowId g, ObjectId x2) const {
  const auto it = block_index_.find(x1 * f2_.domain->object_count() + x2);
  if (it == block_index_.end()) return std::nullopt;
  const Block& blk = blocks_[it->second];
  const auto begin = homs_.begin() + static_cast<std::ptrdiff_t>(blk.first);
  const auto end = begin + static_cast<std::ptrdiff_t>(blk.size);
  const auto pos = std::lower_bound(begin, end, g);
  if (pos == end || *pos != g) return std::nullopt;
  return static_cast<ObjectId>(pos - homs_.begin());
}

std::pair<ArrowId, ArrowId> HomotopyFibreProduct::arrow_parts(ArrowId a) const {
  const Block& blk = block_of(a / stride_);
  const std::uint64_t local = a % stride_;
  return {f1_.domain->out_arrow(blk.x1, local / d2_), f2_.domain->out_arrow(blk.x2, local % d2_)};
}

ArrowId HomotopyFibreProduct::arrow_of(ObjectId src, ArrowId l1, ArrowId l2) const {
  return src * stride_ + f1_.domain->out_index(l1) * d2_ + f2_.domain->out_index(l2);
}

std::string HomotopyFibreProduct::object_label(ObjectId x) const {
  const auto p = object_parts(x);
  return "(" + f1_.domain->object_label(p.x1) + ", " + f1_.codomain->arrow_label(p.g) + ", " +
         f2_.domain->object_label(p.x2) + ")";
}

std::string HomotopyFibreProduct::arrow_label(ArrowId a) const {
  const auto [l1, l2] = arrow_parts(a);
  return "(" + f1_.domain->arrow_label(l1) + ", " + f2_.domain->arrow_label(l2) + ")@" +
         std::to_string(source(a));
}

ArrowId HomotopyFibreProduct::identity(ObjectId x) const {
  const auto p = object_parts(x);
  return arrow_of(x, f1_.domain->identity(p.x1), f2_.domain->identity(p.x2));
}

ObjectId HomotopyFibreProduct::target(ArrowId a) const {
  const Groupoid& b = *f1_.codomain;
  const auto p = object_parts(source(a));
  const auto [l1, l2] = arrow_parts(a);
  const ArrowId h = b.compose(b.compose(f2_.on_arrow(l2), p.g), b.inverse(f1_.on_arrow(l1)));
  const auto t = object_of(f1_.domain->target(l1), h, f2_.domain->target(l2));
  if (!t) throw std::logic_error("homotopy fibre product: target object missing");
  return *t;
}

ArrowId HomotopyFibreProduct::compose(ArrowId g, ArrowId h) const {
  const auto [g1, g2] = arrow_parts(g);
  const auto [h1, h2] = arrow_parts(h);
  return arrow_of(source(h), f1_.domain->compose(g1, h1), f2_.domain->compose(g2, h2));
}

ArrowId HomotopyFibreProduct::inverse(ArrowId a) const {
  const auto [l1, l2] = arrow_parts(a);
  return arrow_of(target(a), f1_.domain->inverse(l1), f2_.domain->inverse(l2));
}

std::uint64_t HomotopyFibreProduct::out_degree(ObjectId x) const {
  const Block& blk = block_of(x);
  return f1_.domain->out_degree(blk.x1) * f2_.domain->out_degree(blk.x2);
}

ArrowId HomotopyFibreProduct::out_arrow(ObjectId x, std::uint64_t k) const {
  const Block& blk = block_of(x);
  const std::uint64_t deg2 = f2_.domain->out_degree(blk.x2);
  return x * stride_ + (k / deg2) * d2_ + k % deg2;
}

std::uint64_t HomotopyFibreProduct::out_index(ArrowId a) const {
  const Block& blk = block_of(a / stride_);
  const std::uint64_t local = a % stride_;
  return (local / d2_) * f2_.domain->out_degree(blk.x2) + local % d2_;
}

namespace {

// Pairs (l1, l2) in Hom(x1, y1) x Hom(x2, y2) with h F1(l1) = F2(l2) g,
// matched by sorting the keys of one side.
template <class Emit>
void matching_pairs(const GroupoidFunctor& f1, const GroupoidFunctor& f2,
                    const HomotopyFibreProduct::Parts& x, const HomotopyFibreProduct::Parts& y,
                    Emit&& emit) {
  const Groupoid& b = *f1.codomain;
  std::vector<std::pair<ArrowId, ArrowId>> keyed;  // (key, l1)
  f1.domain->for_each_hom(x.x1, y.x1, [&](ArrowId l1) {
    keyed.emplace_back(b.compose(y.g, f1.on_arrow(l1)), l1);
  });
  if (keyed.empty()) return;
  std::sort(keyed.begin(), keyed.end());
  f2.domain->for_each_hom(x.x2, y.x2, [&](ArrowId l2) {
    const ArrowId key = b.compose(f2.on_arrow(l2), x.g);
    auto it = std::lower_bound(keyed.begin(), keyed.end(), std::make_pair(key, ArrowId{0}));
    for (; it != keyed.end() && it->first == key; ++it) emit(it->second, l2);
  });
}

}  // namespace

void HomotopyFibreProduct::for_each_hom(ObjectId x, ObjectId y, ArrowVisitor f) const {
  const auto px = object_parts(x), py = object_parts(y);
  std::vector<ArrowId> out;
  matching_pairs(f1_, f2_, px, py, [&](ArrowId l1, ArrowId l2) { out.push_back(arrow_of(x, l1, l2)); });
  std::sort(out.begin(), out.end());
  for (ArrowId a : out) f(a);
}

std::uint64_t HomotopyFibreProduct::hom_size(ObjectId x, ObjectId y) const {
  std::uint64_t n = 0;
  matching_pairs(f1_, f2_, object_parts(x), object_parts(y), [&](ArrowId, ArrowId) { ++n; });
  return n;
}

void HomotopyFibreProduct::for_each_generator_out(ObjectId x, ArrowVisitor f) const {
  const auto p = object_parts(x);
  const ArrowId e1 = f1_.domain->identity(p.x1), e2 = f2_.domain->identity(p.x2);
  f1_.domain->for_each_generator_out(p.x1, [&](ArrowId a) { f(arrow_of(x, a, e2)); });
  f2_.domain->for_each_generator_out(p.x2, [&](ArrowId a) { f(arrow_of(x, e1, a)); });
}

// ---- strong fibre product ----

StrongFibreProduct::StrongFibreProduct(GroupoidFunctor f1, GroupoidFunctor f2)
    : f1_(std::move(f1)), f2_(std::move(f2)) {
  const Groupoid& g1 = *f1_.domain;
  const Groupoid& g2 = *f2_.domain;
  std::unordered_map<ObjectId, std::vector<ObjectId>> by_image;
  for (ObjectId x2 = 0; x2 < g2.object_count(); ++x2) by_image[f2_.on_object(x2)].push_back(x2);
  for (ObjectId x1 = 0; x1 < g1.object_count(); ++x1) {
    const auto it = by_image.find(f1_.on_object(x1));
    if (it == by_image.end()) continue;
    for (ObjectId x2 : it->second) {
      object_index_[x1 * g2.object_count() + x2] = objects_.size();
      objects_.emplace_back(x1, x2);
    }
  }
  d2_ = max_out_degree(g2);
  out_.resize(objects_.size());
  out_lookup_.resize(objects_.size());
  std::uint64_t widest = 1;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const auto [x1, x2] = objects_[i];
    std::unordered_map<ArrowId, std::vector<ArrowId>> by_key;
    g2.for_each_out(x2, [&](ArrowId l2) { by_key[f2_.on_arrow(l2)].push_back(l2); });
    g1.for_each_out(x1, [&](ArrowId l1) {
      const auto it = by_key.find(f1_.on_arrow(l1));
      if (it == by_key.end()) return;
      for (ArrowId l2 : it->second) {
        out_lookup_[i][g1.out_index(l1) * d2_ + g2.out_index(l2)] = out_[i].size();
        out_[i].emplace_back(l1, l2);
      }
    });
    widest = std::max<std::uint64_t>(widest, out_[i].size());
  }
  stride_ = widest;
  checked_mul(std::max<std::uint64_t>(objects_.size(), 1), stride_);
}

std::optional<ObjectId> StrongFibreProduct::object_of(ObjectId x1, ObjectId x2) const {
  const auto it = object_index_.find(x1 * f2_.domain->object_count() + x2);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::pair<ArrowId, ArrowId> StrongFibreProduct::arrow_parts(ArrowId a) const {
  return out_.at(a / stride_).at(a % stride_);
}

std::optional<ArrowId> StrongFibreProduct::arrow_of(ArrowId l1, ArrowId l2) const {
  const auto src = object_of(f1_.domain->source(l1), f2_.domain->source(l2));
  if (!src) return std::nullopt;
  const auto& lookup = out_lookup_[*src];
  const auto it = lookup.find(f1_.domain->out_index(l1) * d2_ + f2_.domain->out_index(l2));
  if (it == lookup.end()) return std::nullopt;
  return *src * stride_ + it->second;
}

std::string StrongFibreProduct::object_label(ObjectId x) const {
  const auto [x1, x2] = objects_.at(x);
  return "(" + f1_.domain->object_label(x1) + ", " + f2_.domain->object_label(x2) + ")";
}

std::string StrongFibreProduct::arrow_label(ArrowId a) const {
  const auto [l1, l2] = arrow_parts(a);
  return "(" + f1_.domain->arrow_label(l1) + ", " + f2_.domain->arrow_label(l2) + ")";
}

ArrowId StrongFibreProduct::identity(ObjectId x) const {
  const auto [x1, x2] = objects_.at(x);
  return *arrow_of(f1_.domain->identity(x1), f2_.domain->identity(x2));
}

ObjectId StrongFibreProduct::target(ArrowId a) const {
  const auto [l1, l2] = arrow_parts(a);
  return *object_of(f1_.domain->target(l1), f2_.domain->target(l2));
}

ArrowId StrongFibreProduct::compose(ArrowId g, ArrowId h) const {
  const auto [g1, g2] = arrow_parts(g);
  const auto [h1, h2] = arrow_parts(h);
  const auto r = arrow_of(f1_.domain->compose(g1, h1), f2_.domain->compose(g2, h2));
  if (!r) throw std::logic_error("strong fibre product: composite left the fibre product");
  return *r;
}

ArrowId StrongFibreProduct::inverse(ArrowId a) const {
  const auto [l1, l2] = arrow_parts(a);
  const auto r = arrow_of(f1_.domain->inverse(l1), f2_.domain->inverse(l2));
  if (!r) throw std::logic_error("strong fibre product: inverse left the fibre product");
  return *r;
}

// ---- composition ----

Span compose_spans(const Span& s1, const Span& s2, CompositionMode mode) {
  if (!(s1.right == s2.left)) {
    throw InputError("boundary mismatch: first span ends at width " +
                     std::to_string(s1.right.width()) + ", second starts at width " +
                     std::to_string(s2.left.width()) + " (or the models differ)");
  }
  Span s;
  s.left = s1.left;
  s.right = s2.right;
  const auto l = s1.left_leg;
  const auto r = s2.right_leg;
  if (mode == CompositionMode::homotopy) {
    auto apex = std::make_shared<HomotopyFibreProduct>(s1.right_leg, s2.left_leg);
    s.apex = apex;
    s.left_leg = {apex, l.codomain,
                  [apex, f = l.on_object](ObjectId x) { return f(apex->object_parts(x).x1); },
                  [apex, f = l.on_arrow](ArrowId a) { return f(apex->arrow_parts(a).first); }};
    s.right_leg = {apex, r.codomain,
                   [apex, f = r.on_object](ObjectId x) { return f(apex->object_parts(x).x2); },
                   [apex, f = r.on_arrow](ArrowId a) { return f(apex->arrow_parts(a).second); }};
  } else {
    auto apex = std::make_shared<StrongFibreProduct>(s1.right_leg, s2.left_leg);
    s.apex = apex;
    s.left_leg = {apex, l.codomain,
                  [apex, f = l.on_object](ObjectId x) { return f(apex->object_parts(x).first); },
                  [apex, f = l.on_arrow](ArrowId a) { return f(apex->arrow_parts(a).first); }};
    s.right_leg = {apex, r.codomain,
                   [apex, f = r.on_object](ObjectId x) { return f(apex->object_parts(x).second); },
                   [apex, f = r.on_arrow](ArrowId a) { return f(apex->arrow_parts(a).second); }};
  }
  return s;
}

GroupoidFunctor comparison_functor(const Span& strong, const Span& homotopy) {
  auto sfp = std::dynamic_pointer_cast<const StrongFibreProduct>(strong.apex);
  auto hfp = std::dynamic_pointer_cast<const HomotopyFibreProduct>(homotopy.apex);
  if (!sfp || !hfp) throw InputError("comparison functor: spans are not fibre-product composites");
  if (sfp->first().domain != hfp->first().domain || sfp->second().domain != hfp->second().domain ||
      sfp->first().codomain->object_count() != hfp->first().codomain->object_count()) {
    throw InputError("comparison functor: composites come from different span pairs");
  }
  const GroupoidPtr b = hfp->first().codomain;
  const auto f1 = hfp->first();
  GroupoidFunctor psi;
  psi.domain = sfp;
  psi.codomain = hfp;
  psi.on_object = [sfp, hfp, b, f1](ObjectId x) {
    const auto [x1, x2] = sfp->object_parts(x);
    const auto y = hfp->object_of(x1, b->identity(f1.on_object(x1)), x2);
    if (!y) throw std::logic_error("comparison functor: object missing in homotopy product");
    return *y;
  };
  psi.on_arrow = [sfp, hfp, b, f1](ArrowId a) {
    const auto [l1, l2] = sfp->arrow_parts(a);
    const ObjectId x1 = sfp->first().domain->source(l1);
    const ObjectId x2 = sfp->second().domain->source(l2);
    const auto src = hfp->object_of(x1, b->identity(f1.on_object(x1)), x2);
    if (!src) throw std::logic_error("comparison functor: object missing in homotopy product");
    return hfp->arrow_of(*src, l1, l2);
  };
  return psi;
}

Validity check_leg_compatibility(const GroupoidFunctor& f, const Span& from, const Span& to,
                                 std::uint64_t budget, std::uint64_t seed) {
  Validity v;
  const Groupoid& d = *from.apex;
  auto check = [&](bool cond, auto&& what) {
    ++v.checks;
    if (!cond && v.ok) {
      v.ok = false;
      v.failure = what();
    }
  };
  for (ObjectId x = 0; x < d.object_count() && v.ok; ++x) {
    const ObjectId y = f.on_object(x);
    check(to.left_leg.on_object(y) == from.left_leg.on_object(x) &&
              to.right_leg.on_object(y) == from.right_leg.on_object(x),
          [&] { return std::string("legs disagree at object " + d.object_label(x)); });
  }
  auto arrow = [&](ArrowId a) {
    const ArrowId b = f.on_arrow(a);
    check(to.left_leg.on_arrow(b) == from.left_leg.on_arrow(a) &&
              to.right_leg.on_arrow(b) == from.right_leg.on_arrow(a),
          [&] { return std::string("legs disagree at arrow " + d.arrow_label(a)); });
  };
  if (d.arrow_count() <= budget) {
    for (ObjectId x = 0; x < d.object_count(); ++x) d.for_each_out(x, [&](ArrowId a) { arrow(a); });
  } else {
    v.exhaustive = false;
    Rng rng(seed);
    for (std::uint64_t i = 0; i < budget; ++i) {
      const ObjectId x = rng.below(d.object_count());
      arrow(d.out_arrow(x, rng.below(d.out_degree(x))));
    }
  }
  return v;
}

// ---- skeleton ----

Skeleton skeletonize(const Span& s, std::uint64_t isotropy_bound) {
  if (std::dynamic_pointer_cast<const AbelianGroupoid>(s.apex)) {
    return {s, identity_functor(s.apex)};
  }
  const Orbits o = orbits(*s.apex);
  auto structures = std::make_shared<std::vector<IsotropyStructure>>();
  std::vector<std::string> labels;
  std::vector<std::vector<std::int64_t>> factors;
  for (ObjectId rep : o.representative) {
    structures->push_back(analyze_isotropy(*s.apex, rep, isotropy_bound));
    labels.push_back(s.apex->object_label(rep));
    factors.push_back(structures->back().factors);
  }
  auto apex = std::make_shared<AbelianGroupoid>(std::move(labels), std::move(factors));
  auto reps = std::make_shared<std::vector<ObjectId>>(o.representative);
  GroupoidFunctor inclusion;
  inclusion.domain = apex;
  inclusion.codomain = s.apex;
  inclusion.on_object = [reps](ObjectId k) { return reps->at(k); };
  inclusion.on_arrow = [apex, structures](ArrowId a) {
    const ObjectId k = apex->source(a);
    return (*structures)[k].elements.at(apex->out_index(a));
  };
  Skeleton sk{{apex, s.left, s.right, tabulate(compose_functors(s.left_leg, inclusion)),
               tabulate(compose_functors(s.right_leg, inclusion))},
              inclusion};
  return sk;
}

}  // namespace tqftwb::gpd
