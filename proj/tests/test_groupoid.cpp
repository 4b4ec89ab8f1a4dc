#include "doctest.h"
#include "support.hpp"

using namespace tqftwb;
using namespace tqftwb::gpd;
using tqftwb::testing::cyclic;
using tqftwb::testing::model;
using tqftwb::testing::relabeled;

namespace {

Span gen(const AbelianModel& m, cob::Generator g) { return frob::generator_span(m, g); }

// Pair groupoid on {a, b}: id_a, id_b, f: a -> b, f^-1.
std::shared_ptr<const TableGroupoid> pair_groupoid() {
  std::vector<std::int64_t> table(16, -1);
  auto set = [&](int g, int h, int gh) { table[g * 4 + h] = gh; };
  set(0, 0, 0);
  set(0, 3, 3);
  set(1, 1, 1);
  set(1, 2, 2);
  set(2, 0, 2);
  set(2, 3, 1);
  set(3, 1, 3);
  set(3, 2, 0);
  return std::make_shared<TableGroupoid>(
      std::vector<std::string>{"a", "b"},
      std::vector<TableGroupoid::Arrow>{{0, 0, "id_a"}, {1, 1, "id_b"}, {0, 1, "f"}, {1, 0, "f^-1"}},
      std::vector<ArrowId>{0, 1}, std::vector<ArrowId>{0, 1, 3, 2}, table);
}

}  // namespace

TEST_CASE("abelian groupoids from models") {
  auto g = cyclic({2}).groupoid();
  CHECK(g->object_count() == 1);
  CHECK(g->arrow_count() == 2);

  auto pq = model({"p", "q"}, {{2}, {3}}).groupoid();
  CHECK(pq->object_count() == 2);
  CHECK(pq->arrow_count() == 5);

  auto triv = cyclic({}).groupoid();
  CHECK(triv->object_count() == 1);
  CHECK(triv->arrow_count() == 1);
  CHECK(check_groupoid(*pq).ok);
}

TEST_CASE("model loading rejects malformed input") {
  CHECK_NOTHROW(AbelianModel::from_json(R"({"base": ["p", "q"], "isotropy": {"p": [2], "q": [2, 3]}})"));
  CHECK_THROWS_AS(AbelianModel::from_json(R"({"base": ["pt"], "isotropy": {"pt": [1]}})"), InputError);
  CHECK_THROWS_AS(AbelianModel::from_json(R"({"base": [], "isotropy": {}})"), InputError);
  CHECK_THROWS_AS(AbelianModel::from_json(R"({"base": ["p", "p"], "isotropy": {"p": [2]}})"), InputError);
  CHECK_THROWS_AS(AbelianModel::from_json(R"({"base": ["pt"], "isotropy": {"pt": "2"}})"), InputError);
  CHECK_THROWS_AS(AbelianModel::from_json(R"({"base": ["pt"], "isotropy": {}})"), InputError);
  CHECK_THROWS_AS(AbelianModel::from_json(R"({"base": ["pt"])"), InputError);
  CHECK_THROWS_AS(AbelianModel::from_json(R"([1, 2])"), InputError);
  CHECK_THROWS_AS(AbelianModel::load("/nonexistent/model.json"), InputError);
  const auto m = AbelianModel::from_json(R"({"base": ["p", "q"], "isotropy": {"p": [2], "q": []}})");
  CHECK(AbelianModel::from_json(m.to_json()) == m);
}

TEST_CASE("products") {
  auto a = cyclic({2});
  auto prod = product(std::vector<GroupoidPtr>{a.groupoid(), a.groupoid()});
  CHECK(prod->object_count() == 1);
  CHECK(prod->arrow_count() == 4);
  auto empty = product(std::vector<GroupoidPtr>{});
  CHECK(empty->object_count() == 1);
  CHECK(empty->arrow_count() == 1);

  auto pq = model({"p", "q"}, {{2}, {3}});
  const Span ids = product(identity_span(Boundary({pq})), identity_span(Boundary({a})));
  const Span id_prod = identity_span(Boundary({pq, a}));
  CHECK(fingerprint(ids) == fingerprint(id_prod));
  CHECK(cardinality(*product(std::vector<GroupoidPtr>{pq.groupoid(), a.groupoid()})) ==
        cardinality(*pq.groupoid()) * cardinality(*a.groupoid()));
}

TEST_CASE("homotopy composition: unit then multiplication") {
  const auto a = cyclic({2});
  const Span unit_side = product(gen(a, cob::Generator::eta), frob::identity_span(a, 1));
  const Span mu = gen(a, cob::Generator::mu);
  const Span h = compose_spans(unit_side, mu, CompositionMode::homotopy);
  CHECK(check_groupoid(*h.apex).ok);
  CHECK(fingerprint(h) == fingerprint(frob::identity_span(a, 1)));

  const Span s = compose_spans(unit_side, mu, CompositionMode::strong);
  CHECK(s.apex->object_count() == 1);
  CHECK(s.apex->arrow_count() == 2);
  CHECK(cardinality(*s.apex) == Rational(1, 2));

  CHECK(is_isofibration(mu.left_leg));
  CHECK_FALSE(is_isofibration(gen(a, cob::Generator::eta).right_leg));

  const auto psi = comparison_functor(s, h);
  CHECK(check_functor(psi).ok);
  CHECK(check_leg_compatibility(psi, s, h).ok);
  CHECK(essential_equivalence_check(psi));
  CHECK(essential_equivalence_exhaustive(psi));
}

TEST_CASE("homotopy composition: sphere") {
  const auto a = cyclic({2});
  const Span sphere = compose_spans(gen(a, cob::Generator::eta), gen(a, cob::Generator::eps), CompositionMode::homotopy);
  CHECK(sphere.apex->object_count() == 2);
  for (ObjectId x = 0; x < 2; ++x) CHECK(sphere.apex->out_degree(x) == 1);
  CHECK(cardinality(*sphere.apex) == 2);
}

TEST_CASE("identity self-composition compares by an essential equivalence") {
  const auto a = model({"p", "q"}, {{2}, {3}});
  const Span id = frob::identity_span(a, 1);
  const auto psi = comparison_functor(compose_spans(id, id, CompositionMode::strong),
                                      compose_spans(id, id, CompositionMode::homotopy));
  CHECK(essential_equivalence_check(psi));
  CHECK_THROWS_AS(comparison_functor(compose_spans(id, id, CompositionMode::strong),
                                     compose_spans(id, frob::identity_span(a, 1), CompositionMode::homotopy)),
                  InputError);
}

TEST_CASE("essential equivalences") {
  const auto z2 = cyclic({2}).groupoid();
  CHECK(essential_equivalence_check(identity_functor(z2)));

  auto pt = std::make_shared<AbelianGroupoid>(std::vector<std::string>{"a"}, std::vector<std::vector<std::int64_t>>{{}});
  GroupoidFunctor incl{pt, pair_groupoid(), [](ObjectId) { return ObjectId{0}; }, [](ArrowId) { return ArrowId{0}; }};
  CHECK(check_functor(incl).ok);
  CHECK(essential_equivalence_check(incl));
  CHECK(essential_equivalence_exhaustive(incl));

  GroupoidFunctor collapse{z2, pt, [](ObjectId) { return ObjectId{0}; }, [](ArrowId) { return ArrowId{0}; }};
  CHECK(check_functor(collapse).ok);
  CHECK_FALSE(essential_equivalence_check(collapse));
  CHECK_FALSE(essential_equivalence_exhaustive(collapse));
}

TEST_CASE("table groupoid validation") {
  CHECK(check_groupoid(*pair_groupoid()).ok);
  std::vector<std::int64_t> bad(4, -1);
  bad[0] = 0;
  CHECK_THROWS_AS(TableGroupoid({"a"}, {{0, 0, "id"}}, {0}, {1}, bad), InputError);
}

TEST_CASE("fingerprints") {
  const auto a = cyclic({2});
  const auto fid = fingerprint(frob::identity_span(a, 1));
  CHECK(fid.records.size() == 1);

  const auto triv = model({"p", "q", "r"}, {{}, {}, {}});
  const Span unit = gen(triv, cob::Generator::eta);
  CHECK(fingerprint(unit).records.size() == 3);
  CHECK(cardinality(*unit.apex) == 3);

  CHECK(fingerprint(gen(a, cob::Generator::tau)) != fingerprint(frob::identity_span(a, 2)));
  CHECK(fingerprint(gen(a, cob::Generator::mu)) == fingerprint(gen(a, cob::Generator::mu)));
  CHECK(fingerprint(gen(a, cob::Generator::mu)).digest().size() == 16);
}

TEST_CASE("fingerprint invariance under relabeling and identity legs") {
  const auto a = model({"p", "q"}, {{2}, {3}});
  for (auto g : {cob::Generator::mu, cob::Generator::delta, cob::Generator::tau, cob::Generator::eta}) {
    const Span s = gen(a, g);
    const auto fp = fingerprint(s);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) CHECK(fingerprint(relabeled(s, seed)) == fp);
    const Span after = compose_spans(s, identity_span(s.right), CompositionMode::homotopy);
    const Span before = compose_spans(identity_span(s.left), s, CompositionMode::homotopy);
    CHECK(fingerprint(after) == fp);
    CHECK(fingerprint(before) == fp);
  }
}

TEST_CASE("fingerprint: serial and parallel paths agree") {
  const auto a = cyclic({2, 3});
  const Span s = frob::evaluate(a, cob::parse("(id(1) * mu) . (delta * id(1))"));
  CHECK(fingerprint(s, Execution::serial).serialize() == fingerprint(s, Execution::parallel).serialize());
}

TEST_CASE("cardinality") {
  auto k = model({"a", "b", "c", "d"}, {{}, {}, {}, {}});
  CHECK(cardinality(*k.groupoid()) == 4);
  CHECK(cardinality(*cyclic({2}).groupoid()) == Rational(1, 2));
  CHECK(cardinality(*model({"p", "q"}, {{}, {2}}).groupoid()) == Rational(3, 2));
  CHECK(cardinality(*pair_groupoid()) == 1);
}

TEST_CASE("invariant factors") {
  const std::vector<std::int64_t> f = {2, 3};
  CHECK(invariant_factors(f) == std::vector<std::int64_t>{6});
  const std::vector<std::int64_t> g = {4, 2, 6};
  CHECK(invariant_factors(g) == std::vector<std::int64_t>{2, 2, 12});
  CHECK(invariant_factors(std::vector<std::int64_t>{}).empty());
}

TEST_CASE("skeletonize preserves the fingerprint") {
  const auto a = model({"p", "q"}, {{2}, {2}});
  const Span h = compose_spans(gen(a, cob::Generator::delta), gen(a, cob::Generator::mu), CompositionMode::homotopy);
  const auto sk = skeletonize(h);
  CHECK(fingerprint(sk.span) == fingerprint(h));
  CHECK(sk.span.apex->object_count() <= h.apex->object_count());
  CHECK(essential_equivalence_check(sk.inclusion));
}
