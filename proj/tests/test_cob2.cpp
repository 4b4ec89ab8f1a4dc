#include "doctest.h"
#include "tqftwb/cob2.hpp"

using namespace tqftwb;
using namespace tqftwb::cob;

namespace {

SurfaceNormalForm nf(const std::string& text) { return normalize(parse(text)); }

// outer . (hole * side) . inner, everything but the hole drawn from the seed.
Term in_context(const Term& hole, std::uint64_t seed) {
  Rng rng(seed);
  const Term side = random_term(mix_seed(seed, 1), static_cast<int>(rng.between(1, 3)));
  Term t = rng.chance(1, 2) ? Term::tensor(hole, side) : Term::tensor(side, hole);
  const auto sig = t.signature();
  const Term outer = random_term(mix_seed(seed, 2), static_cast<int>(rng.between(1, 4)), {sig.cod, std::nullopt});
  const Term inner = random_term(mix_seed(seed, 3), static_cast<int>(rng.between(1, 4)), {std::nullopt, sig.dom});
  return Term::compose(outer, Term::compose(t, inner));
}

}  // namespace

TEST_CASE("parse: generators, identities and arities") {
  CHECK(parse("mu").signature() == Signature{2, 1});
  CHECK(parse("mu").kind() == Term::Kind::generator);
  CHECK(parse("id(3)").signature() == Signature{3, 3});
  CHECK(parse("id(3)").kind() == Term::Kind::identity);
  CHECK(parse("eta").signature() == Signature{0, 1});
  CHECK(parse("delta * eps").signature() == Signature{2, 2});
  CHECK_THROWS_AS(parse("mu . eta"), ArityError);
}

TEST_CASE("parse: syntax errors carry a position") {
  try {
    parse("mu . (delta");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 11);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("mu .. delta"), ParseError);
  CHECK_THROWS_AS(parse("id()"), ParseError);
  CHECK_THROWS_AS(parse("nu"), ParseError);
  CHECK_THROWS_AS(parse("mu delta"), ParseError);
}

TEST_CASE("parse/render round trip keeps precedence") {
  for (const char* text : {"mu . (eta * id(1))", "(id(1) * mu) . (delta * id(1))", "eps . mu . delta . eta",
                           "tau . tau", "id(0)", "(mu * mu) . (id(1) * tau * id(1))"}) {
    const Term t = parse(text);
    CHECK(parse(render(t)) == t);
  }
  CHECK(render(parse("(mu) . ((delta))")) == "mu . delta");
}

TEST_CASE("normalize: worked examples") {
  const auto torus = nf("mu . delta");
  REQUIRE(torus.components.size() == 1);
  CHECK(torus.components[0].in == std::vector<int>{1});
  CHECK(torus.components[0].out == std::vector<int>{1});
  CHECK(torus.components[0].genus == 1);

  CHECK(nf("mu . (eta * id(1))") == nf("id(1)"));
  CHECK(nf("id(1)").components[0].genus == 0);

  const auto sphere = nf("eps . eta");
  REQUIRE(sphere.components.size() == 1);
  CHECK(sphere.components[0].in.empty());
  CHECK(sphere.components[0].out.empty());
  CHECK(sphere.components[0].genus == 0);

  const auto cross = nf("tau");
  REQUIRE(cross.components.size() == 2);
  CHECK(cross.components[0].in == std::vector<int>{1});
  CHECK(cross.components[0].out == std::vector<int>{2});
  CHECK(cross.components[1].in == std::vector<int>{2});
  CHECK(cross.components[1].out == std::vector<int>{1});
  CHECK_FALSE(cross == nf("id(2)"));
}

TEST_CASE("normalize: every encoded relation instance") {
  const auto& rel = relation_instances();
  CHECK(rel.size() >= 10);
  for (const auto& r : rel) {
    INFO(r.name);
    CHECK(nf(r.lhs) == nf(r.rhs));
  }
}

TEST_CASE("normalize: closed components and serialization") {
  const auto two = nf("(eps . eta) * (eps . mu . delta . eta)");
  REQUIRE(two.components.size() == 2);
  CHECK(two.components[0].genus == 0);
  CHECK(two.components[1].genus == 1);
  CHECK(nf("eps . mu . delta . eta").serialize() != nf("eps . eta").serialize());
  CHECK_THROWS_AS(make_normal_form(1, 1, {{{1}, {}, 0}}), InputError);
  CHECK_THROWS_AS(make_normal_form(1, 1, {{{1}, {1}, -1}}), InputError);
}

TEST_CASE("random_term: deterministic and well formed") {
  CHECK(random_term(1, 1).generator_count() == 1);
  CHECK(random_term(42, 6) == random_term(42, 6));
  const Term t = random_term(7, 8);
  CHECK(parse(render(t)) == t);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Term r = random_term(seed, 1 + static_cast<int>(seed % 9));
    const auto form = normalize(r);
    for (const auto& c : form.components) CHECK(c.genus >= 0);
    CHECK(parse(render(r)) == r);
  }
}

TEST_CASE("random_term honours boundary hints") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Term d = random_term(seed, 4, {2, std::nullopt});
    CHECK(d.signature().dom == 2);
    const Term c = random_term(seed, 4, {std::nullopt, 3});
    CHECK(c.signature().cod == 3);
  }
}

TEST_CASE("signature is functorial") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Term a = random_term(seed, 3);
    const Term b = random_term(seed + 1000, 3, {a.signature().cod, std::nullopt});
    const Term comp = Term::compose(b, a);
    CHECK(comp.signature() == Signature{a.signature().dom, b.signature().cod});
    const Term ten = Term::tensor(a, b);
    CHECK(ten.signature() ==
          Signature{a.signature().dom + b.signature().dom, a.signature().cod + b.signature().cod});
  }
}

TEST_CASE("realize produces the requested surface") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const int m = static_cast<int>(rng.between(0, 3)), n = static_cast<int>(rng.between(0, 3));
    const auto form = random_normal_form(m, n, 2, rng);
    CHECK(normalize(realize(form, rng)) == form);
  }
}

TEST_CASE("congruence over 500 seeded contexts") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(mix_seed(seed, 99));
    const int m = static_cast<int>(rng.between(0, 2)), n = static_cast<int>(rng.between(0, 2));
    const auto form = random_normal_form(m, n, 1, rng);
    const Term a = realize(form, rng), b = realize(form, rng);
    REQUIRE(normalize(a) == normalize(b));
    CHECK(normalize(in_context(a, seed)) == normalize(in_context(b, seed)));
    ++checked;
  }
  CHECK(checked == 500);
}
