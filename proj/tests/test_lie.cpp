#include "doctest.h"
#include "tqftwb/lie.hpp"

using namespace tqftwb;
using namespace tqftwb::lie;

namespace {

TrialOptions small(int trials, std::uint64_t seed = 3) {
  TrialOptions o;
  o.trials = trials;
  o.seed = seed;
  return o;
}

void require_pass(const CheckReport& r) {
  for (const auto& c : r.checks) {
    INFO(c.name << ": " << c.failure);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("linear algebra helpers") {
  const Matrix m{{1, 2}, {3, 4}};
  CHECK(inverse(m) * m == Matrix::identity(2));
  CHECK(rank(Matrix{{1, 2}, {2, 4}}) == 1);
  CHECK(nullspace(Matrix{{1, 2}, {2, 4}}).size() == 1);
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), std::domain_error);
  // det(tI - m) = t^2 - 5t - 2
  CHECK(charpoly(m) == std::vector<Rational>{-2, -5, 1});
}

TEST_CASE("families") {
  const auto sl2 = make_algebra(Family::sln, 2);
  CHECK(sl2.dim == 3);
  CHECK(validate_structure(sl2).ok());
  CHECK(make_algebra(Family::sl2_semidirect).dim == 5);
  CHECK(make_algebra(Family::sl3_centralizer).dim == 4);
  CHECK(make_algebra(Family::sl3_centralizer).labels == std::vector<std::string>{"t", "x", "y", "z"});
  for (int n = 2; n <= 4; ++n) CHECK(validate_structure(make_algebra(Family::sln, n)).ok());
  CHECK(validate_structure(make_algebra(Family::sl2_semidirect)).ok());
  CHECK(validate_structure(make_algebra(Family::sl3_centralizer)).ok());
  CHECK_THROWS_AS(make_algebra(Family::sln, 1), InputError);
  CHECK_THROWS_AS(parse_family("so3"), InputError);
  CHECK(parse_family("sl2-semidirect") == Family::sl2_semidirect);
}

TEST_CASE("semidirect bracket acts on the vector part") {
  const auto h = make_algebra(Family::sl2_semidirect);
  // x = (x1, x2, x3) acting on v = (v1, v2) by the standard representation
  const Vector x{1, 2, 3, 0, 0}, v{0, 0, 0, 5, 7};
  const Vector b = h.bracket(x, v);
  // [[1, 2], [3, -1]] (5, 7) = (19, 8)
  CHECK(b == Vector{0, 0, 0, 19, 8});
}

TEST_CASE("adjoint and coadjoint matrices") {
  const auto sl2 = make_algebra(Family::sln, 2);
  const Vector& e = sl2.designated.at("e");
  const Vector& h = sl2.designated.at("h");
  const Vector& f = sl2.designated.at("f");
  const auto act = action_matrices(sl2, e);
  CHECK(act.ad * h == Rational(-2) * e);
  CHECK(act.ad * f == h);
  const auto zero = action_matrices(sl2, Vector(3));
  CHECK(zero.ad.is_zero());
  CHECK(zero.coad.is_zero());
}

TEST_CASE("centralizers") {
  const auto h = make_algebra(Family::sl2_semidirect);
  const auto reg = centralizer_report(h, Vector{2, -1, 3, 1, 0});
  CHECK(reg.dimension == 1);
  CHECK(reg.regular);
  const auto sing = centralizer_report(h, Vector{1, 2, -1, 0, 0});
  CHECK(sing.dimension >= 2);
  CHECK_FALSE(sing.regular);

  const auto sl3 = make_algebra(Family::sln, 3);
  const auto c = centralizer_report(sl3, sl3.coords(companion({2, 3})));
  CHECK(c.dimension == 2);
  CHECK(c.regular);
  CHECK(c.abelian);
}

TEST_CASE("characteristic coefficients and companion matrices") {
  CHECK(char_coeffs(companion({2, 3})) == std::vector<Rational>{-2, -3});
  CHECK(char_coeffs(companion({5})) == std::vector<Rational>{-5});
  CHECK(charpoly(companion({5})) == std::vector<Rational>{-5, 0, 1});
  const auto sl3 = make_algebra(Family::sln, 3);
  CHECK(char_coeffs(sl3.element(sl3.designated.at("e"))) == std::vector<Rational>{0, 0});
  CHECK_THROWS_AS(char_coeffs(Matrix{{1, 0}, {0, 0}}), InputError);
  CHECK(companion_section_holds({Rational(1, 2), -3, Rational(7, 3)}));
  const Matrix t = companion({1, 2, 3});
  CHECK(t(0, 1) == 1);
  CHECK(t(1, 0) == 3);
  CHECK(t(2, 0) == 2);
  CHECK(t(3, 0) == 1);
}

TEST_CASE("example groups") {
  CHECK_THROWS_AS(make_sl2sd(Matrix{{2, 0}, {0, 1}}, {0, 0}), InputError);
  CHECK_THROWS_AS(make_sl3c(0, 1, 1, 1), InputError);
  Rng rng(8);
  for (int i = 0; i < 25; ++i) {
    const SL3C p = make_sl3c(random_nonzero(rng), random_rational(rng), random_rational(rng), random_rational(rng));
    const SL3C q = make_sl3c(random_nonzero(rng), random_rational(rng), random_rational(rng), random_rational(rng));
    CHECK(to_matrix(multiply(p, q)) == to_matrix(p) * to_matrix(q));
  }
  const SL2SD a = make_sl2sd(Matrix{{1, 1}, {0, 1}}, {1, 2});
  const SL2SD b = make_sl2sd(Matrix{{2, 1}, {1, 1}}, {0, -1});
  CHECK(to_matrix(multiply(a, b)) == to_matrix(a) * to_matrix(b));
}

TEST_CASE("suites pass") {
  require_pass(structure_checks(Family::sln, 3, small(20)));
  require_pass(structure_checks(Family::sl2_semidirect, 0, small(20)));
  require_pass(structure_checks(Family::sl3_centralizer, 0, small(20)));
  require_pass(companion_checks(4, small(10)));
  require_pass(slodowy_checks(3, small(10)));
  CHECK_THROWS_AS(slodowy_checks(2, small(1)), InputError);
  for (auto f : {Family::sl2_semidirect, Family::sl3_centralizer}) {
    require_pass(coad_formula_check(f, 0, small(20)));
    require_pass(stabilizer_family_check(f, small(20)));
    require_pass(slice_report(f, 0, small(20)));
  }
  require_pass(slice_report(Family::sln, 3, small(10)));
}

TEST_CASE("printed formulas resolve to the fixed convention") {
  const auto r = coad_formula_check(Family::sl2_semidirect, 0, small(10));
  const Check* ex = r.find("semidirect ad* example");
  REQUIRE(ex != nullptr);
  CHECK(ex->details["formula"] == nlohmann::ordered_json({"0", "-2", "0", "0", "0"}));
  for (const auto& c : r.checks) {
    if (c.details.contains("convention")) CHECK(c.details["convention"] == "fixed");
  }
  const auto s = coad_formula_check(Family::sl3_centralizer, 0, small(10));
  CHECK(s.find("centralizer Ad* at identity")->pass);
  CHECK(s.find("centralizer Ad* closed form")->details["convention"] == "fixed");
}

TEST_CASE("complement codimensions") {
  const auto h = slice_report(Family::sl2_semidirect, 0, small(5));
  CHECK(h.find("complement codimension {eta = 0}")->details["codimension"] == 2);
  const auto g = slice_report(Family::sl3_centralizer, 0, small(5));
  CHECK(g.find("complement codimension {u = w = 0}")->details["codimension"] == 2);
  CHECK(g.find("complement codimension {v = w = 0}")->details["codimension"] == 2);
}

TEST_CASE("reports: reproducible, execution independent, exact strings") {
  auto o = small(15, 21);
  const auto a = run_suite(Family::sl3_centralizer, 0, o).to_json().dump();
  const auto b = run_suite(Family::sl3_centralizer, 0, o).to_json().dump();
  o.exec = Execution::serial;
  const auto c = run_suite(Family::sl3_centralizer, 0, o).to_json().dump();
  CHECK(a == b);
  CHECK(a == c);
  const auto j = run_suite(Family::sln, 3, small(3)).to_json();
  CHECK(j["checks"][1]["samples"][0]["x"][0].is_string());
  CHECK(run_suite(Family::sln, 3, small(3, 1)).to_json().dump() != j.dump());
}
