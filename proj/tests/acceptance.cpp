// Acceptance run: one pass/fail line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_runner.hpp"
#include "support.hpp"
#include "tqftwb/lie.hpp"

using namespace tqftwb;

namespace {

struct Outcome {
  bool pass = true;
  std::string note;
};

using Clock = std::chrono::steady_clock;

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // 0: no runtime bound
  std::function<Outcome()> run;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome c1_relations() {
  int n = 0;
  for (const auto& r : cob::relation_instances()) {
    if (!(cob::normalize(cob::parse(r.lhs)) == cob::normalize(cob::parse(r.rhs)))) return fail(r.name);
    ++n;
  }
  return {true, std::to_string(n) + " instances"};
}

Outcome c2_frobenius_grid() {
  frob::CheckOptions opts;
  opts.functor_budget = 5000;
  opts.random_pairs = 2;
  const auto grid = testing::acceptance_grid();
  std::size_t instances = 0, named = 0;
  for (const auto& m : grid) {
    const auto report = frob::check_axioms(m, opts);
    bool has_named = false;
    for (const auto& r : report.results) {
      ++instances;
      if (!r.pass()) return fail(m.describe() + " " + r.name + ": " + r.failure);
      for (const auto& w : r.witnesses) {
        if (w.name.find("(a,b,c) -> (a+b, c, a, b+c)") == std::string::npos) continue;
        if (!w.ok()) return fail(m.describe() + " " + w.name + ": " + w.failure);
        has_named = true;
      }
    }
    named += has_named;
  }
  if (named < grid.size()) return fail("named Frobenius witness missing");
  return {true, std::to_string(grid.size()) + " models, " + std::to_string(instances) + " instances"};
}

Outcome c3_genus0() {
  std::size_t terms = 0;
  for (const auto& m : {testing::cyclic({2}), testing::cyclic({2, 3})}) {
    for (int total = 1; total <= 4; ++total) {
      for (int a = 0; a <= total; ++a) {
        const int b = total - a;
        std::vector<int> in(a), out(b);
        for (int i = 0; i < a; ++i) in[i] = i + 1;
        for (int i = 0; i < b; ++i) out[i] = i + 1;
        const auto nf = cob::make_normal_form(a, b, {{in, out, 0}});
        const auto expected = gpd::fingerprint(frob::genus0_span(m, a, b));
        Rng rng(mix_seed(0x6e0, static_cast<std::uint64_t>(total * 10 + a)));
        for (int k = 0; k < 20; ++k) {
          const auto t = cob::realize(nf, rng);
          if (!(gpd::fingerprint(frob::evaluate(m, t)) == expected)) {
            return fail(m.describe() + " " + cob::render(t));
          }
          ++terms;
        }
      }
    }
  }
  return {true, std::to_string(terms) + " terms"};
}

Outcome c4_decomposition() {
  const auto m = testing::cyclic({2});
  int pairs = 0, distinct = 0;
  for (std::uint64_t i = 0; pairs < 200; ++i) {
    Rng rng(mix_seed(0xdec0, i));
    const int a = static_cast<int>(rng.between(0, 3)), b = static_cast<int>(rng.between(0, 3));
    const auto nf = cob::random_normal_form(a, b, 1, rng);
    const auto t1 = cob::realize(nf, rng), t2 = cob::realize(nf, rng);
    if (!(gpd::fingerprint(frob::evaluate(m, t1)) == gpd::fingerprint(frob::evaluate(m, t2)))) {
      return fail(cob::render(t1) + " vs " + cob::render(t2));
    }
    distinct += !(t1 == t2);
    ++pairs;
  }
  return {true, std::to_string(pairs) + " pairs (" + std::to_string(distinct) + " syntactically distinct)"};
}

Outcome c5_closed() {
  for (const auto& m : testing::acceptance_grid()) {
    Rational sum = 0;
    for (const auto& iso : m.isotropy) {
      std::int64_t order = 1;
      for (auto f : iso) order *= f;
      sum += order;
    }
    if (frob::closed_invariant(m, 0) != sum) return fail("g=0 on " + m.describe());
  }
  // Brute-force oracle constants (tests/oracles/closed_invariant_bruteforce.py).
  if (frob::closed_invariant(testing::cyclic({2}), 1) != 1) return fail("g=1 on Z/2");
  if (frob::closed_invariant(testing::cyclic({3}), 1) != 1) return fail("g=1 on Z/3");
  if (frob::closed_invariant(testing::cyclic({2, 2}), 1) != 1) return fail("g=1 on Z/2+Z/2");
  if (frob::closed_invariant(testing::cyclic({2}), 2) != Rational(1, 2)) return fail("g=2 on Z/2");
  return {true, "g=0 over the grid; g=1,2 oracle values"};
}

lie::TrialOptions trials(int n, std::uint64_t seed = 2024) {
  lie::TrialOptions o;
  o.trials = n;
  o.seed = seed;
  return o;
}

Outcome require_checks(const lie::CheckReport& r, std::initializer_list<const char*> names, std::string& note) {
  for (const char* name : names) {
    const auto* c = r.find(name);
    if (c == nullptr) return fail(std::string("missing check ") + name);
    if (!c->pass) return fail(std::string(name) + ": " + c->failure);
    if (!note.empty()) note += "; ";
    note += name;
    if (c->details.contains("trials")) note += " x" + c->details["trials"].dump();
  }
  return {true, note};
}

Outcome c6_companion() {
  for (int n = 2; n <= 5; ++n) {
    const auto r = lie::companion_checks(n, trials(25));
    const auto* c = r.find("companion section");
    if (!c->pass) return fail("n=" + std::to_string(n) + ": " + c->failure);
  }
  return {true, "n=2..5, 25 samples each"};
}

Outcome c7_regularity() {
  for (int n = 2; n <= 5; ++n) {
    const auto r = lie::companion_checks(n, trials(25));
    const auto* c = r.find("companion regularity");
    if (!c->pass) return fail("n=" + std::to_string(n) + ": " + c->failure);
  }
  return {true, "n=2..5, 25 samples each"};
}

Outcome c8_slodowy() {
  const auto r = lie::slodowy_checks(3, trials(10));
  std::string note;
  auto out = require_checks(r, {"g_f dimension", "containment", "transversality", "leaf intersection"}, note);
  if (!out.pass) return out;
  for (const auto& s : r.find("transversality")->samples) {
    if (s["rank"] != 8) return fail("transversality rank " + s["rank"].dump());
  }
  for (const auto& s : r.find("leaf intersection")->samples) {
    if (s["intersection_dim"] != 2) return fail("intersection " + s["intersection_dim"].dump());
  }
  return {true, "dim g_f = 4, rank 8, intersection 2 at 10 regular samples"};
}

Outcome c9_formulas() {
  std::string note;
  const auto h = lie::coad_formula_check(lie::Family::sl2_semidirect, 0, trials(50));
  auto out = require_checks(h, {"semidirect ad* example", "semidirect ad* closed form",
                                "semidirect Ad* at unipotent g, eta = (1, 0)"}, note);
  if (!out.pass) return out;
  const auto g = lie::coad_formula_check(lie::Family::sl3_centralizer, 0, trials(50));
  out = require_checks(g, {"centralizer Ad* closed form"}, note);
  if (!out.pass) return out;
  for (const auto* c : {h.find("semidirect ad* closed form"), h.find("semidirect Ad* at unipotent g, eta = (1, 0)"),
                        g.find("centralizer Ad* closed form")}) {
    if (c->details["convention"] != "fixed") return fail(c->name + " matched the opposite convention");
  }
  return {true, note + "; convention fixed"};
}

Outcome c10_stabilizers() {
  std::string note;
  const auto hs = lie::stabilizer_family_check(lie::Family::sl2_semidirect, trials(50));
  auto out = require_checks(hs, {"h_a h_b = h_{a+b}", "h_a fixes sigma(z)"}, note);
  if (!out.pass) return out;
  const auto gs = lie::stabilizer_family_check(lie::Family::sl3_centralizer, trials(50));
  out = require_checks(gs, {"group law", "sigma1 stabilizer, w != 0", "sigma1 stabilizer, w = 0, r = 1"}, note);
  if (!out.pass) return out;
  const auto hsl = lie::slice_report(lie::Family::sl2_semidirect, 0, trials(50));
  out = require_checks(hsl, {"complement codimension {eta = 0}"}, note);
  if (!out.pass) return out;
  const auto gsl = lie::slice_report(lie::Family::sl3_centralizer, 0, trials(50));
  out = require_checks(gsl, {"complement codimension {u = w = 0}", "complement codimension {v = w = 0}",
                             "sigma1 transversality", "sigma2 transversality", "sigma1 abelian stabilizer",
                             "sigma2 abelian stabilizer"},
                       note);
  if (!out.pass) return out;
  for (const auto* c : {hsl.find("complement codimension {eta = 0}"), gsl.find("complement codimension {u = w = 0}"),
                        gsl.find("complement codimension {v = w = 0}")}) {
    if (c->details["codimension"] != 2) return fail(c->name + " has codimension " + c->details["codimension"].dump());
  }
  return {true, "50 samples per family; codimensions 2, 2, 2"};
}

Outcome c11_determinism() {
  using testing::data;
  const std::vector<std::string> commands = {
      "cob normalize --term '(id(1) * mu) . (delta * id(1))'",
      "tqft eval --model " + data("z2.json") + " --term 'mu . (eta * id(1))'",
      "tqft eval --model " + data("pq.json") + " --term 'eps . mu . delta . eta'",
      "frobenius check --model " + data("z2z3.json") + " --seed 7",
      "lie sln --n 3 --trials 10 --seed 4",
      "lie sl2-semidirect --trials 10 --seed 4",
      "lie sl3-centralizer --trials 25 --seed 1",
  };
  for (const auto& cmd : commands) {
    const auto a = testing::run_cli(cmd), b = testing::run_cli(cmd), c = testing::run_cli(cmd + " --serial");
    if (a.exit_code != 0) return fail(cmd + " exited " + std::to_string(a.exit_code));
    if (a.out != b.out) return fail(cmd + " differs between runs");
    if (cmd.rfind("cob", 0) != 0 && a.out != c.out) return fail(cmd + " differs between serial and parallel");
  }
  return {true, std::to_string(commands.size()) + " commands, repeated and serial"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Cob2 relation suite", 1, c1_relations},
      {2, "Frobenius axiom suite over the model grid", 60, c2_frobenius_grid},
      {3, "Genus-0 law", 60, c3_genus0},
      {4, "Decomposition independence", 120, c4_decomposition},
      {5, "Closed invariants", 0, c5_closed},
      {6, "Companion section", 10, c6_companion},
      {7, "Regularity and abelianness at companion points", 0, c7_regularity},
      {8, "Slodowy suite (n = 3)", 10, c8_slodowy},
      {9, "Printed coadjoint formulas", 0, c9_formulas},
      {10, "Stabilizer families, slices, codimensions", 0, c10_stabilizers},
      {11, "CLI determinism", 0, c11_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (out.pass && c.limit_s > 0 && secs >= c.limit_s) {
      out.pass = false;
      out.note += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit)";
    }
    char time_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.2f s", secs);
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " [" << time_buf
              << "] " << out.note << std::endl;
    failed += !out.pass;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
