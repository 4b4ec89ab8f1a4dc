#include <set>

#include "tqftwb/lie.hpp"

namespace tqftwb::lie {

using nlohmann::ordered_json;

namespace {

ordered_json js(const Rational& q) { return to_string(q); }
ordered_json js(const Vector& v) { return to_strings(v); }
ordered_json js(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Trial {
  bool pass = true;
  ordered_json sample = ordered_json::object();
  std::string failure;
  std::string convention;
};

std::uint64_t tag_of(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Independent trials with per-trial generators; results land in fixed slots
// so the report does not depend on scheduling.
template <class F>
Check run_trials(const std::string& name, const TrialOptions& opts, F&& fn) {
  if (opts.trials < 1) throw InputError("trials must be >= 1");
  const std::uint64_t base = mix_seed(opts.seed, tag_of(name));
  std::vector<Trial> slots(static_cast<std::size_t>(opts.trials));
  auto body = [&](int i) {
    Rng rng(mix_seed(base, static_cast<std::uint64_t>(i)));
    try {
      slots[i] = fn(rng);
    } catch (const std::exception& e) {
      slots[i].pass = false;
      slots[i].failure = e.what();
    }
  };
  if (opts.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < opts.trials; ++i) body(i);
  } else {
    for (int i = 0; i < opts.trials; ++i) body(i);
  }
  Check c;
  c.name = name;
  c.details["trials"] = opts.trials;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    ordered_json s = std::move(slots[i].sample);
    if (!slots[i].convention.empty()) s["convention"] = slots[i].convention;
    if (!slots[i].pass) s["failure"] = slots[i].failure;
    c.samples.push_back(std::move(s));
    if (!slots[i].pass && c.pass) {
      c.pass = false;
      c.failure = "trial " + std::to_string(i) + ": " + slots[i].failure;
    }
  }
  std::set<std::string> conventions;
  for (const auto& s : slots) {
    if (!s.convention.empty()) conventions.insert(s.convention);
  }
  if (!conventions.empty()) {
    if (conventions.size() == 1) {
      c.details["convention"] = *conventions.begin();
    } else {
      c.details["convention"] = "mixed";
      if (c.pass) {
        c.pass = false;
        c.failure = "samples match different coadjoint conventions";
      }
    }
  }
  return c;
}

Vector random_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  for (auto& q : v) q = random_rational(rng);
  return v;
}

Vector concat(const Vector& a, const Vector& b) {
  Vector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Compares a closed form to the oracle under both conventions.
void resolve(Trial& t, const Vector& formula, const Vector& fixed, const Vector& opposite) {
  t.sample["formula"] = js(formula);
  if (formula == fixed) {
    t.convention = convention_name(Convention::fixed);
  } else if (formula == opposite) {
    t.convention = convention_name(Convention::opposite);
  } else {
    t.pass = false;
    t.sample["oracle"] = js(fixed);
    t.failure = "closed form differs from the oracle under both conventions";
  }
}

Matrix columns(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t rows) {
  std::vector<Vector> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return Matrix::from_columns(all, rows);
}

std::vector<Vector> column_list(const Matrix& m) {
  std::vector<Vector> out;
  for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
  return out;
}

Check single(const std::string& name, bool pass, ordered_json details, const std::string& failure) {
  Check c;
  c.name = name;
  c.pass = pass;
  c.details = std::move(details);
  if (!pass) c.failure = failure;
  return c;
}

CheckReport make_report(const std::string& suite, Family family, int n, const TrialOptions& opts) {
  CheckReport r;
  r.suite = suite;
  r.family = family;
  r.n = family == Family::sln ? n : 0;
  r.trials = opts.trials;
  r.seed = opts.seed;
  return r;
}

// Semidirect closed forms, in dual coordinates (xi1, xi2, xi3, eta1, eta2).

Vector semidirect_coad_formula(const Vector& x, const Vector& u, const Vector& xi, const Vector& eta) {
  const Rational half(1, 2);
  const Rational sym = half * (eta[0] * u[1] + eta[1] * u[0]);
  const Rational m11 = (x[1] * xi[2] - x[2] * xi[1]) - sym;
  const Rational m12 = 2 * (x[0] * xi[1] - x[1] * xi[0]) + eta[0] * u[0];
  const Rational m21 = 2 * (x[2] * xi[0] - x[0] * xi[2]) - eta[1] * u[1];
  const Rational m22 = (x[2] * xi[1] - x[1] * xi[2]) + sym;
  if (m22 != -m11) throw std::logic_error("semidirect ad* closed form is not trace-free");
  return {m11, m12, m21, x[0] * eta[0] + x[1] * eta[1], x[2] * eta[0] - x[0] * eta[1]};
}

Vector semidirect_unipotent_formula(const Rational& a, const Vector& u, const Vector& xi) {
  const Rational half(1, 2);
  const Rational m11 = xi[0] + a * xi[2] - half * u[1];
  const Rational m12 = -2 * a * xi[0] + xi[1] - a * a * xi[2] + u[0];
  const Rational m22 = -xi[0] - a * xi[2] + half * u[1];
  if (m22 != -m11) throw std::logic_error("unipotent Ad* closed form is not trace-free");
  return {m11, m12, xi[2], 1, 0};
}

Vector centralizer_coad_formula(const SL3C& g, const Vector& p) {
  const Rational &r = g.r, &a = g.a, &b = g.b;
  const Rational &s = p[0], &u = p[1], &v = p[2], &w = p[3];
  const Rational r2 = r * r, r3 = r2 * r;
  return {s + 3 * (a * u / r - b * r2 * v + a * b * r * w), u / r3 + w * b / r, v * r3 - w * a * r2, w};
}

SL2SD unipotent(const Rational& a, const Vector& u) { return make_sl2sd(Matrix{{1, a}, {0, 1}}, u); }

// h_a = ((1 a; 0 1), (a^2 z, 2 a z))
SL2SD semidirect_family(const Rational& a, const Rational& z) {
  return unipotent(a, Vector{a * a * z, 2 * a * z});
}

Vector sigma(const Rational& z) { return {0, 0, z, 1, 0}; }
Vector sigma1(const Rational& v, const Rational& w) { return {0, 1, v, w}; }
Vector sigma2(const Rational& u, const Rational& w) { return {0, u, 1, w}; }

// Stabilizer of sigma1(v, w) for w != 0.
SL3C sigma1_stabilizer(const Rational& v, const Rational& w, const Rational& r, const Rational& c) {
  const Rational k = (r - 1 / (r * r)) / w;
  return make_sl3c(r, v * k, k, c);
}

// Selector rows for the coordinates cut out by a locus.
std::size_t coordinate_codimension(std::size_t dim, const std::vector<std::size_t>& coords) {
  std::vector<Vector> rows;
  for (auto c : coords) {
    Vector e(dim);
    e.at(c) = 1;
    rows.push_back(e);
  }
  return rank(Matrix::from_columns(rows, dim));
}

// Slice checks shared by all families: transversality of the slice tangent
// to the orbit and an abelian, regular stabilizer at the point.
void slice_point(const LieAlgebraData& alg, Trial& t, const Vector& point, const std::vector<Vector>& tangent) {
  t.sample["point"] = js(point);
  const std::size_t dirs = rank(Matrix::from_columns(tangent, alg.dim));
  const std::size_t r = rank(columns(tangent, column_list(orbit_tangent(alg, point)), alg.dim));
  t.sample["rank"] = r;
  if (dirs != tangent.size()) {
    t.pass = false;
    t.failure = "slice directions are dependent";
  } else if (r != static_cast<std::size_t>(alg.dim)) {
    t.pass = false;
    t.failure = "slice tangent and orbit tangent span rank " + std::to_string(r);
  }
}

void stabilizer_point(const LieAlgebraData& alg, Trial& t, const Vector& point) {
  const auto c = centralizer_report(alg, point);
  t.sample["point"] = js(point);
  t.sample["centralizer_dim"] = c.dimension;
  if (!c.regular || !c.abelian) {
    t.pass = false;
    t.failure = std::string(c.regular ? "" : "not regular ") + (c.abelian ? "" : "centralizer not abelian");
  }
}

Check codimension_check(const LieAlgebraData& alg, const std::string& name, const std::vector<std::size_t>& cut,
                        const TrialOptions& opts, std::size_t expected, bool on_locus_singular) {
  // Points off the locus are regular. When the locus is the whole singular
  // set, points on it are not.
  Check c = run_trials(name, opts, [&](Rng& rng) {
    Trial t;
    Vector off = random_vector(rng, alg.dim);
    while (true) {
      bool all_zero = true;
      for (auto k : cut) all_zero = all_zero && off[k] == 0;
      if (!all_zero) break;
      off[cut[0]] = random_nonzero(rng);
    }
    Vector on = random_vector(rng, alg.dim);
    for (auto k : cut) on[k] = 0;
    const auto c_off = centralizer_report(alg, off);
    const auto c_on = centralizer_report(alg, on);
    t.sample["off_locus"] = js(off);
    t.sample["off_dim"] = c_off.dimension;
    t.sample["on_locus"] = js(on);
    t.sample["on_dim"] = c_on.dimension;
    if (!c_off.regular) {
      t.pass = false;
      t.failure = "point off the locus is not regular";
    } else if (on_locus_singular && c_on.regular) {
      t.pass = false;
      t.failure = "point on the locus is regular";
    }
    return t;
  });
  const std::size_t codim = coordinate_codimension(alg.dim, cut);
  ordered_json cut_labels = ordered_json::array();
  for (auto k : cut) cut_labels.push_back(alg.dual_labels[k]);
  c.details["vanishing"] = cut_labels;
  c.details["codimension"] = codim;
  if (codim != expected && c.pass) {
    c.pass = false;
    c.failure = "codimension " + std::to_string(codim);
  }
  return c;
}

}  // namespace

bool CheckReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const Check* CheckReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void CheckReport::append(const CheckReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

ordered_json CheckReport::to_json() const {
  ordered_json j;
  j["suite"] = suite;
  j["family"] = family_name(family);
  if (family == Family::sln) j["n"] = n;
  j["trials"] = trials;
  j["seed"] = seed;
  j["all_pass"] = all_pass();
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.failure.empty()) e["failure"] = c.failure;
    e["details"] = c.details;
    e["samples"] = c.samples;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  return j;
}

CheckReport structure_checks(Family family, int n, const TrialOptions& opts) {
  const auto alg = make_algebra(family, n);
  auto report = make_report("structure", family, n, opts);
  const auto s = validate_structure(alg);
  report.checks.push_back(single("structure constants", s.ok(),
                                 {{"dimension", alg.dim},
                                  {"basis", alg.labels},
                                  {"antisymmetric", s.antisymmetric},
                                  {"jacobi", s.jacobi}},
                                 "antisymmetry or Jacobi fails"));
  report.checks.push_back(run_trials("duality identity", opts, [&](Rng& rng) {
    Trial t;
    const Vector x = random_vector(rng, alg.dim), y = random_vector(rng, alg.dim), xi = random_vector(rng, alg.dim);
    const Vector coad = action_matrices(alg, x).coad * xi;
    const Rational defect = alg.pair(coad, y) + alg.pair(xi, alg.bracket(x, y));
    t.sample = {{"x", js(x)}, {"xi", js(xi)}, {"y", js(y)}, {"defect", js(defect)}};
    if (defect != 0) {
      t.pass = false;
      t.failure = "<ad*_x xi, y> + <xi, [x, y]> = " + to_string(defect);
    }
    return t;
  }));
  return report;
}

CheckReport companion_checks(int n, const TrialOptions& opts) {
  const auto alg = make_algebra(Family::sln, n);
  auto report = make_report("companion", Family::sln, n, opts);
  const auto N = static_cast<std::size_t>(n);
  report.checks.push_back(run_trials("companion section", opts, [&](Rng& rng) {
    Trial t;
    const Vector a = random_vector(rng, N - 1);
    const auto f = char_coeffs(companion(a));
    t.sample = {{"a", js(a)}, {"f", js(f)}};
    if (!companion_section_holds(a)) {
      t.pass = false;
      t.failure = "f(companion(a)) != -a";
    }
    return t;
  }));
  report.checks.push_back(run_trials("companion regularity", opts, [&](Rng& rng) {
    Trial t;
    const Vector a = random_vector(rng, N - 1);
    t.sample["a"] = js(a);
    stabilizer_point(alg, t, alg.coords(companion(a)));
    return t;
  }));
  return report;
}

CheckReport slodowy_checks(int n, const TrialOptions& opts) {
  if (n < 3) throw InputError("Slodowy checks need n >= 3");
  const auto alg = make_algebra(Family::sln, n);
  auto report = make_report("slodowy", Family::sln, n, opts);
  const auto N = static_cast<std::size_t>(n);
  const Matrix e = alg.element(alg.designated.at("e"));
  const Matrix f = alg.element(alg.designated.at("f"));
  const auto gf = nullspace(action_matrices(alg, alg.designated.at("f")).ad);
  const std::size_t ell = N - 1;
  const std::size_t full = N * N - 1;

  report.checks.push_back(single("g_f dimension", gf.size() == ell * ell,
                                 {{"dim_g_f", gf.size()}, {"expected", ell * ell}},
                                 "dim g_f = " + std::to_string(gf.size())));

  report.checks.push_back(run_trials("containment", opts, [&](Rng& rng) {
    Trial t;
    const Vector a = random_vector(rng, N - 1);
    t.sample["a"] = js(a);
    if (!commutator(f, companion(a) - e).is_zero()) {
      t.pass = false;
      t.failure = "[f, T(a) - e] != 0";
    }
    return t;
  }));

  report.checks.push_back(run_trials("transversality", opts, [&](Rng& rng) {
    Trial t;
    const Vector a = random_vector(rng, N - 1);
    const Matrix ad = action_matrices(alg, alg.coords(companion(a))).ad;
    const std::size_t r = rank(columns(gf, column_list(ad), alg.dim));
    t.sample = {{"a", js(a)}, {"rank", r}};
    if (r != full) {
      t.pass = false;
      t.failure = "rank(g_f + im ad_x) = " + std::to_string(r);
    }
    return t;
  }));

  report.checks.push_back(run_trials("leaf intersection", opts, [&](Rng& rng) {
    Trial t;
    for (int attempt = 0; attempt < 64; ++attempt) {
      Vector x = alg.designated.at("e");
      Vector coeffs = random_vector(rng, gf.size());
      for (std::size_t i = 0; i < gf.size(); ++i) x = x + coeffs[i] * gf[i];
      const Matrix ad = action_matrices(alg, x).ad;
      const std::size_t r = rank(ad);
      if (static_cast<std::size_t>(alg.dim) - r != ell) continue;  // not regular
      const std::size_t both = rank(columns(gf, column_list(ad), alg.dim));
      const std::size_t meet = r + gf.size() - both;
      t.sample = {{"x", js(x)}, {"attempts", attempt + 1}, {"intersection_dim", meet}};
      if (meet != gf.size() - ell) {
        t.pass = false;
        t.failure = "dim(im ad_x & g_f) = " + std::to_string(meet);
      }
      return t;
    }
    t.pass = false;
    t.failure = "no regular point found in 64 attempts";
    return t;
  }));
  report.checks.back().details["expected"] = gf.size() - ell;
  return report;
}

CheckReport coad_formula_check(Family family, int n, const TrialOptions& opts) {
  const auto alg = make_algebra(family, n);
  auto report = make_report("coadjoint formulas", family, n, opts);
  switch (family) {
    case Family::sl2_semidirect: {
      {
        // x2 = 1, xi1 = 1
        const Vector x{0, 1, 0}, u{0, 0}, xi{1, 0, 0}, eta{0, 0};
        const Vector formula = semidirect_coad_formula(x, u, xi, eta);
        const Vector oracle = action_matrices(alg, concat(x, u)).coad * concat(xi, eta);
        const Vector expected{0, -2, 0, 0, 0};
        report.checks.push_back(single("semidirect ad* example", formula == expected && oracle == expected,
                                       {{"formula", js(formula)}, {"oracle", js(oracle)}},
                                       "expected ((0, -2; 0, 0), (0, 0))"));
      }
      report.checks.push_back(run_trials("semidirect ad* closed form", opts, [&](Rng& rng) {
        Trial t;
        const Vector x = random_vector(rng, 3), u = random_vector(rng, 2);
        const Vector xi = random_vector(rng, 3), eta = random_vector(rng, 2);
        t.sample = {{"x", js(x)}, {"u", js(u)}, {"xi", js(xi)}, {"eta", js(eta)}};
        const Vector oracle = action_matrices(alg, concat(x, u)).coad * concat(xi, eta);
        resolve(t, semidirect_coad_formula(x, u, xi, eta), oracle, Rational(-1) * oracle);
        return t;
      }));
      report.checks.push_back(run_trials("semidirect Ad* at unipotent g, eta = (1, 0)", opts, [&](Rng& rng) {
        Trial t;
        const Rational a = random_rational(rng);
        const Vector u = random_vector(rng, 2), xi = random_vector(rng, 3);
        t.sample = {{"a", js(a)}, {"u", js(u)}, {"xi", js(xi)}};
        const Matrix g = to_matrix(unipotent(a, u));
        const Vector point = concat(xi, {1, 0});
        resolve(t, semidirect_unipotent_formula(a, u, xi), group_coadjoint(alg, g, Convention::fixed) * point,
                group_coadjoint(alg, g, Convention::opposite) * point);
        return t;
      }));
      break;
    }
    case Family::sl3_centralizer: {
      {
        const Matrix m = group_coadjoint(alg, to_matrix(SL3C{}));
        report.checks.push_back(single("centralizer Ad* at identity", m == Matrix::identity(4), {{"matrix", js(m)}},
                                       "Ad* of the identity is not the identity"));
      }
      report.checks.push_back(run_trials("centralizer Ad* closed form", opts, [&](Rng& rng) {
        Trial t;
        const SL3C g = make_sl3c(random_nonzero(rng), random_rational(rng), random_rational(rng),
                                 random_rational(rng));
        const Vector p = random_vector(rng, 4);
        t.sample = {{"g", {js(g.r), js(g.a), js(g.b), js(g.c)}}, {"point", js(p)}};
        const Matrix gm = to_matrix(g);
        resolve(t, centralizer_coad_formula(g, p), group_coadjoint(alg, gm, Convention::fixed) * p,
                group_coadjoint(alg, gm, Convention::opposite) * p);
        return t;
      }));
      break;
    }
    case Family::sln: {
      // Under the trace form ad*_x is the matrix commutator.
      report.checks.push_back(run_trials("sl(n) ad* as commutator", opts, [&](Rng& rng) {
        Trial t;
        const Vector x = random_vector(rng, alg.dim), xi = random_vector(rng, alg.dim);
        t.sample = {{"x", js(x)}, {"xi", js(xi)}};
        const Vector oracle = action_matrices(alg, x).coad * xi;
        resolve(t, alg.coords(commutator(alg.element(x), alg.element(xi))), oracle, Rational(-1) * oracle);
        return t;
      }));
      break;
    }
  }
  return report;
}

CheckReport stabilizer_family_check(Family family, const TrialOptions& opts) {
  const auto alg = make_algebra(family, 3);
  auto report = make_report("stabilizers", family, 0, opts);
  switch (family) {
    case Family::sl2_semidirect:
      report.checks.push_back(run_trials("h_a h_b = h_{a+b}", opts, [&](Rng& rng) {
        Trial t;
        const Rational a = random_rational(rng), b = random_rational(rng), z = random_rational(rng);
        t.sample = {{"a", js(a)}, {"b", js(b)}, {"z", js(z)}};
        const SL2SD ha = semidirect_family(a, z), hb = semidirect_family(b, z);
        const SL2SD ab = multiply(ha, hb);
        if (!(to_matrix(ab) == to_matrix(ha) * to_matrix(hb))) {
          t.pass = false;
          t.failure = "group law disagrees with the matrix product";
        } else if (!(ab == semidirect_family(a + b, z))) {
          t.pass = false;
          t.failure = "h_a h_b != h_{a+b}";
        } else if (!(ab == multiply(hb, ha))) {
          t.pass = false;
          t.failure = "h_a and h_b do not commute";
        }
        return t;
      }));
      report.checks.push_back(run_trials("h_a fixes sigma(z)", opts, [&](Rng& rng) {
        Trial t;
        const Rational a = random_rational(rng), z = random_rational(rng);
        t.sample = {{"a", js(a)}, {"z", js(z)}};
        const Vector image = group_coadjoint(alg, to_matrix(semidirect_family(a, z))) * sigma(z);
        if (image != sigma(z)) {
          t.pass = false;
          t.sample["image"] = js(image);
          t.failure = "Ad*_{h_a} sigma(z) != sigma(z)";
        }
        return t;
      }));
      break;
    case Family::sl3_centralizer:
      report.checks.push_back(run_trials("group law", opts, [&](Rng& rng) {
        Trial t;
        const SL3C p = make_sl3c(random_nonzero(rng), random_rational(rng), random_rational(rng), random_rational(rng));
        const SL3C q = make_sl3c(random_nonzero(rng), random_rational(rng), random_rational(rng), random_rational(rng));
        t.sample = {{"p", {js(p.r), js(p.a), js(p.b), js(p.c)}}, {"q", {js(q.r), js(q.a), js(q.b), js(q.c)}}};
        if (!(to_matrix(multiply(p, q)) == to_matrix(p) * to_matrix(q))) {
          t.pass = false;
          t.failure = "closed-form product disagrees with the matrix product";
        }
        return t;
      }));
      report.checks.push_back(run_trials("sigma1 stabilizer, w != 0", opts, [&](Rng& rng) {
        Trial t;
        const Rational v = random_rational(rng), w = random_nonzero(rng);
        const Rational r1 = random_nonzero(rng), r2 = random_nonzero(rng);
        const Rational c1 = random_rational(rng), c2 = random_rational(rng);
        t.sample = {{"v", js(v)}, {"w", js(w)}, {"r", {js(r1), js(r2)}}, {"c", {js(c1), js(c2)}}};
        const SL3C g1 = sigma1_stabilizer(v, w, r1, c1), g2 = sigma1_stabilizer(v, w, r2, c2);
        const Vector image = group_coadjoint(alg, to_matrix(g1)) * sigma1(v, w);
        const SL3C prod = multiply(g1, g2);
        if (image != sigma1(v, w)) {
          t.pass = false;
          t.sample["image"] = js(image);
          t.failure = "family element does not fix sigma1(v, w)";
        } else if (!(prod == multiply(g2, g1))) {
          t.pass = false;
          t.failure = "family elements do not commute";
        } else if (!(prod == sigma1_stabilizer(v, w, prod.r, prod.c))) {
          t.pass = false;
          t.failure = "family is not closed under products";
        }
        return t;
      }));
      report.checks.push_back(run_trials("sigma1 stabilizer, w = 0, r = 1", opts, [&](Rng& rng) {
        Trial t;
        const Rational v = random_rational(rng);
        const Rational b1 = random_rational(rng), b2 = random_rational(rng);
        const Rational c1 = random_rational(rng), c2 = random_rational(rng);
        t.sample = {{"v", js(v)}, {"b", {js(b1), js(b2)}}, {"c", {js(c1), js(c2)}}};
        const SL3C g1 = make_sl3c(1, b1 * v, b1, c1), g2 = make_sl3c(1, b2 * v, b2, c2);
        const Vector image = group_coadjoint(alg, to_matrix(g1)) * sigma1(v, 0);
        if (image != sigma1(v, 0)) {
          t.pass = false;
          t.sample["image"] = js(image);
          t.failure = "family element does not fix sigma1(v, 0)";
        } else if (!(multiply(g1, g2) == multiply(g2, g1))) {
          t.pass = false;
          t.failure = "family elements do not commute";
        }
        return t;
      }));
      report.checks.back().details["note"] = "only the rational cube root r = 1 is checked";
      break;
    case Family::sln:
      throw InputError("stabilizer families are defined for sl2-semidirect and sl3-centralizer");
  }
  return report;
}

CheckReport slice_report(Family family, int n, const TrialOptions& opts) {
  const auto alg = make_algebra(family, n);
  auto report = make_report("slices", family, n, opts);
  auto e = [&](std::size_t i) { return alg.unit(i); };
  switch (family) {
    case Family::sl2_semidirect:
      report.checks.push_back(codimension_check(alg, "complement codimension {eta = 0}", {3, 4}, opts, 2, true));
      report.checks.push_back(run_trials("sigma transversality", opts, [&](Rng& rng) {
        Trial t;
        slice_point(alg, t, sigma(random_rational(rng)), {e(2)});
        return t;
      }));
      report.checks.push_back(run_trials("sigma abelian stabilizer", opts, [&](Rng& rng) {
        Trial t;
        stabilizer_point(alg, t, sigma(random_rational(rng)));
        return t;
      }));
      break;
    case Family::sl3_centralizer:
      report.checks.push_back(codimension_check(alg, "complement codimension {u = w = 0}", {1, 3}, opts, 2, false));
      report.checks.push_back(codimension_check(alg, "complement codimension {v = w = 0}", {2, 3}, opts, 2, false));
      report.checks.push_back(run_trials("sigma1 transversality", opts, [&](Rng& rng) {
        Trial t;
        const Rational v = random_rational(rng), w = random_rational(rng);
        slice_point(alg, t, sigma1(v, w), {e(2), e(3)});
        return t;
      }));
      report.checks.push_back(run_trials("sigma2 transversality", opts, [&](Rng& rng) {
        Trial t;
        const Rational u = random_rational(rng), w = random_rational(rng);
        slice_point(alg, t, sigma2(u, w), {e(1), e(3)});
        return t;
      }));
      report.checks.push_back(run_trials("sigma1 abelian stabilizer", opts, [&](Rng& rng) {
        Trial t;
        const Rational v = random_rational(rng), w = random_rational(rng);
        stabilizer_point(alg, t, sigma1(v, w));
        return t;
      }));
      report.checks.push_back(run_trials("sigma2 abelian stabilizer", opts, [&](Rng& rng) {
        Trial t;
        const Rational u = random_rational(rng), w = random_rational(rng);
        stabilizer_point(alg, t, sigma2(u, w));
        return t;
      }));
      break;
    case Family::sln: {
      const auto N = static_cast<std::size_t>(n);
      std::vector<Vector> tangent;
      for (std::size_t i = 1; i < N; ++i) {
        Matrix m(N, N);
        m(i, 0) = 1;
        tangent.push_back(alg.coords(m));
      }
      report.checks.push_back(run_trials("companion slice transversality", opts, [&](Rng& rng) {
        Trial t;
        slice_point(alg, t, alg.coords(companion(random_vector(rng, N - 1))), tangent);
        return t;
      }));
      report.checks.push_back(run_trials("companion slice abelian stabilizer", opts, [&](Rng& rng) {
        Trial t;
        stabilizer_point(alg, t, alg.coords(companion(random_vector(rng, N - 1))));
        return t;
      }));
      report.checks.push_back(run_trials("companion section onto invariants", opts, [&](Rng& rng) {
        Trial t;
        const Vector a = random_vector(rng, N - 1);
        t.sample["a"] = js(a);
        if (!companion_section_holds(a)) {
          t.pass = false;
          t.failure = "f(companion(a)) != -a";
        }
        return t;
      }));
      break;
    }
  }
  return report;
}

CheckReport run_suite(Family family, int n, const TrialOptions& opts) {
  if (family == Family::sln) make_algebra(family, n);  // validates n
  auto report = make_report("lie " + family_name(family), family, n, opts);
  report.append(structure_checks(family, n, opts));
  if (family == Family::sln) {
    report.append(companion_checks(n, opts));
    if (n >= 3) report.append(slodowy_checks(n, opts));
  } else {
    report.append(stabilizer_family_check(family, opts));
  }
  report.append(coad_formula_check(family, n, opts));
  report.append(slice_report(family, n, opts));
  return report;
}

}  // namespace tqftwb::lie
