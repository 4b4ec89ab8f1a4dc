#include <algorithm>
#include <numeric>

#include "tqftwb/cob2.hpp"

namespace tqftwb::cob {

namespace {

Term gen(Generator g) { return Term::generator(g); }
Term id(int n) { return Term::identity(n); }
Term dot(const Term& outer, const Term& inner) { return Term::compose(outer, inner); }

// Tensor of the parts, dropping id(0) factors.
Term tensor_all(const std::vector<Term>& parts) {
  std::optional<Term> acc;
  for (const auto& p : parts) {
    if (p.kind() == Term::Kind::identity && p.width() == 0) continue;
    acc = acc ? Term::tensor(*acc, p) : p;
  }
  return acc ? *acc : id(0);
}

// id(before) * block * id(after)
Term pad(int before, const Term& block, int after) {
  return tensor_all({id(before), block, id(after)});
}

// Appends `layer` after `t`, skipping identity placeholders.
Term then(const Term& t, const Term& layer) {
  if (t.kind() == Term::Kind::identity) return layer;
  if (layer.kind() == Term::Kind::identity) return t;
  return dot(layer, t);
}

Term random_merge(Rng& rng) {
  return rng.chance(1, 3) ? dot(gen(Generator::mu), gen(Generator::tau)) : gen(Generator::mu);
}

Term random_split(Rng& rng) {
  return rng.chance(1, 3) ? dot(gen(Generator::tau), gen(Generator::delta)) : gen(Generator::delta);
}

// A 1 -> 1 cylinder written in one of several equivalent ways.
Term random_cylinder(Rng& rng) {
  switch (rng.below(7)) {
    case 0: return dot(gen(Generator::mu), tensor_all({gen(Generator::eta), id(1)}));
    case 1: return dot(gen(Generator::mu), tensor_all({id(1), gen(Generator::eta)}));
    case 2: return dot(tensor_all({gen(Generator::eps), id(1)}), gen(Generator::delta));
    case 3: return dot(tensor_all({id(1), gen(Generator::eps)}), gen(Generator::delta));
    default: return id(1);
  }
}

// A 1 -> 1 handle.
Term random_handle(Rng& rng) {
  const Term m = random_merge(rng);
  const Term d = random_split(rng);
  if (rng.chance(1, 4)) return dot(m, dot(tensor_all({random_cylinder(rng), id(1)}), d));
  return dot(m, d);
}

// The 2 -> 2 connected genus-0 surface in one of its Frobenius forms.
Term random_frobenius(Rng& rng) {
  const Term mu = gen(Generator::mu);
  const Term delta = gen(Generator::delta);
  switch (rng.below(3)) {
    case 0: return dot(delta, mu);
    case 1: return dot(tensor_all({id(1), mu}), tensor_all({delta, id(1)}));
    default: return dot(tensor_all({mu, id(1)}), tensor_all({id(1), delta}));
  }
}

// Connected component with kin inputs, kout outputs and the given genus.
// Inputs merge along a random tree, outputs split along a random tree;
// handles and unit/counit decorations land on random wires.
Term component_block(int kin, int kout, int genus, Rng& rng) {
  Term t = id(kin);
  int w = kin;
  if (kin == 0) {
    t = gen(Generator::eta);
    w = 1;
  }
  int handles_left = genus;
  auto maybe_decorate = [&](int width) {
    if (width == 0) return;
    const int i = static_cast<int>(rng.below(width));
    if (handles_left > 0 && rng.chance(1, 2)) {
      --handles_left;
      t = then(t, pad(i, random_handle(rng), width - i - 1));
    } else if (rng.chance(1, 4)) {
      t = then(t, pad(i, random_cylinder(rng), width - i - 1));
    }
  };
  const bool fuse = kin >= 2 && kout >= 2 && rng.chance(1, 2);
  while (w > (fuse ? 2 : 1)) {
    maybe_decorate(w);
    const int i = static_cast<int>(rng.below(w - 1));
    t = then(t, pad(i, random_merge(rng), w - i - 2));
    --w;
  }
  if (fuse) {
    maybe_decorate(2);
    t = then(t, random_frobenius(rng));
  }
  while (handles_left > 0) {
    maybe_decorate(w);
    if (handles_left > 0) {
      const int i = static_cast<int>(rng.below(w));
      t = then(t, pad(i, random_handle(rng), w - i - 1));
      --handles_left;
    }
  }
  if (kout == 0) {
    maybe_decorate(1);
    return then(t, gen(Generator::eps));
  }
  while (w < kout) {
    maybe_decorate(w);
    const int i = static_cast<int>(rng.below(w));
    t = then(t, pad(i, random_split(rng), w - i - 1));
    ++w;
  }
  maybe_decorate(w);
  if (t.kind() == Term::Kind::identity && t.width() == 0) return id(0);
  return t;
}

std::vector<int> shuffled(int n, Rng& rng) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(v[i], v[rng.below(i + 1)]);
  return v;
}

}  // namespace

Term permutation_term(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]++) throw InputError("not a permutation");
  }
  // target[p] = which input wire must end at position p
  std::vector<int> target(n);
  for (int i = 0; i < n; ++i) target[perm[i]] = i;
  std::vector<int> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  Term t = id(n);
  for (int p = 0; p < n; ++p) {
    int j = static_cast<int>(std::find(cur.begin(), cur.end(), target[p]) - cur.begin());
    while (j > p) {
      t = then(t, pad(j - 1, gen(Generator::tau), n - j - 1));
      std::swap(cur[j - 1], cur[j]);
      --j;
    }
  }
  return t;
}

SurfaceNormalForm random_normal_form(int m, int n, int max_genus, Rng& rng) {
  const int total = m + n;
  const int k = total == 0 ? 0 : static_cast<int>(rng.between(1, total));
  std::vector<SurfaceComponent> comps(k);
  for (int i = 1; i <= m; ++i) comps[rng.below(k)].in.push_back(i);
  for (int o = 1; o <= n; ++o) comps[rng.below(k)].out.push_back(o);
  std::erase_if(comps, [](const SurfaceComponent& c) { return c.in.empty() && c.out.empty(); });
  for (auto& c : comps) c.genus = static_cast<int>(rng.between(0, max_genus));
  if (total == 0 || rng.chance(1, 6)) {
    comps.push_back({{}, {}, static_cast<int>(rng.between(0, max_genus))});
  }
  return make_normal_form(m, n, std::move(comps));
}

Term realize(const SurfaceNormalForm& nf, Rng& rng) {
  // Blocks are laid out in a random order. Input circles are routed to their
  // block's input slots by a permutation network, and likewise for outputs.
  const int c = static_cast<int>(nf.components.size());
  const std::vector<int> order = shuffled(c, rng);
  std::vector<int> in_perm(nf.m), out_perm(nf.n);
  std::vector<Term> blocks;
  int in_slot = 0, out_slot = 0;
  for (int idx : order) {
    const auto& comp = nf.components[idx];
    const std::vector<int> ip = shuffled(static_cast<int>(comp.in.size()), rng);
    const std::vector<int> op = shuffled(static_cast<int>(comp.out.size()), rng);
    for (std::size_t a = 0; a < comp.in.size(); ++a) in_perm[comp.in[ip[a]] - 1] = in_slot + static_cast<int>(a);
    for (std::size_t a = 0; a < comp.out.size(); ++a) out_perm[out_slot + a] = comp.out[op[a]] - 1;
    in_slot += static_cast<int>(comp.in.size());
    out_slot += static_cast<int>(comp.out.size());
    blocks.push_back(component_block(static_cast<int>(comp.in.size()),
                                     static_cast<int>(comp.out.size()), comp.genus, rng));
  }
  Term t = permutation_term(in_perm);
  t = then(t, tensor_all(blocks));
  t = then(t, permutation_term(out_perm));
  if (t.kind() == Term::Kind::identity && t.width() != nf.m) return id(nf.m);
  return t;
}

Term random_term(std::uint64_t seed, int size, BoundaryHint hint) {
  Rng rng(seed);
  static constexpr Generator all[] = {Generator::eta, Generator::mu, Generator::delta,
                                      Generator::eps, Generator::tau};
  if (size <= 1 && !hint.dom && !hint.cod) return gen(all[rng.below(5)]);

  const int dom = hint.dom ? *hint.dom : static_cast<int>(rng.below(3));
  if (dom < 0 || (hint.cod && *hint.cod < 0)) throw InputError("negative boundary hint");
  Term t = id(dom);
  int w = dom;
  int used = 0;
  while (used < size) {
    if (w == 0) {
      t = then(t, gen(Generator::eta));
      w = 1;
      ++used;
      continue;
    }
    std::vector<Term> blocks;
    int nw = 0, gens = 0, p = 0;
    while (p < w) {
      const auto r = rng.below(8);
      if (r == 0 && p + 1 < w) {
        blocks.push_back(gen(Generator::mu));
        p += 2, nw += 1, ++gens;
      } else if (r == 1 && p + 1 < w) {
        blocks.push_back(gen(Generator::tau));
        p += 2, nw += 2, ++gens;
      } else if (r == 2 && w - p + nw < 4) {
        blocks.push_back(gen(Generator::delta));
        p += 1, nw += 2, ++gens;
      } else if (r == 3 && w > 1) {
        blocks.push_back(gen(Generator::eps));
        p += 1, ++gens;
      } else if (r == 4 && w - p + nw < 4) {
        blocks.push_back(tensor_all({id(1), gen(Generator::eta)}));
        p += 1, nw += 2, ++gens;
      } else {
        blocks.push_back(id(1));
        p += 1, nw += 1;
      }
    }
    if (gens == 0) {
      // force one generator on the first wire
      const bool merge = w >= 3 || (w == 2 && rng.chance(1, 2));
      blocks[0] = gen(merge ? Generator::mu : Generator::delta);
      if (merge) blocks.erase(blocks.begin() + 1);
      nw += merge ? -1 : 1;
      gens = 1;
    }
    t = then(t, tensor_all(blocks));
    w = nw;
    used += gens;
  }
  if (hint.cod) {
    while (w > *hint.cod) {
      t = then(t, w >= 2 ? pad(0, gen(Generator::mu), w - 2) : gen(Generator::eps));
      --w;
    }
    while (w < *hint.cod) {
      t = then(t, w == 0 ? gen(Generator::eta) : pad(0, gen(Generator::delta), w - 1));
      ++w;
    }
  }
  return t;
}

}  // namespace tqftwb::cob
