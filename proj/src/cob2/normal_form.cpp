#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "tqftwb/cob2.hpp"

namespace tqftwb::cob {

namespace {

// Union-find over surface pieces; each root carries the Euler characteristic
// of its glued component. Gluing along a circle adds characteristics since
// the circle itself has characteristic 0.
class Gluing {
 public:
  int add(int chi) {
    parent_.push_back(static_cast<int>(parent_.size()));
    chi_.push_back(chi);
    return parent_.back();
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    chi_[a] += chi_[b];
  }

  int chi(int root) const { return chi_[root]; }
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  std::vector<int> chi_;
};

struct Ports {
  std::vector<int> in;
  std::vector<int> out;
};

Ports build(const Term& t, Gluing& g) {
  switch (t.kind()) {
    case Term::Kind::generator:
      switch (t.gen()) {
        case Generator::eta: {
          const int d = g.add(1);
          return {{}, {d}};
        }
        case Generator::eps: {
          const int d = g.add(1);
          return {{d}, {}};
        }
        case Generator::mu: {
          const int p = g.add(-1);
          return {{p, p}, {p}};
        }
        case Generator::delta: {
          const int p = g.add(-1);
          return {{p}, {p, p}};
        }
        case Generator::tau: {
          const int a = g.add(0);
          const int b = g.add(0);
          return {{a, b}, {b, a}};
        }
      }
      break;
    case Term::Kind::identity: {
      Ports p;
      for (int i = 0; i < t.width(); ++i) p.in.push_back(g.add(0));
      p.out = p.in;
      return p;
    }
    case Term::Kind::compose: {
      Ports inner = build(t.inner(), g);
      Ports outer = build(t.outer(), g);
      for (std::size_t k = 0; k < inner.out.size(); ++k) g.unite(inner.out[k], outer.in[k]);
      return {std::move(inner.in), std::move(outer.out)};
    }
    case Term::Kind::tensor: {
      Ports l = build(t.left(), g);
      Ports r = build(t.right(), g);
      l.in.insert(l.in.end(), r.in.begin(), r.in.end());
      l.out.insert(l.out.end(), r.out.begin(), r.out.end());
      return l;
    }
  }
  throw std::logic_error("unreachable term kind");
}

}  // namespace

std::string SurfaceNormalForm::serialize() const {
  auto list = [](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s + "]";
  };
  std::string s = std::to_string(m) + "->" + std::to_string(n) + ":";
  for (const auto& c : components) {
    s += " {in=" + list(c.in) + ";out=" + list(c.out) + ";g=" + std::to_string(c.genus) + "}";
  }
  return s;
}

bool SurfaceNormalForm::is_connected_genus0() const {
  return components.size() == 1 && components[0].genus == 0;
}

SurfaceNormalForm make_normal_form(int m, int n, std::vector<SurfaceComponent> components) {
  if (m < 0 || n < 0) throw InputError("boundary sizes must be nonnegative");
  std::vector<int> seen_in(m + 1, 0), seen_out(n + 1, 0);
  for (auto& c : components) {
    if (c.genus < 0) throw InputError("negative genus");
    std::sort(c.in.begin(), c.in.end());
    std::sort(c.out.begin(), c.out.end());
    for (int i : c.in) {
      if (i < 1 || i > m || seen_in[i]++) throw InputError("input circles do not partition 1..m");
    }
    for (int o : c.out) {
      if (o < 1 || o > n || seen_out[o]++) throw InputError("output circles do not partition 1..n");
    }
  }
  for (int i = 1; i <= m; ++i) {
    if (!seen_in[i]) throw InputError("input circles do not partition 1..m");
  }
  for (int o = 1; o <= n; ++o) {
    if (!seen_out[o]) throw InputError("output circles do not partition 1..n");
  }
  auto rank = [](const SurfaceComponent& c) {
    if (!c.in.empty()) return std::make_pair(0, c.in.front());
    if (!c.out.empty()) return std::make_pair(1, c.out.front());
    return std::make_pair(2, c.genus);
  };
  std::sort(components.begin(), components.end(),
            [&](const SurfaceComponent& a, const SurfaceComponent& b) { return rank(a) < rank(b); });
  return {m, n, std::move(components)};
}

SurfaceNormalForm normalize(const Term& t) {
  Gluing g;
  const Ports ports = build(t, g);
  std::map<int, SurfaceComponent> by_root;
  for (int x = 0; x < g.size(); ++x) by_root.try_emplace(g.find(x));
  for (std::size_t i = 0; i < ports.in.size(); ++i) {
    by_root[g.find(ports.in[i])].in.push_back(static_cast<int>(i) + 1);
  }
  for (std::size_t o = 0; o < ports.out.size(); ++o) {
    by_root[g.find(ports.out[o])].out.push_back(static_cast<int>(o) + 1);
  }
  std::vector<SurfaceComponent> comps;
  for (auto& [root, c] : by_root) {
    const int b = static_cast<int>(c.in.size() + c.out.size());
    const int twice = 2 - g.chi(root) - b;
    if (twice % 2 != 0 || twice < 0) {
      throw std::logic_error("non-integral or negative genus in normalization");
    }
    c.genus = twice / 2;
    comps.push_back(std::move(c));
  }
  const Signature sig = t.signature();
  return make_normal_form(sig.dom, sig.cod, std::move(comps));
}

}  // namespace tqftwb::cob
