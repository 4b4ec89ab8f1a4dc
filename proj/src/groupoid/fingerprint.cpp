#include <algorithm>
#include <map>
#include <numeric>

#include "tqftwb/span.hpp"

namespace tqftwb::gpd {

namespace {

std::string list(const std::vector<std::int64_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> d;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (n % k == 0) d.push_back(k);
  }
  return d;
}

// One isotropy element's contribution: its order and the boundary images,
// each image encoded as a mixed-radix index over the boundary factors.
struct Sample {
  std::int64_t order;
  std::uint64_t left;
  std::uint64_t right;
  friend bool operator<(const Sample& a, const Sample& b) {
    return std::tie(a.order, a.left, a.right) < std::tie(b.order, b.left, b.right);
  }
  friend bool operator==(const Sample&, const Sample&) = default;
};

// Leg as a homomorphism on coordinates: image of unit vector i.
struct LinearLeg {
  std::vector<std::int64_t> factors;            // boundary factors at the image object
  std::vector<std::vector<std::int64_t>> rows;  // per apex factor

  std::uint64_t image(const std::vector<std::int64_t>& c) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      std::int64_t v = 0;
      for (std::size_t i = 0; i < c.size(); ++i) v = (v + c[i] * rows[i][j]) % factors[j];
      idx = idx * static_cast<std::uint64_t>(factors[j]) + static_cast<std::uint64_t>(v);
    }
    return idx;
  }

  std::string render(std::uint64_t idx) const {
    std::vector<std::int64_t> c(factors.size());
    for (std::size_t j = factors.size(); j-- > 0;) {
      c[j] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(factors[j]));
      idx /= static_cast<std::uint64_t>(factors[j]);
    }
    return list(c);
  }
};

LinearLeg linear_leg(const AbelianGroupoid& apex, ObjectId x, const GroupoidFunctor& leg) {
  const auto& b = static_cast<const AbelianGroupoid&>(*leg.codomain);
  LinearLeg l;
  l.factors = b.factors(leg.on_object(x));
  const auto& f = apex.factors(x);
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::vector<std::int64_t> e(f.size(), 0);
    e[i] = 1;
    l.rows.push_back(b.coords(leg.on_arrow(apex.arrow_at(x, e))));
  }
  return l;
}

std::string orbit_record(const Span& s, const AbelianGroupoid& apex, ObjectId x, Execution exec,
                         std::uint64_t bound) {
  const auto& f = apex.factors(x);
  const std::uint64_t order = apex.order(x);
  if (order > bound) {
    throw LimitError("isotropy group of order " + std::to_string(order) + " exceeds the bound " +
                     std::to_string(bound));
  }
  const LinearLeg left = linear_leg(apex, x, s.left_leg);
  const LinearLeg right = linear_leg(apex, x, s.right_leg);

  std::vector<Sample> samples(order);
  auto one = [&](std::uint64_t idx) {
    std::vector<std::int64_t> c(f.size());
    std::uint64_t r = idx;
    std::int64_t ord = 1;
    for (std::size_t i = f.size(); i-- > 0;) {
      c[i] = static_cast<std::int64_t>(r % static_cast<std::uint64_t>(f[i]));
      r /= static_cast<std::uint64_t>(f[i]);
      ord = std::lcm(ord, f[i] / std::gcd(c[i], f[i]));
    }
    samples[idx] = {ord, left.image(c), right.image(c)};
  };
  const auto n = static_cast<std::int64_t>(order);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) one(static_cast<std::uint64_t>(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i) one(static_cast<std::uint64_t>(i));
  }
  std::sort(samples.begin(), samples.end());

  // histogram by (order, image), then cumulate over orders dividing k
  std::vector<std::pair<Sample, std::uint64_t>> hist;
  for (const auto& smp : samples) {
    if (!hist.empty() && hist.back().first == smp) {
      ++hist.back().second;
    } else {
      hist.emplace_back(smp, 1);
    }
  }
  std::int64_t exponent = 1;
  for (auto d : f) exponent = std::lcm(exponent, d);
  std::map<std::tuple<std::int64_t, std::uint64_t, std::uint64_t>, std::uint64_t> profile;
  std::map<std::pair<std::uint64_t, std::uint64_t>, bool> image;
  for (const auto& [smp, count] : hist) {
    image[{smp.left, smp.right}] = true;
    for (auto k : divisors(exponent)) {
      if (k % smp.order == 0) profile[{k, smp.left, smp.right}] += count;
    }
  }

  const Groupoid& lb = *s.left_leg.codomain;
  const Groupoid& rb = *s.right_leg.codomain;
  std::string rec = "L=" + lb.object_label(s.left_leg.on_object(x)) +
                    " R=" + rb.object_label(s.right_leg.on_object(x)) + " H=" +
                    list(invariant_factors(f)) + " im=" + std::to_string(image.size()) + " P={";
  bool first = true;
  for (const auto& [key, count] : profile) {
    const auto& [k, l, r] = key;
    if (!first) rec += ";";
    first = false;
    rec += std::to_string(k) + ":" + left.render(l) + "|" + right.render(r) + "=" +
           std::to_string(count);
  }
  return rec + "}";
}

}  // namespace

std::string SpanFingerprint::serialize() const {
  std::string s;
  for (const auto& r : records) s += r + "\n";
  return s;
}

std::string SpanFingerprint::digest() const { return fnv1a_hex(serialize()); }

SpanFingerprint fingerprint(const Span& s, Execution exec, std::uint64_t bound) {
  const Skeleton sk = skeletonize(s, bound);
  const auto& apex = static_cast<const AbelianGroupoid&>(*sk.span.apex);
  std::map<std::string, std::uint64_t> counts;
  for (ObjectId x = 0; x < apex.object_count(); ++x) {
    ++counts[orbit_record(sk.span, apex, x, exec, bound)];
  }
  SpanFingerprint fp;
  for (const auto& [rec, n] : counts) fp.records.push_back(std::to_string(n) + "x " + rec);
  return fp;
}

}  // namespace tqftwb::gpd
