#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tqftwb/span.hpp"

namespace tqftwb::gpd {

using json = nlohmann::ordered_json;

AbelianModel AbelianModel::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("model: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("model: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "base" && key != "isotropy") throw InputError("model: unknown key '" + key + "'");
  }
  if (!doc.contains("base") || !doc["base"].is_array()) {
    throw InputError("model: 'base' must be an array of point names");
  }
  if (!doc.contains("isotropy") || !doc["isotropy"].is_object()) {
    throw InputError("model: 'isotropy' must be an object mapping points to factor lists");
  }
  AbelianModel m;
  for (const auto& p : doc["base"]) {
    if (!p.is_string()) throw InputError("model: base points must be strings");
    m.base.push_back(p.get<std::string>());
  }
  const auto& iso = doc["isotropy"];
  std::set<std::string> known(m.base.begin(), m.base.end());
  for (const auto& [key, value] : iso.items()) {
    if (!known.count(key)) throw InputError("model: isotropy given for unknown point '" + key + "'");
  }
  for (const auto& p : m.base) {
    if (!iso.contains(p)) throw InputError("model: no isotropy given for point '" + p + "'");
    const auto& list = iso[p];
    if (!list.is_array()) throw InputError("model: isotropy of '" + p + "' must be an array");
    std::vector<std::int64_t> factors;
    for (const auto& f : list) {
      if (!f.is_number_integer()) {
        throw InputError("model: cyclic factors of '" + p + "' must be integers");
      }
      const auto v = f.get<std::int64_t>();
      if (v < 2) {
        throw InputError("model: cyclic factor " + std::to_string(v) + " of '" + p +
                         "' is invalid (factors must be >= 2)");
      }
      factors.push_back(v);
    }
    m.isotropy.push_back(std::move(factors));
  }
  m.validate();
  return m;
}

AbelianModel AbelianModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("model: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void AbelianModel::validate() const {
  if (base.empty()) throw InputError("model: base must be nonempty");
  if (isotropy.size() != base.size()) throw InputError("model: isotropy/base size mismatch");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i].empty()) throw InputError("model: empty point name");
    if (!seen.insert(base[i]).second) throw InputError("model: duplicate point '" + base[i] + "'");
    std::uint64_t order = 1;
    for (auto f : isotropy[i]) {
      if (f < 2) throw InputError("model: cyclic factors must be >= 2");
      if (order > kMaxModelOrder / static_cast<std::uint64_t>(f)) {
        throw InputError("model: isotropy group at '" + base[i] + "' exceeds order " +
                         std::to_string(kMaxModelOrder));
      }
      order *= static_cast<std::uint64_t>(f);
    }
  }
}

std::string AbelianModel::to_json() const {
  json doc;
  doc["base"] = base;
  json iso = json::object();
  for (std::size_t i = 0; i < base.size(); ++i) iso[base[i]] = isotropy[i];
  doc["isotropy"] = iso;
  return doc.dump();
}

std::shared_ptr<const AbelianGroupoid> AbelianModel::groupoid() const {
  return std::make_shared<AbelianGroupoid>(base, isotropy);
}

std::uint64_t AbelianModel::total_order() const {
  std::uint64_t total = 0;
  for (const auto& f : isotropy) {
    std::uint64_t o = 1;
    for (auto d : f) o *= static_cast<std::uint64_t>(d);
    total += o;
  }
  return total;
}

std::string AbelianModel::describe() const {
  std::string s;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i) s += ", ";
    s += base[i] + ":[";
    for (std::size_t j = 0; j < isotropy[i].size(); ++j) {
      if (j) s += ',';
      s += std::to_string(isotropy[i][j]);
    }
    s += "]";
  }
  return s;
}

// ---- Boundary ----

Boundary::Boundary() : Boundary(std::vector<AbelianModel>{}) {}

Boundary::Boundary(std::vector<AbelianModel> factors) : factors_(std::move(factors)) {
  std::uint64_t count = 1;
  for (const auto& m : factors_) {
    m.validate();
    count *= m.base.size();
    if (count > 10'000'000) throw LimitError("boundary has too many base tuples");
  }
  std::vector<std::string> labels;
  std::vector<std::vector<std::int64_t>> iso;
  labels.reserve(count);
  iso.reserve(count);
  std::vector<std::size_t> idx(factors_.size(), 0);
  for (std::uint64_t t = 0; t < count; ++t) {
    std::string label = "(";
    std::vector<std::int64_t> f;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) label += ',';
      label += factors_[i].base[idx[i]];
      f.insert(f.end(), factors_[i].isotropy[idx[i]].begin(), factors_[i].isotropy[idx[i]].end());
    }
    labels.push_back(label + ")");
    iso.push_back(std::move(f));
    for (std::size_t i = factors_.size(); i-- > 0;) {
      if (++idx[i] < factors_[i].base.size()) break;
      idx[i] = 0;
    }
  }
  group_ = std::make_shared<AbelianGroupoid>(std::move(labels), std::move(iso));
}

Boundary Boundary::power(const AbelianModel& m, int k) {
  return Boundary(std::vector<AbelianModel>(static_cast<std::size_t>(k), m));
}

std::string Boundary::key() const {
  std::string s = std::to_string(factors_.size());
  for (const auto& m : factors_) s += "|" + m.to_json();
  return s;
}

ObjectId Boundary::object_of(const std::vector<int>& points) const {
  if (points.size() != factors_.size()) throw std::invalid_argument("boundary: tuple width");
  ObjectId x = 0;
  for (std::size_t i = 0; i < points.size(); ++i) x = x * factors_[i].base.size() + points[i];
  return x;
}

std::vector<int> Boundary::points_of(ObjectId x) const {
  std::vector<int> p(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    p[i] = static_cast<int>(x % factors_[i].base.size());
    x /= factors_[i].base.size();
  }
  return p;
}

Boundary operator*(const Boundary& a, const Boundary& b) {
  auto f = a.factors_;
  f.insert(f.end(), b.factors_.begin(), b.factors_.end());
  return Boundary(std::move(f));
}

}  // namespace tqftwb::gpd
