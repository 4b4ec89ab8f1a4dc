#pragma once

#include <string>
#include <vector>

#include "tqftwb/frobenius.hpp"

namespace tqftwb::testing {

inline gpd::AbelianModel model(std::vector<std::string> base, std::vector<std::vector<std::int64_t>> iso) {
  gpd::AbelianModel m;
  m.base = std::move(base);
  m.isotropy = std::move(iso);
  m.validate();
  return m;
}

inline gpd::AbelianModel cyclic(std::vector<std::int64_t> factors) { return model({"pt"}, {std::move(factors)}); }

/// Base size 1 and 2 over isotropy lists with factors <= 4 and order <= 12.
inline std::vector<gpd::AbelianModel> acceptance_grid() {
  const std::vector<std::vector<std::int64_t>> lists = {{},     {2},    {3},    {4},       {2, 2},   {2, 3},
                                                        {2, 4}, {3, 3}, {3, 4}, {2, 2, 2}, {2, 2, 3}};
  std::vector<gpd::AbelianModel> out;
  for (const auto& l : lists) out.push_back(model({"p"}, {l}));
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (std::size_t j = i; j < lists.size(); ++j) out.push_back(model({"p", "q"}, {lists[i], lists[j]}));
  }
  return out;
}

/// The same span with its apex copied into tables under a random renumbering.
inline gpd::Span relabeled(const gpd::Span& s, std::uint64_t shuffle_seed) {
  auto mat = gpd::materialize(*s.apex, 2048, shuffle_seed);
  std::vector<gpd::ObjectId> table_to_object(mat.object_to_table.size());
  for (std::size_t x = 0; x < mat.object_to_table.size(); ++x) table_to_object[mat.object_to_table[x]] = x;
  auto pull = [&](const gpd::GroupoidFunctor& leg) {
    gpd::GroupoidFunctor f;
    f.domain = mat.table;
    f.codomain = leg.codomain;
    f.on_object = [leg, table_to_object](gpd::ObjectId x) { return leg.on_object(table_to_object.at(x)); };
    f.on_arrow = [leg, back = mat.table_to_arrow](gpd::ArrowId a) { return leg.on_arrow(back.at(a)); };
    return f;
  };
  gpd::Span out = s;
  out.apex = mat.table;
  out.left_leg = pull(s.left_leg);
  out.right_leg = pull(s.right_leg);
  return out;
}

}  // namespace tqftwb::testing
