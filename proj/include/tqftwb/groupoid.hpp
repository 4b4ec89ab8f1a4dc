#pragma once

// Finite groupoids behind a lazy interface. Objects are dense ids
// 0..object_count()-1; arrow ids are opaque and may be sparse.
// compose(g, h) is "g after h" and needs source(g) == target(h).

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tqftwb/common.hpp"
#include "tqftwb/rational.hpp"

namespace tqftwb::gpd {

using ObjectId = std::uint64_t;
using ArrowId = std::uint64_t;

/// Non-owning callable reference; avoids std::function allocations in the
/// enumeration hot paths. The referenced callable must outlive the call.
class ArrowVisitor {
 public:
  template <class F,
            class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, ArrowVisitor>>>
  ArrowVisitor(F&& f)  // NOLINT: implicit by design
      : obj_(const_cast<void*>(static_cast<const void*>(&f))),
        call_([](void* o, ArrowId a) { (*static_cast<std::remove_reference_t<F>*>(o))(a); }) {}

  void operator()(ArrowId a) const { call_(obj_, a); }

 private:
  void* obj_;
  void (*call_)(void*, ArrowId);
};

class Groupoid {
 public:
  virtual ~Groupoid() = default;

  virtual std::uint64_t object_count() const = 0;
  virtual std::string object_label(ObjectId x) const = 0;
  virtual ArrowId identity(ObjectId x) const = 0;
  virtual ObjectId source(ArrowId a) const = 0;
  virtual ObjectId target(ArrowId a) const = 0;
  virtual ArrowId compose(ArrowId g, ArrowId h) const = 0;
  virtual ArrowId inverse(ArrowId a) const = 0;

  /// Arrows with source x are out_arrow(x, 0..out_degree(x)-1).
  virtual std::uint64_t out_degree(ObjectId x) const = 0;
  virtual ArrowId out_arrow(ObjectId x, std::uint64_t k) const = 0;
  /// Position of a among the out-arrows of its source.
  virtual std::uint64_t out_index(ArrowId a) const = 0;

  virtual std::string arrow_label(ArrowId a) const;

  void for_each_out(ObjectId x, ArrowVisitor f) const;
  virtual void for_each_hom(ObjectId x, ObjectId y, ArrowVisitor f) const;
  virtual std::uint64_t hom_size(ObjectId x, ObjectId y) const;
  /// A set of arrows out of x such that, over all objects, these arrows
  /// generate the groupoid. Used for orbit computation.
  virtual void for_each_generator_out(ObjectId x, ArrowVisitor f) const;
  virtual std::uint64_t arrow_count() const;
};

using GroupoidPtr = std::shared_ptr<const Groupoid>;

/// Explicit tables. Arrow ids are dense 0..arrow_count()-1.
class TableGroupoid final : public Groupoid {
 public:
  struct Arrow {
    ObjectId source;
    ObjectId target;
    std::string label;
  };

  /// `compose_table[g * n + h]` for composable (g, h), -1 elsewhere.
  /// Throws InputError if identities or inverses are inconsistent.
  TableGroupoid(std::vector<std::string> objects, std::vector<Arrow> arrows,
                std::vector<ArrowId> identities, std::vector<ArrowId> inverses,
                std::vector<std::int64_t> compose_table);

  std::uint64_t object_count() const override { return objects_.size(); }
  std::string object_label(ObjectId x) const override { return objects_.at(x); }
  ArrowId identity(ObjectId x) const override { return identities_.at(x); }
  ObjectId source(ArrowId a) const override { return arrows_.at(a).source; }
  ObjectId target(ArrowId a) const override { return arrows_.at(a).target; }
  ArrowId compose(ArrowId g, ArrowId h) const override;
  ArrowId inverse(ArrowId a) const override { return inverses_.at(a); }
  std::uint64_t out_degree(ObjectId x) const override { return out_.at(x).size(); }
  ArrowId out_arrow(ObjectId x, std::uint64_t k) const override { return out_.at(x).at(k); }
  std::uint64_t out_index(ArrowId a) const override { return out_pos_.at(a); }
  std::string arrow_label(ArrowId a) const override { return arrows_.at(a).label; }
  std::uint64_t arrow_count() const override { return arrows_.size(); }

 private:
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<ArrowId> identities_;
  std::vector<ArrowId> inverses_;
  std::vector<std::int64_t> table_;
  std::vector<std::vector<ArrowId>> out_;
  std::vector<std::uint64_t> out_pos_;
};

/// Copies any groupoid into tables. A nonzero seed renumbers objects and
/// arrows by random permutations (for relabeling tests). Throws LimitError
/// above `max_arrows` (at most 2048; the composition table is dense).
struct Materialized {
  std::shared_ptr<const TableGroupoid> table;
  std::vector<ObjectId> object_to_table;
  std::unordered_map<ArrowId, ArrowId> arrow_to_table;
  std::vector<ArrowId> table_to_arrow;
};
Materialized materialize(const Groupoid& g, std::uint64_t max_arrows = 2048,
                         std::uint64_t shuffle_seed = 0);

/// Groupoid with source = target and isotropy Z/f1 + ... + Z/fk at each
/// object. The arrow at x with coordinates c has id offset(x) + mixed radix
/// of c (first factor most significant).
class AbelianGroupoid final : public Groupoid {
 public:
  AbelianGroupoid(std::vector<std::string> labels, std::vector<std::vector<std::int64_t>> factors);

  const std::vector<std::int64_t>& factors(ObjectId x) const { return factors_.at(x); }
  std::uint64_t order(ObjectId x) const { return offsets_.at(x + 1) - offsets_.at(x); }
  /// Coordinates are reduced into range.
  ArrowId arrow_at(ObjectId x, std::span<const std::int64_t> coords) const;
  std::vector<std::int64_t> coords(ArrowId a) const;

  std::uint64_t object_count() const override { return labels_.size(); }
  std::string object_label(ObjectId x) const override { return labels_.at(x); }
  ArrowId identity(ObjectId x) const override { return offsets_.at(x); }
  ObjectId source(ArrowId a) const override;
  ObjectId target(ArrowId a) const override { return source(a); }
  ArrowId compose(ArrowId g, ArrowId h) const override;
  ArrowId inverse(ArrowId a) const override;
  std::uint64_t out_degree(ObjectId x) const override { return order(x); }
  ArrowId out_arrow(ObjectId x, std::uint64_t k) const override { return offsets_.at(x) + k; }
  std::uint64_t out_index(ArrowId a) const override { return a - offsets_.at(source(a)); }
  std::string arrow_label(ArrowId a) const override;
  void for_each_hom(ObjectId x, ObjectId y, ArrowVisitor f) const override;
  std::uint64_t hom_size(ObjectId x, ObjectId y) const override { return x == y ? order(x) : 0; }
  void for_each_generator_out(ObjectId x, ArrowVisitor f) const override;
  std::uint64_t arrow_count() const override { return offsets_.back(); }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::int64_t>> factors_;
  std::vector<std::uint64_t> offsets_;
};

/// Product of two abelian groupoids, again abelian. Object (x, y) has id
/// x * |Y| + y and concatenated coordinates.
std::shared_ptr<const AbelianGroupoid> abelian_product(const AbelianGroupoid& a,
                                                       const AbelianGroupoid& b);

/// Lazy cartesian product of arbitrary groupoids. The empty product is the
/// one-object one-arrow groupoid.
class ProductGroupoid final : public Groupoid {
 public:
  explicit ProductGroupoid(std::vector<GroupoidPtr> factors);

  std::size_t factor_count() const { return factors_.size(); }
  const Groupoid& factor(std::size_t i) const { return *factors_.at(i); }
  ObjectId object_of(std::span<const ObjectId> parts) const;
  std::vector<ObjectId> object_parts(ObjectId x) const;
  ArrowId arrow_of(std::span<const ArrowId> parts) const;
  std::vector<ArrowId> arrow_parts(ArrowId a) const;

  std::uint64_t object_count() const override { return object_count_; }
  std::string object_label(ObjectId x) const override;
  ArrowId identity(ObjectId x) const override;
  ObjectId source(ArrowId a) const override { return a / arrow_stride_; }
  ObjectId target(ArrowId a) const override;
  ArrowId compose(ArrowId g, ArrowId h) const override;
  ArrowId inverse(ArrowId a) const override;
  std::uint64_t out_degree(ObjectId x) const override;
  ArrowId out_arrow(ObjectId x, std::uint64_t k) const override;
  std::uint64_t out_index(ArrowId a) const override;
  std::string arrow_label(ArrowId a) const override;
  void for_each_hom(ObjectId x, ObjectId y, ArrowVisitor f) const override;
  std::uint64_t hom_size(ObjectId x, ObjectId y) const override;
  void for_each_generator_out(ObjectId x, ArrowVisitor f) const override;

 private:
  std::vector<GroupoidPtr> factors_;
  std::vector<std::uint64_t> max_degree_;
  std::uint64_t object_count_ = 1;
  std::uint64_t arrow_stride_ = 1;
};

struct GroupoidFunctor {
  GroupoidPtr domain;
  GroupoidPtr codomain;
  std::function<ObjectId(ObjectId)> on_object;
  std::function<ArrowId(ArrowId)> on_arrow;
};

GroupoidFunctor identity_functor(const GroupoidPtr& g);
/// g after f.
GroupoidFunctor compose_functors(const GroupoidFunctor& g, const GroupoidFunctor& f);

/// The same functor with both maps precomputed into arrays. Applies when the
/// domain is abelian with at most `max_arrows` arrows; otherwise returns f.
GroupoidFunctor tabulate(const GroupoidFunctor& f, std::uint64_t max_arrows = 1 << 22);

// ---- orbits, isotropy, invariants ----

struct Orbits {
  std::vector<std::uint64_t> orbit_of;  // per object
  std::vector<ObjectId> representative;  // least object of each orbit, ascending
};

/// Connected components via generator arrows. Throws LimitError above
/// `max_objects`.
Orbits orbits(const Groupoid& g, std::uint64_t max_objects = 50'000'000);

/// Groupoid cardinality: sum over orbits of 1/|isotropy|.
Rational cardinality(const Groupoid& g);

/// Invariant factors d1 | d2 | ... (all > 1) of Z/f1 + ... + Z/fk.
std::vector<std::int64_t> invariant_factors(std::span<const std::int64_t> factors);

/// Isotropy group at x identified with Z/d1 + ... + Z/dk in invariant-factor
/// form. element(i) is the arrow with mixed-radix coordinate index i.
struct IsotropyStructure {
  std::vector<std::int64_t> factors;
  std::vector<ArrowId> elements;
  std::unordered_map<ArrowId, std::uint64_t> index_of;
};

/// Throws UnsupportedError for non-abelian isotropy and LimitError when the
/// group is larger than `bound`.
IsotropyStructure analyze_isotropy(const Groupoid& g, ObjectId x, std::uint64_t bound);

// ---- validity ----

struct Validity {
  bool ok = true;
  bool exhaustive = true;
  std::uint64_t checks = 0;
  std::string failure;
};

inline constexpr std::uint64_t kDefaultCheckBudget = 4'000'000;

/// Category and inverse laws. Exhaustive over composable triples when their
/// number is within `budget`, otherwise a seeded sample of `budget` triples.
Validity check_groupoid(const Groupoid& g, std::uint64_t budget = kDefaultCheckBudget,
                        std::uint64_t seed = 0);

/// Preservation of source, target, identities and composition.
Validity check_functor(const GroupoidFunctor& f, std::uint64_t budget = kDefaultCheckBudget,
                       std::uint64_t seed = 0);

/// Fully faithful and essentially surjective. Uses one representative per
/// orbit: a functor of groupoids is fully faithful iff it is injective on
/// orbits and bijective on the isotropy group of each representative.
bool essential_equivalence_check(const GroupoidFunctor& f);

/// Every arrow leaving F(x) lifts to an arrow leaving x.
bool is_isofibration(const GroupoidFunctor& f);

/// Literal definition: every hom-set between domain objects maps
/// bijectively, every codomain object is connected to the image. Throws
/// LimitError when the domain has more than `max_pairs` object pairs.
bool essential_equivalence_exhaustive(const GroupoidFunctor& f, std::uint64_t max_pairs = 250'000);

}  // namespace tqftwb::gpd
