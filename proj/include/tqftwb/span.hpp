#pragma once

// Abelian models, boundary products, spans and their composition.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tqftwb/groupoid.hpp"

namespace tqftwb::gpd {

/// Finite abelian groupoid given by cyclic factors per base point.
struct AbelianModel {
  std::vector<std::string> base;
  std::vector<std::vector<std::int64_t>> isotropy;  // parallel to base

  /// {"base": [...], "isotropy": {"p": [2, 3], ...}}. Throws InputError.
  static AbelianModel from_json(const std::string& text);
  static AbelianModel load(const std::string& path);
  std::string to_json() const;
  /// Throws InputError when a factor is < 2, base is empty, labels repeat,
  /// or some point's group exceeds kMaxModelOrder.
  void validate() const;

  std::shared_ptr<const AbelianGroupoid> groupoid() const;
  /// Sum over base points of the isotropy order.
  std::uint64_t total_order() const;
  std::string describe() const;

  friend bool operator==(const AbelianModel&, const AbelianModel&) = default;
};

inline constexpr std::uint64_t kMaxModelOrder = 4096;

/// Product of abelian models, realized as one abelian groupoid. Tuples are
/// numbered in mixed radix with the first factor most significant; the
/// empty product is the point.
class Boundary {
 public:
  Boundary();
  explicit Boundary(std::vector<AbelianModel> factors);
  static Boundary power(const AbelianModel& m, int k);

  int width() const { return static_cast<int>(factors_.size()); }
  const std::vector<AbelianModel>& factors() const { return factors_; }
  const std::shared_ptr<const AbelianGroupoid>& group() const { return group_; }
  std::string key() const;

  ObjectId object_of(const std::vector<int>& points) const;
  std::vector<int> points_of(ObjectId x) const;

  friend Boundary operator*(const Boundary& a, const Boundary& b);
  friend bool operator==(const Boundary& a, const Boundary& b) { return a.key() == b.key(); }

 private:
  std::vector<AbelianModel> factors_;
  std::shared_ptr<const AbelianGroupoid> group_;
};

struct Span {
  GroupoidPtr apex;
  Boundary left;
  Boundary right;
  GroupoidFunctor left_leg;   // apex -> left.group()
  GroupoidFunctor right_leg;  // apex -> right.group()
};

/// Span with apex B and identity legs.
Span identity_span(const Boundary& b);
/// The unit span: point <- point -> point.
Span unit_span();

/// Cartesian product of spans. Abelian apexes stay abelian.
Span product(const Span& a, const Span& b);
Span product(const std::vector<Span>& spans);
GroupoidPtr product(const std::vector<GroupoidPtr>& groupoids);

/// Objects (x1, g, x2) with g: F1(x1) -> F2(x2) in the middle boundary;
/// arrows (l1, l2): (x1, g, x2) -> (y1, h, y2) with h F1(l1) = F2(l2) g.
/// The arrow from (x1, g, x2) with out-indices k1, k2 has id
/// src * (D1 * D2) + k1 * D2 + k2, D the maximal out-degrees.
class HomotopyFibreProduct final : public Groupoid {
 public:
  HomotopyFibreProduct(GroupoidFunctor f1, GroupoidFunctor f2);

  const GroupoidFunctor& first() const { return f1_; }
  const GroupoidFunctor& second() const { return f2_; }

  struct Parts {
    ObjectId x1;
    ArrowId g;
    ObjectId x2;
  };
  Parts object_parts(ObjectId x) const;
  std::optional<ObjectId> object_of(ObjectId x1, ArrowId g, ObjectId x2) const;
  std::pair<ArrowId, ArrowId> arrow_parts(ArrowId a) const;
  /// Arrow (l1, l2) leaving `src`.
  ArrowId arrow_of(ObjectId src, ArrowId l1, ArrowId l2) const;

  std::uint64_t object_count() const override { return object_count_; }
  std::string object_label(ObjectId x) const override;
  ArrowId identity(ObjectId x) const override;
  ObjectId source(ArrowId a) const override { return a / stride_; }
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
  // All objects (x1, g, x2) for one pair (x1, x2); g runs over the sorted
  // hom-set homs_[first .. first + size).
  struct Block {
    ObjectId x1;
    ObjectId x2;
    std::uint64_t first;
    std::uint64_t size;
  };
  const Block& block_of(ObjectId x) const;

  GroupoidFunctor f1_;
  GroupoidFunctor f2_;
  std::vector<Block> blocks_;
  std::unordered_map<std::uint64_t, std::size_t> block_index_;  // x1 * |G2| + x2
  std::vector<ArrowId> homs_;
  std::uint64_t object_count_ = 0;
  std::uint64_t d1_ = 1, d2_ = 1, stride_ = 1;
};

/// Plain fibre product: objects (x1, x2) with F1(x1) = F2(x2), arrows
/// (l1, l2) with F1(l1) = F2(l2).
class StrongFibreProduct final : public Groupoid {
 public:
  StrongFibreProduct(GroupoidFunctor f1, GroupoidFunctor f2);

  const GroupoidFunctor& first() const { return f1_; }
  const GroupoidFunctor& second() const { return f2_; }

  std::pair<ObjectId, ObjectId> object_parts(ObjectId x) const { return objects_.at(x); }
  std::optional<ObjectId> object_of(ObjectId x1, ObjectId x2) const;
  std::pair<ArrowId, ArrowId> arrow_parts(ArrowId a) const;
  std::optional<ArrowId> arrow_of(ArrowId l1, ArrowId l2) const;

  std::uint64_t object_count() const override { return objects_.size(); }
  std::string object_label(ObjectId x) const override;
  ArrowId identity(ObjectId x) const override;
  ObjectId source(ArrowId a) const override { return a / stride_; }
  ObjectId target(ArrowId a) const override;
  ArrowId compose(ArrowId g, ArrowId h) const override;
  ArrowId inverse(ArrowId a) const override;
  std::uint64_t out_degree(ObjectId x) const override { return out_.at(x).size(); }
  ArrowId out_arrow(ObjectId x, std::uint64_t k) const override { return x * stride_ + k; }
  std::uint64_t out_index(ArrowId a) const override { return a % stride_; }
  std::string arrow_label(ArrowId a) const override;

 private:
  GroupoidFunctor f1_;
  GroupoidFunctor f2_;
  std::vector<std::pair<ObjectId, ObjectId>> objects_;
  std::unordered_map<std::uint64_t, ObjectId> object_index_;
  std::vector<std::vector<std::pair<ArrowId, ArrowId>>> out_;
  // per object: k1 * d2_ + k2 (out-indices in G1, G2) -> out-index here
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> out_lookup_;
  std::uint64_t d2_ = 1;
  std::uint64_t stride_ = 1;
};

enum class CompositionMode { homotopy, strong };

/// S2 after S1 (S1's right boundary must equal S2's left boundary).
Span compose_spans(const Span& s1, const Span& s2, CompositionMode mode);

/// psi: strong -> homotopy composite of the same pair, (x1, x2) maps to
/// (x1, id, x2) and (l1, l2) to itself. Throws InputError when the spans
/// are not composable or the composites were built from another pair.
GroupoidFunctor comparison_functor(const Span& strong, const Span& homotopy);

/// Checks F(legs of target) == legs of source on all arrows within the
/// budget (sampled beyond it).
Validity check_leg_compatibility(const GroupoidFunctor& f, const Span& from, const Span& to,
                                 std::uint64_t budget = kDefaultCheckBudget,
                                 std::uint64_t seed = 0);

/// Equivalent span with one object per orbit and isotropy in invariant
/// factor form. Spans whose apex is already abelian are returned as is.
struct Skeleton {
  Span span;
  GroupoidFunctor inclusion;  // skeleton apex -> original apex
};
Skeleton skeletonize(const Span& s, std::uint64_t isotropy_bound = 1 << 16);

inline constexpr std::uint64_t kFingerprintBound = 1 << 16;

struct SpanFingerprint {
  std::vector<std::string> records;  // sorted, with multiplicity prefix
  std::string serialize() const;
  std::string digest() const;
  friend bool operator==(const SpanFingerprint& a, const SpanFingerprint& b) {
    return a.records == b.records;
  }
};

/// Orbit records (boundary base tuples, invariant factors, leg profile)
/// where the profile counts isotropy elements h with k*h = 0 and a given
/// leg image, for every k dividing the exponent.
SpanFingerprint fingerprint(const Span& s, Execution exec = Execution::parallel,
                            std::uint64_t bound = kFingerprintBound);

}  // namespace tqftwb::gpd
