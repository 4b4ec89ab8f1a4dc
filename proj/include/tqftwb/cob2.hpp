#pragma once

// Terms of the 2-dimensional cobordism category and their topological
// normal forms.
//
// Grammar (ASCII):
//   term   := tensor ("." tensor)*
//   tensor := atom ("*" atom)*
//   atom   := "eta" | "mu" | "delta" | "eps" | "tau" | "id(" nat ")" | "(" term ")"
//
// "a . b" means b first, then a. "*" is the monoidal product and binds
// tighter than ".".

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tqftwb/common.hpp"

namespace tqftwb::cob {

enum class Generator { eta, mu, delta, eps, tau };

std::string_view name(Generator g);

struct Signature {
  int dom = 0;  // input circles
  int cod = 0;  // output circles
  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature(Generator g);

/// Raised for text that does not match the grammar. `position` is the
/// 0-based byte offset of the offending token.
class ParseError : public InputError {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Raised when a composition joins terms whose circle counts disagree.
class ArityError : public InputError {
 public:
  using InputError::InputError;
};

/// Immutable term tree. Copies share structure.
class Term {
 public:
  enum class Kind { generator, identity, compose, tensor };

  static Term generator(Generator g);
  static Term identity(int n);
  /// outer after inner; throws ArityError unless dom(outer) == cod(inner).
  static Term compose(const Term& outer, const Term& inner);
  static Term tensor(const Term& left, const Term& right);

  Kind kind() const;
  Generator gen() const;      // kind() == generator
  int width() const;          // kind() == identity
  const Term& outer() const;  // kind() == compose
  const Term& inner() const;
  const Term& left() const;   // kind() == tensor
  const Term& right() const;

  Signature signature() const;
  /// Number of generator occurrences.
  std::size_t generator_count() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Renders with the minimum parentheses needed for parse(render(t)) == t.
std::string render(const Term& t);

Term parse(std::string_view text);

/// One connected surface. Circle indices are 1-based.
struct SurfaceComponent {
  std::vector<int> in;
  std::vector<int> out;
  int genus = 0;
  friend bool operator==(const SurfaceComponent&, const SurfaceComponent&) = default;
};

/// Canonical topological form of a cobordism: boundary partition plus genus
/// per component. Components with inputs come first (by least input circle),
/// then output-only components (by least output circle), then closed
/// components by genus.
struct SurfaceNormalForm {
  int m = 0;
  int n = 0;
  std::vector<SurfaceComponent> components;

  std::string serialize() const;
  friend bool operator==(const SurfaceNormalForm& a, const SurfaceNormalForm& b) {
    return a.serialize() == b.serialize();
  }
  /// Single component of genus 0 touching every boundary circle.
  bool is_connected_genus0() const;
};

SurfaceNormalForm normalize(const Term& t);

/// Normal form with canonical ordering applied; throws InputError when the
/// in/out sets do not partition the boundary or a genus is negative.
SurfaceNormalForm make_normal_form(int m, int n, std::vector<SurfaceComponent> components);

struct BoundaryHint {
  std::optional<int> dom;
  std::optional<int> cod;
};

/// Random well-formed term with about `size` generator occurrences,
/// deterministic in `seed`. Width is kept at four circles or fewer apart from
/// what the hint forces.
Term random_term(std::uint64_t seed, int size, BoundaryHint hint = {});

/// Random term whose normal form is exactly `nf`. Independent draws give
/// structurally different terms for the same surface, which is how the
/// relation-equivalence tests get their pairs.
Term realize(const SurfaceNormalForm& nf, Rng& rng);

/// Random normal form with the given boundary sizes.
SurfaceNormalForm random_normal_form(int m, int n, int max_genus, Rng& rng);

/// A pair of terms that the relations identify.
struct RelationInstance {
  std::string name;
  std::string lhs;
  std::string rhs;
};

/// Unit, counit, commutativity, cocommutativity, the two Frobenius laws,
/// associativity and coassociativity, then identity laws for every
/// generator and tau . tau = id(2).
const std::vector<RelationInstance>& relation_instances();

/// Adjacent-transposition network sending input circle i to output circle
/// perm[i] (0-based).
Term permutation_term(const std::vector<int>& perm);

}  // namespace tqftwb::cob
