#include "tqftwb/cob2.hpp"

namespace tqftwb::cob {

std::string_view name(Generator g) {
  switch (g) {
    case Generator::eta: return "eta";
    case Generator::mu: return "mu";
    case Generator::delta: return "delta";
    case Generator::eps: return "eps";
    case Generator::tau: return "tau";
  }
  return "?";
}

Signature signature(Generator g) {
  switch (g) {
    case Generator::eta: return {0, 1};
    case Generator::mu: return {2, 1};
    case Generator::delta: return {1, 2};
    case Generator::eps: return {1, 0};
    case Generator::tau: return {2, 2};
  }
  return {};
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : InputError("syntax error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

struct Term::Node {
  Kind kind = Kind::identity;
  Generator gen = Generator::eta;
  int width = 0;
  std::vector<Term> kids;  // {outer, inner} or {left, right}
  Signature sig;
  std::size_t generators = 0;
};

Term Term::generator(Generator g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::generator;
  n->gen = g;
  n->sig = cob::signature(g);
  n->generators = 1;
  return Term(std::move(n));
}

Term Term::identity(int width) {
  if (width < 0) throw InputError("identity width must be nonnegative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::identity;
  n->width = width;
  n->sig = {width, width};
  return Term(std::move(n));
}

Term Term::compose(const Term& outer, const Term& inner) {
  const Signature so = outer.signature();
  const Signature si = inner.signature();
  if (so.dom != si.cod) {
    throw ArityError("arity mismatch in composition '" + render(outer) + " . " + render(inner) +
                     "': cod(" + render(inner) + ")=" + std::to_string(si.cod) + " but dom(" +
                     render(outer) + ")=" + std::to_string(so.dom));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::compose;
  n->kids = {outer, inner};
  n->sig = {si.dom, so.cod};
  n->generators = outer.generator_count() + inner.generator_count();
  return Term(std::move(n));
}

Term Term::tensor(const Term& left, const Term& right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::tensor;
  n->kids = {left, right};
  const Signature l = left.signature();
  const Signature r = right.signature();
  n->sig = {l.dom + r.dom, l.cod + r.cod};
  n->generators = left.generator_count() + right.generator_count();
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
Generator Term::gen() const { return node_->gen; }
int Term::width() const { return node_->width; }
Signature Term::signature() const { return node_->sig; }
std::size_t Term::generator_count() const { return node_->generators; }

const Term& Term::outer() const { return node_->kids.at(0); }
const Term& Term::inner() const { return node_->kids.at(1); }
const Term& Term::left() const { return node_->kids.at(0); }
const Term& Term::right() const { return node_->kids.at(1); }

bool operator==(const Term& x, const Term& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::generator: return x.gen() == y.gen();
    case Term::Kind::identity: return x.width() == y.width();
    default:
      return x.node_->kids[0] == y.node_->kids[0] && x.node_->kids[1] == y.node_->kids[1];
  }
}

}  // namespace tqftwb::cob
