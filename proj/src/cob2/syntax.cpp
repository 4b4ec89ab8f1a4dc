#include <cctype>
#include <string>

#include "tqftwb/cob2.hpp"

namespace tqftwb::cob {

namespace {

void render_into(const Term& t, std::string& out);

void render_operand(const Term& t, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(t, out);
  if (parens) out += ')';
}

// Both operators parse left-associatively, so only the right operand of a
// chain needs parentheses when it has the same operator.
void render_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::generator:
      out += name(t.gen());
      return;
    case Term::Kind::identity:
      out += "id(" + std::to_string(t.width()) + ")";
      return;
    case Term::Kind::compose:
      render_operand(t.outer(), false, out);
      out += " . ";
      render_operand(t.inner(), t.inner().kind() == Term::Kind::compose, out);
      return;
    case Term::Kind::tensor:
      render_operand(t.left(), t.left().kind() == Term::Kind::compose, out);
      out += " * ";
      render_operand(t.right(), t.right().kind() == Term::Kind::compose ||
                                    t.right().kind() == Term::Kind::tensor,
                     out);
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Term run() {
    skip();
    if (pos_ == s_.size()) throw ParseError(pos_, "empty term");
    Term t = term();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, unexpected());
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int depth_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string unexpected() const {
    if (pos_ >= s_.size()) return "unexpected end of input";
    return std::string("unexpected character '") + s_[pos_] + "'";
  }

  Term term() {
    Term t = tensor();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '.') return t;
      const std::size_t at = pos_++;
      Term rhs = tensor();
      try {
        t = Term::compose(t, rhs);
      } catch (const ArityError& e) {
        throw ArityError(std::string(e.what()) + " (at position " + std::to_string(at) + ")");
      }
    }
  }

  Term tensor() {
    Term t = atom();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '*') return t;
      ++pos_;
      t = Term::tensor(t, atom());
    }
  }

  Term atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "expected a term, got end of input");
    const std::size_t start = pos_;
    if (s_[pos_] == '(') {
      if (++depth_ > 10000) throw ParseError(pos_, "nesting too deep");
      ++pos_;
      Term t = term();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      --depth_;
      return t;
    }
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view word = s_.substr(start, pos_ - start);
    if (word.empty()) {
      throw ParseError(start, "expected a term, got '" + std::string(1, s_[start]) + "'");
    }
    if (word == "eta") return Term::generator(Generator::eta);
    if (word == "mu") return Term::generator(Generator::mu);
    if (word == "delta") return Term::generator(Generator::delta);
    if (word == "eps") return Term::generator(Generator::eps);
    if (word == "tau") return Term::generator(Generator::tau);
    if (word == "id") {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '(') throw ParseError(pos_, "expected '(' after id");
      ++pos_;
      skip();
      const std::size_t digits = pos_;
      long long n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        n = n * 10 + (s_[pos_] - '0');
        if (n > 1000000) throw ParseError(digits, "identity width too large");
        ++pos_;
      }
      if (pos_ == digits) throw ParseError(pos_, "expected a natural number");
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError(pos_, "expected ')'");
      ++pos_;
      return Term::identity(static_cast<int>(n));
    }
    throw ParseError(start, "unknown generator '" + std::string(word) + "'");
  }
};

}  // namespace

std::string render(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

Term parse(std::string_view text) { return Parser(text).run(); }

}  // namespace tqftwb::cob
