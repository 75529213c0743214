#include "repring/exprparse.hpp"

#include <cctype>

namespace repring {

namespace {

class Parser {
 public:
  Parser(const std::string& src, const RingSpec& ring)
      : src_(src), ring_(ring) {}

  Element parse() {
    Element e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw RingError(Err::SyntaxError, "syntax error at position " +
                                          std::to_string(pos_) + ": " + why);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Element expr() {
    Element acc = term();
    for (;;) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Element term() {
    Element acc = factor();
    while (eat('*')) acc = multiply(acc, factor(), ring_);
    return acc;
  }

  Element factor() {
    Element base = atom();
    for (;;) {
      if (eat('^')) {
        unsigned long n = read_uint();
        base = power(base, static_cast<unsigned>(n), ring_);
      } else if (eat('~')) {
        base = star(base, ring_);
      } else {
        return base;
      }
    }
  }

  unsigned long read_uint() {
    skip_ws();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail("expected a non-negative integer exponent");
    unsigned long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      v = v * 10 + static_cast<unsigned long>(src_[pos_++] - '0');
    return v;
  }

  Element atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Element e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      // integer literal acts as int * identity
      std::string digits;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        digits += src_[pos_++];
      Int v(digits);
      Element e = Element::basis(ring_.identity());
      return Rational(v) * e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string label;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        label += src_[pos_++];
      return Element::basis(ring_.id_of(label));
    }
    fail("expected an integer, label or '('");
  }

  const std::string& src_;
  const RingSpec& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const std::string& src, const RingSpec& ring) {
  return Parser(src, ring).parse();
}

}  // namespace repring
