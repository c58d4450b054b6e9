#include "adjtower/parser.hpp"

#include <cctype>

#include "adjtower/errors.hpp"

namespace adjtower {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  DiffOperator parse() {
    DiffOperator v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("parse error at position " + std::to_string(pos_) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_pow() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') return true;
    return pos_ + 1 < s_.size() && s_[pos_] == '*' && s_[pos_ + 1] == '*';
  }

  DiffOperator expr() {
    DiffOperator v;
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    v = term();
    if (neg) v = -v;
    while (true) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        break;
    }
    return v;
  }

  DiffOperator term() {
    DiffOperator v = unary();
    while (true) {
      skip();
      if (pos_ + 1 < s_.size() && s_[pos_] == '*' && s_[pos_ + 1] == '*') break;
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        DiffOperator d = unary();
        if (d.is_zero()) fail("division by zero");
        if (d.order() != 0) fail("division by an operator of positive order");
        RatFunc inv = d.coeff(0).inverse();
        if (v.order() <= 0)
          v = v.left_mul(inv);
        else
          v = v * DiffOperator(inv);
      } else {
        break;
      }
    }
    return v;
  }

  DiffOperator unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  long exponent() {
    skip();
    bool paren = eat('(');
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    long e = std::stol(s_.substr(start, pos_ - start));
    if (paren && !eat(')')) fail("expected ')'");
    return neg ? -e : e;
  }

  DiffOperator power() {
    DiffOperator base = atom();
    if (peek_pow()) {
      if (s_[pos_] == '^')
        ++pos_;
      else
        pos_ += 2;
      long e = exponent();
      if (e < 0) {
        if (base.order() != 0) fail("negative power of an operator");
        return DiffOperator(base.coeff(0).pow(static_cast<int>(e)));
      }
      if (base.order() <= 0) return DiffOperator(base.coeff(0).pow(static_cast<int>(e)));
      DiffOperator r(1);
      for (long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  DiffOperator atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      DiffOperator v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return DiffOperator(RatFunc(Rational(Integer(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "x") return DiffOperator(RatFunc::x());
      if (id == "Dx" || id == "D") return DiffOperator::D(1);
      if (id == "theta") return DiffOperator::theta();
      pos_ = start;
      fail("unknown symbol '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

DiffOperator parse_operator(const std::string& text) { return Parser(text).parse(); }

RatFunc parse_ratfunc(const std::string& text) {
  DiffOperator v = parse_operator(text);
  if (v.order() > 0) throw ParseError("expected a rational function, got an operator of order " + std::to_string(v.order()));
  return v.coeff(0);
}

Poly parse_poly(const std::string& text) {
  RatFunc f = parse_ratfunc(text);
  if (!f.is_poly()) throw ParseError("expected a polynomial");
  return f.num();
}

}  // namespace adjtower
