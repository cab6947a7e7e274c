// Recursive-descent parser for the expression grammar (see README):
//
//   expr    := term { ('+' | '-') term }
//   term    := unary { ('*' | '/') unary }
//   unary   := ('-' | '+') unary | power
//   power   := primary [ '^' intexp ]
//   intexp  := ['-' | '+'] INTEGER | '(' ['-' | '+'] INTEGER ')'
//   primary := NUMBER | 'i' | 'z' | 'zb' | ('exp' | 'log' | 'conj') '(' expr ')' | '(' expr ')'

#include <cctype>
#include <charconv>
#include <climits>
#include <cstdlib>

#include "projlab/expr.hpp"

namespace projlab::expr {

namespace {

const std::vector<std::string> kPrimaryStart = {"number", "i", "z", "zb", "exp", "log", "conj", "(", "-", "+"};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    if (src_.empty()) fail(kPrimaryStart);
    for (std::size_t k = 0; k < src_.size(); ++k)
      if (static_cast<unsigned char>(src_[k]) > 127) throw ParseError(k, {"ASCII character"}, "non-ASCII byte");
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string found() const {
    if (pos_ >= src_.size()) return "end of input";
    return std::string("'") + src_[pos_] + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(pos_, std::move(expected), found());
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string(1, c)});
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = add(lhs, parse_term());
      } else if (accept('-')) {
        lhs = sub(lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = mul(lhs, parse_unary());
      } else if (accept('/')) {
        lhs = div(lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return neg(parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept('^')) return base;
    const bool paren = accept('(');
    int sign = 1;
    if (accept('-')) {
      sign = -1;
    } else {
      accept('+');
    }
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail({"integer exponent"});
    long value = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || value > INT_MAX) {
      pos_ = start;
      fail({"integer exponent within int range"});
    }
    if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E'))
      fail({"integer exponent (fractional powers are not supported)"});
    if (paren) expect(')');
    return pow(base, sign * static_cast<int>(value));
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      const std::size_t digits = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (digits == pos_) {
        pos_ = save;
        fail({"exponent digits"});
      }
    }
    const std::string text(src_.substr(start, pos_ - start));
    if (text == ".") {
      pos_ = start;
      fail(kPrimaryStart);
    }
    return constant(std::strtod(text.c_str(), nullptr));
  }

  Expr parse_call(Expr (*fn)(const Expr&)) {
    expect('(');
    Expr arg = parse_expr();
    expect(')');
    return fn(arg);
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail(kPrimaryStart);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      const std::string_view id = src_.substr(start, pos_ - start);
      if (id == "z") return var_z();
      if (id == "zb") return var_zb();
      if (id == "i") return constant({0.0, 1.0});
      if (id == "exp") return parse_call(&exp);
      if (id == "log") return parse_call(&log);
      if (id == "conj") return parse_call(&conj);
      pos_ = start;
      throw ParseError(start, kPrimaryStart, "identifier '" + std::string(id) + "'");
    }
    fail(kPrimaryStart);
  }
};

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

}  // namespace projlab::expr
