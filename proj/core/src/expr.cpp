#include "sfctl/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace sfctl {

struct Expr::Node {
  enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Fn } kind = Num;
  double value = 0.0;
  int var = 0;
  double (*fn)(double) = nullptr;
  std::unique_ptr<Node> a, b;

  std::unique_ptr<Node> clone() const {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->value = value;
    n->var = var;
    n->fn = fn;
    if (a) n->a = a->clone();
    if (b) n->b = b->clone();
    return n;
  }

  double eval(std::span<const double> v) const {
    switch (kind) {
      case Num: return value;
      case Var: return v[static_cast<size_t>(var)];
      case Neg: return -a->eval(v);
      case Add: return a->eval(v) + b->eval(v);
      case Sub: return a->eval(v) - b->eval(v);
      case Mul: return a->eval(v) * b->eval(v);
      case Div: return a->eval(v) / b->eval(v);
      case Pow: return std::pow(a->eval(v), b->eval(v));
      case Fn: return fn(a->eval(v));
    }
    return 0.0;
  }
};

namespace {

struct Parser {
  std::string_view s;
  size_t pos = 0;
  int nvars;

  using NodePtr = std::unique_ptr<Expr::Node>;

  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("expression error at offset " +
                                std::to_string(pos) + ": " + msg);
  }

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }

  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  NodePtr make(Expr::Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_unique<Expr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (eat('+')) lhs = make(Expr::Node::Add, std::move(lhs), term());
      else if (eat('-')) lhs = make(Expr::Node::Sub, std::move(lhs), term());
      else return lhs;
    }
  }

  NodePtr term() {
    auto lhs = factor();
    for (;;) {
      if (eat('*')) lhs = make(Expr::Node::Mul, std::move(lhs), factor());
      else if (eat('/')) lhs = make(Expr::Node::Div, std::move(lhs), factor());
      else return lhs;
    }
  }

  NodePtr factor() {
    if (eat('-')) return make(Expr::Node::Neg, factor());
    if (eat('+')) return factor();
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (eat('^')) return make(Expr::Node::Pow, std::move(base), factor());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      auto inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = s.data() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos += static_cast<size_t>(end - begin);
    auto n = make(Expr::Node::Num);
    n->value = v;
    return n;
  }

  NodePtr ident() {
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string_view name = s.substr(start, pos - start);
    if (name.starts_with("rho")) {
      int idx = 0;
      for (char d : name.substr(3)) {
        if (!std::isdigit(static_cast<unsigned char>(d))) fail("bad variable name");
        idx = idx * 10 + (d - '0');
      }
      if (idx < 1 || idx > nvars)
        fail("variable " + std::string(name) + " out of range (have rho1..rho" +
             std::to_string(nvars) + ")");
      auto n = make(Expr::Node::Var);
      n->var = idx - 1;
      return n;
    }
    double (*fn)(double) = nullptr;
    if (name == "sin") fn = [](double x) { return std::sin(x); };
    else if (name == "cos") fn = [](double x) { return std::cos(x); };
    else if (name == "tanh") fn = [](double x) { return std::tanh(x); };
    else if (name == "abs") fn = [](double x) { return std::abs(x); };
    else if (name == "sqrt") fn = [](double x) { return std::sqrt(x); };
    else if (name == "exp") fn = [](double x) { return std::exp(x); };
    else fail("unknown identifier '" + std::string(name) + "'");
    if (!eat('(')) fail("expected '(' after function name");
    auto arg = expr();
    if (!eat(')')) fail("expected ')'");
    auto n = make(Expr::Node::Fn, std::move(arg));
    n->fn = fn;
    return n;
  }
};

}  // namespace

Expr::Expr() {
  root_ = std::make_unique<Node>();
  root_->kind = Node::Num;
  root_->value = 1.0;
  text_ = "1";
}

Expr::~Expr() = default;
Expr::Expr(Expr&&) noexcept = default;
Expr& Expr::operator=(Expr&&) noexcept = default;

Expr::Expr(const Expr& o) : root_(o.root_->clone()), text_(o.text_) {}

Expr& Expr::operator=(const Expr& o) {
  if (this != &o) {
    root_ = o.root_->clone();
    text_ = o.text_;
  }
  return *this;
}

Expr Expr::parse(std::string_view text, int nvars) {
  Parser p{text, 0, nvars};
  Expr e;
  e.root_ = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  e.text_ = std::string(text);
  return e;
}

double Expr::eval(std::span<const double> vars) const {
  return root_->eval(vars);
}

}  // namespace sfctl
