#pragma once

// Small arithmetic expression evaluator for state-dependent bound shapes.
// Grammar: + - * / ^, unary minus, parentheses, numeric literals,
// variables rho1..rhoN, functions sin cos tanh abs sqrt exp.

#include <memory>
#include <span>
#include <string>
#include <string_view>

namespace sfctl {

class Expr {
 public:
  Expr();  // constant 1
  ~Expr();
  Expr(Expr&&) noexcept;
  Expr& operator=(Expr&&) noexcept;
  Expr(const Expr&);
  Expr& operator=(const Expr&);

  // Throws std::invalid_argument on syntax errors or variables beyond nvars.
  static Expr parse(std::string_view text, int nvars);

  double eval(std::span<const double> vars) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::unique_ptr<Node> root_;
  std::string text_;
};

}  // namespace sfctl
