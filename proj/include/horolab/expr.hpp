#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace horolab {

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A compiled scalar expression in one variable.
///
/// Grammar (the config mini-grammar):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | primary
///   primary := number | variable | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | tanh | exp
/// Numbers are ordinary decimal literals (1, 0.5, 2e-3). The variable name is
/// declared at parse time ("t" for curvature profiles, "r" for surfaces,
/// "phi" for boundary functions).
class Expr {
  public:
    static Expr parse(const std::string& text, const std::string& variable);

    double operator()(double x) const;
    const std::string& text() const { return text_; }

    struct Node;

  private:
    Expr() = default;
    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace horolab
