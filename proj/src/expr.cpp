#include "horolab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace horolab {

struct Expr::Node {
    enum class Kind { Constant, Variable, Neg, Add, Sub, Mul, Div, Sin, Cos, Tanh, Exp };
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x) const {
        switch (kind) {
            case Kind::Constant: return value;
            case Kind::Variable: return x;
            case Kind::Neg: return -lhs->eval(x);
            case Kind::Add: return lhs->eval(x) + rhs->eval(x);
            case Kind::Sub: return lhs->eval(x) - rhs->eval(x);
            case Kind::Mul: return lhs->eval(x) * rhs->eval(x);
            case Kind::Div: return lhs->eval(x) / rhs->eval(x);
            case Kind::Sin: return std::sin(lhs->eval(x));
            case Kind::Cos: return std::cos(lhs->eval(x));
            case Kind::Tanh: return std::tanh(lhs->eval(x));
            case Kind::Exp: return std::exp(lhs->eval(x));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

NodePtr make_const(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::Constant;
    n->value = v;
    return n;
}

class Parser {
  public:
    Parser(const std::string& text, const std::string& variable)
        : s_(text), var_(variable) {}

    NodePtr run() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

  private:
    const std::string& s_;
    const std::string& var_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ExprError("expression error at offset " + std::to_string(pos_) + ": " + what +
                        " in \"" + s_ + "\"");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr e = term();
        for (;;) {
            if (accept('+')) e = make(Kind::Add, e, term());
            else if (accept('-')) e = make(Kind::Sub, e, term());
            else return e;
        }
    }

    NodePtr term() {
        NodePtr e = unary();
        for (;;) {
            if (accept('*')) e = make(Kind::Mul, e, unary());
            else if (accept('/')) e = make(Kind::Div, e, unary());
            else return e;
        }
    }

    NodePtr unary() {
        if (accept('-')) return make(Kind::Neg, unary());
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (accept('(')) {
            NodePtr e = expr();
            expect(')');
            return e;
        }
        fail("unexpected character");
    }

    NodePtr number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos_ += static_cast<size_t>(end - begin);
        return make_const(v);
    }

    NodePtr identifier() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name == var_) return make(Kind::Variable);
        if (name == "pi") return make_const(std::acos(-1.0));
        Kind k;
        if (name == "sin") k = Kind::Sin;
        else if (name == "cos") k = Kind::Cos;
        else if (name == "tanh") k = Kind::Tanh;
        else if (name == "exp") k = Kind::Exp;
        else fail("unknown identifier '" + name + "'");
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make(k, arg);
    }
};

}  // namespace

Expr Expr::parse(const std::string& text, const std::string& variable) {
    Expr e;
    e.root_ = Parser(text, variable).run();
    e.text_ = text;
    return e;
}

double Expr::operator()(double x) const { return root_->eval(x); }

}  // namespace horolab
