#pragma once

// Small arithmetic-expression evaluator for user-supplied candidate fields.
// Grammar: + - * / ^ (right-assoc), unary minus, parentheses, numeric
// literals, the variables x0 x1 x2 rho r theta, and one-argument functions
// sin cos tan sinh cosh tanh exp ln log sqrt abs.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "core.hpp"
#include "errors.hpp"

namespace meridian::expr {

namespace expr_detail {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Fn };

// Variable slots, in the order the evaluator fills them.
enum class Var { X0, X1, X2, Rho, R, Theta };

enum class Fn { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Ln, Sqrt, Abs };

struct Node {
    Op op = Op::Const;
    double value = 0.0;  // Const
    Var var = Var::X0;   // Var
    Fn fn = Fn::Sin;     // Fn
    std::vector<Node> kids;
};

inline double apply_fn(Fn f, double a) {
    switch (f) {
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
        case Fn::Tan: return std::tan(a);
        case Fn::Sinh: return std::sinh(a);
        case Fn::Cosh: return std::cosh(a);
        case Fn::Tanh: return std::tanh(a);
        case Fn::Exp: return std::exp(a);
        case Fn::Ln: return std::log(a);
        case Fn::Sqrt: return std::sqrt(a);
        case Fn::Abs: return std::fabs(a);
    }
    return 0.0;
}

inline double eval_node(const Node& n, const double* slots) {
    switch (n.op) {
        case Op::Const: return n.value;
        case Op::Var: return slots[static_cast<int>(n.var)];
        case Op::Add: return eval_node(n.kids[0], slots) + eval_node(n.kids[1], slots);
        case Op::Sub: return eval_node(n.kids[0], slots) - eval_node(n.kids[1], slots);
        case Op::Mul: return eval_node(n.kids[0], slots) * eval_node(n.kids[1], slots);
        case Op::Div: return eval_node(n.kids[0], slots) / eval_node(n.kids[1], slots);
        case Op::Pow: return std::pow(eval_node(n.kids[0], slots), eval_node(n.kids[1], slots));
        case Op::Neg: return -eval_node(n.kids[0], slots);
        case Op::Fn: return apply_fn(n.fn, eval_node(n.kids[0], slots));
    }
    return 0.0;
}

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    Node run() {
        Node root = parse_expr();
        skip_ws();
        if (pos_ != s_.size())
            throw InvalidParams("unexpected trailing input in expression at '" + rest() + "'");
        return root;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    std::string rest() const { return s_.substr(pos_, 12); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Node parse_expr() {
        Node lhs = parse_term();
        for (;;) {
            if (eat('+')) {
                Node n{Op::Add};
                n.kids = {std::move(lhs), parse_term()};
                lhs = std::move(n);
            } else if (eat('-')) {
                Node n{Op::Sub};
                n.kids = {std::move(lhs), parse_term()};
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }

    Node parse_term() {
        Node lhs = parse_unary();
        for (;;) {
            if (eat('*')) {
                Node n{Op::Mul};
                n.kids = {std::move(lhs), parse_unary()};
                lhs = std::move(n);
            } else if (eat('/')) {
                Node n{Op::Div};
                n.kids = {std::move(lhs), parse_unary()};
                lhs = std::move(n);
            } else {
                return lhs;
            }
        }
    }

    Node parse_unary() {
        bool neg = false;
        for (;;) {
            if (eat('+')) continue;
            if (eat('-')) {
                neg = !neg;
                continue;
            }
            break;
        }
        Node n = parse_power();
        if (neg) {
            Node m{Op::Neg};
            m.kids = {std::move(n)};
            return m;
        }
        return n;
    }

    Node parse_power() {
        Node base = parse_atom();
        if (eat('^')) {
            Node n{Op::Pow};
            n.kids = {std::move(base), parse_unary()};  // right-assoc, -1 exponents work
            return n;
        }
        return base;
    }

    Node parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw InvalidParams("expression ends where a value is expected");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Node n = parse_expr();
            if (!eat(')')) throw InvalidParams("missing ')' in expression at '" + rest() + "'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        throw InvalidParams("unexpected character in expression at '" + rest() + "'");
    }

    Node parse_number() {
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s_.substr(pos_), &used);
        } catch (const std::exception&) {
            throw InvalidParams("bad numeric literal in expression at '" + rest() + "'");
        }
        pos_ += used;
        Node n{Op::Const};
        n.value = v;
        return n;
    }

    Node parse_name() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);

        auto var = [](Var v) {
            Node n{Op::Var};
            n.var = v;
            return n;
        };
        if (name == "x0") return var(Var::X0);
        if (name == "x1") return var(Var::X1);
        if (name == "x2") return var(Var::X2);
        if (name == "rho") return var(Var::Rho);
        if (name == "r") return var(Var::R);
        if (name == "theta") return var(Var::Theta);
        if (name == "pi") {
            Node n{Op::Const};
            n.value = M_PI;
            return n;
        }

        Fn f;
        if (name == "sin") f = Fn::Sin;
        else if (name == "cos") f = Fn::Cos;
        else if (name == "tan") f = Fn::Tan;
        else if (name == "sinh") f = Fn::Sinh;
        else if (name == "cosh") f = Fn::Cosh;
        else if (name == "tanh") f = Fn::Tanh;
        else if (name == "exp") f = Fn::Exp;
        else if (name == "ln" || name == "log") f = Fn::Ln;
        else if (name == "sqrt") f = Fn::Sqrt;
        else if (name == "abs") f = Fn::Abs;
        else throw InvalidParams("unknown name '" + name + "' in expression");

        if (!eat('(')) throw InvalidParams("function '" + name + "' needs parentheses");
        Node n{Op::Fn};
        n.fn = f;
        n.kids = {parse_expr()};
        if (!eat(')')) throw InvalidParams("missing ')' after argument of '" + name + "'");
        return n;
    }
};

}  // namespace expr_detail

// A parsed scalar expression over R^3. rho, r and theta are derived from the
// point, so the same text works as a chart expression (x1 = rho, x2 = 0).
class Expression {
  public:
    static Expression parse(const std::string& text) {
        if (text.empty()) throw InvalidParams("empty expression");
        return Expression(expr_detail::Parser(text).run(), text);
    }

    double operator()(const Vec3& p) const {
        const double rho = std::hypot(p[1], p[2]);
        const double slots[6] = {p[0],
                                 p[1],
                                 p[2],
                                 rho,
                                 std::sqrt(p[0] * p[0] + rho * rho),
                                 std::atan2(p[2], p[1])};
        return expr_detail::eval_node(root_, slots);
    }

    // Chart evaluation: x1, x2 and rho all alias the second coordinate, so an
    // expression written in either (x0, x2) or (x0, rho) naming works.
    double operator()(double x0, double second) const {
        const double slots[6] = {x0, second, second, second,
                                 std::sqrt(x0 * x0 + second * second), 0.0};
        return expr_detail::eval_node(root_, slots);
    }

    const std::string& text() const { return text_; }

  private:
    Expression(expr_detail::Node root, std::string text)
        : root_(std::move(root)), text_(std::move(text)) {}

    expr_detail::Node root_;
    std::string text_;
};

}  // namespace meridian::expr
