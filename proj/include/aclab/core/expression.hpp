#pragma once

// Closed-form expressions in z1..zn with exact second-order differentiation.
//
// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' ['-'] integer)?
//   primary := number ['i'] | 'i' | 'pi' | 'z'k | func '(' expr ')' | '(' expr ')'
//   func    := conj | re | im | abs | log | sqrt | exp
// log/sqrt use the principal branch; derivatives of abs and log are refused at 0.

#include <cctype>
#include <memory>
#include <string>
#include <string_view>

#include "aclab/core/error.hpp"
#include "aclab/core/types.hpp"
#include "aclab/core/wirtinger.hpp"

namespace aclab {

/// Value, gradient and Hessian in the 2n real coordinates (x1, y1, ...).
struct Jet2 {
    cplx v{};
    CVec g;
    CMat H;
};

namespace jet {

inline Jet2 constant(cplx c, Eigen::Index m) { return {c, CVec::Zero(m), CMat::Zero(m, m)}; }

inline Jet2 variable(const CVec& z, int j) {
    const Eigen::Index m = 2 * z.size();
    Jet2 r = constant(z(j), m);
    r.g(2 * j) = 1.0;
    r.g(2 * j + 1) = kI;
    return r;
}

inline Jet2 add(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.g + b.g, a.H + b.H}; }
inline Jet2 sub(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.g - b.g, a.H - b.H}; }
inline Jet2 neg(const Jet2& a) { return {-a.v, -a.g, -a.H}; }
inline Jet2 conj(const Jet2& a) { return {std::conj(a.v), a.g.conjugate(), a.H.conjugate()}; }

inline Jet2 mul(const Jet2& a, const Jet2& b) {
    CMat cross = a.g * b.g.transpose();
    return {a.v * b.v, a.v * b.g + b.v * a.g, a.v * b.H + b.v * a.H + cross + cross.transpose()};
}

// Composition with a holomorphic function f with f(a) = f0, f'(a) = f1, f''(a) = f2.
inline Jet2 holo(const Jet2& a, cplx f0, cplx f1, cplx f2) {
    return {f0, f1 * a.g, f1 * a.H + f2 * (a.g * a.g.transpose())};
}

inline Jet2 inv(const Jet2& a) {
    if (a.v == cplx(0)) fail(ErrorCode::singular_locus, "division by zero in expression");
    const cplx r = 1.0 / a.v;
    return holo(a, r, -r * r, 2.0 * r * r * r);
}

inline Jet2 div(const Jet2& a, const Jet2& b) { return mul(a, inv(b)); }

inline Jet2 powi(const Jet2& a, int k) {
    if (k == 0) return constant(1.0, a.g.size());
    if (k < 0) return inv(powi(a, -k));
    const cplx v = a.v;
    const cplx f0 = std::pow(v, k);
    const cplx f1 = double(k) * (k >= 1 ? std::pow(v, k - 1) : cplx(0));
    const cplx f2 = double(k) * (k - 1) * (k >= 2 ? std::pow(v, k - 2) : cplx(0));
    return holo(a, f0, f1, f2);
}

inline Jet2 exp(const Jet2& a) {
    const cplx e = std::exp(a.v);
    return holo(a, e, e, e);
}

inline Jet2 log(const Jet2& a) {
    if (a.v == cplx(0)) fail(ErrorCode::singular_locus, "log of zero in expression");
    const cplx r = 1.0 / a.v;
    return holo(a, std::log(a.v), r, -r * r);
}

inline Jet2 sqrt(const Jet2& a) {
    if (a.v == cplx(0)) fail(ErrorCode::singular_locus, "sqrt is not differentiable at zero");
    const cplx s = std::sqrt(a.v);
    return holo(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet2 re(const Jet2& a) { return {a.v.real(), 0.5 * (a.g + a.g.conjugate()), 0.5 * (a.H + a.H.conjugate())}; }

inline Jet2 im(const Jet2& a) {
    return {a.v.imag(), -0.5 * kI * (a.g - a.g.conjugate()), -0.5 * kI * (a.H - a.H.conjugate())};
}

inline Jet2 abs(const Jet2& a) {
    const Jet2 s = re(mul(a, conj(a)));
    return sqrt(s);
}

}  // namespace jet

namespace detail {

// Scalar operations used by the evaluator, overloaded for cplx and Jet2.
inline cplx op_add(cplx a, cplx b) { return a + b; }
inline cplx op_sub(cplx a, cplx b) { return a - b; }
inline cplx op_mul(cplx a, cplx b) { return a * b; }
inline cplx op_div(cplx a, cplx b) { return a / b; }
inline cplx op_neg(cplx a) { return -a; }
inline cplx op_powi(cplx a, int k) { return k >= 0 ? std::pow(a, k) : 1.0 / std::pow(a, -k); }
inline cplx op_conj(cplx a) { return std::conj(a); }
inline cplx op_re(cplx a) { return a.real(); }
inline cplx op_im(cplx a) { return a.imag(); }
inline cplx op_abs(cplx a) { return std::abs(a); }
inline cplx op_log(cplx a) { return std::log(a); }
inline cplx op_sqrt(cplx a) { return std::sqrt(a); }
inline cplx op_exp(cplx a) { return std::exp(a); }

inline Jet2 op_add(const Jet2& a, const Jet2& b) { return jet::add(a, b); }
inline Jet2 op_sub(const Jet2& a, const Jet2& b) { return jet::sub(a, b); }
inline Jet2 op_mul(const Jet2& a, const Jet2& b) { return jet::mul(a, b); }
inline Jet2 op_div(const Jet2& a, const Jet2& b) { return jet::div(a, b); }
inline Jet2 op_neg(const Jet2& a) { return jet::neg(a); }
inline Jet2 op_powi(const Jet2& a, int k) { return jet::powi(a, k); }
inline Jet2 op_conj(const Jet2& a) { return jet::conj(a); }
inline Jet2 op_re(const Jet2& a) { return jet::re(a); }
inline Jet2 op_im(const Jet2& a) { return jet::im(a); }
inline Jet2 op_abs(const Jet2& a) { return jet::abs(a); }
inline Jet2 op_log(const Jet2& a) { return jet::log(a); }
inline Jet2 op_sqrt(const Jet2& a) { return jet::sqrt(a); }
inline Jet2 op_exp(const Jet2& a) { return jet::exp(a); }

}  // namespace detail

class Expression {
public:
    enum class Op { constant, variable, add, sub, mul, div, neg, powi, conj, re, im, abs, log, sqrt, exp };

    struct Node {
        Op op = Op::constant;
        cplx value{};
        int index = 0;
        std::shared_ptr<const Node> a, b;
    };

    Expression() = default;

    static Expression parse(std::string_view text, int dimension) {
        Parser p{text, dimension, 0};
        Expression e;
        e.root_ = p.expr();
        p.skip();
        if (p.pos != text.size()) p.error("unexpected character");
        e.text_ = std::string(text);
        e.dimension_ = dimension;
        return e;
    }

    static Expression constant(cplx c, int dimension) {
        Expression e;
        auto n = std::make_shared<Node>();
        n->value = c;
        e.root_ = n;
        e.dimension_ = dimension;
        e.text_ = "const";
        return e;
    }

    int dimension() const { return dimension_; }
    const std::string& text() const { return text_; }
    bool empty() const { return !root_; }

    /// True when the expression is the literal constant 0.
    bool is_zero() const { return !root_ || (root_->op == Op::constant && root_->value == cplx(0)); }

    cplx operator()(const CVec& z) const {
        if (!root_) return 0.0;
        return eval<cplx>(*root_, [&](int j) { return z(j); }, [](cplx c) { return c; });
    }

    Jet2 jet2(const CVec& z) const {
        const Eigen::Index m = 2 * z.size();
        if (!root_) return jet::constant(0.0, m);
        return eval<Jet2>(
            *root_, [&](int j) { return jet::variable(z, j); }, [m](cplx c) { return jet::constant(c, m); });
    }

    /// Wirtinger derivatives of the expression (treated as complex-valued) at z.
    WirtingerJet wirtinger(const CVec& z) const {
        const Jet2 j = jet2(z);
        return wirtinger_from_real(j.v, j.g, j.H);
    }

private:
    template <class T, class Var, class Const>
    static T eval(const Node& n, const Var& var, const Const& cst) {
        using namespace detail;
        switch (n.op) {
            case Op::constant: return cst(n.value);
            case Op::variable: return var(n.index);
            case Op::add: return op_add(eval<T>(*n.a, var, cst), eval<T>(*n.b, var, cst));
            case Op::sub: return op_sub(eval<T>(*n.a, var, cst), eval<T>(*n.b, var, cst));
            case Op::mul: return op_mul(eval<T>(*n.a, var, cst), eval<T>(*n.b, var, cst));
            case Op::div: return op_div(eval<T>(*n.a, var, cst), eval<T>(*n.b, var, cst));
            case Op::neg: return op_neg(eval<T>(*n.a, var, cst));
            case Op::powi: return op_powi(eval<T>(*n.a, var, cst), n.index);
            case Op::conj: return op_conj(eval<T>(*n.a, var, cst));
            case Op::re: return op_re(eval<T>(*n.a, var, cst));
            case Op::im: return op_im(eval<T>(*n.a, var, cst));
            case Op::abs: return op_abs(eval<T>(*n.a, var, cst));
            case Op::log: return op_log(eval<T>(*n.a, var, cst));
            case Op::sqrt: return op_sqrt(eval<T>(*n.a, var, cst));
            case Op::exp: return op_exp(eval<T>(*n.a, var, cst));
        }
        return cst(0.0);
    }

    using NodePtr = std::shared_ptr<const Node>;

    static NodePtr make(Op op, NodePtr a, NodePtr b = nullptr, int index = 0) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        n->index = index;
        return n;
    }

    struct Parser {
        std::string_view s;
        int n;
        std::size_t pos;

        [[noreturn]] void error(const std::string& what) const {
            fail(ErrorCode::parse_error, "expression '" + std::string(s) + "': " + what + " at position " +
                                             std::to_string(pos));
        }

        void skip() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }

        bool accept(char c) {
            skip();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        NodePtr expr() {
            NodePtr lhs = term();
            for (;;) {
                if (accept('+')) lhs = make(Op::add, lhs, term());
                else if (accept('-')) lhs = make(Op::sub, lhs, term());
                else return lhs;
            }
        }

        NodePtr term() {
            NodePtr lhs = unary();
            for (;;) {
                if (accept('*')) lhs = make(Op::mul, lhs, unary());
                else if (accept('/')) lhs = make(Op::div, lhs, unary());
                else return lhs;
            }
        }

        NodePtr unary() {
            if (accept('-')) return make(Op::neg, unary());
            if (accept('+')) return unary();
            return power();
        }

        NodePtr power() {
            NodePtr base = primary();
            if (!accept('^')) return base;
            skip();
            bool negative = accept('-');
            skip();
            const std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) error("integer exponent expected");
            int k = std::stoi(std::string(s.substr(start, pos - start)));
            return make(Op::powi, base, nullptr, negative ? -k : k);
        }

        NodePtr number() {
            const std::size_t start = pos;
            while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) ++pos;
            if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
                std::size_t q = pos + 1;
                if (q < s.size() && (s[q] == '+' || s[q] == '-')) ++q;
                if (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) {
                    pos = q;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
                }
            }
            double v = 0.0;
            try {
                v = std::stod(std::string(s.substr(start, pos - start)));
            } catch (const std::exception&) {
                error("malformed number");
            }
            auto node = std::make_shared<Node>();
            node->value = v;
            if (pos < s.size() && s[pos] == 'i' && !(pos + 1 < s.size() && std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
                ++pos;
                node->value = cplx(0.0, v);
            }
            return node;
        }

        NodePtr primary() {
            skip();
            if (pos >= s.size()) error("unexpected end of input");
            const char c = s[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
            if (accept('(')) {
                NodePtr e = expr();
                if (!accept(')')) error("')' expected");
                return e;
            }
            if (!std::isalpha(static_cast<unsigned char>(c))) error("unexpected character");
            const std::size_t start = pos;
            while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
            const std::string word(s.substr(start, pos - start));
            if (word == "i") {
                auto node = std::make_shared<Node>();
                node->value = kI;
                return node;
            }
            if (word == "pi") {
                auto node = std::make_shared<Node>();
                node->value = kPi;
                return node;
            }
            if (word.size() >= 2 && word[0] == 'z' &&
                std::all_of(word.begin() + 1, word.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                const int k = std::stoi(word.substr(1));
                if (k < 1 || k > n) {
                    pos = start;
                    error("variable " + word + " outside z1..z" + std::to_string(n));
                }
                auto node = std::make_shared<Node>();
                node->op = Op::variable;
                node->index = k - 1;
                return node;
            }
            Op op;
            if (word == "conj") op = Op::conj;
            else if (word == "re") op = Op::re;
            else if (word == "im") op = Op::im;
            else if (word == "abs") op = Op::abs;
            else if (word == "log") op = Op::log;
            else if (word == "sqrt") op = Op::sqrt;
            else if (word == "exp") op = Op::exp;
            else {
                pos = start;
                error("unknown identifier '" + word + "'");
            }
            if (!accept('(')) error("'(' expected after " + word);
            NodePtr arg = expr();
            if (!accept(')')) error("')' expected");
            return make(op, arg);
        }
    };

    NodePtr root_;
    std::string text_;
    int dimension_ = 0;
};

}  // namespace aclab
