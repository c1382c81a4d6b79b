#include "loxo/expr.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <variant>
#include <vector>

namespace loxo {

namespace detail {

enum class BinOp { Add, Sub, Mul, Div };
enum class Fn { Sin, Cos, Sinh, Cosh, Exp, Log, Sqrt };

struct Literal { double value; };
struct Var {};
struct Neg { std::shared_ptr<const ExprNode> child; };
struct Binary { BinOp op; std::shared_ptr<const ExprNode> lhs, rhs; };
struct Pow { std::shared_ptr<const ExprNode> base; int exponent; };
struct Call { Fn fn; std::shared_ptr<const ExprNode> arg; };

struct ExprNode {
    std::variant<Literal, Var, Neg, Binary, Pow, Call> v;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

template <typename T>
NodePtr make_node(T&& alt) {
    return std::make_shared<const ExprNode>(ExprNode{std::forward<T>(alt)});
}

const std::array<std::pair<const char*, Fn>, 7> kFunctions = {{
    {"sin", Fn::Sin}, {"cos", Fn::Cos}, {"sinh", Fn::Sinh},
    {"cosh", Fn::Cosh}, {"exp", Fn::Exp}, {"log", Fn::Log},
    {"sqrt", Fn::Sqrt},
}};

Dual apply(Fn fn, Dual a) {
    switch (fn) {
        case Fn::Sin: return sin(a);
        case Fn::Cos: return cos(a);
        case Fn::Sinh: return sinh(a);
        case Fn::Cosh: return cosh(a);
        case Fn::Exp: return exp(a);
        case Fn::Log: return log(a);
        case Fn::Sqrt: return sqrt(a);
    }
    throw DomainError("unreachable function tag");
}

const char* fn_name(Fn fn) {
    for (const auto& [name, tag] : kFunctions)
        if (tag == fn) return name;
    return "?";
}

Dual eval_node(const ExprNode& n, double u);

struct EvalVisitor {
    double u;
    Dual operator()(const Literal& l) const { return {l.value, 0.0}; }
    Dual operator()(const Var&) const { return {u, 1.0}; }
    Dual operator()(const Neg& m) const { return -eval_node(*m.child, u); }
    Dual operator()(const Binary& b) const {
        const Dual l = eval_node(*b.lhs, u);
        const Dual r = eval_node(*b.rhs, u);
        switch (b.op) {
            case BinOp::Add: return l + r;
            case BinOp::Sub: return l - r;
            case BinOp::Mul: return l * r;
            case BinOp::Div: return l / r;
        }
        throw DomainError("unreachable operator tag");
    }
    Dual operator()(const Pow& p) const {
        return pow_int(eval_node(*p.base, u), p.exponent);
    }
    Dual operator()(const Call& c) const {
        return apply(c.fn, eval_node(*c.arg, u));
    }
};

Dual eval_node(const ExprNode& n, double u) {
    return std::visit(EvalVisitor{u}, n.v);
}

// ---- parser ---------------------------------------------------------------
// expr    := term (('+' | '-') term)*
// term    := unary (('*' | '/') unary)*
// unary   := '-' unary | power
// power   := primary ('^' int)*          exponents are signed integer literals
// primary := number | 'u' | constant | fn '(' expr ')' | '(' expr ')'

class Parser {
public:
    Parser(const std::string& src, const std::map<std::string, double>& constants)
        : src_(src), constants_(constants) {}

    NodePtr parse() {
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "'",
                             pos_);
        return e;
    }

private:
    const std::string& src_;
    const std::map<std::string, double>& constants_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
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

    NodePtr parse_sum() {
        NodePtr lhs = parse_term();
        for (;;) {
            if (consume('+'))
                lhs = make_node(Binary{BinOp::Add, lhs, parse_term()});
            else if (consume('-'))
                lhs = make_node(Binary{BinOp::Sub, lhs, parse_term()});
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (consume('*'))
                lhs = make_node(Binary{BinOp::Mul, lhs, parse_unary()});
            else if (consume('/'))
                lhs = make_node(Binary{BinOp::Div, lhs, parse_unary()});
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (consume('-')) return make_node(Neg{parse_unary()});
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        while (consume('^')) base = make_node(Pow{base, parse_exponent()});
        return base;
    }

    int parse_exponent() {
        skip_ws();
        const std::size_t start = pos_;
        bool neg = false;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
            neg = src_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw ParseError("exponent must be an integer literal", start);
        long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_] - '0');
            if (v > 1000) throw ParseError("exponent too large", start);
            ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == '.' ||
                                   src_[pos_] == 'e' || src_[pos_] == 'E'))
            throw ParseError("exponent must be an integer literal", start);
        return static_cast<int>(neg ? -v : v);
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return make_node(Literal{parse_number()});
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_sum();
            if (!consume(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    double parse_number() {
        const std::size_t start = pos_;
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("malformed number", start);
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
            ++end;
        const std::string name = src_.substr(start, end - start);
        pos_ = end;

        for (const auto& [fname, tag] : kFunctions) {
            if (name == fname) {
                if (!consume('('))
                    throw ParseError("expected '(' after '" + name + "'", pos_);
                NodePtr arg = parse_sum();
                if (!consume(')')) throw ParseError("expected ')'", pos_);
                return make_node(Call{tag, arg});
            }
        }
        if (name == "u") return make_node(Var{});
        if (auto it = constants_.find(name); it != constants_.end()) {
            // Negative constants become -(positive literal) so that printing
            // and reparsing round-trips to the same tree.
            if (it->second < 0.0)
                return make_node(Neg{make_node(Literal{-it->second})});
            return make_node(Literal{it->second});
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }
};

// ---- printing -------------------------------------------------------------

// Binding strength, loosest to tightest. Used to decide parentheses.
enum Prec { kSum = 0, kProd = 1, kNeg = 2, kPow = 3, kAtom = 4 };

int precedence(const ExprNode& n) {
    struct V {
        int operator()(const Literal&) const { return kAtom; }
        int operator()(const Var&) const { return kAtom; }
        int operator()(const Neg&) const { return kNeg; }
        int operator()(const Binary& b) const {
            return (b.op == BinOp::Add || b.op == BinOp::Sub) ? kSum : kProd;
        }
        int operator()(const Pow&) const { return kPow; }
        int operator()(const Call&) const { return kAtom; }
    };
    return std::visit(V{}, n.v);
}

void print_node(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        print_node(child, out);
        out += ')';
    } else {
        print_node(child, out);
    }
}

void print_node(const ExprNode& n, std::string& out) {
    struct V {
        std::string& out;
        void operator()(const Literal& l) const {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", l.value);
            out += buf;
        }
        void operator()(const Var&) const { out += 'u'; }
        void operator()(const Neg& m) const {
            out += '-';
            print_child(*m.child, kNeg, out);
        }
        void operator()(const Binary& b) const {
            static const char* sym[] = {" + ", " - ", "*", "/"};
            const int prec = (b.op == BinOp::Add || b.op == BinOp::Sub) ? kSum : kProd;
            print_child(*b.lhs, prec, out);
            out += sym[static_cast<int>(b.op)];
            // Right operand needs parens at equal precedence: a - (b + c).
            print_child(*b.rhs, prec + 1, out);
        }
        void operator()(const Pow& p) const {
            print_child(*p.base, kAtom, out);
            out += '^';
            out += std::to_string(p.exponent);
        }
        void operator()(const Call& c) const {
            out += fn_name(c.fn);
            out += '(';
            print_node(*c.arg, out);
            out += ')';
        }
    };
    std::visit(V{out}, n.v);
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
    if (a.v.index() != b.v.index()) return false;
    struct V {
        const ExprNode& other;
        bool operator()(const Literal& l) const {
            return l.value == std::get<Literal>(other.v).value;
        }
        bool operator()(const Var&) const { return true; }
        bool operator()(const Neg& m) const {
            return nodes_equal(*m.child, *std::get<Neg>(other.v).child);
        }
        bool operator()(const Binary& b) const {
            const auto& o = std::get<Binary>(other.v);
            return b.op == o.op && nodes_equal(*b.lhs, *o.lhs) &&
                   nodes_equal(*b.rhs, *o.rhs);
        }
        bool operator()(const Pow& p) const {
            const auto& o = std::get<Pow>(other.v);
            return p.exponent == o.exponent && nodes_equal(*p.base, *o.base);
        }
        bool operator()(const Call& c) const {
            const auto& o = std::get<Call>(other.v);
            return c.fn == o.fn && nodes_equal(*c.arg, *o.arg);
        }
    };
    return std::visit(V{b}, a.v);
}

} // namespace
} // namespace detail

Dual Expr::eval_dual(double u) const {
    if (!node_) throw ValidationError("evaluating an empty expression");
    return detail::eval_node(*node_, u);
}

std::string Expr::str() const {
    if (!node_) return "";
    std::string out;
    detail::print_node(*node_, out);
    return out;
}

Expr parse_expr(const std::string& source,
                const std::map<std::string, double>& constants) {
    return Expr(detail::Parser(source, constants).parse());
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    return detail::nodes_equal(*a.node_, *b.node_);
}

} // namespace loxo
