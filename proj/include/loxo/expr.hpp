#pragma once

#include <map>
#include <memory>
#include <string>

#include "loxo/dual.hpp"
#include "loxo/errors.hpp"

// Expressions in one variable u: literals, named constants (resolved to their
// values at parse time), + - * / with the usual precedence, ^ with integer
// exponents binding tightest, unary minus, and the functions sin cos sinh
// cosh exp log sqrt. Parsed expressions are immutable and safe to share
// across threads.

namespace loxo {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

namespace detail {
struct ExprNode;
}

class Expr {
public:
    Expr() = default; // empty; evaluating throws

    // Value and d/du at u, propagated through dual numbers.
    Dual eval_dual(double u) const;
    double eval(double u) const { return eval_dual(u).val; }

    // Canonical form; parses back to a structurally equal expression.
    std::string str() const;

    bool empty() const { return !node_; }

    friend Expr parse_expr(const std::string&, const std::map<std::string, double>&);
    friend bool structurally_equal(const Expr&, const Expr&);

private:
    explicit Expr(std::shared_ptr<const detail::ExprNode> node)
        : node_(std::move(node)) {}
    std::shared_ptr<const detail::ExprNode> node_;
};

Expr parse_expr(const std::string& source,
                const std::map<std::string, double>& constants = {});

bool structurally_equal(const Expr& a, const Expr& b);

} // namespace loxo
