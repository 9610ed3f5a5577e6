#pragma once

// Polynomial expressions in two named variables.
//
//   expr     := term (('+' | '-') term)*
//   term     := factor ('*' factor)*
//   factor   := '-' factor | power
//   power    := atom ('^' uint)?
//   atom     := rational | ident | '(' expr ')'
//   rational := uint ('/' uint)?
//
// '^' binds tighter than unary minus, so "-u^2" is -(u^2).

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "revham/series.hpp"

namespace revham {

using VarNames = std::pair<std::string, std::string>;

struct ExprAst {
    enum class Kind { literal, variable, negation, sum, difference, product, power };

    Kind kind = Kind::literal;
    Rational value;      // literal
    Axis variable = Axis::first;
    unsigned exponent = 0; // power
    std::unique_ptr<ExprAst> lhs;
    std::unique_ptr<ExprAst> rhs;
};

struct ParseOptions {
    /// Reject expressions with terms above the truncation order.
    bool strict_degree = false;
    std::size_t max_depth = 64;
};

struct ParsedSeries {
    Series2<Rational> series;
    /// Some nonzero term had total degree above the truncation order.
    bool dropped_degree = false;
};

ExprAst parse_ast(std::string_view text, const VarNames& vars, std::size_t max_depth = 64);

ParsedSeries parse_expression(std::string_view text, const VarNames& vars, int order, const ParseOptions& options = {});

/// Shorthand for parse_expression(...).series.
Series2<Rational> parse(std::string_view text, const VarNames& vars, int order);

/// Canonical text in graded-lex term order, e.g. "v + 3/2*u^2*v".
std::string unparse(const Series2<Rational>& s, const VarNames& vars);

} // namespace revham
