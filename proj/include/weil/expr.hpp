#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace weil {

enum class UnaryOp { Neg, Inv, Exp, Log, Sin, Cos, Sqrt, PowInt };
enum class BinaryOp { Add, Mul };

const char* unary_name(UnaryOp op);

/// One node of an expression graph.  Operand indices always point to earlier
/// nodes, so evaluation is a single forward sweep.
struct ExprNode {
    enum class Kind { Input, Constant, Unary, Binary };
    Kind kind;
    int input = -1;        // Kind::Input
    double constant = 0.0; // Kind::Constant
    UnaryOp uop{};         // Kind::Unary
    int operand = -1;
    int exponent = 0;      // UnaryOp::PowInt
    BinaryOp bop{};        // Kind::Binary
    int lhs = -1, rhs = -1;
};

/// Thrown by evaluation when a primitive is applied outside its domain;
/// carries the offending node.
class EvalDomainError : public std::domain_error {
public:
    EvalDomainError(int node, const std::string& msg)
        : std::domain_error("node " + std::to_string(node) + ": " + msg), node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

/// A smooth map R^n → R^m presented as a DAG over the primitive set
/// {neg, inv, exp, log, sin, cos, sqrt, pow_int, add, mul}.
class ExprGraph {
public:
    explicit ExprGraph(int arity = 0);

    int arity() const { return arity_; }
    int output_count() const { return int(outputs_.size()); }
    const std::vector<ExprNode>& nodes() const { return nodes_; }
    const std::vector<int>& outputs() const { return outputs_; }

    // --- builders: each returns the new node index -----------------------
    int input(int k);
    int constant(double c);
    int unary(UnaryOp op, int operand, int exponent = 0);
    int binary(BinaryOp op, int lhs, int rhs);
    // conveniences expressed through the primitive set
    int sub(int lhs, int rhs) { return binary(BinaryOp::Add, lhs, unary(UnaryOp::Neg, rhs)); }
    int div(int lhs, int rhs) { return binary(BinaryOp::Mul, lhs, unary(UnaryOp::Inv, rhs)); }

    void set_outputs(std::vector<int> outputs);

    /// Classical evaluation with domain checks.  Throws EvalDomainError.
    std::vector<double> eval(std::span<const double> point) const;

    /// True when only add/mul/neg/constants/inputs/nonnegative integer
    /// powers occur, so exact symbolic expansion applies.
    bool is_polynomial() const;

    /// outer ∘ inner; inner's outputs feed outer's inputs.
    static ExprGraph compose(const ExprGraph& outer, const ExprGraph& inner);

    /// The pair map (f, g): R^n → R^{m_f + m_g} of two maps with equal arity.
    static ExprGraph pair(const ExprGraph& f, const ExprGraph& g);

    static ExprGraph identity(int n);

private:
    int check_node(int idx) const;

    int arity_;
    std::vector<ExprNode> nodes_;
    std::vector<int> outputs_;
};

/// Domain check for a single primitive at a real point; returns an error
/// message when violated, empty string otherwise.
std::string primitive_domain_violation(UnaryOp op, int exponent, double x);

// ============================================================================
// Expression text parser
// ============================================================================

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& msg)
        : std::runtime_error("parse error at position " + std::to_string(position + 1) + ": " + msg),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parses infix arithmetic with `+ - * / ^`, calls exp/log/sin/cos/sqrt,
/// variables x1..xn and real literals.  `^` binds tightest, right
/// associative, integer exponents only.  When `arity` is negative the graph's
/// arity is the largest variable index mentioned.
ExprGraph parse_expression(const std::string& text, int arity = -1);

/// Comma-separated list of expressions as one multi-output graph.
ExprGraph parse_expression_list(const std::string& text, int arity = -1);

/// Renders a graph back to the text syntax, one expression per output,
/// comma separated.  Reparsing yields a semantically equal graph.
std::string to_text(const ExprGraph& g);

} // namespace weil
