#include "weil/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace weil {

const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "neg";
        case UnaryOp::Inv: return "inv";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Log: return "log";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::PowInt: return "pow_int";
    }
    return "?";
}

ExprGraph::ExprGraph(int arity) : arity_(arity) {
    if (arity < 0) throw std::invalid_argument("ExprGraph: negative arity");
}

int ExprGraph::check_node(int idx) const {
    if (idx < 0 || idx >= int(nodes_.size()))
        throw std::invalid_argument("ExprGraph: operand must reference an earlier node");
    return idx;
}

int ExprGraph::input(int k) {
    if (k < 0 || k >= arity_) throw std::invalid_argument("ExprGraph: input index out of range");
    nodes_.push_back({ExprNode::Kind::Input, k});
    return int(nodes_.size()) - 1;
}

int ExprGraph::constant(double c) {
    ExprNode n{ExprNode::Kind::Constant};
    n.constant = c;
    nodes_.push_back(n);
    return int(nodes_.size()) - 1;
}

int ExprGraph::unary(UnaryOp op, int operand, int exponent) {
    ExprNode n{ExprNode::Kind::Unary};
    n.uop = op;
    n.operand = check_node(operand);
    n.exponent = exponent;
    nodes_.push_back(n);
    return int(nodes_.size()) - 1;
}

int ExprGraph::binary(BinaryOp op, int lhs, int rhs) {
    ExprNode n{ExprNode::Kind::Binary};
    n.bop = op;
    n.lhs = check_node(lhs);
    n.rhs = check_node(rhs);
    nodes_.push_back(n);
    return int(nodes_.size()) - 1;
}

void ExprGraph::set_outputs(std::vector<int> outputs) {
    for (int o : outputs) check_node(o);
    outputs_ = std::move(outputs);
}

std::string primitive_domain_violation(UnaryOp op, int exponent, double x) {
    std::ostringstream os;
    switch (op) {
        case UnaryOp::Inv:
            if (x == 0.0) return "inv requires a nonzero argument, got augmentation 0";
            break;
        case UnaryOp::Log:
            if (x <= 0.0) {
                os << "log requires a positive argument, got augmentation " << x;
                return os.str();
            }
            break;
        case UnaryOp::Sqrt:
            if (x <= 0.0) {
                os << "sqrt requires a positive argument, got augmentation " << x;
                return os.str();
            }
            break;
        case UnaryOp::PowInt:
            if (exponent < 0 && x == 0.0)
                return "pow_int with negative exponent requires a nonzero argument";
            break;
        default:
            break;
    }
    return {};
}

std::vector<double> ExprGraph::eval(std::span<const double> point) const {
    if (int(point.size()) != arity_)
        throw std::invalid_argument("ExprGraph::eval: expected " + std::to_string(arity_) +
                                    " coordinates, got " + std::to_string(point.size()));
    std::vector<double> val(nodes_.size());
    for (std::size_t idx = 0; idx < nodes_.size(); ++idx) {
        const ExprNode& n = nodes_[idx];
        switch (n.kind) {
            case ExprNode::Kind::Input: val[idx] = point[n.input]; break;
            case ExprNode::Kind::Constant: val[idx] = n.constant; break;
            case ExprNode::Kind::Unary: {
                const double x = val[n.operand];
                if (auto msg = primitive_domain_violation(n.uop, n.exponent, x); !msg.empty())
                    throw EvalDomainError(int(idx), msg);
                switch (n.uop) {
                    case UnaryOp::Neg: val[idx] = -x; break;
                    case UnaryOp::Inv: val[idx] = 1.0 / x; break;
                    case UnaryOp::Exp: val[idx] = std::exp(x); break;
                    case UnaryOp::Log: val[idx] = std::log(x); break;
                    case UnaryOp::Sin: val[idx] = std::sin(x); break;
                    case UnaryOp::Cos: val[idx] = std::cos(x); break;
                    case UnaryOp::Sqrt: val[idx] = std::sqrt(x); break;
                    case UnaryOp::PowInt: {
                        double r = 1.0;
                        const int e = std::abs(n.exponent);
                        for (int i = 0; i < e; ++i) r *= x;
                        val[idx] = n.exponent < 0 ? 1.0 / r : r;
                        break;
                    }
                }
                break;
            }
            case ExprNode::Kind::Binary:
                val[idx] = n.bop == BinaryOp::Add ? val[n.lhs] + val[n.rhs]
                                                  : val[n.lhs] * val[n.rhs];
                break;
        }
    }
    std::vector<double> out(outputs_.size());
    for (std::size_t i = 0; i < outputs_.size(); ++i) out[i] = val[outputs_[i]];
    return out;
}

bool ExprGraph::is_polynomial() const {
    for (const ExprNode& n : nodes_) {
        if (n.kind != ExprNode::Kind::Unary) continue;
        if (n.uop == UnaryOp::Neg) continue;
        if (n.uop == UnaryOp::PowInt && n.exponent >= 0) continue;
        return false;
    }
    return true;
}

ExprGraph ExprGraph::compose(const ExprGraph& outer, const ExprGraph& inner) {
    if (outer.arity() != inner.output_count())
        throw std::invalid_argument("ExprGraph::compose: outer arity " +
                                    std::to_string(outer.arity()) + " != inner output count " +
                                    std::to_string(inner.output_count()));
    ExprGraph g = inner;
    g.outputs_.clear();
    std::vector<int> remap(outer.nodes_.size());
    for (std::size_t idx = 0; idx < outer.nodes_.size(); ++idx) {
        const ExprNode& n = outer.nodes_[idx];
        switch (n.kind) {
            case ExprNode::Kind::Input: remap[idx] = inner.outputs_[n.input]; break;
            case ExprNode::Kind::Constant: remap[idx] = g.constant(n.constant); break;
            case ExprNode::Kind::Unary:
                remap[idx] = g.unary(n.uop, remap[n.operand], n.exponent);
                break;
            case ExprNode::Kind::Binary:
                remap[idx] = g.binary(n.bop, remap[n.lhs], remap[n.rhs]);
                break;
        }
    }
    std::vector<int> outs;
    for (int o : outer.outputs_) outs.push_back(remap[o]);
    g.set_outputs(std::move(outs));
    return g;
}

ExprGraph ExprGraph::pair(const ExprGraph& f, const ExprGraph& g) {
    if (f.arity() != g.arity())
        throw std::invalid_argument("ExprGraph::pair: arities differ");
    ExprGraph out(f.arity());
    std::vector<int> in(out.arity());
    for (int k = 0; k < out.arity(); ++k) in[k] = out.input(k);

    auto splice = [&out, &in](const ExprGraph& src) {
        std::vector<int> remap(src.nodes_.size());
        for (std::size_t idx = 0; idx < src.nodes_.size(); ++idx) {
            const ExprNode& n = src.nodes_[idx];
            switch (n.kind) {
                case ExprNode::Kind::Input: remap[idx] = in[n.input]; break;
                case ExprNode::Kind::Constant: remap[idx] = out.constant(n.constant); break;
                case ExprNode::Kind::Unary:
                    remap[idx] = out.unary(n.uop, remap[n.operand], n.exponent);
                    break;
                case ExprNode::Kind::Binary:
                    remap[idx] = out.binary(n.bop, remap[n.lhs], remap[n.rhs]);
                    break;
            }
        }
        std::vector<int> outs;
        for (int o : src.outputs_) outs.push_back(remap[o]);
        return outs;
    };

    std::vector<int> outs = splice(f);
    std::vector<int> outs2 = splice(g);
    outs.insert(outs.end(), outs2.begin(), outs2.end());
    out.set_outputs(std::move(outs));
    return out;
}

ExprGraph ExprGraph::identity(int n) {
    ExprGraph g(n);
    std::vector<int> outs(n);
    for (int k = 0; k < n; ++k) outs[k] = g.input(k);
    g.set_outputs(std::move(outs));
    return g;
}

// ============================================================================
// Parser.  LL(1) grammar:
//   list   := expr (',' expr)*
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' exponent)?          exponent chains fold right
//   atom   := number | 'x'<digits> | func '(' expr ')' | '(' expr ')'
// ============================================================================

namespace {

class Parser {
public:
    Parser(const std::string& text, ExprGraph& g) : text_(text), g_(g) {}

    int parse_expr() {
        int lhs = parse_term();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                lhs = g_.binary(BinaryOp::Add, lhs, parse_term());
            } else if (peek() == '-') {
                ++pos_;
                lhs = g_.sub(lhs, parse_term());
            } else {
                return lhs;
            }
        }
    }

    void expect_end() {
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
    }

    int max_var = 0;  ///< largest variable index seen (1-based)

private:
    int parse_term() {
        int lhs = parse_unary();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                lhs = g_.binary(BinaryOp::Mul, lhs, parse_unary());
            } else if (peek() == '/') {
                ++pos_;
                lhs = g_.div(lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    int parse_unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return g_.unary(UnaryOp::Neg, parse_unary());
        }
        return parse_power();
    }

    int parse_power() {
        int base = parse_atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        const long long e = parse_exponent_chain();
        if (e < -64 || e > 64) throw ParseError(pos_, "exponent magnitude above 64");
        return g_.unary(UnaryOp::PowInt, base, int(e));
    }

    // x^2^3 = x^(2^3); the chain folds in integer arithmetic.
    long long parse_exponent_chain() {
        const long long head = parse_int();
        skip_ws();
        if (peek() != '^') return head;
        ++pos_;
        const long long tail = parse_exponent_chain();
        if (tail < 0) throw ParseError(pos_, "negative exponent inside exponent chain");
        if (tail > 16 || std::abs(head) > 64) throw ParseError(pos_, "exponent chain too large");
        long long r = 1;
        for (long long i = 0; i < tail; ++i) {
            r *= head;
            if (std::abs(r) > (1 << 20)) throw ParseError(pos_, "exponent chain too large");
        }
        return r;
    }

    long long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        if (!std::isdigit(peek())) throw ParseError(pos_, "expected an integer exponent");
        long long v = 0;
        while (std::isdigit(peek())) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000) throw ParseError(start, "integer too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    int parse_atom() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            int e = parse_expr();
            skip_ws();
            if (peek() != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(c) || c == '.') return parse_number();
        if (std::isalpha(c)) return parse_ident();
        if (c == '\0') throw ParseError(pos_, "unexpected end of expression");
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    int parse_number() {
        const std::size_t start = pos_;
        while (std::isdigit(peek())) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (std::isdigit(peek())) ++pos_;
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t mark = pos_;
            ++pos_;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (!std::isdigit(peek()))
                pos_ = mark;  // not an exponent suffix after all
            else
                while (std::isdigit(peek())) ++pos_;
        }
        try {
            return g_.constant(std::stod(text_.substr(start, pos_ - start)));
        } catch (const std::exception&) {
            throw ParseError(start, "malformed number");
        }
    }

    int parse_ident() {
        const std::size_t start = pos_;
        while (std::isalpha(peek())) ++pos_;
        const std::string word = text_.substr(start, pos_ - start);

        if (word == "x") {
            if (!std::isdigit(peek()))
                throw ParseError(start, "variables are written x1, x2, ...");
            int k = 0;
            while (std::isdigit(peek())) {
                k = k * 10 + (text_[pos_] - '0');
                if (k > 1000) throw ParseError(start, "variable index too large");
                ++pos_;
            }
            if (k == 0) throw ParseError(start, "variable indices start at 1");
            if (k > g_.arity())
                throw ParseError(start, "expression mentions x" + std::to_string(k) +
                                            " but arity is " + std::to_string(g_.arity()));
            max_var = std::max(max_var, k);
            return g_.input(k - 1);
        }

        UnaryOp op;
        if (word == "exp") op = UnaryOp::Exp;
        else if (word == "log") op = UnaryOp::Log;
        else if (word == "sin") op = UnaryOp::Sin;
        else if (word == "cos") op = UnaryOp::Cos;
        else if (word == "sqrt") op = UnaryOp::Sqrt;
        else if (word == "pi") return g_.constant(3.14159265358979323846);
        else throw ParseError(start, "unknown identifier '" + word + "'");

        skip_ws();
        if (peek() != '(') throw ParseError(pos_, "expected '(' after '" + word + "'");
        ++pos_;
        int arg = parse_expr();
        skip_ws();
        if (peek() != ')') throw ParseError(pos_, "expected ')'");
        ++pos_;
        return g_.unary(op, arg);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    const std::string& text_;
    ExprGraph& g_;
    std::size_t pos_ = 0;
};

ExprGraph parse_single(const std::string& text, int arity) {
    // The graph needs its arity before inputs are created; parse with a
    // generous bound first, then rebuild if the caller wants it inferred.
    const int bound = arity >= 0 ? arity : 1001;
    ExprGraph g(bound);
    Parser p(text, g);
    std::vector<int> outputs;
    outputs.push_back(p.parse_expr());
    p.expect_end();
    g.set_outputs(std::move(outputs));

    if (arity < 0) {
        // shrink arity to the variables actually mentioned
        ExprGraph shrunk(p.max_var);
        ExprGraph* dst = &shrunk;
        std::vector<int> remap(g.nodes().size());
        for (std::size_t i = 0; i < g.nodes().size(); ++i) {
            const ExprNode& n = g.nodes()[i];
            switch (n.kind) {
                case ExprNode::Kind::Input: remap[i] = dst->input(n.input); break;
                case ExprNode::Kind::Constant: remap[i] = dst->constant(n.constant); break;
                case ExprNode::Kind::Unary: remap[i] = dst->unary(n.uop, remap[n.operand], n.exponent); break;
                case ExprNode::Kind::Binary: remap[i] = dst->binary(n.bop, remap[n.lhs], remap[n.rhs]); break;
            }
        }
        std::vector<int> outs;
        for (int o : g.outputs()) outs.push_back(remap[o]);
        shrunk.set_outputs(std::move(outs));
        return shrunk;
    }

    if (p.max_var > arity)
        throw ParseError(0, "expression mentions x" + std::to_string(p.max_var) +
                                " but arity is " + std::to_string(arity));
    return g;
}

} // namespace

ExprGraph parse_expression(const std::string& text, int arity) {
    return parse_single(text, arity);
}

std::string to_text(const ExprGraph& g) {
    std::vector<std::string> txt(g.nodes().size());
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
        const ExprNode& n = g.nodes()[i];
        std::ostringstream os;
        os.precision(17);
        switch (n.kind) {
            case ExprNode::Kind::Input: os << "x" << (n.input + 1); break;
            case ExprNode::Kind::Constant:
                if (n.constant < 0) os << "(0 - " << -n.constant << ")";
                else os << n.constant;
                break;
            case ExprNode::Kind::Unary:
                switch (n.uop) {
                    case UnaryOp::Neg: os << "(0 - " << txt[n.operand] << ")"; break;
                    case UnaryOp::Inv: os << "(1/(" << txt[n.operand] << "))"; break;
                    case UnaryOp::PowInt: os << "(" << txt[n.operand] << ")^" << n.exponent; break;
                    default: os << unary_name(n.uop) << "(" << txt[n.operand] << ")";
                }
                break;
            case ExprNode::Kind::Binary:
                os << "(" << txt[n.lhs] << (n.bop == BinaryOp::Add ? " + " : " * ")
                   << txt[n.rhs] << ")";
                break;
        }
        txt[i] = os.str();
    }
    std::string out;
    for (std::size_t i = 0; i < g.outputs().size(); ++i) {
        if (i) out += ", ";
        out += txt[g.outputs()[i]];
    }
    return out;
}

ExprGraph parse_expression_list(const std::string& text, int arity) {
    // Split on top-level commas (no function takes two arguments, so any
    // comma at depth 0 separates expressions).
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);

    // Parse each part with a shared arity: first infer, then rebuild.
    int max_var = 0;
    std::vector<ExprGraph> graphs;
    for (const auto& part : parts) {
        ExprGraph g = parse_expression(part, arity);
        max_var = std::max(max_var, g.arity());
        graphs.push_back(std::move(g));
    }
    const int n = arity >= 0 ? arity : max_var;

    ExprGraph out(n);
    std::vector<int> in(n);
    for (int k = 0; k < n; ++k) in[k] = out.input(k);
    std::vector<int> outs;
    for (const auto& g : graphs) {
        std::vector<int> remap(g.nodes().size());
        for (std::size_t i = 0; i < g.nodes().size(); ++i) {
            const ExprNode& nd = g.nodes()[i];
            switch (nd.kind) {
                case ExprNode::Kind::Input: remap[i] = in[nd.input]; break;
                case ExprNode::Kind::Constant: remap[i] = out.constant(nd.constant); break;
                case ExprNode::Kind::Unary: remap[i] = out.unary(nd.uop, remap[nd.operand], nd.exponent); break;
                case ExprNode::Kind::Binary: remap[i] = out.binary(nd.bop, remap[nd.lhs], remap[nd.rhs]); break;
            }
        }
        for (int o : g.outputs()) outs.push_back(remap[o]);
    }
    out.set_outputs(std::move(outs));
    return out;
}

} // namespace weil
