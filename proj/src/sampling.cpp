#include "weil/sampling.hpp"

#include <cmath>

namespace weil {

ExprGraph random_graph(Rng& rng, int arity, int outputs, const GraphGenOptions& opts) {
    std::uniform_real_distribution<double> uconst(opts.const_lo, opts.const_hi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    ExprGraph g(arity);
    std::vector<int> pool;
    for (int k = 0; k < arity; ++k) pool.push_back(g.input(k));
    pool.push_back(g.constant(uconst(rng)));

    auto pick = [&](int upper) {
        return pool[std::uniform_int_distribution<int>(0, upper - 1)(rng)];
    };

    const UnaryOp poly_unaries[] = {UnaryOp::Neg, UnaryOp::PowInt};
    const UnaryOp all_unaries[] = {UnaryOp::Neg,  UnaryOp::Inv, UnaryOp::Exp,   UnaryOp::Log,
                                   UnaryOp::Sin,  UnaryOp::Cos, UnaryOp::Sqrt, UnaryOp::PowInt};

    for (int level = 0; level < opts.depth; ++level) {
        const int before = int(pool.size());
        for (int add = 0; add < opts.nodes_per_level; ++add) {
            const double r = u01(rng);
            if (r < 0.40) {
                pool.push_back(g.binary(BinaryOp::Add, pick(before), pick(before)));
            } else if (r < 0.75) {
                pool.push_back(g.binary(BinaryOp::Mul, pick(before), pick(before)));
            } else if (r < 0.85) {
                pool.push_back(g.constant(uconst(rng)));
            } else {
                UnaryOp op;
                if (opts.polynomial_only)
                    op = poly_unaries[std::uniform_int_distribution<int>(0, 1)(rng)];
                else
                    op = all_unaries[std::uniform_int_distribution<int>(0, 7)(rng)];
                int exponent = 0;
                if (op == UnaryOp::PowInt) {
                    exponent = std::uniform_int_distribution<int>(0, opts.max_pow)(rng);
                    if (!opts.polynomial_only && u01(rng) < 0.2)
                        exponent = -std::max(1, exponent);
                }
                pool.push_back(g.unary(op, pick(before), exponent));
            }
        }
    }

    // outputs drawn from the most recently grown nodes, mixed in inputs
    std::vector<int> outs;
    const int window = std::min<int>(int(pool.size()), std::max(outputs, 4));
    for (int i = 0; i < outputs; ++i) {
        const int j = std::uniform_int_distribution<int>(0, window - 1)(rng);
        outs.push_back(pool[int(pool.size()) - 1 - j]);
    }
    g.set_outputs(std::move(outs));
    return g;
}

bool point_is_admissible(const ExprGraph& g, const Eigen::VectorXd& x,
                         const PointSampleOptions& opts) {
    std::vector<double> val(g.nodes().size());
    for (std::size_t idx = 0; idx < g.nodes().size(); ++idx) {
        const ExprNode& n = g.nodes()[idx];
        double v = 0.0;
        switch (n.kind) {
            case ExprNode::Kind::Input: v = x[n.input]; break;
            case ExprNode::Kind::Constant: v = n.constant; break;
            case ExprNode::Kind::Unary: {
                const double a = val[n.operand];
                switch (n.uop) {
                    case UnaryOp::Neg: v = -a; break;
                    case UnaryOp::Inv:
                        if (std::abs(a) < opts.domain_margin) return false;
                        v = 1.0 / a;
                        break;
                    case UnaryOp::Exp:
                        if (a > opts.max_exp_arg) return false;
                        v = std::exp(a);
                        break;
                    case UnaryOp::Log:
                        if (a < opts.domain_margin) return false;
                        v = std::log(a);
                        break;
                    case UnaryOp::Sin: v = std::sin(a); break;
                    case UnaryOp::Cos: v = std::cos(a); break;
                    case UnaryOp::Sqrt:
                        if (a < opts.domain_margin) return false;
                        v = std::sqrt(a);
                        break;
                    case UnaryOp::PowInt: {
                        if (n.exponent < 0 && std::abs(a) < opts.domain_margin) return false;
                        double r = 1.0;
                        for (int i = 0; i < std::abs(n.exponent); ++i) r *= a;
                        v = n.exponent < 0 ? 1.0 / r : r;
                        break;
                    }
                }
                break;
            }
            case ExprNode::Kind::Binary:
                v = n.bop == BinaryOp::Add ? val[n.lhs] + val[n.rhs] : val[n.lhs] * val[n.rhs];
                break;
        }
        if (!std::isfinite(v) || std::abs(v) > opts.max_magnitude) return false;
        val[idx] = v;
    }
    return true;
}

std::optional<Eigen::VectorXd> sample_admissible_point(const ExprGraph& g, Rng& rng,
                                                       const PointSampleOptions& opts) {
    std::uniform_real_distribution<double> u(opts.lo, opts.hi);
    for (int t = 0; t < opts.tries; ++t) {
        Eigen::VectorXd x(g.arity());
        for (int i = 0; i < g.arity(); ++i) x[i] = u(rng);
        if (point_is_admissible(g, x, opts)) return x;
    }
    return std::nullopt;
}

AlgebraElement random_element(const AlgebraPtr& a, Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Eigen::VectorXd c(a->dim());
    for (int i = 0; i < a->dim(); ++i) c[i] = u(rng);
    return a->element(std::move(c));
}

LiftedVector random_lifted(const AlgebraPtr& a, const Eigen::VectorXd& base, Rng& rng,
                           double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    const Eigen::MatrixXd& nb = a->nilpotent_basis();
    std::vector<AlgebraElement> entries;
    for (int t = 0; t < base.size(); ++t) {
        Eigen::VectorXd c = base[t] * a->unit();
        for (int j = 0; j < nb.cols(); ++j) c += u(rng) * nb.col(j);
        entries.push_back(a->element(std::move(c)));
    }
    return LiftedVector(a, std::move(entries));
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0) q.col(i) = -q.col(i);
    return q;
}

Eigen::MatrixXd random_special_orthogonal(int n, Rng& rng) {
    Eigen::MatrixXd q = random_orthogonal(n, rng);
    if (q.determinant() < 0) q.col(n - 1) = -q.col(n - 1);
    return q;
}

LiftedLieAlgebraElement random_lie_element(const AlgebraPtr& a, int n, LieTag tag, Rng& rng,
                                           double scale) {
    std::vector<AlgebraElement> entries(std::size_t(n) * n, a->zero());
    auto put = [&entries, n](int i, int j, AlgebraElement v) {
        entries[i * n + j] = std::move(v);
    };
    switch (tag) {
        case LieTag::Full:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) put(i, j, random_element(a, rng, -scale, scale));
            break;
        case LieTag::Antisymmetric:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    AlgebraElement v = random_element(a, rng, -scale, scale);
                    put(i, j, v);
                    put(j, i, -v);
                }
            break;
        case LieTag::StrictlyUpper:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) put(i, j, random_element(a, rng, -scale, scale));
            break;
    }
    return LiftedLieAlgebraElement(a, n, tag, std::move(entries));
}

LiftedMatrix random_group_element(const AlgebraPtr& a, int n, GroupTag tag, Rng& rng) {
    switch (tag) {
        case GroupTag::SpecialOrthogonal:
            return lifted_exp(random_lie_element(a, n, LieTag::Antisymmetric, rng, 0.8));
        case GroupTag::UpperUnipotent: {
            std::vector<AlgebraElement> entries(std::size_t(n) * n, a->zero());
            for (int i = 0; i < n; ++i) {
                entries[i * n + i] = a->one();
                for (int j = i + 1; j < n; ++j) entries[i * n + j] = random_element(a, rng);
            }
            return LiftedMatrix(a, n, tag, std::move(entries));
        }
        case GroupTag::GeneralLinear: {
            for (int attempt = 0; attempt < 64; ++attempt) {
                std::vector<AlgebraElement> entries;
                entries.reserve(std::size_t(n) * n);
                for (int i = 0; i < n * n; ++i) entries.push_back(random_element(a, rng));
                LiftedMatrix m(a, n, tag, std::move(entries));
                if (std::abs(m.shadow().determinant()) > 0.3) return m;
            }
            // fall back to a shifted identity, always invertible
            LiftedMatrix id = group_identity(a, n, tag);
            std::vector<AlgebraElement> entries;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    AlgebraElement v = random_element(a, rng, -0.2, 0.2);
                    if (i == j) v += a->one();
                    entries.push_back(std::move(v));
                }
            return LiftedMatrix(a, n, tag, std::move(entries));
        }
    }
    throw std::logic_error("random_group_element: unreachable");
}

} // namespace weil
