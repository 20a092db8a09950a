#include "weil/lift.hpp"

#include "weil/numeric.hpp"
#include "weil/poly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace weil {

// ============================================================================
// Taylor coefficients
// ============================================================================

double TaylorTable::coeff(double lambda, int j) const {
    switch (op) {
        case UnaryOp::Neg:
            if (j == 0) return -lambda;
            return j == 1 ? -1.0 : 0.0;
        case UnaryOp::Exp:
            return std::exp(lambda) / factorial(j);
        case UnaryOp::Sin: {
            const double v[4] = {std::sin(lambda), std::cos(lambda),
                                 -std::sin(lambda), -std::cos(lambda)};
            return v[j % 4] / factorial(j);
        }
        case UnaryOp::Cos: {
            const double v[4] = {std::cos(lambda), -std::sin(lambda),
                                 -std::cos(lambda), std::sin(lambda)};
            return v[j % 4] / factorial(j);
        }
        case UnaryOp::Log: {
            if (j == 0) return std::log(lambda);
            double p = 1.0;
            for (int i = 0; i < j; ++i) p *= lambda;
            const double sign = (j % 2 == 1) ? 1.0 : -1.0;
            return sign / (j * p);
        }
        case UnaryOp::Inv: {
            double p = lambda;
            for (int i = 0; i < j; ++i) p *= lambda;
            return (j % 2 == 0 ? 1.0 : -1.0) / p;
        }
        case UnaryOp::Sqrt: {
            // C(1/2, j) · λ^{1/2 − j}
            double bin = 1.0;
            for (int i = 0; i < j; ++i) bin *= (0.5 - i) / (i + 1);
            double p = std::sqrt(lambda);
            for (int i = 0; i < j; ++i) p /= lambda;
            return bin * p;
        }
        case UnaryOp::PowInt: {
            const int k = exponent;
            if (k >= 0 && j > k) return 0.0;
            double bin = 1.0;
            for (int i = 0; i < j; ++i) bin *= double(k - i) / (i + 1);
            double p = 1.0;
            if (k - j >= 0)
                for (int i = 0; i < k - j; ++i) p *= lambda;
            else
                for (int i = 0; i < j - k; ++i) p /= lambda;
            return bin * p;
        }
    }
    return 0.0;
}

// ============================================================================
// LiftedVector
// ============================================================================

LiftedVector::LiftedVector(AlgebraPtr algebra, std::vector<AlgebraElement> entries)
    : alg_(std::move(algebra)), entries_(std::move(entries)) {
    for (const auto& e : entries_)
        if (!same_algebra(e.algebra(), alg_))
            throw std::invalid_argument("LiftedVector: entry over '" + e.algebra()->name() +
                                        "' does not match algebra '" + alg_->name() + "'");
}

LiftedVector LiftedVector::from_reals(const AlgebraPtr& algebra, const Eigen::VectorXd& point) {
    std::vector<AlgebraElement> entries;
    entries.reserve(point.size());
    for (int i = 0; i < point.size(); ++i) entries.push_back(algebra->scalar(point[i]));
    return LiftedVector(algebra, std::move(entries));
}

LiftedVector LiftedVector::seed_generators(const AlgebraPtr& algebra,
                                           const Eigen::VectorXd& point) {
    const auto& gens = algebra->generators();
    if (int(gens.size()) < point.size())
        throw std::invalid_argument("seed_generators: algebra '" + algebra->name() + "' tracks " +
                                    std::to_string(gens.size()) + " nilpotent generators but " +
                                    std::to_string(point.size()) + " variables were requested");
    std::vector<AlgebraElement> entries;
    entries.reserve(point.size());
    for (int i = 0; i < point.size(); ++i)
        entries.push_back(algebra->scalar(point[i]) + algebra->basis_element(gens[i]));
    return LiftedVector(algebra, std::move(entries));
}

Eigen::VectorXd LiftedVector::shadow() const {
    Eigen::VectorXd s(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) s[i] = entries_[i].aug();
    return s;
}

Eigen::VectorXd LiftedVector::flat() const {
    const int d = alg_->dim();
    Eigen::VectorXd f(d * int(entries_.size()));
    for (std::size_t i = 0; i < entries_.size(); ++i) f.segment(int(i) * d, d) = entries_[i].coeffs();
    return f;
}

// ============================================================================
// lift_primitive / eval_lift / push_hom
// ============================================================================

AlgebraElement lift_primitive(const TaylorTable& f, const AlgebraElement& a) {
    const double lambda = a.aug();
    if (auto msg = f.domain_violation(lambda); !msg.empty())
        throw std::domain_error(std::string("lift of ") + f.name() + ": " + msg);
    const auto& alg = a.algebra();
    if (alg->height() < 0)
        throw std::domain_error("lift of " + std::string(f.name()) + ": algebra '" + alg->name() +
                                "' is not a Weil algebra (ker(aug) not nilpotent)");

    AlgebraElement out = alg->scalar(f.coeff(lambda, 0));
    AlgebraElement n = a.nilpotent_part();
    AlgebraElement npow = alg->one();
    for (int j = 1; j <= alg->height(); ++j) {
        npow *= n;
        const double c = f.coeff(lambda, j);
        if (c != 0.0) out += npow * c;
    }
    return out;
}

LiftedVector eval_lift(const ExprGraph& g, const LiftedVector& v) {
    if (v.size() != g.arity())
        throw std::invalid_argument("eval_lift: graph arity " + std::to_string(g.arity()) +
                                    " but point has " + std::to_string(v.size()) + " entries");
    const auto& alg = v.algebra();
    std::vector<AlgebraElement> val;
    val.reserve(g.nodes().size());
    for (std::size_t idx = 0; idx < g.nodes().size(); ++idx) {
        const ExprNode& n = g.nodes()[idx];
        switch (n.kind) {
            case ExprNode::Kind::Input: val.push_back(v[n.input]); break;
            case ExprNode::Kind::Constant: val.push_back(alg->scalar(n.constant)); break;
            case ExprNode::Kind::Unary: {
                const TaylorTable t = taylor_table(n.uop, n.exponent);
                if (auto msg = t.domain_violation(val[n.operand].aug()); !msg.empty())
                    throw EvalDomainError(int(idx), msg);
                // negative powers route through the geometric-series inverse
                if (n.uop == UnaryOp::PowInt && n.exponent < 0)
                    val.push_back(lift_primitive(taylor_table(UnaryOp::PowInt, -n.exponent),
                                                 val[n.operand])
                                      .inverse());
                else
                    val.push_back(lift_primitive(t, val[n.operand]));
                break;
            }
            case ExprNode::Kind::Binary:
                val.push_back(n.bop == BinaryOp::Add ? val[n.lhs] + val[n.rhs]
                                                     : val[n.lhs] * val[n.rhs]);
                break;
        }
    }
    std::vector<AlgebraElement> out;
    out.reserve(g.outputs().size());
    for (int o : g.outputs()) out.push_back(val[o]);
    return LiftedVector(alg, std::move(out));
}

LiftedVector push_hom(const AlgebraHom& phi, const LiftedVector& v) {
    if (!same_algebra(v.algebra(), phi.source()))
        throw std::invalid_argument("push_hom: point over '" + v.algebra()->name() +
                                    "' but hom source is '" + phi.source()->name() + "'");
    std::vector<AlgebraElement> out;
    out.reserve(v.size());
    for (int i = 0; i < v.size(); ++i) out.push_back(phi.apply(v[i]));
    return LiftedVector(phi.target(), std::move(out));
}

// ============================================================================
// Step-3 formula oracle
// ============================================================================

std::vector<Poly> graph_polynomials(const ExprGraph& g) {
    std::vector<Poly> val;
    val.reserve(g.nodes().size());
    const int n = g.arity();
    for (std::size_t idx = 0; idx < g.nodes().size(); ++idx) {
        const ExprNode& nd = g.nodes()[idx];
        switch (nd.kind) {
            case ExprNode::Kind::Input: val.push_back(Poly::variable(nd.input, n)); break;
            case ExprNode::Kind::Constant: val.push_back(Poly::constant(nd.constant, n)); break;
            case ExprNode::Kind::Unary:
                if (nd.uop == UnaryOp::Neg)
                    val.push_back(-val[nd.operand]);
                else if (nd.uop == UnaryOp::PowInt && nd.exponent >= 0)
                    val.push_back(val[nd.operand].pow(nd.exponent));
                else
                    throw std::invalid_argument("graph is not polynomial: node " +
                                                std::to_string(idx) + " is " + unary_name(nd.uop));
                break;
            case ExprNode::Kind::Binary:
                val.push_back(nd.bop == BinaryOp::Add ? val[nd.lhs] + val[nd.rhs]
                                                      : val[nd.lhs] * val[nd.rhs]);
                break;
        }
    }
    std::vector<Poly> out;
    for (int o : g.outputs()) out.push_back(val[o]);
    return out;
}

LiftedVector taylor_formula_oracle(const ExprGraph& g, const LiftedVector& v,
                                   const std::optional<Eigen::MatrixXd>& nil_basis) {
    const auto& alg = v.algebra();
    const int dim = alg->dim();
    const int height = alg->height();
    if (height < 0)
        throw std::domain_error("taylor_formula_oracle: '" + alg->name() + "' is not a Weil algebra");
    if (v.size() != g.arity())
        throw std::invalid_argument("taylor_formula_oracle: arity mismatch");

    const std::vector<Poly> polys = graph_polynomials(g);  // rejects non-polynomial nodes

    Eigen::MatrixXd basis = nil_basis ? *nil_basis : alg->nilpotent_basis();
    const int nnil = int(basis.cols());
    if (int(basis.rows()) != dim)
        throw std::invalid_argument("taylor_formula_oracle: nilpotent basis has wrong row count");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> solver(basis);
    if (int(solver.rank()) != nnil)
        throw std::invalid_argument("taylor_formula_oracle: nilpotent basis is rank deficient");

    // Decompose v = 1 ⊗ x₁ + Σ_j n_j ⊗ x_j against {1, n_1..n_r}.
    const int n = g.arity();
    Eigen::VectorXd x1(n);
    std::vector<Eigen::VectorXd> xj(nnil, Eigen::VectorXd::Zero(n));  // vector paired with n_j
    for (int t = 0; t < n; ++t) {
        x1[t] = v[t].aug();
        Eigen::VectorXd y = solver.solve(v[t].coeffs() - x1[t] * alg->unit());
        for (int j = 0; j < nnil; ++j) xj[j][t] = y[j];
    }

    std::vector<AlgebraElement> nil_elems;
    for (int j = 0; j < nnil; ++j) nil_elems.push_back(alg->element(basis.col(j)));

    std::vector<AlgebraElement> out;
    for (const Poly& p : polys) {
        AlgebraElement acc = alg->scalar(p.eval(x1));
        // k-tuples (j₁..j_k) over the nilpotent basis, odometer order
        std::vector<int> tuple;
        for (int k = 1; k <= height; ++k) {
            if (nnil == 0) break;
            tuple.assign(k, 0);
            while (true) {
                AlgebraElement prod = nil_elems[tuple[0]];
                Poly deriv = p.directional(xj[tuple[0]]);
                for (int d = 1; d < k; ++d) {
                    prod *= nil_elems[tuple[d]];
                    deriv = deriv.directional(xj[tuple[d]]);
                }
                const double value = deriv.eval(x1) / factorial(k);
                if (value != 0.0) acc += prod * value;
                int d = 0;
                while (d < k && ++tuple[d] == nnil) tuple[d++] = 0;
                if (d == k) break;
            }
        }
        out.push_back(std::move(acc));
    }
    return LiftedVector(alg, std::move(out));
}

// ============================================================================
// recover_algebra
// ============================================================================

AlgebraPtr recover_algebra(const AlgebraPtr& a) {
    ExprGraph mul(2);
    mul.set_outputs({mul.binary(BinaryOp::Mul, mul.input(0), mul.input(1))});

    const int dim = a->dim();
    std::vector<double> sc(std::size_t(dim) * dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            LiftedVector v(a, {a->basis_element(i), a->basis_element(j)});
            Eigen::VectorXd prod = eval_lift(mul, v)[0].coeffs();
            for (int k = 0; k < dim; ++k) sc[(std::size_t(i) * dim + j) * dim + k] = prod[k];
        }
    return WeilAlgebra::create(a->unit(), std::move(sc), a->aug(), a->basis_labels(),
                               a->generators(), a->name() + "(recovered)");
}

// ============================================================================
// Nested evaluation
// ============================================================================

namespace {

// T_outer(T_inner(f)) on a single algebra element of outer ⊗ inner:
// decompose v = 1⊗b + n with b ∈ inner, n ∈ N_outer ⊗ inner, then
//   Σ_{k=0..h_out} n^k · (1 ⊗ s_k),
//   s_k = Σ_{i=0..h_in} C(k+i, i) · f^{(k+i)}(β)/(k+i)! · ñ^i
// where b = β·1 + ñ in the inner algebra.
AlgebraElement nested_lift_primitive(const TaylorTable& f, const AlgebraElement& v,
                                     const WeilAlgebra& outer, const WeilAlgebra& inner,
                                     const AlgebraPtr& tensor, int node) {
    const int da = outer.dim(), db = inner.dim();
    auto at = [da](int i, int j) { return i + j * da; };

    // inner component b = (aug_outer ⊗ id)(v)
    Eigen::VectorXd b = Eigen::VectorXd::Zero(db);
    for (int j = 0; j < db; ++j)
        for (int i = 0; i < da; ++i)
            if (outer.aug()[i] != 0.0) b[j] += outer.aug()[i] * v.coeff(at(i, j));

    const double beta = inner.aug_of(b);
    if (auto msg = f.domain_violation(beta); !msg.empty()) throw EvalDomainError(node, msg);

    // inner nilpotent powers ñ^i
    Eigen::VectorXd ntilde = b - beta * inner.unit();
    std::vector<Eigen::VectorXd> npow_in = {inner.unit()};
    for (int i = 1; i <= inner.height(); ++i)
        npow_in.push_back(inner.mul_coeffs(npow_in.back(), ntilde));

    // outer nilpotent part n = v − 1⊗b
    Eigen::VectorXd ncoeffs = v.coeffs();
    for (int i = 0; i < da; ++i)
        if (outer.unit()[i] != 0.0)
            for (int j = 0; j < db; ++j) ncoeffs[at(i, j)] -= outer.unit()[i] * b[j];
    AlgebraElement n = AlgebraElement(tensor, std::move(ncoeffs));

    auto embed = [&](const Eigen::VectorXd& s) {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(da * db);
        for (int i = 0; i < da; ++i)
            if (outer.unit()[i] != 0.0)
                for (int j = 0; j < db; ++j) c[at(i, j)] += outer.unit()[i] * s[j];
        return AlgebraElement(tensor, std::move(c));
    };

    AlgebraElement acc = AlgebraElement(tensor, Eigen::VectorXd::Zero(da * db));
    AlgebraElement npow = tensor->one();
    for (int k = 0; k <= outer.height(); ++k) {
        if (k > 0) npow *= n;
        Eigen::VectorXd s = Eigen::VectorXd::Zero(db);
        for (int i = 0; i <= inner.height(); ++i) {
            const double c = binomial(k + i, i) * f.coeff(beta, k + i);
            if (c != 0.0) s += c * npow_in[i];
        }
        acc += npow * embed(s);
    }
    return acc;
}

} // namespace

LiftedVector eval_nested(const ExprGraph& g, const LiftedVector& v, const AlgebraPtr& outer,
                         const AlgebraPtr& inner, const AlgebraPtr& tensor) {
    if (!same_algebra(v.algebra(), tensor))
        throw std::invalid_argument("eval_nested: point is not over the given tensor algebra");
    if (tensor->dim() != outer->dim() * inner->dim())
        throw std::invalid_argument("eval_nested: tensor algebra dimension mismatch");
    if (v.size() != g.arity())
        throw std::invalid_argument("eval_nested: arity mismatch");

    std::vector<AlgebraElement> val;
    val.reserve(g.nodes().size());
    for (std::size_t idx = 0; idx < g.nodes().size(); ++idx) {
        const ExprNode& n = g.nodes()[idx];
        switch (n.kind) {
            case ExprNode::Kind::Input: val.push_back(v[n.input]); break;
            case ExprNode::Kind::Constant: val.push_back(tensor->scalar(n.constant)); break;
            case ExprNode::Kind::Unary:
                val.push_back(nested_lift_primitive(taylor_table(n.uop, n.exponent), val[n.operand],
                                                    *outer, *inner, tensor, int(idx)));
                break;
            case ExprNode::Kind::Binary:
                val.push_back(n.bop == BinaryOp::Add ? val[n.lhs] + val[n.rhs]
                                                     : val[n.lhs] * val[n.rhs]);
                break;
        }
    }
    std::vector<AlgebraElement> out;
    for (int o : g.outputs()) out.push_back(val[o]);
    return LiftedVector(tensor, std::move(out));
}

} // namespace weil
