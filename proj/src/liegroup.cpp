#include "weil/liegroup.hpp"

#include "weil/numeric.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace weil {

const char* group_tag_name(GroupTag tag) {
    switch (tag) {
        case GroupTag::GeneralLinear: return "GL";
        case GroupTag::SpecialOrthogonal: return "SO";
        case GroupTag::UpperUnipotent: return "unipotent";
    }
    return "?";
}

GroupTag group_of_lie_tag(LieTag tag) {
    switch (tag) {
        case LieTag::Full: return GroupTag::GeneralLinear;
        case LieTag::Antisymmetric: return GroupTag::SpecialOrthogonal;
        case LieTag::StrictlyUpper: return GroupTag::UpperUnipotent;
    }
    return GroupTag::GeneralLinear;
}

// ============================================================================
// LiftedMatrix
// ============================================================================

LiftedMatrix::LiftedMatrix(AlgebraPtr algebra, int n, GroupTag tag,
                           std::vector<AlgebraElement> entries)
    : alg_(std::move(algebra)), n_(n), tag_(tag), e_(std::move(entries)) {
    if (n_ < 1 || int(e_.size()) != n_ * n_)
        throw std::invalid_argument("LiftedMatrix: needs n*n entries");
    for (const auto& x : e_)
        if (!same_algebra(x.algebra(), alg_))
            throw std::invalid_argument("LiftedMatrix: entries over mixed algebras");
}

LiftedMatrix LiftedMatrix::from_real(const Eigen::MatrixXd& g, GroupTag tag,
                                     const AlgebraPtr& algebra) {
    if (g.rows() != g.cols()) throw std::invalid_argument("zero_section: matrix must be square");
    const int n = int(g.rows());
    std::vector<AlgebraElement> entries;
    entries.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) entries.push_back(algebra->scalar(g(i, j)));
    LiftedMatrix m(algebra, n, tag, std::move(entries));
    m.check_invariant();
    return m;
}

Eigen::MatrixXd LiftedMatrix::shadow() const {
    Eigen::MatrixXd s(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) s(i, j) = at(i, j).aug();
    return s;
}

AlgebraElement LiftedMatrix::det() const {
    // Laplace expansion along the first row on index submatrices; n stays
    // small for matrix groups handled here.
    std::vector<int> rows(n_), cols(n_);
    for (int i = 0; i < n_; ++i) rows[i] = cols[i] = i;

    std::function<AlgebraElement(std::vector<int>, std::vector<int>)> go =
        [&](std::vector<int> r, std::vector<int> c) -> AlgebraElement {
        if (r.size() == 1) return at(r[0], c[0]);
        AlgebraElement acc = alg_->zero();
        std::vector<int> rsub(r.begin() + 1, r.end());
        for (std::size_t k = 0; k < c.size(); ++k) {
            std::vector<int> csub;
            for (std::size_t t = 0; t < c.size(); ++t)
                if (t != k) csub.push_back(c[t]);
            AlgebraElement term = at(r[0], c[k]) * go(rsub, csub);
            acc += (k % 2 == 0) ? term : -term;
        }
        return acc;
    };
    return go(rows, cols);
}

LiftedMatrix LiftedMatrix::transpose() const {
    std::vector<AlgebraElement> entries;
    entries.reserve(n_ * n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) entries.push_back(at(j, i));
    return LiftedMatrix(alg_, n_, tag_, std::move(entries));
}

double LiftedMatrix::invariant_defect() const {
    switch (tag_) {
        case GroupTag::GeneralLinear: {
            const double d = shadow().determinant();
            return d == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        }
        case GroupTag::SpecialOrthogonal: {
            LiftedMatrix mtm = group_mul(transpose(), *this);
            double defect = 0.0;
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    Eigen::VectorXd want = (i == j) ? alg_->unit() : Eigen::VectorXd::Zero(alg_->dim());
                    defect = std::max(defect,
                                      (mtm.at(i, j).coeffs() - want).lpNorm<Eigen::Infinity>());
                }
            defect = std::max(defect, (det().coeffs() - alg_->unit()).lpNorm<Eigen::Infinity>());
            return defect;
        }
        case GroupTag::UpperUnipotent: {
            double defect = 0.0;
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j <= i; ++j) {
                    Eigen::VectorXd want = (i == j) ? alg_->unit() : Eigen::VectorXd::Zero(alg_->dim());
                    defect = std::max(defect,
                                      (at(i, j).coeffs() - want).lpNorm<Eigen::Infinity>());
                }
            return defect;
        }
    }
    return 0.0;
}

void LiftedMatrix::check_invariant(double tol) const {
    if (tag_ == GroupTag::GeneralLinear) {
        if (shadow().determinant() == 0.0)
            throw std::domain_error("not in T_A GL(n): augmentation of the determinant is zero");
        return;
    }
    const double d = invariant_defect();
    if (!(d <= tol)) {
        std::ostringstream os;
        os << group_tag_name(tag_) << " invariant violated, defect " << d;
        throw std::domain_error(os.str());
    }
}

Eigen::VectorXd LiftedMatrix::flat() const {
    const int d = alg_->dim();
    Eigen::VectorXd f(n_ * n_ * d);
    for (int i = 0; i < n_ * n_; ++i) f.segment(i * d, d) = e_[i].coeffs();
    return f;
}

LiftedMatrix group_mul(const LiftedMatrix& m, const LiftedMatrix& n) {
    if (!same_algebra(m.algebra(), n.algebra()))
        throw std::invalid_argument("group_mul: operands over different algebras ('" +
                                    m.algebra()->name() + "' vs '" + n.algebra()->name() + "')");
    if (m.tag() != n.tag() || m.n() != n.n())
        throw std::invalid_argument("group_mul: group tags or sizes differ");
    const int sz = m.n();
    const auto& alg = m.algebra();
    std::vector<AlgebraElement> out;
    out.reserve(sz * sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            AlgebraElement acc = m.at(i, 0) * n.at(0, j);
            for (int k = 1; k < sz; ++k) acc += m.at(i, k) * n.at(k, j);
            out.push_back(std::move(acc));
        }
    return LiftedMatrix(alg, sz, m.tag(), std::move(out));
}

LiftedMatrix group_identity(const AlgebraPtr& algebra, int n, GroupTag tag) {
    return LiftedMatrix::from_real(Eigen::MatrixXd::Identity(n, n), tag, algebra);
}

namespace {

// Adjugate-over-determinant inverse, exact for n ≤ 3.
LiftedMatrix inverse_adjugate(const LiftedMatrix& m) {
    const int n = m.n();
    const auto& alg = m.algebra();
    AlgebraElement det_inv = m.det().inverse();

    std::vector<AlgebraElement> out;
    out.reserve(n * n);
    if (n == 1) {
        out.push_back(det_inv);
        return LiftedMatrix(alg, 1, m.tag(), std::move(out));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // adj(M)_{ij} = (−1)^{i+j} · minor_{ji}
            std::vector<int> rows, cols;
            for (int r = 0; r < n; ++r)
                if (r != j) rows.push_back(r);
            for (int c = 0; c < n; ++c)
                if (c != i) cols.push_back(c);
            AlgebraElement minor = alg->zero();
            if (n == 2) {
                minor = m.at(rows[0], cols[0]);
            } else {  // n == 3
                minor = m.at(rows[0], cols[0]) * m.at(rows[1], cols[1]) -
                        m.at(rows[0], cols[1]) * m.at(rows[1], cols[0]);
            }
            AlgebraElement val = minor * det_inv;
            out.push_back(((i + j) % 2 == 0) ? val : -val);
        }
    return LiftedMatrix(alg, n, m.tag(), std::move(out));
}

// Terminating Neumann series around the inverted shadow:
// M = M₀(1 + K) with K nilpotent up to round-off, so
// M⁻¹ = (Σ_{j≤height} (−K)^j) · M₀⁻¹.
LiftedMatrix inverse_neumann(const LiftedMatrix& m) {
    const auto& alg = m.algebra();
    const int n = m.n();
    Eigen::MatrixXd shadow_inv = m.shadow().inverse();
    LiftedMatrix s = LiftedMatrix::from_real(shadow_inv, m.tag(), alg);
    LiftedMatrix id = group_identity(alg, n, m.tag());

    // K = M₀⁻¹·M − 1
    LiftedMatrix k = group_mul(s, m);
    std::vector<AlgebraElement> kminus;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            AlgebraElement v = k.at(i, j);
            if (i == j) v -= alg->one();
            kminus.push_back(-v);
        }
    LiftedMatrix negk(alg, n, m.tag(), std::move(kminus));

    LiftedMatrix acc = id;
    LiftedMatrix pw = id;
    for (int j = 1; j <= std::max(alg->height(), 0); ++j) {
        pw = group_mul(pw, negk);
        std::vector<AlgebraElement> sum;
        for (int i = 0; i < n * n; ++i)
            sum.push_back(acc.at(i / n, i % n) + pw.at(i / n, i % n));
        acc = LiftedMatrix(alg, n, m.tag(), std::move(sum));
    }
    return group_mul(acc, s);
}

} // namespace

LiftedMatrix group_inv(const LiftedMatrix& m) {
    if (m.shadow().determinant() == 0.0)
        throw std::domain_error("not in T_A GL(n): augmentation of the determinant is zero");
    if (m.algebra()->height() < 0)
        throw std::domain_error("group_inv: '" + m.algebra()->name() + "' is not a Weil algebra");
    return m.n() <= 3 ? inverse_adjugate(m) : inverse_neumann(m);
}

LiftedMatrix apply_hom(const AlgebraHom& phi, const LiftedMatrix& m) {
    std::vector<AlgebraElement> out;
    out.reserve(m.n() * m.n());
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) out.push_back(phi.apply(m.at(i, j)));
    return LiftedMatrix(phi.target(), m.n(), m.tag(), std::move(out));
}

// ============================================================================
// Lifted Lie algebra
// ============================================================================

LiftedLieAlgebraElement::LiftedLieAlgebraElement(AlgebraPtr algebra, int n, LieTag tag,
                                                 std::vector<AlgebraElement> entries, double tol)
    : alg_(std::move(algebra)), n_(n), tag_(tag), e_(std::move(entries)) {
    if (n_ < 1 || int(e_.size()) != n_ * n_)
        throw std::invalid_argument("LiftedLieAlgebraElement: needs n*n entries");
    for (const auto& x : e_)
        if (!same_algebra(x.algebra(), alg_))
            throw std::invalid_argument("LiftedLieAlgebraElement: entries over mixed algebras");

    double defect = 0.0;
    if (tag_ == LieTag::Antisymmetric) {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                defect = std::max(defect, (at(i, j).coeffs() + at(j, i).coeffs())
                                              .lpNorm<Eigen::Infinity>());
    } else if (tag_ == LieTag::StrictlyUpper) {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j <= i; ++j)
                defect = std::max(defect, at(i, j).coeffs().lpNorm<Eigen::Infinity>());
    }
    if (defect > tol) {
        std::ostringstream os;
        os << "LiftedLieAlgebraElement: constraint violated, defect " << defect;
        throw std::invalid_argument(os.str());
    }
}

LiftedLieAlgebraElement LiftedLieAlgebraElement::pure_tensor(const Eigen::MatrixXd& x,
                                                             const AlgebraElement& a, LieTag tag) {
    const int n = int(x.rows());
    std::vector<AlgebraElement> entries;
    entries.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) entries.push_back(a * x(i, j));
    return LiftedLieAlgebraElement(a.algebra(), n, tag, std::move(entries));
}

LiftedLieAlgebraElement LiftedLieAlgebraElement::zero(const AlgebraPtr& algebra, int n,
                                                      LieTag tag) {
    std::vector<AlgebraElement> entries(std::size_t(n) * n, algebra->zero());
    return LiftedLieAlgebraElement(algebra, n, tag, std::move(entries));
}

LiftedLieAlgebraElement LiftedLieAlgebraElement::scaled(double s) const {
    std::vector<AlgebraElement> entries;
    entries.reserve(e_.size());
    for (const auto& x : e_) entries.push_back(x * s);
    return LiftedLieAlgebraElement(alg_, n_, tag_, std::move(entries));
}

Eigen::VectorXd LiftedLieAlgebraElement::flat() const {
    const int d = alg_->dim();
    Eigen::VectorXd f(n_ * n_ * d);
    for (int i = 0; i < n_ * n_; ++i) f.segment(i * d, d) = e_[i].coeffs();
    return f;
}

LiftedMatrix lifted_exp(const LiftedLieAlgebraElement& x) {
    const auto& alg = x.algebra();
    const int n = x.n();
    const GroupTag gtag = group_of_lie_tag(x.tag());

    // real-part cutoff J₀: ‖X₀‖^{J+1}/(J+1)! < 1e−14
    Eigen::MatrixXd x0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x0(i, j) = x.at(i, j).aug();
    const double norm = std::max(x0.norm(), 1e-8);
    int j0 = 0;
    double bound = norm;  // ‖X₀‖^{j0+1}/(j0+1)!
    while (bound >= 1e-14 && j0 < 300) {
        ++j0;
        bound *= norm / (j0 + 1);
    }
    const int height = std::max(alg->height(), 0);
    const int terms = std::max(j0, (height + 1) * (j0 + 1));

    LiftedMatrix xm(alg, n, gtag, x.entries());
    LiftedMatrix acc = group_identity(alg, n, gtag);
    LiftedMatrix pw = acc;
    double inv_fact = 1.0;
    for (int j = 1; j <= terms; ++j) {
        pw = group_mul(pw, xm);
        inv_fact /= j;
        std::vector<AlgebraElement> sum;
        sum.reserve(std::size_t(n) * n);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) sum.push_back(acc.at(i, c) + pw.at(i, c) * inv_fact);
        acc = LiftedMatrix(alg, n, gtag, std::move(sum));
    }
    return acc;
}

LiftedLieAlgebraElement lifted_bracket(const LiftedLieAlgebraElement& x,
                                       const LiftedLieAlgebraElement& y) {
    if (!same_algebra(x.algebra(), y.algebra()))
        throw std::invalid_argument("lifted_bracket: operands over different algebras ('" +
                                    x.algebra()->name() + "' vs '" + y.algebra()->name() + "')");
    if (x.tag() != y.tag() || x.n() != y.n())
        throw std::invalid_argument("lifted_bracket: constraint tags or sizes differ");
    const int n = x.n();
    const auto& alg = x.algebra();
    std::vector<AlgebraElement> out;
    out.reserve(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            AlgebraElement acc = x.at(i, 0) * y.at(0, j) - y.at(i, 0) * x.at(0, j);
            for (int k = 1; k < n; ++k)
                acc += x.at(i, k) * y.at(k, j) - y.at(i, k) * x.at(k, j);
            out.push_back(std::move(acc));
        }
    // the bracket stays in the constrained subalgebra; allow round-off
    return LiftedLieAlgebraElement(alg, n, x.tag(), std::move(out), 1e-9);
}

LiftedLieAlgebraElement apply_hom(const AlgebraHom& phi, const LiftedLieAlgebraElement& x) {
    std::vector<AlgebraElement> out;
    out.reserve(x.entries().size());
    for (const auto& e : x.entries()) out.push_back(phi.apply(e));
    return LiftedLieAlgebraElement(phi.target(), x.n(), x.tag(), std::move(out), 1e-9);
}

// ============================================================================
// Zero section / semidirect factorization
// ============================================================================

LiftedMatrix zero_section(const Eigen::MatrixXd& g, GroupTag tag, const AlgebraPtr& algebra) {
    return LiftedMatrix::from_real(g, tag, algebra);
}

SemidirectReport semidirect_check(const LiftedMatrix& m) {
    const Eigen::MatrixXd base = m.shadow();
    LiftedMatrix zs = zero_section(base, m.tag(), m.algebra());
    LiftedMatrix u = group_mul(m, group_inv(zs));

    LiftedMatrix back = group_mul(u, zs);
    const double residual = (back.flat() - m.flat()).lpNorm<Eigen::Infinity>();
    const double fib = (u.shadow() - Eigen::MatrixXd::Identity(m.n(), m.n()))
                           .lpNorm<Eigen::Infinity>();
    return SemidirectReport{std::move(u), base, residual, fib};
}

} // namespace weil
