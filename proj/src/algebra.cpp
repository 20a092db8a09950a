#include "weil/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace weil {

namespace {

// Orthonormal basis of the column span, dropping columns below `zero_tol`
// and directions below a relative rank threshold.
Eigen::MatrixXd column_span(const Eigen::MatrixXd& cols, double zero_tol) {
    if (cols.cols() == 0) return Eigen::MatrixXd(cols.rows(), 0);
    Eigen::MatrixXd kept(cols.rows(), cols.cols());
    int n = 0;
    for (int c = 0; c < cols.cols(); ++c)
        if (cols.col(c).lpNorm<Eigen::Infinity>() > zero_tol) kept.col(n++) = cols.col(c);
    if (n == 0) return Eigen::MatrixXd(cols.rows(), 0);
    kept.conservativeResize(Eigen::NoChange, n);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(kept);
    qr.setThreshold(1e-9);
    const int r = int(qr.rank());
    if (r == 0) return Eigen::MatrixXd(cols.rows(), 0);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(cols.rows(), r);
    return q;
}

// Nilpotency order of span(nil) under the given multiplication: smallest h
// with N^{h+1} = 0, or −1 when the powers never vanish (stabilize nonzero).
int nilpotency_height(const WeilAlgebra& a, const Eigen::MatrixXd& nil, double zero_tol) {
    if (nil.cols() == 0) return 0;
    Eigen::MatrixXd power = nil;
    for (int level = 1; level <= a.dim() + 1; ++level) {
        Eigen::MatrixXd products(a.dim(), power.cols() * nil.cols());
        int c = 0;
        for (int u = 0; u < power.cols(); ++u)
            for (int v = 0; v < nil.cols(); ++v)
                products.col(c++) = a.mul_coeffs(power.col(u), nil.col(v));
        Eigen::MatrixXd next = column_span(products, zero_tol);
        if (next.cols() == 0) return level;
        power = next;
    }
    return -1;
}

std::vector<std::string> default_labels(int dim) {
    std::vector<std::string> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = "e" + std::to_string(i);
    return out;
}

} // namespace

// ============================================================================
// WeilAlgebra
// ============================================================================

AlgebraPtr WeilAlgebra::create(Eigen::VectorXd unit, std::vector<double> sc,
                               Eigen::RowVectorXd aug,
                               std::vector<std::string> labels,
                               std::vector<int> generators, std::string name) {
    const int dim = int(unit.size());
    if (dim < 1)
        throw std::invalid_argument("WeilAlgebra: dim must be >= 1 (the zero algebra is not allowed)");
    if (int(aug.size()) != dim)
        throw std::invalid_argument("WeilAlgebra: aug length does not match dim");
    if (sc.size() != std::size_t(dim) * dim * dim)
        throw std::invalid_argument("WeilAlgebra: structure constant array must have dim^3 entries");
    if (!labels.empty() && int(labels.size()) != dim)
        throw std::invalid_argument("WeilAlgebra: label count does not match dim");
    for (int g : generators)
        if (g < 0 || g >= dim)
            throw std::invalid_argument("WeilAlgebra: generator index out of range");

    auto a = std::shared_ptr<WeilAlgebra>(new WeilAlgebra());
    a->dim_ = dim;
    a->unit_ = std::move(unit);
    a->sc_ = std::move(sc);
    a->aug_ = std::move(aug);
    a->labels_ = labels.empty() ? default_labels(dim) : std::move(labels);
    a->generators_ = std::move(generators);
    a->name_ = std::move(name);

    a->mult_.resize(dim);
    for (int i = 0; i < dim; ++i) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) m(k, j) = a->sc(i, j, k);
        a->mult_[i] = std::move(m);
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a->aug_);
    Eigen::MatrixXd kernel = lu.kernel();
    if (lu.rank() == 0) kernel = Eigen::MatrixXd::Identity(dim, dim);
    // lu.kernel() signals a trivial kernel with a single zero column;
    // column_span drops it
    a->nil_basis_ = column_span(kernel, 0.0);

    double scale = 1.0;
    for (double v : a->sc_) scale = std::max(scale, std::abs(v));
    a->height_ = nilpotency_height(*a, a->nil_basis_, 1e-10 * scale);
    return a;
}

Eigen::VectorXd WeilAlgebra::mul_coeffs(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        for (int j = 0; j < dim_; ++j) {
            const double bj = b[j];
            if (bj == 0.0) continue;
            const double* c = &sc_[(std::size_t(i) * dim_ + j) * dim_];
            const double aibj = ai * bj;
            for (int k = 0; k < dim_; ++k)
                if (c[k] != 0.0) out[k] += aibj * c[k];
        }
    }
    return out;
}

Eigen::MatrixXd WeilAlgebra::mult_operator(const Eigen::VectorXd& a) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        if (a[i] != 0.0) m += a[i] * mult_[i];
    return m;
}

AlgebraElement WeilAlgebra::element(Eigen::VectorXd coeffs) const {
    return AlgebraElement(shared_from_this(), std::move(coeffs));
}

AlgebraElement WeilAlgebra::scalar(double lambda) const {
    return element(lambda * unit_);
}

AlgebraElement WeilAlgebra::basis_element(int i) const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(dim_);
    c[i] = 1.0;
    return element(std::move(c));
}

AlgebraElement WeilAlgebra::zero() const {
    return element(Eigen::VectorXd::Zero(dim_));
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->dim() != b->dim()) return false;
    if (a->unit() != b->unit() || a->aug() != b->aug()) return false;
    return a->structure_constants() == b->structure_constants();
}

// ============================================================================
// AlgebraElement
// ============================================================================

AlgebraElement::AlgebraElement(AlgebraPtr algebra, Eigen::VectorXd coeffs)
    : alg_(std::move(algebra)), c_(std::move(coeffs)) {
    if (int(c_.size()) != alg_->dim())
        throw std::invalid_argument("AlgebraElement: coefficient length does not match algebra '" +
                                    alg_->name() + "'");
}

void AlgebraElement::require_same(const AlgebraElement& rhs, const char* op) const {
    if (!same_algebra(alg_, rhs.alg_))
        throw std::invalid_argument(std::string(op) + ": operands belong to different algebras ('" +
                                    alg_->name() + "' vs '" + rhs.alg_->name() + "')");
}

AlgebraElement AlgebraElement::nilpotent_part() const {
    return alg_->element(c_ - aug() * alg_->unit());
}

AlgebraElement AlgebraElement::inverse() const {
    const double lambda = aug();
    if (lambda == 0.0)
        throw std::domain_error("not invertible: augmentation is zero");
    if (alg_->height() < 0)
        throw std::domain_error("cannot invert in '" + alg_->name() +
                                "': ker(aug) is not nilpotent");
    // a = λ(1 + n/λ)  =>  a⁻¹ = λ⁻¹ Σ_{j=0..h} (−n/λ)^j
    AlgebraElement t = nilpotent_part() * (-1.0 / lambda);
    AlgebraElement acc = alg_->one();
    AlgebraElement p = alg_->one();
    for (int j = 1; j <= alg_->height(); ++j) {
        p *= t;
        acc += p;
    }
    return acc * (1.0 / lambda);
}

AlgebraElement AlgebraElement::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    AlgebraElement acc = alg_->one();
    for (int i = 0; i < k; ++i) acc *= *this;
    return acc;
}

AlgebraElement AlgebraElement::operator-() const { return alg_->element(-c_); }

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
    require_same(rhs, "elem_add");
    c_ += rhs.c_;
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
    require_same(rhs, "elem_sub");
    c_ -= rhs.c_;
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const AlgebraElement& rhs) {
    require_same(rhs, "elem_mul");
    c_ = alg_->mul_coeffs(c_, rhs.c_);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s) {
    c_ *= s;
    return *this;
}

AlgebraElement elem_add(const AlgebraElement& a, const AlgebraElement& b) { return a + b; }
AlgebraElement elem_mul(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }
AlgebraElement elem_scale(const AlgebraElement& a, double s) { return a * s; }
AlgebraElement elem_invert(const AlgebraElement& a) { return a.inverse(); }

// ============================================================================
// AlgebraHom
// ============================================================================

AlgebraHom AlgebraHom::make(Eigen::MatrixXd matrix, AlgebraPtr source,
                            AlgebraPtr target, double tol) {
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
        throw std::invalid_argument("AlgebraHom: matrix must be dim(target) x dim(source)");

    const Eigen::VectorXd unit_img = matrix * source->unit();
    if ((unit_img - target->unit()).lpNorm<Eigen::Infinity>() > tol)
        throw std::invalid_argument("AlgebraHom: phi(1) != 1");

    for (int i = 0; i < source->dim(); ++i) {
        for (int j = 0; j < source->dim(); ++j) {
            Eigen::VectorXd lhs = matrix * source->mul_coeffs(
                Eigen::VectorXd::Unit(source->dim(), i), Eigen::VectorXd::Unit(source->dim(), j));
            Eigen::VectorXd rhs = target->mul_coeffs(matrix.col(i), matrix.col(j));
            const double err = (lhs - rhs).lpNorm<Eigen::Infinity>();
            if (err > tol) {
                std::ostringstream os;
                os << "AlgebraHom: not multiplicative on basis pair (" << i << "," << j
                   << "), residual " << err;
                throw std::invalid_argument(os.str());
            }
        }
    }

    if ((target->aug() * matrix - source->aug()).lpNorm<Eigen::Infinity>() > tol)
        throw std::invalid_argument("AlgebraHom: aug_target . phi != aug_source");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(matrix);
    const int rank = int(qr.rank());

    AlgebraHom h;
    h.m_ = std::move(matrix);
    h.src_ = std::move(source);
    h.dst_ = std::move(target);
    h.injective_ = rank == h.src_->dim();
    h.surjective_ = rank == h.dst_->dim();
    return h;
}

AlgebraHom AlgebraHom::identity(const AlgebraPtr& a) {
    return make(Eigen::MatrixXd::Identity(a->dim(), a->dim()), a, a);
}

AlgebraElement AlgebraHom::apply(const AlgebraElement& a) const {
    if (!same_algebra(a.algebra(), src_))
        throw std::invalid_argument("AlgebraHom: element of '" + a.algebra()->name() +
                                    "' fed to hom with source '" + src_->name() + "'");
    return dst_->element(m_ * a.coeffs());
}

AlgebraHom AlgebraHom::compose(const AlgebraHom& inner) const {
    if (!same_algebra(inner.dst_, src_))
        throw std::invalid_argument("AlgebraHom::compose: inner target '" + inner.dst_->name() +
                                    "' does not match source '" + src_->name() + "'");
    return make(m_ * inner.m_, inner.src_, dst_);
}

// ============================================================================
// Monomial quotients
// ============================================================================

namespace {

std::vector<std::string> variable_names(int w) {
    if (w == 1) return {"x"};
    if (w == 2) return {"x", "y"};
    if (w == 3) return {"x", "y", "z"};
    std::vector<std::string> v(w);
    for (int i = 0; i < w; ++i) v[i] = "x" + std::to_string(i + 1);
    return v;
}

std::string monomial_label(const std::vector<int>& e, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[v];
        if (e[v] > 1) s += "^" + std::to_string(e[v]);
    }
    return s.empty() ? "1" : s;
}

bool divides(const std::vector<int>& g, const std::vector<int>& m) {
    for (std::size_t v = 0; v < g.size(); ++v)
        if (g[v] > m[v]) return false;
    return true;
}

int total_degree(const std::vector<int>& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

// Graded order; within a degree, larger exponent on earlier variables first
// (so x precedes y).
bool graded_before(const std::vector<int>& a, const std::vector<int>& b) {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
}

} // namespace

AlgebraPtr make_monomial_quotient(int num_vars,
                                  const std::vector<std::vector<int>>& excluded) {
    if (num_vars < 0)
        throw std::invalid_argument("make_monomial_quotient: num_vars must be nonnegative");
    if (num_vars == 0) {
        if (!excluded.empty())
            throw std::invalid_argument("make_monomial_quotient: num_vars = 0 with nonempty exclusions");
        return make_monomial_quotient(1, {{1}});  // R presented with one killed variable
    }
    const auto vars = variable_names(num_vars);

    for (const auto& g : excluded) {
        if (int(g.size()) != num_vars)
            throw std::invalid_argument("make_monomial_quotient: exponent vector length != num_vars");
        for (int e : g)
            if (e < 0) throw std::invalid_argument("make_monomial_quotient: negative exponent");
        if (total_degree(g) == 0)
            throw std::invalid_argument("make_monomial_quotient: excluding the constant monomial "
                                        "yields the zero algebra");
    }

    // Cofiniteness: each variable needs an excluded pure power.
    std::vector<int> bound(num_vars, -1);
    for (const auto& g : excluded) {
        int support = -1;
        bool pure = true;
        for (int v = 0; v < num_vars; ++v) {
            if (g[v] > 0) {
                if (support >= 0) { pure = false; break; }
                support = v;
            }
        }
        if (pure && support >= 0)
            bound[support] = bound[support] < 0 ? g[support] : std::min(bound[support], g[support]);
    }
    for (int v = 0; v < num_vars; ++v)
        if (bound[v] < 0)
            throw std::invalid_argument("make_monomial_quotient: ideal is not cofinite, no pure power "
                                        "of variable '" + vars[v] + "' is excluded");

    // Enumerate surviving monomials inside the bounding box.
    std::vector<std::vector<int>> basis;
    std::vector<int> e(num_vars, 0);
    while (true) {
        bool killed = false;
        for (const auto& g : excluded)
            if (divides(g, e)) { killed = true; break; }
        if (!killed) basis.push_back(e);
        int v = 0;
        while (v < num_vars) {
            if (++e[v] < bound[v]) break;
            e[v] = 0;
            ++v;
        }
        if (v == num_vars) break;
    }
    std::sort(basis.begin(), basis.end(), graded_before);

    const int dim = int(basis.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < dim; ++i) index[basis[i]] = i;

    std::vector<double> sc(std::size_t(dim) * dim * dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            std::vector<int> prod(num_vars);
            for (int v = 0; v < num_vars; ++v) prod[v] = basis[i][v] + basis[j][v];
            bool killed = false;
            for (const auto& g : excluded)
                if (divides(g, prod)) { killed = true; break; }
            if (killed) continue;
            const int k = index.at(prod);
            sc[(std::size_t(i) * dim + j) * dim + k] = 1.0;
            sc[(std::size_t(j) * dim + i) * dim + k] = 1.0;
        }
    }

    std::vector<std::string> labels(dim);
    std::vector<int> gens;
    for (int i = 0; i < dim; ++i) {
        labels[i] = monomial_label(basis[i], vars);
        if (total_degree(basis[i]) == 1) gens.push_back(i);
    }

    Eigen::VectorXd unit = Eigen::VectorXd::Unit(dim, 0);
    Eigen::RowVectorXd aug = Eigen::RowVectorXd::Zero(dim);
    aug[0] = 1.0;
    return WeilAlgebra::create(std::move(unit), std::move(sc), std::move(aug),
                               std::move(labels), std::move(gens), "monomial-quotient");
}

namespace {

AlgebraPtr rename(AlgebraPtr a, const std::string& name) {
    return WeilAlgebra::create(a->unit(), a->structure_constants(), a->aug(),
                               a->basis_labels(), a->generators(), name);
}

} // namespace

AlgebraPtr dual_numbers() {
    static const AlgebraPtr d = rename(make_monomial_quotient(1, {{2}}), "dual");
    return d;
}

AlgebraPtr jet_algebra(int order, int vars) {
    if (order < 0 || vars < 1)
        throw std::invalid_argument("jet_algebra: order must be >= 0 and vars >= 1");
    // exclude every monomial of total degree order+1
    std::vector<std::vector<int>> excl;
    std::vector<int> e(vars, 0);
    e[0] = order + 1;
    while (true) {
        excl.push_back(e);
        // next composition of order+1 into `vars` parts
        int v = 0;
        while (v < vars - 1 && e[v] == 0) ++v;
        if (v == vars - 1) break;
        const int head = e[v];
        e[v] = 0;
        e[v + 1] += 1;
        e[0] = head - 1;
    }
    std::string name = "jet:" + std::to_string(order);
    if (vars > 1) name += ":" + std::to_string(vars);
    return rename(make_monomial_quotient(vars, excl), name);
}

AlgebraPtr real_algebra() {
    static const AlgebraPtr r = rename(make_monomial_quotient(1, {{1}}), "R");
    return r;
}

// ============================================================================
// Tensor products, basis changes, direct sums
// ============================================================================

namespace {

// Index of the basis vector equal to the unit, when the unit is a standard
// basis vector; −1 otherwise.
int unit_index(const WeilAlgebra& a) {
    int idx = -1;
    for (int i = 0; i < a.dim(); ++i) {
        const double u = a.unit()[i];
        if (u == 1.0) {
            if (idx >= 0) return -1;
            idx = i;
        } else if (u != 0.0) {
            return -1;
        }
    }
    return idx;
}

} // namespace

AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b) {
    const int da = a->dim(), db = b->dim();
    const int dim = da * db;
    // basis pair (i, j) sits at index i + j*da: the A factor varies fastest
    auto at = [da](int i, int j) { return i + j * da; };

    std::vector<double> sc(std::size_t(dim) * dim * dim, 0.0);
    for (int i = 0; i < da; ++i)
        for (int ip = 0; ip < da; ++ip)
            for (int j = 0; j < db; ++j)
                for (int jp = 0; jp < db; ++jp) {
                    const int row = at(i, j), col = at(ip, jp);
                    for (int k = 0; k < da; ++k) {
                        const double ca = a->sc(i, ip, k);
                        if (ca == 0.0) continue;
                        for (int l = 0; l < db; ++l) {
                            const double cb = b->sc(j, jp, l);
                            if (cb == 0.0) continue;
                            sc[(std::size_t(row) * dim + col) * dim + at(k, l)] += ca * cb;
                        }
                    }
                }

    Eigen::VectorXd unit(dim);
    Eigen::RowVectorXd aug(dim);
    std::vector<std::string> labels(dim);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) {
            unit[at(i, j)] = a->unit()[i] * b->unit()[j];
            aug[at(i, j)] = a->aug()[i] * b->aug()[j];
            labels[at(i, j)] = a->label(i) + "⊗" + b->label(j);
        }

    std::vector<int> gens;
    const int ua = unit_index(*a), ub = unit_index(*b);
    if (ua >= 0 && ub >= 0) {
        for (int g : a->generators()) gens.push_back(at(g, ub));
        for (int g : b->generators()) gens.push_back(at(ua, g));
    }

    return WeilAlgebra::create(std::move(unit), std::move(sc), std::move(aug),
                               std::move(labels), std::move(gens),
                               a->name() + "*" + b->name());
}

AlgebraHom exchange_iso(const AlgebraPtr& a, const AlgebraPtr& b) {
    AlgebraPtr ab = tensor_product(a, b);
    AlgebraPtr ba = tensor_product(b, a);
    const int da = a->dim(), db = b->dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ab->dim(), ab->dim());
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            m(j + i * db, i + j * da) = 1.0;
    return AlgebraHom::make(std::move(m), std::move(ab), std::move(ba));
}

AlgebraPtr change_basis(const AlgebraPtr& a, const Eigen::MatrixXd& P) {
    const int dim = a->dim();
    if (P.rows() != dim || P.cols() != dim)
        throw std::invalid_argument("change_basis: P must be dim x dim");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(P);
    if (std::abs(lu.determinant()) < 1e-12)
        throw std::invalid_argument("change_basis: P is singular");

    std::vector<double> sc(std::size_t(dim) * dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Eigen::VectorXd w = lu.solve(a->mul_coeffs(P.col(i), P.col(j)));
            for (int k = 0; k < dim; ++k)
                sc[(std::size_t(i) * dim + j) * dim + k] = w[k];
        }
    Eigen::VectorXd unit = lu.solve(a->unit());
    Eigen::RowVectorXd aug = a->aug() * P;
    return WeilAlgebra::create(std::move(unit), std::move(sc), std::move(aug), {}, {},
                               a->name() + "(rebased)");
}

AlgebraPtr direct_sum(const std::vector<AlgebraPtr>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("direct_sum: no blocks");
    int dim = 0;
    for (const auto& b : blocks) dim += b->dim();

    std::vector<double> sc(std::size_t(dim) * dim * dim, 0.0);
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(dim);
    Eigen::RowVectorXd aug = Eigen::RowVectorXd::Zero(dim);
    std::string name;
    int off = 0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& b = blocks[bi];
        const int d = b->dim();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    sc[(std::size_t(off + i) * dim + (off + j)) * dim + (off + k)] = b->sc(i, j, k);
        unit.segment(off, d) = b->unit();
        if (bi == 0) aug.segment(off, d) = b->aug();
        if (bi > 0) name += "+";
        name += b->name();
        off += d;
    }
    return WeilAlgebra::create(std::move(unit), std::move(sc), std::move(aug), {}, {}, name);
}

// ============================================================================
// Validation
// ============================================================================

std::string ValidationReport::summary() const {
    std::ostringstream os;
    if (valid) {
        os << "valid Weil algebra, height " << height;
        return os.str();
    }
    os << issues.size() << " violation(s):";
    std::size_t shown = 0;
    for (const auto& issue : issues) {
        if (shown++ == 10) { os << "\n  ..."; break; }
        os << "\n  " << issue.identity << " at " << issue.witness;
    }
    return os.str();
}

ValidationReport validate(const WeilAlgebra& a, double tol) {
    ValidationReport rep;
    const int dim = a.dim();
    auto unit_vec = a.unit();

    auto add = [&rep](std::string identity, std::string witness) {
        rep.issues.push_back({std::move(identity), std::move(witness)});
    };

    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (std::abs(a.sc(i, j, k) - a.sc(j, i, k)) > tol) {
                    std::ostringstream os;
                    os << "(i,j,k)=(" << i << "," << j << "," << k << ")";
                    add("commutativity: c[i][j][k] = c[j][i][k]", os.str());
                }

    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Eigen::VectorXd bij = a.mul_coeffs(Eigen::VectorXd::Unit(dim, i),
                                               Eigen::VectorXd::Unit(dim, j));
            for (int k = 0; k < dim; ++k) {
                Eigen::VectorXd bjk = a.mul_coeffs(Eigen::VectorXd::Unit(dim, j),
                                                   Eigen::VectorXd::Unit(dim, k));
                Eigen::VectorXd lhs = a.mul_coeffs(bij, Eigen::VectorXd::Unit(dim, k));
                Eigen::VectorXd rhs = a.mul_coeffs(Eigen::VectorXd::Unit(dim, i), bjk);
                if ((lhs - rhs).lpNorm<Eigen::Infinity>() > tol) {
                    std::ostringstream os;
                    os << "(i,j,k)=(" << i << "," << j << "," << k << ")";
                    add("associativity: (b_i b_j) b_k = b_i (b_j b_k)", os.str());
                }
            }
        }

    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd ui = a.mul_coeffs(unit_vec, Eigen::VectorXd::Unit(dim, i));
        if ((ui - Eigen::VectorXd::Unit(dim, i)).lpNorm<Eigen::Infinity>() > tol)
            add("unit law: 1 * b_i = b_i", "i=" + std::to_string(i));
    }

    if (a.aug().lpNorm<Eigen::Infinity>() == 0.0)
        add("aug != 0", "aug vanishes identically");
    if (std::abs(a.aug_of(unit_vec) - 1.0) > tol)
        add("aug(1) = 1", "aug(1) = " + std::to_string(a.aug_of(unit_vec)));
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            const double lhs = a.aug_of(a.mul_coeffs(Eigen::VectorXd::Unit(dim, i),
                                                     Eigen::VectorXd::Unit(dim, j)));
            const double rhs = a.aug()[i] * a.aug()[j];
            if (std::abs(lhs - rhs) > tol) {
                std::ostringstream os;
                os << "(i,j)=(" << i << "," << j << ")";
                add("aug(xy) = aug(x)aug(y)", os.str());
            }
        }

    rep.height = a.height();
    if (rep.height < 0)
        add("nilpotency: ker(aug) nilpotent",
            "iterated powers of ker(aug) do not vanish within dim steps");

    rep.valid = rep.issues.empty();
    return rep;
}

} // namespace weil
