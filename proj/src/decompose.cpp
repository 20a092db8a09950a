#include "weil/decompose.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace weil {

namespace {

void check_table(const WeilAlgebra& a, double tol) {
    const int dim = a.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (std::abs(a.sc(i, j, k) - a.sc(j, i, k)) > tol)
                    throw std::invalid_argument("minimal_idempotents: input is not commutative");
    for (int i = 0; i < dim; ++i) {
        Eigen::VectorXd ui = a.mul_coeffs(a.unit(), Eigen::VectorXd::Unit(dim, i));
        if ((ui - Eigen::VectorXd::Unit(dim, i)).lpNorm<Eigen::Infinity>() > tol)
            throw std::invalid_argument("minimal_idempotents: unit law fails on the input table");
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                Eigen::VectorXd lhs = a.mul_coeffs(
                    a.mul_coeffs(Eigen::VectorXd::Unit(dim, i), Eigen::VectorXd::Unit(dim, j)),
                    Eigen::VectorXd::Unit(dim, k));
                Eigen::VectorXd rhs = a.mul_coeffs(
                    Eigen::VectorXd::Unit(dim, i),
                    a.mul_coeffs(Eigen::VectorXd::Unit(dim, j), Eigen::VectorXd::Unit(dim, k)));
                if ((lhs - rhs).lpNorm<Eigen::Infinity>() > tol)
                    throw std::invalid_argument("minimal_idempotents: input is not associative");
            }
}

} // namespace

Decomposition minimal_idempotents(const AlgebraPtr& algebra, const DecomposeOptions& opts) {
    const WeilAlgebra& a = *algebra;
    const int dim = a.dim();
    check_table(a, 1e-9);

    // Trace form gram(i, j) = trace(L_{b_i b_j}); its kernel is the radical.
    Eigen::VectorXd mult_traces(dim);
    for (int k = 0; k < dim; ++k) mult_traces[k] = a.basis_mult(k).trace();
    Eigen::MatrixXd gram(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            double t = 0.0;
            for (int k = 0; k < dim; ++k) t += a.sc(i, j, k) * mult_traces[k];
            gram(i, j) = gram(j, i) = t;
        }

    // The gram matrix is symmetric, so the quotient A/rad can be realised as
    // the orthogonal complement of the radical: singular vectors above the
    // rank cutoff.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeFullU);
    const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    int ss_dim = 0;
    while (ss_dim < dim && svd.singularValues()[ss_dim] > opts.rank_tol * std::max(1.0, smax))
        ++ss_dim;
    if (ss_dim == 0)
        throw std::invalid_argument("minimal_idempotents: trace form vanishes; table is degenerate");
    Eigen::MatrixXd quot = svd.matrixU().leftCols(ss_dim);  // dim × ss_dim, orthonormal

    // Structure constants of the quotient: multiply in A, project orthogonally.
    auto quot_mul = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return quot.transpose() * a.mul_coeffs(quot * u, quot * v);
    };

    // Formally-real test: every quotient basis multiplication operator must
    // have a real spectrum.
    for (int i = 0; i < ss_dim; ++i) {
        Eigen::MatrixXd li(ss_dim, ss_dim);
        for (int j = 0; j < ss_dim; ++j)
            li.col(j) = quot_mul(Eigen::VectorXd::Unit(ss_dim, i), Eigen::VectorXd::Unit(ss_dim, j));
        Eigen::EigenSolver<Eigen::MatrixXd> eig(li, false);
        const double scale = std::max(1.0, li.lpNorm<Eigen::Infinity>());
        for (int k = 0; k < ss_dim; ++k)
            if (std::abs(eig.eigenvalues()[k].imag()) > opts.imag_tol * scale) {
                std::ostringstream os;
                os << "not formally real: multiplication operator of quotient basis vector " << i
                   << " has eigenvalue " << eig.eigenvalues()[k];
                throw std::domain_error(os.str());
            }
    }

    // Separating element: a random quotient element whose multiplication
    // operator has simple spectrum; its eigenvectors span the component
    // idempotents of A/rad ≅ R^k.
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::MatrixXd evecs;
    bool separated = false;
    for (int attempt = 0; attempt < opts.separation_retries && !separated; ++attempt) {
        Eigen::VectorXd r(ss_dim);
        for (int i = 0; i < ss_dim; ++i) r[i] = uni(rng);
        Eigen::MatrixXd lr(ss_dim, ss_dim);
        for (int j = 0; j < ss_dim; ++j)
            lr.col(j) = quot_mul(r, Eigen::VectorXd::Unit(ss_dim, j));
        Eigen::EigenSolver<Eigen::MatrixXd> eig(lr);
        std::vector<double> vals(ss_dim);
        for (int k = 0; k < ss_dim; ++k) vals[k] = eig.eigenvalues()[k].real();
        std::sort(vals.begin(), vals.end());
        bool simple = true;
        for (int k = 0; k + 1 < ss_dim; ++k)
            if (std::abs(vals[k + 1] - vals[k]) < 1e-6 * std::max(1.0, std::abs(vals[k]))) {
                simple = false;
                break;
            }
        if (!simple) continue;
        evecs = eig.eigenvectors().real();
        separated = true;
    }
    if (!separated)
        throw std::runtime_error("minimal_idempotents: failed to find a separating element "
                                 "with simple spectrum");

    Decomposition out;
    std::vector<Eigen::VectorXd> idem_coeffs;
    for (int k = 0; k < ss_dim; ++k) {
        // Rescale the eigenvector to a quotient idempotent: v·v = c·v.
        Eigen::VectorXd v = evecs.col(k);
        Eigen::VectorXd vv = quot_mul(v, v);
        const double c = vv.dot(v) / v.dot(v);
        if (std::abs(c) < 1e-12)
            throw std::runtime_error("minimal_idempotents: eigenvector squares to zero in quotient");
        Eigen::VectorXd seed = quot * (v / c);

        // Cubic Newton lift e <- 3e² − 2e³ back in A.
        Eigen::VectorXd e = seed;
        double residual = std::numeric_limits<double>::infinity();
        for (int it = 0; it < opts.newton_budget; ++it) {
            Eigen::VectorXd e2 = a.mul_coeffs(e, e);
            residual = (e2 - e).lpNorm<Eigen::Infinity>();
            if (residual <= opts.newton_tol) break;
            e = 3.0 * e2 - 2.0 * a.mul_coeffs(e2, e);
        }
        if (residual > opts.newton_tol) {
            std::ostringstream os;
            os << "minimal_idempotents: idempotent lifting did not converge in "
               << opts.newton_budget << " iterations, residual " << residual;
            throw std::runtime_error(os.str());
        }
        idem_coeffs.push_back(std::move(e));
    }

    // Extract each summand e_i·A = range of the projection L_{e_i}.
    struct Block {
        Eigen::VectorXd idem;
        AlgebraPtr summand;
        Eigen::MatrixXd embedding;
    };
    std::vector<Block> blocks;
    for (const auto& e : idem_coeffs) {
        Eigen::MatrixXd proj = a.mult_operator(e);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(proj);
        qr.setThreshold(opts.rank_tol);
        const int d = int(qr.rank());
        Eigen::MatrixXd basis = qr.householderQ() * Eigen::MatrixXd::Identity(dim, d);

        std::vector<double> sc(std::size_t(d) * d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Eigen::VectorXd w = basis.transpose() * a.mul_coeffs(basis.col(i), basis.col(j));
                for (int k = 0; k < d; ++k) sc[(std::size_t(i) * d + j) * d + k] = w[k];
            }
        Eigen::VectorXd unit = basis.transpose() * e;

        // For a local algebra the augmentation is x ↦ trace(L_x)/dim.
        Eigen::RowVectorXd aug(d);
        for (int j = 0; j < d; ++j) {
            double tr = 0.0;
            for (int i = 0; i < d; ++i) tr += sc[(std::size_t(j) * d + i) * d + i];
            aug[j] = tr / d;
        }

        auto summand = WeilAlgebra::create(std::move(unit), std::move(sc), std::move(aug), {}, {},
                                           a.name() + ".summand");
        blocks.push_back({e, std::move(summand), std::move(basis)});
    }

    std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) {
        if (x.summand->dim() != y.summand->dim()) return x.summand->dim() > y.summand->dim();
        return std::lexicographical_compare(x.idem.data(), x.idem.data() + x.idem.size(),
                                            y.idem.data(), y.idem.data() + y.idem.size());
    });

    // self-check the decomposition identities before handing it out
    Eigen::VectorXd esum = Eigen::VectorXd::Zero(dim);
    for (const auto& b : blocks) esum += b.idem;
    double defect = (esum - a.unit()).lpNorm<Eigen::Infinity>();
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            defect = std::max(defect, a.mul_coeffs(blocks[i].idem, blocks[j].idem)
                                          .lpNorm<Eigen::Infinity>());
    if (defect > 1e-7) {
        std::ostringstream os;
        os << "minimal_idempotents: decomposition fails its own identities, defect " << defect;
        throw std::runtime_error(os.str());
    }

    for (auto& b : blocks) {
        out.idempotents.push_back({algebra->element(b.idem)});
        out.summands.push_back(std::move(b.summand));
        out.embeddings.push_back(std::move(b.embedding));
    }
    return out;
}

} // namespace weil
