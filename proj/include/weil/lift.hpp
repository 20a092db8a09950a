#pragma once

#include "weil/algebra.hpp"
#include "weil/expr.hpp"

#include <optional>
#include <string>
#include <vector>

namespace weil {

// ============================================================================
// Taylor tables
// ============================================================================

/// Scaled derivative generator of a primitive: coeff(λ, j) = f^{(j)}(λ)/j!,
/// in closed form (cyclic for exp/sin/cos, falling factorials for
/// log/inv/sqrt/pow).  The order-0 entry is the primitive's plain value.
struct TaylorTable {
    UnaryOp op;
    int exponent = 0;  ///< only for PowInt

    const char* name() const { return unary_name(op); }
    double coeff(double lambda, int j) const;

    /// Empty when λ is admissible, otherwise the violation message.
    std::string domain_violation(double lambda) const {
        return primitive_domain_violation(op, exponent, lambda);
    }
};

inline TaylorTable taylor_table(UnaryOp op, int exponent = 0) { return {op, exponent}; }

// ============================================================================
// LiftedVector
// ============================================================================

/// An element of T_A R^n = A^n: n coefficient vectors over one algebra.
class LiftedVector {
public:
    LiftedVector(AlgebraPtr algebra, std::vector<AlgebraElement> entries);

    /// The zero section: real coordinates with vanishing nilpotent parts.
    static LiftedVector from_reals(const AlgebraPtr& algebra, const Eigen::VectorXd& point);

    /// Base point plus the algebra's canonical generators: entry j becomes
    /// point[j]·1 + g_j.  Requires at least n tracked generators.
    static LiftedVector seed_generators(const AlgebraPtr& algebra, const Eigen::VectorXd& point);

    int size() const { return int(entries_.size()); }
    const AlgebraElement& operator[](int i) const { return entries_[i]; }
    const std::vector<AlgebraElement>& entries() const { return entries_; }
    const AlgebraPtr& algebra() const { return alg_; }

    /// Componentwise augmentation: the underlying classical point.
    Eigen::VectorXd shadow() const;

    /// All coefficients concatenated entry-major; for residual comparisons.
    Eigen::VectorXd flat() const;

private:
    AlgebraPtr alg_;
    std::vector<AlgebraElement> entries_;
};

// ============================================================================
// Operations
// ============================================================================

/// T_A(f)(λ·1 + n) = f(λ)·1 + Σ_{j=1..height} f^{(j)}(λ)/j! · n^j.
/// Throws std::domain_error when aug(a) violates the primitive's domain.
AlgebraElement lift_primitive(const TaylorTable& f, const AlgebraElement& a);

/// Evaluates the lift of a whole graph by composing primitive lifts node by
/// node.  Throws EvalDomainError carrying the node index on a mid-evaluation
/// domain violation.
LiftedVector eval_lift(const ExprGraph& g, const LiftedVector& v);

/// Applies an algebra homomorphism entrywise: the natural transformation
/// T_φ on points.
LiftedVector push_hom(const AlgebraHom& phi, const LiftedVector& v);

/// Explicit multivariate Taylor value of a polynomial graph against a chosen
/// basis of N: Σ_k 1/k! Σ n_{j₁}..n_{j_k} ⊗ d^k f(x₁)(x_{j₁},..,x_{j_k}),
/// with d^k computed by exact symbolic expansion.  Equals eval_lift on its
/// domain; kept as an independent route for cross-checking.
/// `nil_basis` defaults to the algebra's stored basis of ker(aug).
LiftedVector taylor_formula_oracle(const ExprGraph& g, const LiftedVector& v,
                                   const std::optional<Eigen::MatrixXd>& nil_basis = std::nullopt);

/// Rebuilds structure constants by evaluating the lift of the two-variable
/// product graph on all basis pairs; the returned algebra's table should
/// match the stored one to round-off.
AlgebraPtr recover_algebra(const AlgebraPtr& a);

/// Evaluates T_outer(T_inner(g)) at a point of (outer ⊗ inner)^n, running the
/// inner truncation inside the outer one.  `tensor` must be
/// tensor_product(outer, inner); the result is in the same coordinates, so
/// agreement with plain eval_lift over `tensor` is the composite-functor law.
LiftedVector eval_nested(const ExprGraph& g, const LiftedVector& v,
                         const AlgebraPtr& outer, const AlgebraPtr& inner,
                         const AlgebraPtr& tensor);

} // namespace weil
