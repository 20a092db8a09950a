#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace weil {

class WeilAlgebra;
class AlgebraElement;
using AlgebraPtr = std::shared_ptr<const WeilAlgebra>;

// ============================================================================
// WeilAlgebra
// ============================================================================

/// A finite-dimensional commutative unital real algebra presented by a basis
/// and structure constants c[i][j][k] with b_i·b_j = Σ_k c[i][j][k]·b_k,
/// together with an augmentation functional and the nilpotency order of its
/// kernel.
///
/// Construction only checks shapes; the deeper axioms (commutativity,
/// associativity, unit law, augmentation multiplicativity, nilpotency of
/// ker aug) are checked by validate(), which reports every violation instead
/// of throwing.  This allows loading and diagnosing broken or non-local
/// tables, e.g. for decomposition into local summands.
class WeilAlgebra : public std::enable_shared_from_this<WeilAlgebra> {
public:
    /// Builds the algebra and precomputes the basis multiplication operators,
    /// a basis of ker(aug), and the nilpotency height (−1 when ker(aug) is
    /// not nilpotent, i.e. the table is not a Weil algebra).
    /// Throws std::invalid_argument on dim < 1 or mismatched array sizes.
    static AlgebraPtr create(Eigen::VectorXd unit,
                             std::vector<double> structure_constants,
                             Eigen::RowVectorXd aug,
                             std::vector<std::string> basis_labels = {},
                             std::vector<int> generators = {},
                             std::string name = "algebra");

    int dim() const { return dim_; }
    const Eigen::VectorXd& unit() const { return unit_; }
    const Eigen::RowVectorXd& aug() const { return aug_; }
    const std::vector<double>& structure_constants() const { return sc_; }
    double sc(int i, int j, int k) const { return sc_[(std::size_t(i) * dim_ + j) * dim_ + k]; }

    /// Smallest h with N^{h+1} = 0 for N = ker(aug); 0 for A = R,
    /// −1 when N is not nilpotent (invalid table).
    int height() const { return height_; }

    const std::vector<std::string>& basis_labels() const { return labels_; }
    const std::string& label(int i) const { return labels_[i]; }

    /// Indices of the canonical degree-one nilpotent generators, when known
    /// (monomial quotients and their tensor products track them; generic
    /// tables may leave this empty).
    const std::vector<int>& generators() const { return generators_; }

    /// Short human-readable name used in error messages and reports.
    const std::string& name() const { return name_; }

    /// Multiplication-by-b_i operator as a dim×dim matrix on coefficients.
    const Eigen::MatrixXd& basis_mult(int i) const { return mult_[i]; }

    /// Multiplication operator L_a for an arbitrary coefficient vector.
    Eigen::MatrixXd mult_operator(const Eigen::VectorXd& a) const;

    /// Orthonormal basis of ker(aug) as columns (dim × (dim−1)); empty for
    /// dim 1 or when aug vanishes identically.
    const Eigen::MatrixXd& nilpotent_basis() const { return nil_basis_; }

    // --- raw coefficient arithmetic -----------------------------------
    Eigen::VectorXd mul_coeffs(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
    double aug_of(const Eigen::VectorXd& a) const { return aug_.dot(a); }

    // --- element factories ---------------------------------------------
    AlgebraElement element(Eigen::VectorXd coeffs) const;
    AlgebraElement scalar(double lambda) const;      ///< λ·1
    AlgebraElement basis_element(int i) const;
    AlgebraElement zero() const;
    AlgebraElement one() const;

    WeilAlgebra(const WeilAlgebra&) = delete;
    WeilAlgebra& operator=(const WeilAlgebra&) = delete;

private:
    WeilAlgebra() = default;

    int dim_ = 0;
    Eigen::VectorXd unit_;
    std::vector<double> sc_;
    Eigen::RowVectorXd aug_;
    int height_ = -1;
    std::vector<std::string> labels_;
    std::vector<int> generators_;
    std::string name_;

    std::vector<Eigen::MatrixXd> mult_;
    Eigen::MatrixXd nil_basis_;
};

/// Same algebra object, or structurally identical tables (exact comparison).
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

// ============================================================================
// AlgebraElement
// ============================================================================

/// An element of a WeilAlgebra as a coefficient vector in the stored basis.
/// Plain value type; all arithmetic is closed in the owning algebra and
/// operands of binary operations must share one algebra.
class AlgebraElement {
public:
    AlgebraElement(AlgebraPtr algebra, Eigen::VectorXd coeffs);

    const AlgebraPtr& algebra() const { return alg_; }
    const Eigen::VectorXd& coeffs() const { return c_; }
    double coeff(int i) const { return c_[i]; }

    double aug() const { return alg_->aug_of(c_); }

    /// The nilpotent component a − aug(a)·1.
    AlgebraElement nilpotent_part() const;

    /// Geometric-series inverse λ⁻¹ Σ_{j≤height} (−n/λ)^j for a = λ·1 + n.
    /// Throws std::domain_error when aug(a) = 0.
    AlgebraElement inverse() const;

    AlgebraElement pow(int k) const;   ///< k ≥ 0; repeated products

    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& rhs);
    AlgebraElement& operator-=(const AlgebraElement& rhs);
    AlgebraElement& operator*=(const AlgebraElement& rhs);
    AlgebraElement& operator*=(double s);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, const AlgebraElement& b) { return a *= b; }
    friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }
    friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
    friend AlgebraElement operator+(AlgebraElement a, double s) { return a += a.alg_->scalar(s); }
    friend AlgebraElement operator+(double s, AlgebraElement a) { return a + s; }

private:
    void require_same(const AlgebraElement& rhs, const char* op) const;

    AlgebraPtr alg_;
    Eigen::VectorXd c_;
};

inline AlgebraElement WeilAlgebra::one() const { return scalar(1.0); }

/// Named wrappers for the three element operations.
AlgebraElement elem_add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement elem_mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement elem_scale(const AlgebraElement& a, double s);
AlgebraElement elem_invert(const AlgebraElement& a);

/// A nonzero element with e² = e.
struct Idempotent {
    AlgebraElement element;
};

// ============================================================================
// AlgebraHom
// ============================================================================

/// A unital algebra homomorphism φ: A → B stored as a dim_B × dim_A matrix
/// in the two bases.  make() verifies φ(1) = 1, multiplicativity on all basis
/// pairs and aug_B∘φ = aug_A, and classifies the map by rank.
class AlgebraHom {
public:
    static AlgebraHom make(Eigen::MatrixXd matrix, AlgebraPtr source,
                           AlgebraPtr target, double tol = 1e-9);

    static AlgebraHom identity(const AlgebraPtr& a);

    const Eigen::MatrixXd& matrix() const { return m_; }
    const AlgebraPtr& source() const { return src_; }
    const AlgebraPtr& target() const { return dst_; }
    bool injective() const { return injective_; }
    bool surjective() const { return surjective_; }

    AlgebraElement apply(const AlgebraElement& a) const;

    /// this ∘ inner.
    AlgebraHom compose(const AlgebraHom& inner) const;

private:
    AlgebraHom() = default;
    Eigen::MatrixXd m_;
    AlgebraPtr src_, dst_;
    bool injective_ = false, surjective_ = false;
};

// ============================================================================
// Constructors and combinators
// ============================================================================

/// R[x_1..x_w]/I for the monomial ideal I generated by `excluded_monomials`
/// (each an exponent vector of length num_vars).  The basis is the set of
/// monomials outside I in graded order, the unit is the constant monomial and
/// the augmentation extracts the constant coefficient.
///
/// Throws std::invalid_argument when the ideal is not cofinite (some
/// variable has no pure power among the generators, named in the message)
/// or when num_vars = 0 with nonempty exclusions.
AlgebraPtr make_monomial_quotient(int num_vars,
                                  const std::vector<std::vector<int>>& excluded_monomials);

// Common presets.
AlgebraPtr dual_numbers();                    ///< R[x]/(x²)
AlgebraPtr jet_algebra(int order, int vars = 1); ///< truncation above total degree `order`
AlgebraPtr real_algebra();                    ///< R itself (height 0)

/// A ⊗ B with basis pairs (i,j) ordered A-major: index = i·dim_B + j.
/// The height is recomputed exactly from the combined table.
AlgebraPtr tensor_product(const AlgebraPtr& a, const AlgebraPtr& b);

/// The factor-swapping isomorphism A⊗B → B⊗A as a verified AlgebraHom.
AlgebraHom exchange_iso(const AlgebraPtr& a, const AlgebraPtr& b);

/// Same algebra expressed in the basis whose vectors are the columns of P
/// (coordinates in the old basis).  P must be invertible.
AlgebraPtr change_basis(const AlgebraPtr& a, const Eigen::MatrixXd& P);

/// Block-diagonal direct sum A_1 ⊕ … ⊕ A_k (componentwise product).
/// Not a Weil algebra for k > 1; the aug field is taken from the first block
/// and is only meaningful blockwise.  Used as decomposition test input.
AlgebraPtr direct_sum(const std::vector<AlgebraPtr>& blocks);

// ============================================================================
// Validation
// ============================================================================

struct ValidationIssue {
    std::string identity;   ///< which axiom failed
    std::string witness;    ///< offending basis indices / values
};

struct ValidationReport {
    bool valid = false;
    int height = -1;        ///< recomputed nilpotency order; −1 if N not nilpotent
    std::vector<ValidationIssue> issues;
    std::string summary() const;
};

/// Checks every WeilAlgebra axiom against the stored table and recomputes the
/// height by iterated powers of a basis of ker(aug).  Report-valued: never
/// throws on a bad table.
ValidationReport validate(const WeilAlgebra& a, double tol = 1e-9);
inline ValidationReport validate(const AlgebraPtr& a, double tol = 1e-9) { return validate(*a, tol); }

} // namespace weil
