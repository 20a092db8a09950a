#pragma once

#include "weil/algebra.hpp"
#include "weil/lift.hpp"

#include <string>
#include <vector>

namespace weil {

enum class GroupTag { GeneralLinear, SpecialOrthogonal, UpperUnipotent };
enum class LieTag { Full, Antisymmetric, StrictlyUpper };

const char* group_tag_name(GroupTag tag);
GroupTag group_of_lie_tag(LieTag tag);

// ============================================================================
// LiftedMatrix — elements of T_A G for matrix groups G
// ============================================================================

class LiftedMatrix {
public:
    LiftedMatrix(AlgebraPtr algebra, int n, GroupTag tag,
                 std::vector<AlgebraElement> entries);

    /// Zero section 0_G: embeds a real group element with vanishing nilpotent
    /// parts.  Throws when g violates the tag's invariant over R.
    static LiftedMatrix from_real(const Eigen::MatrixXd& g, GroupTag tag,
                                  const AlgebraPtr& algebra);

    int n() const { return n_; }
    GroupTag tag() const { return tag_; }
    const AlgebraPtr& algebra() const { return alg_; }
    const AlgebraElement& at(int i, int j) const { return e_[i * n_ + j]; }

    Eigen::MatrixXd shadow() const;          ///< entrywise augmentation
    AlgebraElement det() const;              ///< Laplace expansion over A
    LiftedMatrix transpose() const;

    /// ∞ norm of the invariant defect: 0 for GL with invertible shadow
    /// determinant, ‖MᵀM − 1‖ ∨ ‖det − 1‖ for SO, exact unit-diagonal /
    /// zero-below check for unipotent.
    double invariant_defect() const;
    void check_invariant(double tol = 1e-9) const;

    Eigen::VectorXd flat() const;            ///< all coefficients, row-major

private:
    AlgebraPtr alg_;
    int n_;
    GroupTag tag_;
    std::vector<AlgebraElement> e_;  // row-major
};

/// T_A(μ): entrywise algebra matrix product.  Tags and algebras must match.
LiftedMatrix group_mul(const LiftedMatrix& m, const LiftedMatrix& n);

/// T_A(ν): adjugate over determinant for n ≤ 3, otherwise the terminating
/// Neumann series around the inverted shadow.  Requires aug(det) ≠ 0.
LiftedMatrix group_inv(const LiftedMatrix& m);

LiftedMatrix group_identity(const AlgebraPtr& algebra, int n, GroupTag tag);

/// Entrywise augmentation as a real matrix — the projection π_A: T_A G → G.
inline Eigen::MatrixXd project_base(const LiftedMatrix& m) { return m.shadow(); }

/// Entrywise application of an algebra homomorphism (naturality on groups).
LiftedMatrix apply_hom(const AlgebraHom& phi, const LiftedMatrix& m);

// ============================================================================
// Lifted Lie algebra
// ============================================================================

/// Element of T_A g = g ⊗ A with the constraint of the matching group.
class LiftedLieAlgebraElement {
public:
    LiftedLieAlgebraElement(AlgebraPtr algebra, int n, LieTag tag,
                            std::vector<AlgebraElement> entries, double tol = 1e-12);

    /// Pure tensor X ⊗ a.
    static LiftedLieAlgebraElement pure_tensor(const Eigen::MatrixXd& x,
                                               const AlgebraElement& a, LieTag tag);
    static LiftedLieAlgebraElement zero(const AlgebraPtr& algebra, int n, LieTag tag);

    int n() const { return n_; }
    LieTag tag() const { return tag_; }
    const AlgebraPtr& algebra() const { return alg_; }
    const AlgebraElement& at(int i, int j) const { return e_[i * n_ + j]; }
    const std::vector<AlgebraElement>& entries() const { return e_; }

    LiftedLieAlgebraElement scaled(double s) const;
    Eigen::VectorXd flat() const;

private:
    AlgebraPtr alg_;
    int n_;
    LieTag tag_;
    std::vector<AlgebraElement> e_;
};

/// exp(X) = Σ_{j≤J} X^j/j! with J chosen so the real-part remainder bound
/// ‖X₀‖^{J+1}/(J+1)! < 1e−14 and J ≥ (height+1)(J₀+1); nilpotent corrections
/// terminate exactly.  The result satisfies the matching group invariant.
LiftedMatrix lifted_exp(const LiftedLieAlgebraElement& x);

/// [X, Y] = XY − YX entrywise in A; on pure tensors X⊗a, Y⊗b this is
/// [X,Y] ⊗ ab.
LiftedLieAlgebraElement lifted_bracket(const LiftedLieAlgebraElement& x,
                                       const LiftedLieAlgebraElement& y);

LiftedLieAlgebraElement apply_hom(const AlgebraHom& phi, const LiftedLieAlgebraElement& x);

// ============================================================================
// Zero section and semidirect structure
// ============================================================================

/// 0_G as an operation (alias of LiftedMatrix::from_real).
LiftedMatrix zero_section(const Eigen::MatrixXd& g, GroupTag tag, const AlgebraPtr& algebra);

struct SemidirectReport {
    LiftedMatrix fiber_part;        ///< U = M · 0_G(π_A(M))⁻¹, in the fiber over 1
    Eigen::MatrixXd base;           ///< π_A(M)
    double reassembly_residual;     ///< ‖U·0_G(base) − M‖_∞ on coefficients
    double fiber_identity_residual; ///< ‖π_A(U) − 1‖_∞
};

/// Factors M into fiber-over-identity times zero section of its base,
/// reporting the reassembly residual.
SemidirectReport semidirect_check(const LiftedMatrix& m);

} // namespace weil
