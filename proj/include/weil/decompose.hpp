#pragma once

#include "weil/algebra.hpp"

#include <cstdint>

namespace weil {

struct DecomposeOptions {
    double newton_tol = 1e-10;   ///< convergence threshold on ‖e² − e‖_∞
    int newton_budget = 100;     ///< iteration cap for idempotent lifting
    double imag_tol = 1e-8;      ///< allowed imaginary part in the real-spectrum test
    double rank_tol = 1e-9;      ///< relative rank threshold for radical/summand extraction
    std::uint64_t seed = 20240101;  ///< seed for the separating random element
    int separation_retries = 32;
};

struct Decomposition {
    /// Minimal idempotents e_1..e_k of the input, summing to 1 with
    /// e_i e_j = 0 for i != j, ordered by descending summand dimension then
    /// lexicographic coefficients.
    std::vector<Idempotent> idempotents;

    /// The summand e_i·A presented as a Weil algebra over an orthonormal
    /// basis of the ideal, with unit e_i and the trace augmentation.
    std::vector<AlgebraPtr> summands;

    /// Orthonormal basis of each summand inside the input algebra
    /// (input_dim × summand_dim); products of columns realise the summand's
    /// structure constants.
    std::vector<Eigen::MatrixXd> embeddings;
};

/// Splits a finite-dimensional commutative unital algebra (given by structure
/// constants, not assumed local) into its minimal idempotents and local
/// summands.  The radical is the kernel of the trace form
/// (x, y) ↦ trace(L_{xy}); idempotents are located in the semisimple quotient
/// through the spectrum of a separating multiplication operator and lifted by
/// the cubic iteration e ← 3e² − 2e³.
///
/// Throws std::invalid_argument when the table fails the commutativity /
/// associativity / unit checks, std::domain_error("not formally real") when a
/// quotient multiplication operator has a complex eigenvalue, and
/// std::runtime_error when the Newton iteration exhausts its budget (the
/// message carries the residual).
Decomposition minimal_idempotents(const AlgebraPtr& algebra,
                                  const DecomposeOptions& opts = {});

} // namespace weil
