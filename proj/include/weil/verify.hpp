#pragma once

#include "weil/algebra.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace weil {

struct PropertyResult {
    std::string name;
    int trials = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string counterexample;  ///< first sample beyond tolerance, empty when none
};

struct SuiteResult {
    std::string suite;
    std::vector<PropertyResult> properties;
    bool all_passed() const;
};

/// The algebras every cross-module check runs over.
std::vector<AlgebraPtr> standard_presets();

// ============================================================================
// Individual checks with caller-pinned sample counts.  Each is deterministic
// in the seed and reports the worst residual with the first counterexample.
// ============================================================================
namespace checks {

/// D-slot of eval_lift against central finite differences (h = 1e−5) for
/// random mixed-primitive graphs.
PropertyResult dual_fd_oracle(std::uint64_t seed, int graphs, int points_per_graph,
                              double tol = 1e-6);

/// Jet slots over jet:3 against exact symbolic derivatives of random
/// univariate polynomial graphs.
PropertyResult jet_symbolic_oracle(std::uint64_t seed, int graphs, double tol = 1e-9);

/// Jet slots over jet:r (r ≤ 3) against repeated finite differencing.
PropertyResult jet_fd_oracle(std::uint64_t seed, int graphs, double tol = 1e-4);

/// eval_lift(g∘h) against eval_lift(g)∘eval_lift(h).
PropertyResult functoriality(std::uint64_t seed, int pairs_per_algebra,
                             const std::vector<AlgebraPtr>& algebras, double tol = 1e-9);

/// Lifting a pair map equals the pair of lifts, exactly.
PropertyResult product_preservation(std::uint64_t seed, int graphs);

/// shadow ∘ eval_lift = classical ∘ shadow.
PropertyResult shadow_commutation(std::uint64_t seed, int graphs, double tol = 1e-12);

/// taylor_formula_oracle against eval_lift on polynomial graphs.
PropertyResult formula_equivalence(std::uint64_t seed, int graphs,
                                   const std::vector<AlgebraPtr>& algebras, double tol = 1e-9);

/// Oracle output is independent of the chosen basis of N.
PropertyResult oracle_basis_independence(std::uint64_t seed, int graphs, double tol = 1e-9);

/// push_hom ∘ eval_lift = eval_lift ∘ push_hom over a catalog of homs
/// (augmentation, unit inclusion, generator scaling, exchange).
PropertyResult hom_naturality(std::uint64_t seed, int homs, int points_per_hom,
                              double tol = 1e-9);

/// Nested evaluation against flat evaluation over the tensor product, plus
/// (in the default dual-then-dual case) the exchange conjugation acting as an
/// exact slot swap.  Null algebras default to the dual numbers.
PropertyResult tensor_nesting(std::uint64_t seed, int graphs, double tol = 1e-9,
                              AlgebraPtr outer = nullptr, AlgebraPtr inner = nullptr);

/// Rotated direct sums of {R, D, jet:2}: recovered block count, dimensions,
/// heights, idempotent sums and orthogonality.
PropertyResult decomposition_roundtrip(std::uint64_t seed, int cases, double tol = 1e-9,
                                       int max_total_dim = 9);

/// Element arithmetic laws, augmentation multiplicativity, geometric-series
/// inverses, tensor validity, rebasing invariance.
PropertyResult algebra_laws(std::uint64_t seed, int trials, double tol = 1e-12);
PropertyResult inverse_roundtrip(std::uint64_t seed, int trials, double tol = 1e-9);
PropertyResult tensor_and_rebase(std::uint64_t seed, int trials);

/// is_vector_bundle on the stereographic sphere: true for D, false with a
/// nonlinearity witness above `witness_floor` for jet:2.
PropertyResult vector_bundle_cases(double witness_floor = 1e-3);

/// Cocycle, chart independence of lift_map and projection naturality on the
/// two-chart circle and the stereographic sphere.
PropertyResult manifold_gluing(std::uint64_t seed, int points_per_space, double tol = 1e-9);

/// Triple-overlap cocycle on the three-chart circle.
PropertyResult cocycle_triple_overlap(std::uint64_t seed, int points, double tol = 1e-9);

/// lift_map(g∘f) = lift_map(g)∘lift_map(f) for stock circle/sphere maps.
PropertyResult manifold_functoriality(std::uint64_t seed, int points, double tol = 1e-9);

/// Group axioms, exact π_A homomorphism, exp naturality, pure-tensor bracket
/// law, Jacobi identity and semidirect reassembly over SO(2), SO(3), GL(2)
/// and unipotent(3).
PropertyResult liegroup_laws(std::uint64_t seed, int trials,
                             const std::vector<AlgebraPtr>& algebras, double tol = 1e-9);

/// First-order consistency of lifted_exp with finite differences over D.
PropertyResult exp_first_order(std::uint64_t seed, int trials, double tol = 1e-6);

/// recover_algebra reproduces stored structure constants on all presets.
PropertyResult algebra_recovery(double tol = 1e-12);

} // namespace checks

// ============================================================================
// Suites
// ============================================================================

SuiteResult verify_algebra(std::uint64_t seed, int trials);
SuiteResult verify_lift(std::uint64_t seed, int trials);
SuiteResult verify_manifold(std::uint64_t seed, int trials);
SuiteResult verify_liegroup(std::uint64_t seed, int trials);

/// suite ∈ {algebra, lift, manifold, liegroup, all}; throws
/// std::invalid_argument on anything else.
std::vector<SuiteResult> run_suites(const std::string& suite, std::uint64_t seed, int trials);

/// Deterministic report body: one line per property with trial count and max
/// residual, counterexample on failure.  No timestamps.
void print_report(std::ostream& os, const SuiteResult& r);

} // namespace weil
