#pragma once

#include "weil/algebra.hpp"
#include "weil/expr.hpp"
#include "weil/liegroup.hpp"
#include "weil/lift.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace weil {

using Rng = std::mt19937_64;

// ============================================================================
// Random expression graphs and admissible base points
// ============================================================================

struct GraphGenOptions {
    int depth = 6;            ///< rounds of node growth
    int nodes_per_level = 2;
    bool polynomial_only = false;
    int max_pow = 3;
    double const_lo = -2.0, const_hi = 2.0;
};

ExprGraph random_graph(Rng& rng, int arity, int outputs, const GraphGenOptions& opts = {});

struct PointSampleOptions {
    double lo = -2.0, hi = 2.0;
    double domain_margin = 0.2;  ///< distance kept from inv/log/sqrt boundaries
    double max_magnitude = 1e4;  ///< bound on every intermediate value
    double max_exp_arg = 6.0;
    int tries = 300;
};

/// Draws a base point where every node of the graph evaluates with the given
/// safety margins, or nothing when the budget runs out.
std::optional<Eigen::VectorXd> sample_admissible_point(const ExprGraph& g, Rng& rng,
                                                       const PointSampleOptions& opts = {});

/// The margin check itself, for composite graphs assembled by callers.
bool point_is_admissible(const ExprGraph& g, const Eigen::VectorXd& x,
                         const PointSampleOptions& opts = {});

// ============================================================================
// Random algebra data
// ============================================================================

AlgebraElement random_element(const AlgebraPtr& a, Rng& rng, double lo = -1.0, double hi = 1.0);

/// Base point plus uniformly drawn nilpotent coefficients of size `scale`.
LiftedVector random_lifted(const AlgebraPtr& a, const Eigen::VectorXd& base, Rng& rng,
                           double scale = 1.0);

Eigen::MatrixXd random_orthogonal(int n, Rng& rng);
Eigen::MatrixXd random_special_orthogonal(int n, Rng& rng);

// ============================================================================
// Random lifted group and Lie algebra elements
// ============================================================================

LiftedLieAlgebraElement random_lie_element(const AlgebraPtr& a, int n, LieTag tag, Rng& rng,
                                           double scale = 1.0);

/// A random element of T_A G satisfying the tag invariant: exp of a random
/// lifted Lie algebra element for SO, unit-diagonal strict upper data for the
/// unipotent group, shadow-invertible random entries for GL.
LiftedMatrix random_group_element(const AlgebraPtr& a, int n, GroupTag tag, Rng& rng);

} // namespace weil
