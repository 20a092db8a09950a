#pragma once

#include "weil/decompose.hpp"
#include "weil/lift.hpp"

#include <string>
#include <vector>

namespace weil {

/// One explicit nilpotent seed: variable `var` (0-based) gets
/// `scale`·b_{basis} added to its scalar part.
struct SeedSlot {
    int var = 0;
    int basis = 0;
    double scale = 1.0;
};

/// Builds the input vector for a lifted evaluation: point[j]·1 plus either
/// the j-th tracked generator (default) or the explicitly requested slots.
/// Throws std::domain_error when default seeding is requested but the algebra
/// tracks fewer generators than there are variables.
LiftedVector build_seeded_input(const AlgebraPtr& a, const Eigen::VectorXd& point,
                                const std::vector<SeedSlot>& slots);

/// Coefficient table of eval_lift: one labeled row per basis monomial per
/// output, 12 significant digits.
std::string lift_table(const ExprGraph& g, const LiftedVector& input);

/// Summand listing for a decomposition: count, idempotent coefficients and
/// per-summand dimension and height.
std::string decompose_report(const Decomposition& dec);

} // namespace weil
