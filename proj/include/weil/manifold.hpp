#pragma once

#include "weil/expr.hpp"
#include "weil/lift.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace weil {

// ============================================================================
// Atlas
// ============================================================================

/// Open subset of R^m cut out by finitely many strict inequalities
/// h(x) > 0; an empty list means all of R^m.
struct MembershipTest {
    std::vector<ExprGraph> positives;
    bool contains(const Eigen::VectorXd& x) const;
};

struct Chart {
    int dim = 0;
    MembershipTest domain;
    /// Box used by samplers to draw points from this chart's image.
    Eigen::VectorXd sample_lo, sample_hi;
};

/// One smooth representative of the chart change `from` → `to`, valid on
/// `domain` (in `from` coordinates).  A chart pair may carry several entries
/// when its overlap has several components.
struct TransitionEntry {
    int from = 0, to = 0;
    MembershipTest domain;
    ExprGraph map;
};

class Atlas {
public:
    Atlas(std::vector<Chart> charts, std::vector<TransitionEntry> transitions);

    int chart_count() const { return int(charts_.size()); }
    const Chart& chart(int i) const { return charts_[i]; }
    const std::vector<TransitionEntry>& transitions() const { return transitions_; }

    /// The first declared representative of `from` → `to` whose domain
    /// contains x, if any.
    const TransitionEntry* find_transition(int from, int to, const Eigen::VectorXd& x) const;
    bool has_transition_pair(int from, int to) const;

private:
    std::vector<Chart> charts_;
    std::vector<TransitionEntry> transitions_;
};

using AtlasPtr = std::shared_ptr<const Atlas>;

/// Atlas text format: one declaration per line,
///   chart <id> dim <m> domain <ineq list | all>
///   trans <from> <to> domain <ineq list | all> map <expr list>
/// where inequalities are `expr > expr` or `expr < expr`, comma separated,
/// and the map is a comma-separated expression list in x1..xm.  Chart ids
/// must be 0..k−1 in order of declaration.
AtlasPtr parse_atlas(const std::string& text);
std::string serialize_atlas(const Atlas& atlas);

// ============================================================================
// Points of T_A M
// ============================================================================

/// A point of the lifted manifold recorded as (chart, lifted coordinates).
/// The shadow of the coordinates must satisfy the chart's membership test.
struct WeilPoint {
    WeilPoint(const Atlas& atlas, int chart, LiftedVector coords);

    int chart;
    LiftedVector coords;
};

/// Rewrites p in chart `target` through the declared transition; round trips
/// return the original point up to round-off.  Throws std::invalid_argument
/// when no transition is declared and std::domain_error when the shadow lies
/// outside every declared overlap domain.
WeilPoint to_chart(const Atlas& atlas, const WeilPoint& p, int target);

/// Bundle projection (chart, shadow) — the base point of p.
std::pair<int, Eigen::VectorXd> bundle_project(const WeilPoint& p);

// ============================================================================
// Maps between manifolds
// ============================================================================

struct MapEntry {
    int src_chart = 0, dst_chart = 0;
    MembershipTest domain;  ///< in src chart coordinates
    ExprGraph graph;
};

/// A smooth map M → M' given by local representatives per chart pair.
struct ManifoldMap {
    AtlasPtr source, target;
    std::vector<MapEntry> entries;
};

/// Applies the first admissible local representative at p.  The result is
/// independent of the representative up to round-off; use
/// lift_map_via(map, p, entry) to drive that as a property.
WeilPoint lift_map(const ManifoldMap& f, const WeilPoint& p);

/// Applies a specific representative: p is moved to entry.src_chart first
/// (through declared transitions) and the result lands in entry.dst_chart.
std::optional<WeilPoint> lift_map_via(const ManifoldMap& f, const WeilPoint& p,
                                      std::size_t entry_index);

/// g ∘ f with entrywise composed representatives and pulled-back domains.
ManifoldMap compose(const ManifoldMap& g, const ManifoldMap& f);

/// Identity map of an atlas (identity representative on every chart).
ManifoldMap identity_map(const AtlasPtr& atlas);

// ============================================================================
// Vector bundle criterion
// ============================================================================

struct VectorBundleWitness {
    int transition_index = -1;
    Eigen::VectorXd base;
    Eigen::VectorXd fiber_u, fiber_v;  ///< flat (nilpotent basis × chart dim)
    double defect = 0.0;               ///< ‖F(u+v) − F(u) − F(v)‖_∞
};

struct VectorBundleReport {
    bool vector_bundle = false;
    std::string note;
    std::optional<VectorBundleWitness> witness;
};

/// T_A M → M is a vector bundle iff the nilpotent ideal has order two
/// (height ≤ 1).  The verdict follows the height; when it is negative the
/// report carries a numeric witness of fiberwise additivity failure on some
/// lifted transition, searched by sampling.
VectorBundleReport is_vector_bundle(const Atlas& atlas, const AlgebraPtr& algebra,
                                    std::uint64_t seed = 7, int trials = 64);

// ============================================================================
// Stock spaces and maps
// ============================================================================

AtlasPtr atlas_euclidean(int dim);
AtlasPtr atlas_circle_two_charts();    ///< angle charts (−π,π) and (0,2π)
AtlasPtr atlas_circle_three_charts(); ///< three overlapping arcs, has triple overlaps
AtlasPtr atlas_sphere_stereographic(); ///< chart 0 from the north pole, chart 1 from the south

/// Rotation of the circle by `angle` on either circle atlas.
ManifoldMap circle_rotation(const AtlasPtr& circle, double angle);
/// Rotation of the sphere about the z axis (both stereographic charts rotate).
ManifoldMap sphere_rotation_z(const AtlasPtr& sphere, double angle);
/// The antipodal map of the sphere.
ManifoldMap sphere_antipodal(const AtlasPtr& sphere);
/// Height function S² → R, (x,y,z) ↦ z, into the 1-chart line.
ManifoldMap sphere_height(const AtlasPtr& sphere, const AtlasPtr& line);

} // namespace weil
