#include "weil/manifold.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace weil {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ============================================================================
// MembershipTest / Atlas
// ============================================================================

bool MembershipTest::contains(const Eigen::VectorXd& x) const {
    std::vector<double> pt(x.data(), x.data() + x.size());
    for (const ExprGraph& g : positives) {
        try {
            if (g.eval(pt)[0] <= 0.0) return false;
        } catch (const EvalDomainError&) {
            return false;
        }
    }
    return true;
}

Atlas::Atlas(std::vector<Chart> charts, std::vector<TransitionEntry> transitions)
    : charts_(std::move(charts)), transitions_(std::move(transitions)) {
    if (charts_.empty()) throw std::invalid_argument("Atlas: needs at least one chart");
    for (auto& c : charts_) {
        if (c.dim < 1) throw std::invalid_argument("Atlas: chart dimension must be positive");
        for (const auto& g : c.domain.positives)
            if (g.arity() > c.dim || g.output_count() != 1)
                throw std::invalid_argument("Atlas: chart domain inequality has wrong shape");
        if (c.sample_lo.size() == 0) {
            c.sample_lo = Eigen::VectorXd::Constant(c.dim, -3.0);
            c.sample_hi = Eigen::VectorXd::Constant(c.dim, 3.0);
        }
    }
    for (const auto& t : transitions_) {
        if (t.from < 0 || t.from >= chart_count() || t.to < 0 || t.to >= chart_count())
            throw std::invalid_argument("Atlas: transition references an unknown chart");
        if (t.map.arity() > charts_[t.from].dim ||
            t.map.output_count() != charts_[t.to].dim)
            throw std::invalid_argument("Atlas: transition map has wrong shape");
    }
}

const TransitionEntry* Atlas::find_transition(int from, int to, const Eigen::VectorXd& x) const {
    for (const auto& t : transitions_)
        if (t.from == from && t.to == to && t.domain.contains(x)) return &t;
    return nullptr;
}

bool Atlas::has_transition_pair(int from, int to) const {
    for (const auto& t : transitions_)
        if (t.from == from && t.to == to) return true;
    return false;
}

// ============================================================================
// WeilPoint and bundle structure
// ============================================================================

WeilPoint::WeilPoint(const Atlas& atlas, int chart_index, LiftedVector c)
    : chart(chart_index), coords(std::move(c)) {
    if (chart < 0 || chart >= atlas.chart_count())
        throw std::invalid_argument("WeilPoint: chart index out of range");
    if (coords.size() != atlas.chart(chart).dim)
        throw std::invalid_argument("WeilPoint: coordinate count does not match chart dimension");
    if (!atlas.chart(chart).domain.contains(coords.shadow()))
        throw std::domain_error("WeilPoint: shadow lies outside the chart domain");
}

WeilPoint to_chart(const Atlas& atlas, const WeilPoint& p, int target) {
    if (target == p.chart) return p;
    if (!atlas.has_transition_pair(p.chart, target))
        throw std::invalid_argument("to_chart: no declared transition " +
                                    std::to_string(p.chart) + " -> " + std::to_string(target));
    const TransitionEntry* t = atlas.find_transition(p.chart, target, p.coords.shadow());
    if (!t)
        throw std::domain_error("to_chart: shadow outside every declared overlap domain for " +
                                std::to_string(p.chart) + " -> " + std::to_string(target));
    // graphs may mention fewer variables than the chart provides
    LiftedVector in(p.coords.algebra(),
                    {p.coords.entries().begin(), p.coords.entries().begin() + t->map.arity()});
    return WeilPoint(atlas, target, eval_lift(t->map, in));
}

std::pair<int, Eigen::VectorXd> bundle_project(const WeilPoint& p) {
    return {p.chart, p.coords.shadow()};
}

// ============================================================================
// Manifold maps
// ============================================================================

namespace {

WeilPoint apply_entry(const ManifoldMap& f, const MapEntry& e, const WeilPoint& p) {
    LiftedVector in(p.coords.algebra(),
                    {p.coords.entries().begin(), p.coords.entries().begin() + e.graph.arity()});
    return WeilPoint(*f.target, e.dst_chart, eval_lift(e.graph, in));
}

} // namespace

WeilPoint lift_map(const ManifoldMap& f, const WeilPoint& p) {
    for (const auto& e : f.entries)
        if (e.src_chart == p.chart && e.domain.contains(p.coords.shadow()))
            return apply_entry(f, e, p);
    // no representative in this chart: reroute through a declared transition
    for (std::size_t i = 0; i < f.entries.size(); ++i)
        if (auto q = lift_map_via(f, p, i)) return *q;
    throw std::domain_error("lift_map: no admissible local representative at this point");
}

std::optional<WeilPoint> lift_map_via(const ManifoldMap& f, const WeilPoint& p,
                                      std::size_t entry_index) {
    const MapEntry& e = f.entries.at(entry_index);
    WeilPoint q = p;
    if (e.src_chart != p.chart) {
        if (!f.source->has_transition_pair(p.chart, e.src_chart)) return std::nullopt;
        try {
            q = to_chart(*f.source, p, e.src_chart);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (!e.domain.contains(q.coords.shadow())) return std::nullopt;
    return apply_entry(f, e, q);
}

ManifoldMap compose(const ManifoldMap& g, const ManifoldMap& f) {
    if (f.target.get() != g.source.get())
        throw std::invalid_argument("compose: inner map's target atlas is not the outer map's source");
    ManifoldMap out{f.source, g.target, {}};
    for (const auto& ef : f.entries)
        for (const auto& eg : g.entries) {
            if (eg.src_chart != ef.dst_chart) continue;
            MapEntry e;
            e.src_chart = ef.src_chart;
            e.dst_chart = eg.dst_chart;
            e.graph = ExprGraph::compose(eg.graph, ef.graph);
            e.domain = ef.domain;
            for (const auto& ineq : eg.domain.positives)
                e.domain.positives.push_back(ExprGraph::compose(ineq, ef.graph));
            out.entries.push_back(std::move(e));
        }
    return out;
}

ManifoldMap identity_map(const AtlasPtr& atlas) {
    ManifoldMap out{atlas, atlas, {}};
    for (int c = 0; c < atlas->chart_count(); ++c)
        out.entries.push_back({c, c, {}, ExprGraph::identity(atlas->chart(c).dim)});
    return out;
}

// ============================================================================
// Vector bundle criterion
// ============================================================================

namespace {

LiftedVector fiber_point(const AlgebraPtr& alg, const Eigen::VectorXd& base,
                         const Eigen::VectorXd& fiber) {
    const Eigen::MatrixXd& nb = alg->nilpotent_basis();
    const int r = int(nb.cols());
    const int m = int(base.size());
    std::vector<AlgebraElement> entries;
    for (int t = 0; t < m; ++t) {
        Eigen::VectorXd c = base[t] * alg->unit();
        for (int j = 0; j < r; ++j) c += fiber[j * m + t] * nb.col(j);
        entries.push_back(alg->element(std::move(c)));
    }
    return LiftedVector(alg, std::move(entries));
}

} // namespace

VectorBundleReport is_vector_bundle(const Atlas& atlas, const AlgebraPtr& algebra,
                                    std::uint64_t seed, int trials) {
    VectorBundleReport rep;
    rep.vector_bundle = algebra->height() >= 0 && algebra->height() <= 1;

    if (atlas.transitions().empty()) {
        rep.note = rep.vector_bundle
                       ? "height <= 1; single-chart bundle is trivially linear"
                       : "height > 1; no chart transitions exist to witness nonlinearity "
                         "(trivial bundle), verdict follows the height criterion";
        return rep;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int r = int(algebra->nilpotent_basis().cols());
    double max_defect = 0.0;

    for (std::size_t ti = 0; ti < atlas.transitions().size(); ++ti) {
        const TransitionEntry& t = atlas.transitions()[ti];
        const Chart& src = atlas.chart(t.from);
        const int m = src.dim;
        for (int trial = 0; trial < trials; ++trial) {
            Eigen::VectorXd base(m);
            bool found = false;
            for (int tries = 0; tries < 200 && !found; ++tries) {
                for (int i = 0; i < m; ++i)
                    base[i] = src.sample_lo[i] +
                              (uni(rng) + 1.0) * 0.5 * (src.sample_hi[i] - src.sample_lo[i]);
                found = src.domain.contains(base) && t.domain.contains(base);
            }
            if (!found) continue;

            Eigen::VectorXd u(r * m), v(r * m);
            for (int i = 0; i < r * m; ++i) u[i] = uni(rng);
            for (int i = 0; i < r * m; ++i) v[i] = uni(rng);

            LiftedVector in0 = fiber_point(algebra, base, Eigen::VectorXd::Zero(r * m));
            LiftedVector inu = fiber_point(algebra, base, u);
            LiftedVector inv = fiber_point(algebra, base, v);
            LiftedVector inuv = fiber_point(algebra, base, u + v);
            Eigen::VectorXd f0 = eval_lift(t.map, in0).flat();
            Eigen::VectorXd fu = eval_lift(t.map, inu).flat();
            Eigen::VectorXd fv = eval_lift(t.map, inv).flat();
            Eigen::VectorXd fuv = eval_lift(t.map, inuv).flat();
            const double defect = (fuv - fu - fv + f0).lpNorm<Eigen::Infinity>();
            if (defect > max_defect) {
                max_defect = defect;
                if (defect > 1e-7)
                    rep.witness = VectorBundleWitness{int(ti), base, u, v, defect};
            }
        }
    }

    std::ostringstream note;
    note << "max fiber additivity defect over samples: " << max_defect;
    if (rep.vector_bundle && rep.witness)
        note << " (unexpected for height <= 1)";
    rep.note = note.str();
    return rep;
}

// ============================================================================
// Atlas text format
// ============================================================================

namespace {

MembershipTest parse_ineq_list(const std::string& text, int arity, int lineno) {
    MembershipTest out;
    std::string trimmed;
    {
        std::istringstream t(text);
        std::string w;
        while (t >> w) trimmed += (trimmed.empty() ? "" : " ") + w;
    }
    if (trimmed == "all" || trimmed.empty()) return out;

    // split on top-level commas
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : trimmed) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    parts.push_back(cur);

    for (const auto& part : parts) {
        std::size_t gt = std::string::npos, lt = std::string::npos;
        int d = 0;
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (part[i] == '(') ++d;
            if (part[i] == ')') --d;
            if (d == 0 && part[i] == '>') gt = i;
            if (d == 0 && part[i] == '<') lt = i;
        }
        if ((gt == std::string::npos) == (lt == std::string::npos))
            throw std::runtime_error("atlas file, line " + std::to_string(lineno) +
                                     ": inequality needs exactly one '<' or '>'");
        std::string lhs, rhs;
        bool greater = gt != std::string::npos;
        const std::size_t cut = greater ? gt : lt;
        lhs = part.substr(0, cut);
        rhs = part.substr(cut + 1);
        // h > 0 form: positive expression is lhs − rhs (or rhs − lhs)
        const std::string pos = greater ? "(" + lhs + ") - (" + rhs + ")"
                                        : "(" + rhs + ") - (" + lhs + ")";
        out.positives.push_back(parse_expression(pos, arity));
    }
    return out;
}

} // namespace

AtlasPtr parse_atlas(const std::string& text) {
    std::vector<Chart> charts;
    std::vector<std::string> trans_lines;
    std::vector<int> trans_linenos;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string key;
        if (!(line >> key)) continue;
        if (key == "chart") {
            int id = -1, dim = -1;
            std::string kw_dim, kw_dom;
            if (!(line >> id >> kw_dim >> dim >> kw_dom) || kw_dim != "dim" || kw_dom != "domain")
                throw std::runtime_error("atlas file, line " + std::to_string(lineno) +
                                         ": expected 'chart <id> dim <m> domain ...'");
            if (id != int(charts.size()))
                throw std::runtime_error("atlas file, line " + std::to_string(lineno) +
                                         ": chart ids must be 0,1,... in order");
            std::string rest;
            std::getline(line, rest);
            Chart c;
            c.dim = dim;
            c.domain = parse_ineq_list(rest, dim, lineno);
            charts.push_back(std::move(c));
        } else if (key == "trans") {
            trans_lines.push_back(raw);
            trans_linenos.push_back(lineno);
        } else {
            throw std::runtime_error("atlas file, line " + std::to_string(lineno) +
                                     ": unknown keyword '" + key + "'");
        }
    }

    std::vector<TransitionEntry> transitions;
    for (std::size_t i = 0; i < trans_lines.size(); ++i) {
        const int ln = trans_linenos[i];
        std::istringstream line(trans_lines[i]);
        std::string kw, kw_dom;
        int from = -1, to = -1;
        if (!(line >> kw >> from >> to >> kw_dom) || kw_dom != "domain")
            throw std::runtime_error("atlas file, line " + std::to_string(ln) +
                                     ": expected 'trans <a> <b> domain ... map ...'");
        if (from < 0 || from >= int(charts.size()) || to < 0 || to >= int(charts.size()))
            throw std::runtime_error("atlas file, line " + std::to_string(ln) +
                                     ": transition references an unknown chart");
        std::string rest;
        std::getline(line, rest);
        const auto map_pos = rest.find(" map ");
        if (map_pos == std::string::npos)
            throw std::runtime_error("atlas file, line " + std::to_string(ln) +
                                     ": missing 'map' clause");
        TransitionEntry t;
        t.from = from;
        t.to = to;
        t.domain = parse_ineq_list(rest.substr(0, map_pos), charts[from].dim, ln);
        t.map = parse_expression_list(rest.substr(map_pos + 5), charts[from].dim);
        if (t.map.output_count() != charts[to].dim)
            throw std::runtime_error("atlas file, line " + std::to_string(ln) +
                                     ": map expression count does not match target chart dim");
        transitions.push_back(std::move(t));
    }
    return std::make_shared<Atlas>(std::move(charts), std::move(transitions));
}

std::string serialize_atlas(const Atlas& atlas) {
    std::ostringstream os;
    auto ineqs = [](const MembershipTest& m) {
        if (m.positives.empty()) return std::string("all");
        std::string s;
        for (std::size_t i = 0; i < m.positives.size(); ++i) {
            if (i) s += ", ";
            s += to_text(m.positives[i]) + " > 0";
        }
        return s;
    };
    for (int c = 0; c < atlas.chart_count(); ++c)
        os << "chart " << c << " dim " << atlas.chart(c).dim << " domain "
           << ineqs(atlas.chart(c).domain) << "\n";
    for (const auto& t : atlas.transitions())
        os << "trans " << t.from << " " << t.to << " domain " << ineqs(t.domain) << " map "
           << to_text(t.map) << "\n";
    return os.str();
}

// ============================================================================
// Stock spaces
// ============================================================================

namespace {

ExprGraph ineq_gt(const std::string& expr, int arity) {
    return parse_expression(expr, arity);
}

Chart interval_chart(double lo, double hi) {
    Chart c;
    c.dim = 1;
    ExprGraph above(1);
    above.set_outputs({above.sub(above.input(0), above.constant(lo))});
    ExprGraph below(1);
    below.set_outputs({below.sub(below.constant(hi), below.input(0))});
    c.domain.positives = {std::move(above), std::move(below)};
    c.sample_lo = Eigen::VectorXd::Constant(1, lo);
    c.sample_hi = Eigen::VectorXd::Constant(1, hi);
    return c;
}

ExprGraph affine_shift(double s) {
    ExprGraph g(1);
    g.set_outputs({g.binary(BinaryOp::Add, g.input(0), g.constant(s))});
    return g;
}

// Interval-chart circles: chart k covers global angles offset[k] + (lo_k, hi_k).
struct IntervalCircle {
    std::vector<double> offset, lo, hi;
};

IntervalCircle circle_layout(const Atlas& atlas) {
    if (atlas.chart_count() == 2)
        return {{0.0, 0.0}, {-kPi, 0.0}, {kPi, 2.0 * kPi}};
    if (atlas.chart_count() == 3)
        return {{0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0}, {-2.5, -2.5, -2.5}, {2.5, 2.5, 2.5}};
    throw std::invalid_argument("circle maps: atlas is not one of the stock circle atlases");
}

// Entries for coordinate maps θ ↦ θ + shift (mod 2π) between interval charts.
std::vector<MapEntry> interval_shift_entries(const IntervalCircle& c, double shift) {
    std::vector<MapEntry> out;
    const int k = int(c.offset.size());
    for (int src = 0; src < k; ++src)
        for (int dst = 0; dst < k; ++dst)
            for (int wrap = -2; wrap <= 2; ++wrap) {
                const double s = shift + c.offset[src] - c.offset[dst] + 2.0 * kPi * wrap;
                const double lo = std::max(c.lo[src], c.lo[dst] - s);
                const double hi = std::min(c.hi[src], c.hi[dst] - s);
                if (lo >= hi - 1e-12) continue;
                MapEntry e;
                e.src_chart = src;
                e.dst_chart = dst;
                Chart window = interval_chart(lo, hi);
                e.domain = window.domain;
                e.graph = affine_shift(s);
                out.push_back(std::move(e));
            }
    return out;
}

} // namespace

AtlasPtr atlas_euclidean(int dim) {
    Chart c;
    c.dim = dim;
    return std::make_shared<Atlas>(std::vector<Chart>{std::move(c)},
                                   std::vector<TransitionEntry>{});
}

AtlasPtr atlas_circle_two_charts() {
    std::vector<Chart> charts = {interval_chart(-kPi, kPi), interval_chart(0.0, 2.0 * kPi)};
    std::vector<TransitionEntry> ts;
    auto add = [&ts](int from, int to, double lo, double hi, double shift) {
        TransitionEntry t;
        t.from = from;
        t.to = to;
        t.domain = interval_chart(lo, hi).domain;
        t.map = affine_shift(shift);
        ts.push_back(std::move(t));
    };
    add(0, 1, 0.0, kPi, 0.0);            // upper half circle: same angle
    add(0, 1, -kPi, 0.0, 2.0 * kPi);     // lower half: wrap up
    add(1, 0, 0.0, kPi, 0.0);
    add(1, 0, kPi, 2.0 * kPi, -2.0 * kPi);
    return std::make_shared<Atlas>(std::move(charts), std::move(ts));
}

AtlasPtr atlas_circle_three_charts() {
    IntervalCircle layout{{0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0}, {-2.5, -2.5, -2.5},
                          {2.5, 2.5, 2.5}};
    std::vector<Chart> charts = {interval_chart(-2.5, 2.5), interval_chart(-2.5, 2.5),
                                 interval_chart(-2.5, 2.5)};
    std::vector<TransitionEntry> ts;
    for (const MapEntry& e : interval_shift_entries(layout, 0.0)) {
        if (e.src_chart == e.dst_chart) continue;
        ts.push_back({e.src_chart, e.dst_chart, e.domain, e.graph});
    }
    return std::make_shared<Atlas>(std::move(charts), std::move(ts));
}

AtlasPtr atlas_sphere_stereographic() {
    Chart north, south;
    north.dim = south.dim = 2;
    std::vector<TransitionEntry> ts;
    for (int dir = 0; dir < 2; ++dir) {
        TransitionEntry t;
        t.from = dir;
        t.to = 1 - dir;
        t.domain.positives = {ineq_gt("x1^2 + x2^2", 2)};
        t.map = parse_expression_list("x1/(x1^2 + x2^2), x2/(x1^2 + x2^2)", 2);
        ts.push_back(std::move(t));
    }
    return std::make_shared<Atlas>(std::vector<Chart>{std::move(north), std::move(south)},
                                   std::move(ts));
}

ManifoldMap circle_rotation(const AtlasPtr& circle, double angle) {
    ManifoldMap out{circle, circle, interval_shift_entries(circle_layout(*circle), angle)};
    return out;
}

ManifoldMap sphere_rotation_z(const AtlasPtr& sphere, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    ManifoldMap out{sphere, sphere, {}};
    auto rot = [&](double cs, double sn) {
        std::ostringstream os;
        os.precision(17);
        os << "(" << cs << ")*x1 - (" << sn << ")*x2, (" << sn << ")*x1 + (" << cs << ")*x2";
        return parse_expression_list(os.str(), 2);
    };
    // both stereographic charts rotate by the same angle
    out.entries.push_back({0, 0, {}, rot(c, s)});
    out.entries.push_back({1, 1, {}, rot(c, s)});
    // cross-chart representatives: rotate, then invert through the transition
    for (int dir = 0; dir < 2; ++dir) {
        MapEntry e;
        e.src_chart = dir;
        e.dst_chart = 1 - dir;
        e.domain.positives = {ineq_gt("x1^2 + x2^2", 2)};
        std::ostringstream os;
        os.precision(17);
        os << "((" << c << ")*x1 - (" << s << ")*x2)/(x1^2 + x2^2), "
           << "((" << s << ")*x1 + (" << c << ")*x2)/(x1^2 + x2^2)";
        e.graph = parse_expression_list(os.str(), 2);
        out.entries.push_back(std::move(e));
    }
    return out;
}

ManifoldMap sphere_antipodal(const AtlasPtr& sphere) {
    ManifoldMap out{sphere, sphere, {}};
    out.entries.push_back({0, 1, {}, parse_expression_list("0 - x1, 0 - x2", 2)});
    out.entries.push_back({1, 0, {}, parse_expression_list("0 - x1, 0 - x2", 2)});
    return out;
}

ManifoldMap sphere_height(const AtlasPtr& sphere, const AtlasPtr& line) {
    ManifoldMap out{sphere, line, {}};
    // |u_N|² = (1+z)/(1−z) and |u_S|² = (1−z)/(1+z)
    out.entries.push_back(
        {0, 0, {}, parse_expression_list("(x1^2 + x2^2 - 1)/(x1^2 + x2^2 + 1)", 2)});
    out.entries.push_back(
        {1, 0, {}, parse_expression_list("(1 - x1^2 - x2^2)/(1 + x1^2 + x2^2)", 2)});
    return out;
}

} // namespace weil
