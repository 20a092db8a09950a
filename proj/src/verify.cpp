#include "weil/verify.hpp"

#include "weil/decompose.hpp"
#include "weil/liegroup.hpp"
#include "weil/manifold.hpp"
#include "weil/numeric.hpp"
#include "weil/poly.hpp"
#include "weil/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace weil {

bool SuiteResult::all_passed() const {
    for (const auto& p : properties)
        if (!p.passed) return false;
    return !properties.empty();
}

std::vector<AlgebraPtr> standard_presets() {
    return {dual_numbers(), jet_algebra(2), jet_algebra(3), jet_algebra(2, 2),
            tensor_product(dual_numbers(), dual_numbers())};
}

namespace {

constexpr double kPi = 3.14159265358979323846;

class Prop {
public:
    Prop(std::string name, double tol) {
        r_.name = std::move(name);
        r_.tolerance = tol;
    }

    template <class Desc>
    void observe(double residual, Desc&& describe) {
        ++r_.trials;
        if (residual > r_.max_residual) r_.max_residual = residual;
        if (residual > r_.tolerance && r_.counterexample.empty())
            r_.counterexample = describe();
    }

    void count_only() { ++r_.trials; }

    void fail(const std::string& why) {
        forced_ = true;
        if (r_.counterexample.empty()) r_.counterexample = why;
    }

    PropertyResult done() {
        r_.passed = !forced_ && r_.trials > 0 && r_.max_residual <= r_.tolerance;
        if (r_.trials == 0 && r_.counterexample.empty())
            r_.counterexample = "no admissible samples drawn";
        return r_;
    }

private:
    PropertyResult r_;
    bool forced_ = false;
};

std::string fmt(const Eigen::VectorXd& v) {
    std::ostringstream os;
    os.precision(4);
    os << "[";
    for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "]";
    return os.str();
}

struct GraphPoint {
    ExprGraph g;
    Eigen::VectorXd x;
};

std::optional<GraphPoint> sample_graph_point(Rng& rng, int arity, int outputs,
                                             GraphGenOptions go = {},
                                             PointSampleOptions po = {}) {
    for (int attempt = 0; attempt < 60; ++attempt) {
        ExprGraph g = random_graph(rng, arity, outputs, go);
        if (auto x = sample_admissible_point(g, rng, po)) return GraphPoint{std::move(g), *x};
    }
    return std::nullopt;
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

PropertyResult merge(const std::string& name, const std::vector<PropertyResult>& parts) {
    PropertyResult out;
    out.name = name;
    out.passed = !parts.empty();
    for (const auto& p : parts) {
        out.trials += p.trials;
        out.max_residual = std::max(out.max_residual, p.max_residual);
        out.tolerance = std::max(out.tolerance, p.tolerance);
        if (!p.passed) {
            out.passed = false;
            if (out.counterexample.empty())
                out.counterexample = p.name + ": " +
                                     (p.counterexample.empty() ? "failed" : p.counterexample);
        }
    }
    return out;
}

} // namespace

// ============================================================================
// Lift-module checks
// ============================================================================

namespace checks {

PropertyResult dual_fd_oracle(std::uint64_t seed, int graphs, int points_per_graph, double tol) {
    Prop prop("dual-slot vs central finite differences (h=1e-5)", tol);
    Rng rng(seed);
    const AlgebraPtr d = dual_numbers();
    const double h = 1e-5;

    for (int gi = 0; gi < graphs; ++gi) {
        const int arity = uniform_int(rng, 1, 3);
        const int outputs = uniform_int(rng, 1, 2);
        auto gp = sample_graph_point(rng, arity, outputs);
        if (!gp) continue;
        for (int pi = 0; pi < points_per_graph; ++pi) {
            auto x = pi == 0 ? std::optional<Eigen::VectorXd>(gp->x)
                             : sample_admissible_point(gp->g, rng);
            if (!x) continue;
            for (int j = 0; j < arity; ++j) {
                std::vector<AlgebraElement> entries;
                for (int k = 0; k < arity; ++k) {
                    AlgebraElement e = d->scalar((*x)[k]);
                    if (k == j) e += d->basis_element(1);
                    entries.push_back(std::move(e));
                }
                LiftedVector out = eval_lift(gp->g, LiftedVector(d, std::move(entries)));

                Eigen::VectorXd xp = *x, xm = *x;
                xp[j] += h;
                xm[j] -= h;
                std::vector<double> fp, fm;
                try {
                    fp = gp->g.eval(std::span<const double>(xp.data(), xp.size()));
                    fm = gp->g.eval(std::span<const double>(xm.data(), xm.size()));
                } catch (const EvalDomainError&) {
                    continue;
                }
                for (int o = 0; o < outputs; ++o) {
                    const double fd = (fp[o] - fm[o]) / (2.0 * h);
                    const double slot = out[o].coeff(1);
                    prop.observe(rel_residual(slot, fd), [&] {
                        std::ostringstream os;
                        os << "graph#" << gi << " var " << j << " at " << fmt(*x) << ": slot "
                           << slot << " vs fd " << fd;
                        return os.str();
                    });
                }
            }
        }
    }
    return prop.done();
}

PropertyResult jet_symbolic_oracle(std::uint64_t seed, int graphs, double tol) {
    Prop prop("jet:3 slots vs symbolic polynomial derivatives", tol);
    Rng rng(seed);
    const AlgebraPtr j3 = jet_algebra(3);

    GraphGenOptions go;
    go.polynomial_only = true;
    for (int gi = 0; gi < graphs; ++gi) {
        auto gp = sample_graph_point(rng, 1, 1, go);
        if (!gp) continue;
        const double lambda = gp->x[0];
        LiftedVector v = LiftedVector::seed_generators(j3, gp->x);
        LiftedVector out = eval_lift(gp->g, v);

        Poly p = graph_polynomials(gp->g)[0];
        Eigen::VectorXd pt(1);
        pt[0] = lambda;
        for (int k = 0; k <= 3; ++k) {
            const double expected = p.eval(pt) / factorial(k);
            prop.observe(rel_residual(out[0].coeff(k), expected), [&] {
                std::ostringstream os;
                os << "graph#" << gi << " slot " << k << " at " << lambda << ": got "
                   << out[0].coeff(k) << " want " << expected;
                return os.str();
            });
            p = p.partial(0);
        }
    }
    return prop.done();
}

PropertyResult jet_fd_oracle(std::uint64_t seed, int graphs, double tol) {
    Prop prop("jet slots vs repeated finite differencing (orders <= 3)", tol);
    Rng rng(seed);

    // the third-order stencil has truncation error ~h^2 f^(5); keep the
    // samples inside the regime where the difference oracle itself is valid
    GraphGenOptions go;
    go.max_pow = 2;
    go.const_lo = -1.5;
    go.const_hi = 1.5;
    PointSampleOptions po;
    po.max_magnitude = 50.0;
    po.max_exp_arg = 2.5;
    po.domain_margin = 0.25;

    for (int gi = 0; gi < graphs; ++gi) {
        const int order = 1 + gi % 3;
        const AlgebraPtr jr = jet_algebra(order);
        auto gp = sample_graph_point(rng, 1, 1, go, po);
        if (!gp) continue;
        const double x = gp->x[0];
        auto f = [&](double t) {
            const double pt[1] = {t};
            return gp->g.eval(std::span<const double>(pt, 1))[0];
        };
        LiftedVector out = eval_lift(gp->g, LiftedVector::seed_generators(jr, gp->x));

        // central stencils, Richardson extrapolated to kill the h^2 term
        auto d1 = [&](double h) { return (f(x + h) - f(x - h)) / (2 * h); };
        auto d2 = [&](double h) { return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h); };
        auto d3 = [&](double h) {
            return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) /
                   (2 * h * h * h);
        };
        auto rich = [](double dh, double d2h) { return (4.0 * dh - d2h) / 3.0; };

        std::vector<double> expected = {f(x)};
        const double h1 = 1e-5, h = 1e-3;
        try {
            if (order >= 1) expected.push_back(d1(h1));
            if (order >= 2) expected.push_back(rich(d2(h), d2(2 * h)) / 2.0);
            if (order >= 3) expected.push_back(rich(d3(h), d3(2 * h)) / 6.0);
        } catch (const EvalDomainError&) {
            continue;
        }
        for (int k = 0; k <= order; ++k)
            prop.observe(rel_residual(out[0].coeff(k), expected[k]), [&] {
                std::ostringstream os;
                os << "graph#" << gi << " order " << order << " slot " << k << " at " << x
                   << ": got " << out[0].coeff(k) << " want " << expected[k];
                return os.str();
            });
    }
    return prop.done();
}

PropertyResult functoriality(std::uint64_t seed, int pairs_per_algebra,
                             const std::vector<AlgebraPtr>& algebras, double tol) {
    Prop prop("functoriality: lift(g.h) = lift(g).lift(h)", tol);
    std::uint64_t salt = 0;
    for (const auto& a : algebras) {
        Rng rng(seed + 7919 * ++salt);
        for (int t = 0; t < pairs_per_algebra; ++t) {
            for (int attempt = 0; attempt < 40; ++attempt) {
                const int n = uniform_int(rng, 1, 3), k = uniform_int(rng, 1, 3),
                          m = uniform_int(rng, 1, 2);
                ExprGraph h = random_graph(rng, n, k);
                ExprGraph g = random_graph(rng, k, m);
                ExprGraph comp = ExprGraph::compose(g, h);
                auto x = sample_admissible_point(comp, rng);
                if (!x) continue;
                LiftedVector v = random_lifted(a, *x, rng, 0.5);
                LiftedVector lhs = eval_lift(comp, v);
                LiftedVector rhs = eval_lift(g, eval_lift(h, v));
                prop.observe(rel_residual(lhs.flat(), rhs.flat()), [&] {
                    return "algebra " + a->name() + " pair#" + std::to_string(t) + " at " +
                           fmt(*x);
                });
                break;
            }
        }
    }
    return prop.done();
}

PropertyResult product_preservation(std::uint64_t seed, int graphs) {
    Prop prop("product preservation: lift of pair map equals pair of lifts (exact)", 0.0);
    Rng rng(seed);
    const auto presets = standard_presets();
    for (int t = 0; t < graphs; ++t) {
        const auto& a = presets[t % presets.size()];
        const int n = uniform_int(rng, 1, 3);
        ExprGraph f = random_graph(rng, n, uniform_int(rng, 1, 2));
        ExprGraph g = random_graph(rng, n, uniform_int(rng, 1, 2));
        ExprGraph pair = ExprGraph::pair(f, g);
        auto x = sample_admissible_point(pair, rng);
        if (!x) continue;
        LiftedVector v = random_lifted(a, *x, rng, 0.5);
        Eigen::VectorXd lhs = eval_lift(pair, v).flat();
        Eigen::VectorXd f_out = eval_lift(f, v).flat();
        Eigen::VectorXd g_out = eval_lift(g, v).flat();
        Eigen::VectorXd rhs(lhs.size());
        rhs << f_out, g_out;
        prop.observe((lhs - rhs).lpNorm<Eigen::Infinity>(), [&] {
            return "algebra " + a->name() + " graph#" + std::to_string(t);
        });
    }
    return prop.done();
}

PropertyResult shadow_commutation(std::uint64_t seed, int graphs, double tol) {
    Prop prop("shadow commutes: aug(lift) = classical eval", tol);
    Rng rng(seed);
    const auto presets = standard_presets();
    for (int t = 0; t < graphs; ++t) {
        const auto& a = presets[t % presets.size()];
        const int n = uniform_int(rng, 1, 3);
        auto gp = sample_graph_point(rng, n, uniform_int(rng, 1, 2));
        if (!gp) continue;
        LiftedVector v = random_lifted(a, gp->x, rng, 0.5);
        Eigen::VectorXd got = eval_lift(gp->g, v).shadow();
        std::vector<double> want =
            gp->g.eval(std::span<const double>(gp->x.data(), gp->x.size()));
        Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(want.data(), int(want.size()));
        prop.observe(rel_residual(got, w), [&] {
            return "algebra " + a->name() + " graph#" + std::to_string(t) + " at " + fmt(gp->x);
        });
    }
    return prop.done();
}

PropertyResult formula_equivalence(std::uint64_t seed, int graphs,
                                   const std::vector<AlgebraPtr>& algebras, double tol) {
    Prop prop("Taylor formula oracle = eval_lift on polynomial graphs", tol);
    std::uint64_t salt = 0;
    GraphGenOptions go;
    go.polynomial_only = true;
    for (const auto& a : algebras) {
        Rng rng(seed + 104729 * ++salt);
        for (int t = 0; t < graphs; ++t) {
            const int n = uniform_int(rng, 1, 3);
            auto gp = sample_graph_point(rng, n, uniform_int(rng, 1, 2), go);
            if (!gp) continue;
            LiftedVector v = random_lifted(a, gp->x, rng, 0.7);
            LiftedVector via_eval = eval_lift(gp->g, v);
            LiftedVector via_formula = taylor_formula_oracle(gp->g, v);
            prop.observe(rel_residual(via_eval.flat(), via_formula.flat()), [&] {
                return "algebra " + a->name() + " graph#" + std::to_string(t) + " at " +
                       fmt(gp->x);
            });
        }
    }
    return prop.done();
}

PropertyResult oracle_basis_independence(std::uint64_t seed, int graphs, double tol) {
    Prop prop("Taylor formula oracle independent of the basis of N", tol);
    Rng rng(seed);
    GraphGenOptions go;
    go.polynomial_only = true;
    const std::vector<AlgebraPtr> algebras = {tensor_product(dual_numbers(), dual_numbers()),
                                              jet_algebra(2, 2)};
    for (int t = 0; t < graphs; ++t) {
        const auto& a = algebras[t % algebras.size()];
        const int r = int(a->nilpotent_basis().cols());
        const int n = uniform_int(rng, 1, 2);
        auto gp = sample_graph_point(rng, n, 1, go);
        if (!gp) continue;
        LiftedVector v = random_lifted(a, gp->x, rng, 0.7);

        // well-conditioned random recombination of the stored basis
        Eigen::MatrixXd mix = Eigen::MatrixXd::Identity(r, r) * 1.5;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) mix(i, j) += uniform(rng, -0.5, 0.5);
        Eigen::MatrixXd alt = a->nilpotent_basis() * mix;

        LiftedVector lhs = taylor_formula_oracle(gp->g, v);
        LiftedVector rhs = taylor_formula_oracle(gp->g, v, alt);
        prop.observe(rel_residual(lhs.flat(), rhs.flat()), [&] {
            return "algebra " + a->name() + " graph#" + std::to_string(t);
        });
    }
    return prop.done();
}

namespace {

struct HomCase {
    std::string name;
    std::function<AlgebraHom(Rng&)> build;
};

std::vector<HomCase> hom_catalog() {
    std::vector<HomCase> cases;
    for (const auto& a : standard_presets()) {
        cases.push_back({"aug: " + a->name() + " -> R", [a](Rng&) {
                             return AlgebraHom::make(a->aug(), a, real_algebra());
                         }});
        cases.push_back({"inclusion: R -> " + a->name(), [a](Rng&) {
                             return AlgebraHom::make(a->unit(), real_algebra(), a);
                         }});
    }
    for (int r = 1; r <= 3; ++r) {
        const AlgebraPtr j = r == 1 ? dual_numbers() : jet_algebra(r);
        cases.push_back({"generator scaling on " + j->name(), [j, r](Rng& rng) {
                             const double s = uniform(rng, 0.5, 2.0) *
                                              (uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0);
                             Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r + 1, r + 1);
                             double p = 1.0;
                             for (int k = 0; k <= r; ++k, p *= s) m(k, k) = p;
                             return AlgebraHom::make(m, j, j);
                         }});
    }
    cases.push_back({"exchange on dual*dual", [](Rng&) {
                         return exchange_iso(dual_numbers(), dual_numbers());
                     }});
    cases.push_back({"identity on dual*dual", [](Rng&) {
                         return AlgebraHom::identity(tensor_product(dual_numbers(), dual_numbers()));
                     }});
    return cases;
}

} // namespace

PropertyResult hom_naturality(std::uint64_t seed, int homs, int points_per_hom, double tol) {
    Prop prop("naturality: push_hom . lift = lift . push_hom", tol);
    Rng rng(seed);
    const auto catalog = hom_catalog();
    for (int hi = 0; hi < homs; ++hi) {
        const auto& c = catalog[hi % catalog.size()];
        AlgebraHom phi = c.build(rng);
        for (int t = 0; t < points_per_hom; ++t) {
            const int n = uniform_int(rng, 1, 3);
            auto gp = sample_graph_point(rng, n, uniform_int(rng, 1, 2));
            if (!gp) continue;
            LiftedVector v = random_lifted(phi.source(), gp->x, rng, 0.5);
            LiftedVector lhs = push_hom(phi, eval_lift(gp->g, v));
            LiftedVector rhs = eval_lift(gp->g, push_hom(phi, v));
            prop.observe(rel_residual(lhs.flat(), rhs.flat()), [&] {
                return c.name + " point#" + std::to_string(t) + " at " + fmt(gp->x);
            });
        }
    }
    return prop.done();
}

PropertyResult tensor_nesting(std::uint64_t seed, int graphs, double tol,
                              AlgebraPtr outer, AlgebraPtr inner) {
    const bool dual_case = !outer && !inner;
    if (!outer) outer = dual_numbers();
    if (!inner) inner = dual_numbers();
    Prop prop("nested " + outer->name() + "-then-" + inner->name() + " lift = flat tensor lift",
              tol);
    Rng rng(seed);
    const AlgebraPtr tens = tensor_product(outer, inner);
    const AlgebraHom exch = exchange_iso(dual_numbers(), dual_numbers());

    for (int t = 0; t < graphs; ++t) {
        const int n = uniform_int(rng, 1, 2);
        auto gp = sample_graph_point(rng, n, uniform_int(rng, 1, 2));
        if (!gp) continue;
        LiftedVector v = random_lifted(tens, gp->x, rng, 0.6);
        LiftedVector flat = eval_lift(gp->g, v);
        LiftedVector nested = eval_nested(gp->g, v, outer, inner, tens);
        prop.observe(rel_residual(flat.flat(), nested.flat()), [&] {
            return "graph#" + std::to_string(t) + " at " + fmt(gp->x);
        });

        // over D-then-D the exchange conjugation must swap the two
        // first-order slots exactly
        if (!dual_case) continue;
        LiftedVector swapped = push_hom(exch, flat);
        for (int o = 0; o < flat.size(); ++o) {
            const Eigen::VectorXd& c = flat[o].coeffs();
            Eigen::VectorXd want(4);
            want << c[0], c[2], c[1], c[3];
            if (swapped[o].coeffs() != want) {
                prop.fail("exchange conjugation is not an exact slot swap on graph#" +
                          std::to_string(t));
                break;
            }
        }
    }
    return prop.done();
}

// ============================================================================
// Algebra-module checks
// ============================================================================

PropertyResult algebra_laws(std::uint64_t seed, int trials, double tol) {
    Prop prop("associativity, commutativity, unit, aug multiplicativity", tol);
    std::uint64_t salt = 0;
    for (const auto& a : standard_presets()) {
        Rng rng(seed + 31 * ++salt);
        for (int t = 0; t < trials; ++t) {
            AlgebraElement x = random_element(a, rng), y = random_element(a, rng),
                           z = random_element(a, rng);
            auto name = [&] { return "algebra " + a->name() + " trial#" + std::to_string(t); };
            prop.observe(rel_residual(((x * y) * z).coeffs(), (x * (y * z)).coeffs()), name);
            prop.observe(rel_residual((x * y).coeffs(), (y * x).coeffs()), name);
            prop.observe(rel_residual((a->one() * x).coeffs(), x.coeffs()), name);
            prop.observe(rel_residual((x * y).aug(), x.aug() * y.aug()), name);
        }
    }
    return prop.done();
}

PropertyResult inverse_roundtrip(std::uint64_t seed, int trials, double tol) {
    Prop prop("geometric-series inverse: a * a^-1 = 1", tol);
    std::uint64_t salt = 0;
    for (const auto& a : standard_presets()) {
        Rng rng(seed + 37 * ++salt);
        for (int t = 0; t < trials; ++t) {
            AlgebraElement x = random_element(a, rng);
            if (std::abs(x.aug()) < 0.2)
                x += a->scalar(x.aug() >= 0 ? 0.5 : -0.5);
            prop.observe(rel_residual((x * x.inverse()).coeffs(), a->unit()), [&] {
                return "algebra " + a->name() + " aug " + std::to_string(x.aug());
            });
        }
    }
    return prop.done();
}

PropertyResult tensor_and_rebase(std::uint64_t seed, int trials) {
    Prop prop("tensor products validate; rebased tables keep dim and height", 0.5);
    Rng rng(seed);
    const auto presets = standard_presets();
    for (int t = 0; t < trials; ++t) {
        const auto& a = presets[t % presets.size()];
        const auto& b = presets[(t / presets.size() + t) % presets.size()];
        AlgebraPtr ab = tensor_product(a, b);
        ValidationReport vr = validate(ab);
        if (!vr.valid) {
            prop.fail("tensor " + ab->name() + ": " + vr.summary());
            continue;
        }
        if (ab->height() != a->height() + b->height())
            prop.fail("tensor " + ab->name() + " height " + std::to_string(ab->height()));

        try {
            exchange_iso(a, b);  // throws if the swap fails hom verification
        } catch (const std::exception& e) {
            prop.fail("exchange(" + a->name() + "," + b->name() + "): " + e.what());
        }

        AlgebraPtr rebased = change_basis(a, random_orthogonal(a->dim(), rng));
        ValidationReport rb = validate(rebased);
        if (!rb.valid || rebased->height() != a->height() || rebased->dim() != a->dim())
            prop.fail("rebase of " + a->name() + ": " + rb.summary());
        prop.observe(0.0, [] { return std::string(); });
    }
    return prop.done();
}

PropertyResult decomposition_roundtrip(std::uint64_t seed, int cases, double tol,
                                       int max_total_dim) {
    Prop prop("minimal idempotents of rotated direct sums", tol);
    Rng rng(seed);
    const std::vector<AlgebraPtr> menu = {real_algebra(), dual_numbers(), jet_algebra(2)};

    for (int t = 0; t < cases; ++t) {
        std::vector<AlgebraPtr> blocks;
        int total = 0;
        const int want = uniform_int(rng, 1, 4);
        while (int(blocks.size()) < want) {
            const auto& pick = menu[uniform_int(rng, 0, 2)];
            if (total + pick->dim() > max_total_dim) break;
            blocks.push_back(pick);
            total += pick->dim();
        }
        if (blocks.empty()) blocks.push_back(dual_numbers());

        AlgebraPtr sum = direct_sum(blocks);
        AlgebraPtr rotated = change_basis(sum, random_orthogonal(sum->dim(), rng));

        Decomposition dec;
        try {
            dec = minimal_idempotents(rotated);
        } catch (const std::exception& e) {
            prop.fail("case#" + std::to_string(t) + ": " + e.what());
            continue;
        }

        if (dec.idempotents.size() != blocks.size()) {
            prop.fail("case#" + std::to_string(t) + ": found " +
                      std::to_string(dec.idempotents.size()) + " summands, expected " +
                      std::to_string(blocks.size()));
            continue;
        }
        std::multiset<std::pair<int, int>> want_shape, got_shape;
        for (const auto& b : blocks) want_shape.insert({b->dim(), b->height()});
        for (const auto& s : dec.summands) got_shape.insert({s->dim(), s->height()});
        if (want_shape != got_shape) {
            prop.fail("case#" + std::to_string(t) + ": summand (dim,height) multiset mismatch");
            continue;
        }
        for (const auto& s : dec.summands)
            if (!validate(s).valid)
                prop.fail("case#" + std::to_string(t) + ": summand fails validation");

        Eigen::VectorXd esum = Eigen::VectorXd::Zero(rotated->dim());
        for (const auto& e : dec.idempotents) esum += e.element.coeffs();
        double residual = (esum - rotated->unit()).lpNorm<Eigen::Infinity>();
        for (std::size_t i = 0; i < dec.idempotents.size(); ++i)
            for (std::size_t j = i + 1; j < dec.idempotents.size(); ++j)
                residual = std::max(residual,
                                    (dec.idempotents[i].element * dec.idempotents[j].element)
                                        .coeffs()
                                        .lpNorm<Eigen::Infinity>());
        prop.observe(residual, [&] {
            return "case#" + std::to_string(t) + " (" + std::to_string(blocks.size()) +
                   " blocks, dim " + std::to_string(total) + ")";
        });
    }
    return prop.done();
}

PropertyResult algebra_recovery(double tol) {
    Prop prop("structure constants recovered from the lifted product", tol);
    for (const auto& a : standard_presets()) {
        AlgebraPtr rec = recover_algebra(a);
        double residual = 0.0;
        for (std::size_t i = 0; i < a->structure_constants().size(); ++i)
            residual = std::max(residual, std::abs(a->structure_constants()[i] -
                                                   rec->structure_constants()[i]));
        prop.observe(residual, [&] { return "preset " + a->name(); });
    }
    return prop.done();
}

// ============================================================================
// Manifold checks
// ============================================================================

namespace {

WeilPoint sample_circle_point(const Atlas& atlas, const AlgebraPtr& alg, Rng& rng) {
    // angle away from the glue points 0 and ±π, so every transition applies
    const double mag = uniform(rng, 0.12, kPi - 0.12);
    const double phi = uniform(rng, 0, 1) < 0.5 ? mag : -mag;
    LiftedVector coords = random_lifted(alg, Eigen::VectorXd::Constant(1, phi), rng, 0.7);
    WeilPoint p(atlas, 0, std::move(coords));
    if (uniform(rng, 0, 1) < 0.5) p = to_chart(atlas, p, 1);
    return p;
}

WeilPoint sample_sphere_point(const Atlas& atlas, const AlgebraPtr& alg, Rng& rng) {
    const int chart = uniform_int(rng, 0, 1);
    Eigen::VectorXd base(2);
    do {
        base[0] = uniform(rng, -2.0, 2.0);
        base[1] = uniform(rng, -2.0, 2.0);
    } while (base.norm() < 0.25);
    return WeilPoint(atlas, chart, random_lifted(alg, base, rng, 0.7));
}

// All admissible routes through the map's entries, expressed in the chart of
// the first one; max pairwise residual.
double chart_independence_residual(const ManifoldMap& f, const WeilPoint& p) {
    std::vector<WeilPoint> results;
    for (std::size_t i = 0; i < f.entries.size(); ++i)
        if (auto q = lift_map_via(f, p, i)) results.push_back(*q);
    double residual = 0.0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        try {
            WeilPoint moved = to_chart(*f.target, results[i], results[0].chart);
            residual = std::max(
                residual, rel_residual(moved.coords.flat(), results[0].coords.flat()));
        } catch (const std::exception&) {
            // this pair's images do not share an overlap; nothing to compare
        }
    }
    return residual;
}

// shadow of each admissible lifted route vs the classical route
double projection_naturality_residual(const ManifoldMap& f, const WeilPoint& p) {
    double residual = 0.0;
    const Eigen::VectorXd base = p.coords.shadow();
    for (const auto& e : f.entries) {
        Eigen::VectorXd src = base;
        if (e.src_chart != p.chart) {
            const TransitionEntry* t = f.source->find_transition(p.chart, e.src_chart, base);
            if (!t) continue;
            std::vector<double> moved =
                t->map.eval(std::span<const double>(base.data(), t->map.arity()));
            src = Eigen::Map<Eigen::VectorXd>(moved.data(), int(moved.size()));
        }
        if (!e.domain.contains(src)) continue;
        WeilPoint lifted = *lift_map_via(f, p, std::size_t(&e - f.entries.data()));
        std::vector<double> img = e.graph.eval(std::span<const double>(src.data(), e.graph.arity()));
        Eigen::VectorXd want = Eigen::Map<Eigen::VectorXd>(img.data(), int(img.size()));
        residual = std::max(residual, rel_residual(lifted.coords.shadow(), want));
    }
    return residual;
}

} // namespace

PropertyResult manifold_gluing(std::uint64_t seed, int points_per_space, double tol) {
    Prop prop("gluing: cocycle round trips, chart independence, projection naturality", tol);
    Rng rng(seed);
    const AlgebraPtr alg = dual_numbers();

    const AtlasPtr circle = atlas_circle_two_charts();
    const AtlasPtr sphere = atlas_sphere_stereographic();
    const AtlasPtr line = atlas_euclidean(1);
    const std::vector<ManifoldMap> circle_maps = {circle_rotation(circle, 0.7),
                                                  circle_rotation(circle, kPi)};
    const std::vector<ManifoldMap> sphere_maps = {sphere_rotation_z(sphere, 0.9),
                                                  sphere_antipodal(sphere),
                                                  sphere_height(sphere, line)};

    for (int t = 0; t < points_per_space; ++t) {
        {
            WeilPoint p = sample_circle_point(*circle, alg, rng);
            WeilPoint back = to_chart(*circle, to_chart(*circle, p, 1 - p.chart), p.chart);
            prop.observe(rel_residual(back.coords.flat(), p.coords.flat()),
                         [&] { return "circle round trip at " + fmt(p.coords.shadow()); });
            for (const auto& f : circle_maps) {
                prop.observe(chart_independence_residual(f, p),
                             [&] { return "circle chart independence at " + fmt(p.coords.shadow()); });
                prop.observe(projection_naturality_residual(f, p),
                             [&] { return "circle projection naturality at " + fmt(p.coords.shadow()); });
            }
        }
        {
            WeilPoint p = sample_sphere_point(*sphere, alg, rng);
            WeilPoint back = to_chart(*sphere, to_chart(*sphere, p, 1 - p.chart), p.chart);
            prop.observe(rel_residual(back.coords.flat(), p.coords.flat()),
                         [&] { return "sphere round trip at " + fmt(p.coords.shadow()); });
            for (const auto& f : sphere_maps) {
                prop.observe(chart_independence_residual(f, p),
                             [&] { return "sphere chart independence at " + fmt(p.coords.shadow()); });
                prop.observe(projection_naturality_residual(f, p),
                             [&] { return "sphere projection naturality at " + fmt(p.coords.shadow()); });
            }
        }
    }
    return prop.done();
}

PropertyResult cocycle_triple_overlap(std::uint64_t seed, int points, double tol) {
    Prop prop("cocycle identity on triple overlaps (three-chart circle)", tol);
    Rng rng(seed);
    const AtlasPtr circle = atlas_circle_three_charts();
    const AlgebraPtr alg = jet_algebra(2);
    const double centers[3] = {0.0, 2.0 * kPi / 3.0, 4.0 * kPi / 3.0};

    for (int t = 0; t < points; ++t) {
        const int home = uniform_int(rng, 0, 2);
        const double alpha = centers[home] + uniform(rng, -0.35, 0.35);
        auto coord_in = [&](int chart) {
            double c = alpha - centers[chart];
            while (c > kPi) c -= 2 * kPi;
            while (c < -kPi) c += 2 * kPi;
            return c;
        };
        WeilPoint p(*circle, home,
                    random_lifted(alg, Eigen::VectorXd::Constant(1, coord_in(home)), rng, 0.7));
        const int beta = (home + 1) % 3, gamma = (home + 2) % 3;
        WeilPoint direct = to_chart(*circle, p, gamma);
        WeilPoint via = to_chart(*circle, to_chart(*circle, p, beta), gamma);
        prop.observe(rel_residual(direct.coords.flat(), via.coords.flat()), [&] {
            return "angle " + std::to_string(alpha) + " charts " + std::to_string(home) + "->" +
                   std::to_string(beta) + "->" + std::to_string(gamma);
        });
    }
    return prop.done();
}

PropertyResult manifold_functoriality(std::uint64_t seed, int points, double tol) {
    Prop prop("lift_map(g.f) = lift_map(g) . lift_map(f)", tol);
    Rng rng(seed);
    const AlgebraPtr alg = dual_numbers();

    const AtlasPtr circle = atlas_circle_two_charts();
    const ManifoldMap cf = circle_rotation(circle, 0.8), cg = circle_rotation(circle, 1.9);
    const ManifoldMap c_comp = compose(cg, cf);

    const AtlasPtr sphere = atlas_sphere_stereographic();
    const ManifoldMap sf = sphere_rotation_z(sphere, 1.1), sg = sphere_antipodal(sphere);
    const ManifoldMap s_comp = compose(sg, sf);

    for (int t = 0; t < points; ++t) {
        {
            WeilPoint p = sample_circle_point(*circle, alg, rng);
            WeilPoint lhs = lift_map(c_comp, p);
            WeilPoint rhs = lift_map(cg, lift_map(cf, p));
            try {
                WeilPoint moved = to_chart(*circle, rhs, lhs.chart);
                prop.observe(rel_residual(lhs.coords.flat(), moved.coords.flat()),
                             [&] { return "circle at " + fmt(p.coords.shadow()); });
            } catch (const std::exception&) {
            }
        }
        {
            WeilPoint p = sample_sphere_point(*sphere, alg, rng);
            WeilPoint lhs = lift_map(s_comp, p);
            WeilPoint rhs = lift_map(sg, lift_map(sf, p));
            try {
                WeilPoint moved = to_chart(*sphere, rhs, lhs.chart);
                prop.observe(rel_residual(lhs.coords.flat(), moved.coords.flat()),
                             [&] { return "sphere at " + fmt(p.coords.shadow()); });
            } catch (const std::exception&) {
            }
        }
    }
    return prop.done();
}

PropertyResult vector_bundle_cases(double witness_floor) {
    Prop prop("vector bundle iff height <= 1 (sphere transitions)", 1e-7);
    const AtlasPtr sphere = atlas_sphere_stereographic();

    VectorBundleReport dual_rep = is_vector_bundle(*sphere, dual_numbers());
    if (!dual_rep.vector_bundle)
        prop.fail("dual numbers misclassified as non vector bundle");
    prop.observe(dual_rep.witness ? dual_rep.witness->defect : 0.0,
                 [&] { return "dual on sphere: " + dual_rep.note; });

    VectorBundleReport jet_rep = is_vector_bundle(*sphere, jet_algebra(2));
    if (jet_rep.vector_bundle)
        prop.fail("jet:2 misclassified as vector bundle");
    else if (!jet_rep.witness)
        prop.fail("jet:2 produced no nonlinearity witness");
    else if (jet_rep.witness->defect <= witness_floor)
        prop.fail("jet:2 witness defect " + std::to_string(jet_rep.witness->defect) +
                  " below floor");
    else
        prop.count_only();
    return prop.done();
}

// ============================================================================
// Lie group checks
// ============================================================================

namespace {

struct GroupCase {
    GroupTag tag;
    int n;
};

const std::vector<GroupCase>& group_cases() {
    static const std::vector<GroupCase> cases = {{GroupTag::SpecialOrthogonal, 2},
                                                 {GroupTag::SpecialOrthogonal, 3},
                                                 {GroupTag::GeneralLinear, 2},
                                                 {GroupTag::UpperUnipotent, 3}};
    return cases;
}

LieTag lie_of_group(GroupTag tag) {
    switch (tag) {
        case GroupTag::SpecialOrthogonal: return LieTag::Antisymmetric;
        case GroupTag::UpperUnipotent: return LieTag::StrictlyUpper;
        case GroupTag::GeneralLinear: return LieTag::Full;
    }
    return LieTag::Full;
}

Eigen::MatrixXd real_lie_sample(int n, LieTag tag, Rng& rng, double scale) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    switch (tag) {
        case LieTag::Full:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) m(i, j) = uniform(rng, -scale, scale);
            break;
        case LieTag::Antisymmetric:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    m(i, j) = uniform(rng, -scale, scale);
                    m(j, i) = -m(i, j);
                }
            break;
        case LieTag::StrictlyUpper:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) m(i, j) = uniform(rng, -scale, scale);
            break;
    }
    return m;
}

Eigen::MatrixXd real_expm(const Eigen::MatrixXd& m) {
    const AlgebraPtr r = real_algebra();
    std::vector<AlgebraElement> entries;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) entries.push_back(r->scalar(m(i, j)));
    LiftedLieAlgebraElement x(r, int(m.rows()), LieTag::Full, std::move(entries));
    return lifted_exp(x).shadow();
}

} // namespace

PropertyResult liegroup_group_axioms(std::uint64_t seed, int trials,
                                     const std::vector<AlgebraPtr>& algebras, double tol) {
    Prop prop("group axioms in T_A G: associativity, identity, inverses", tol);
    std::uint64_t salt = 0;
    for (const auto& a : algebras)
        for (const auto& gc : group_cases()) {
            Rng rng(seed + 53 * ++salt);
            LiftedMatrix id = group_identity(a, gc.n, gc.tag);
            for (int t = 0; t < trials; ++t) {
                LiftedMatrix m = random_group_element(a, gc.n, gc.tag, rng);
                LiftedMatrix n = random_group_element(a, gc.n, gc.tag, rng);
                LiftedMatrix p = random_group_element(a, gc.n, gc.tag, rng);
                auto name = [&] {
                    return std::string(group_tag_name(gc.tag)) + "(" + std::to_string(gc.n) +
                           ") over " + a->name() + " trial#" + std::to_string(t);
                };
                prop.observe(rel_residual(group_mul(group_mul(m, n), p).flat(),
                                          group_mul(m, group_mul(n, p)).flat()),
                             name);
                prop.observe(rel_residual(group_mul(m, id).flat(), m.flat()), name);
                prop.observe(rel_residual(group_mul(m, group_inv(m)).flat(), id.flat()), name);
            }
        }
    return prop.done();
}

PropertyResult liegroup_projection_hom(std::uint64_t seed, int trials,
                                       const std::vector<AlgebraPtr>& algebras) {
    Prop prop("pi_A is a group homomorphism, exact at the arithmetic level", 0.0);
    std::uint64_t salt = 0;
    for (const auto& a : algebras)
        for (const auto& gc : group_cases()) {
            Rng rng(seed + 59 * ++salt);
            for (int t = 0; t < trials; ++t) {
                LiftedMatrix m = random_group_element(a, gc.n, gc.tag, rng);
                LiftedMatrix n = random_group_element(a, gc.n, gc.tag, rng);
                const Eigen::MatrixXd sm = m.shadow(), sn = n.shadow();
                // same accumulation order as group_mul
                Eigen::MatrixXd want(gc.n, gc.n);
                for (int i = 0; i < gc.n; ++i)
                    for (int j = 0; j < gc.n; ++j) {
                        double acc = sm(i, 0) * sn(0, j);
                        for (int k = 1; k < gc.n; ++k) acc += sm(i, k) * sn(k, j);
                        want(i, j) = acc;
                    }
                const Eigen::MatrixXd got = group_mul(m, n).shadow();
                prop.observe((got - want).lpNorm<Eigen::Infinity>(), [&] {
                    return std::string(group_tag_name(gc.tag)) + " over " + a->name() +
                           " trial#" + std::to_string(t);
                });

                // zero section is a homomorphism splitting the projection
                LiftedMatrix zg = zero_section(sm, gc.tag, a);
                LiftedMatrix zh = zero_section(sn, gc.tag, a);
                LiftedMatrix zgh = zero_section(want, gc.tag, a);
                prop.observe((group_mul(zg, zh).flat() - zgh.flat()).lpNorm<Eigen::Infinity>(),
                             [&] { return "zero-section homomorphism over " + a->name(); });
                prop.observe((zg.shadow() - sm).lpNorm<Eigen::Infinity>(),
                             [&] { return "pi . zero-section over " + a->name(); });
            }
        }
    return prop.done();
}

PropertyResult liegroup_exp_naturality(std::uint64_t seed, int trials,
                                       const std::vector<AlgebraPtr>& algebras, double tol) {
    Prop prop("exp naturality: hom . exp = exp . hom", tol);
    std::uint64_t salt = 0;
    for (const auto& a : algebras) {
        std::vector<AlgebraHom> homs = {AlgebraHom::make(a->aug(), a, real_algebra())};
        if (a->dim() == 4 && a->height() == 2)  // dual*dual: add the exchange
            homs.push_back(exchange_iso(dual_numbers(), dual_numbers()));
        for (const auto& gc : group_cases()) {
            Rng rng(seed + 61 * ++salt);
            for (int t = 0; t < trials; ++t) {
                LiftedLieAlgebraElement x =
                    random_lie_element(a, gc.n, lie_of_group(gc.tag), rng, 0.8);
                for (const auto& phi : homs) {
                    if (!same_algebra(phi.source(), a)) continue;
                    LiftedMatrix lhs = apply_hom(phi, lifted_exp(x));
                    LiftedMatrix rhs = lifted_exp(apply_hom(phi, x));
                    prop.observe(rel_residual(lhs.flat(), rhs.flat()), [&] {
                        return std::string(group_tag_name(gc.tag)) + " over " + a->name() +
                               " trial#" + std::to_string(t);
                    });
                }
            }
        }
    }
    return prop.done();
}

PropertyResult liegroup_bracket_laws(std::uint64_t seed, int trials,
                                     const std::vector<AlgebraPtr>& algebras, double tol) {
    Prop prop("bracket: pure-tensor law (1e-12), antisymmetry, Jacobi", tol);
    std::uint64_t salt = 0;
    for (const auto& a : algebras)
        for (const auto& gc : group_cases()) {
            const LieTag tag = lie_of_group(gc.tag);
            Rng rng(seed + 67 * ++salt);
            for (int t = 0; t < trials; ++t) {
                // pure tensor law, tighter tolerance
                Eigen::MatrixXd xr = real_lie_sample(gc.n, tag, rng, 1.0);
                Eigen::MatrixXd yr = real_lie_sample(gc.n, tag, rng, 1.0);
                AlgebraElement ae = random_element(a, rng), be = random_element(a, rng);
                LiftedLieAlgebraElement xt = LiftedLieAlgebraElement::pure_tensor(xr, ae, tag);
                LiftedLieAlgebraElement yt = LiftedLieAlgebraElement::pure_tensor(yr, be, tag);
                LiftedLieAlgebraElement got = lifted_bracket(xt, yt);
                LiftedLieAlgebraElement want = LiftedLieAlgebraElement::pure_tensor(
                    Eigen::MatrixXd(xr * yr - yr * xr), ae * be, tag);
                const double pure_res = (got.flat() - want.flat()).lpNorm<Eigen::Infinity>();
                auto name = [&] {
                    return std::string(group_tag_name(gc.tag)) + " over " + a->name() +
                           " trial#" + std::to_string(t);
                };
                if (pure_res > 1e-12 ) prop.fail("pure-tensor law: " + name());
                prop.observe(pure_res, name);

                LiftedLieAlgebraElement x = random_lie_element(a, gc.n, tag, rng);
                LiftedLieAlgebraElement y = random_lie_element(a, gc.n, tag, rng);
                LiftedLieAlgebraElement z = random_lie_element(a, gc.n, tag, rng);
                prop.observe(lifted_bracket(x, x).flat().lpNorm<Eigen::Infinity>(), name);
                Eigen::VectorXd jac = lifted_bracket(lifted_bracket(x, y), z).flat() +
                                      lifted_bracket(lifted_bracket(y, z), x).flat() +
                                      lifted_bracket(lifted_bracket(z, x), y).flat();
                prop.observe(jac.lpNorm<Eigen::Infinity>(), name);
            }
        }
    return prop.done();
}

PropertyResult liegroup_semidirect(std::uint64_t seed, int trials,
                                   const std::vector<AlgebraPtr>& algebras, double tol) {
    Prop prop("semidirect splitting: M = U . 0_G(pi(M)) reassembles", tol);
    std::uint64_t salt = 0;
    for (const auto& a : algebras)
        for (const auto& gc : group_cases()) {
            Rng rng(seed + 71 * ++salt);
            for (int t = 0; t < trials; ++t) {
                LiftedMatrix m = random_group_element(a, gc.n, gc.tag, rng);
                SemidirectReport rep = semidirect_check(m);
                prop.observe(std::max(rep.reassembly_residual, rep.fiber_identity_residual),
                             [&] {
                                 return std::string(group_tag_name(gc.tag)) + " over " +
                                        a->name() + " trial#" + std::to_string(t);
                             });
            }
        }
    return prop.done();
}

PropertyResult exp_first_order(std::uint64_t seed, int trials, double tol) {
    Prop prop("dual slot of lifted_exp vs finite-differenced matrix exponential", tol);
    Rng rng(seed);
    const AlgebraPtr d = dual_numbers();
    const double h = 1e-5;
    const std::vector<GroupCase> cases = {{GroupTag::SpecialOrthogonal, 2},
                                          {GroupTag::SpecialOrthogonal, 3},
                                          {GroupTag::GeneralLinear, 2}};
    for (int t = 0; t < trials; ++t) {
        const auto& gc = cases[t % cases.size()];
        const LieTag tag = lie_of_group(gc.tag);
        Eigen::MatrixXd x0 = real_lie_sample(gc.n, tag, rng, 1.2);
        Eigen::MatrixXd x1 = real_lie_sample(gc.n, tag, rng, 1.2);

        std::vector<AlgebraElement> entries;
        for (int i = 0; i < gc.n; ++i)
            for (int j = 0; j < gc.n; ++j)
                entries.push_back(d->scalar(x0(i, j)) + d->basis_element(1) * x1(i, j));
        LiftedMatrix e = lifted_exp(LiftedLieAlgebraElement(d, gc.n, tag, std::move(entries)));

        Eigen::MatrixXd slot(gc.n, gc.n);
        for (int i = 0; i < gc.n; ++i)
            for (int j = 0; j < gc.n; ++j) slot(i, j) = e.at(i, j).coeff(1);

        Eigen::MatrixXd fd = (real_expm(x0 + h * x1) - real_expm(x0 - h * x1)) / (2 * h);
        prop.observe(rel_residual(Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(slot.data(), slot.size())),
                                  Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(fd.data(), fd.size()))),
                     [&] {
                         return std::string(group_tag_name(gc.tag)) + "(" +
                                std::to_string(gc.n) + ") trial#" + std::to_string(t);
                     });
    }
    return prop.done();
}

PropertyResult liegroup_laws(std::uint64_t seed, int trials,
                             const std::vector<AlgebraPtr>& algebras, double tol) {
    return merge("lie group suite: axioms, projection, exp naturality, bracket, semidirect",
                 {liegroup_group_axioms(seed, trials, algebras, tol),
                  liegroup_projection_hom(seed + 1, trials, algebras),
                  liegroup_exp_naturality(seed + 2, std::max(1, trials / 2), algebras, tol),
                  liegroup_bracket_laws(seed + 3, trials, algebras, tol),
                  liegroup_semidirect(seed + 4, trials, algebras, tol)});
}

} // namespace checks

// ============================================================================
// Suites
// ============================================================================

SuiteResult verify_algebra(std::uint64_t seed, int trials) {
    SuiteResult r;
    r.suite = "algebra";
    r.properties = {
        checks::algebra_laws(seed, trials),
        checks::inverse_roundtrip(seed + 1, trials),
        checks::tensor_and_rebase(seed + 2, std::max(5, trials / 5)),
        checks::decomposition_roundtrip(seed + 3, std::max(5, trials / 5)),
        checks::algebra_recovery(),
    };
    return r;
}

SuiteResult verify_lift(std::uint64_t seed, int trials) {
    const auto presets = standard_presets();
    SuiteResult r;
    r.suite = "lift";
    r.properties = {
        checks::shadow_commutation(seed, trials),
        checks::functoriality(seed + 1, std::max(5, trials / 2), presets),
        checks::product_preservation(seed + 2, trials),
        checks::formula_equivalence(seed + 3, std::max(5, trials / 2),
                                    {tensor_product(dual_numbers(), dual_numbers()),
                                     jet_algebra(2, 2)}),
        checks::oracle_basis_independence(seed + 4, std::max(5, trials / 2)),
        checks::hom_naturality(seed + 5, std::max(5, trials / 5), 10),
        checks::dual_fd_oracle(seed + 6, std::max(5, trials / 2), 4),
        checks::jet_fd_oracle(seed + 7, trials),
        checks::jet_symbolic_oracle(seed + 8, trials),
        checks::tensor_nesting(seed + 9, trials),
        checks::tensor_nesting(seed + 10, trials, 1e-9, jet_algebra(2), dual_numbers()),
    };
    return r;
}

SuiteResult verify_manifold(std::uint64_t seed, int trials) {
    SuiteResult r;
    r.suite = "manifold";
    r.properties = {
        checks::manifold_gluing(seed, trials),
        checks::cocycle_triple_overlap(seed + 1, trials),
        checks::manifold_functoriality(seed + 2, trials),
        checks::vector_bundle_cases(),
    };
    return r;
}

SuiteResult verify_liegroup(std::uint64_t seed, int trials) {
    const auto algebras = std::vector<AlgebraPtr>{
        dual_numbers(), jet_algebra(2), tensor_product(dual_numbers(), dual_numbers())};
    const int per = std::max(2, trials / 10);
    SuiteResult r;
    r.suite = "liegroup";
    r.properties = {
        checks::liegroup_group_axioms(seed, per, algebras, 1e-9),
        checks::liegroup_projection_hom(seed + 1, per, algebras),
        checks::liegroup_exp_naturality(seed + 2, per, algebras, 1e-9),
        checks::liegroup_bracket_laws(seed + 3, per, algebras, 1e-9),
        checks::liegroup_semidirect(seed + 4, per, algebras, 1e-9),
        checks::exp_first_order(seed + 5, trials),
    };
    return r;
}

std::vector<SuiteResult> run_suites(const std::string& suite, std::uint64_t seed, int trials) {
    if (suite == "algebra") return {verify_algebra(seed, trials)};
    if (suite == "lift") return {verify_lift(seed, trials)};
    if (suite == "manifold") return {verify_manifold(seed, trials)};
    if (suite == "liegroup") return {verify_liegroup(seed, trials)};
    if (suite == "all")
        return {verify_algebra(seed, trials), verify_lift(seed, trials),
                verify_manifold(seed, trials), verify_liegroup(seed, trials)};
    throw std::invalid_argument("unknown suite '" + suite +
                                "' (expected algebra, lift, manifold, liegroup or all)");
}

void print_report(std::ostream& os, const SuiteResult& r) {
    os << "suite " << r.suite << "\n";
    for (const auto& p : r.properties) {
        std::ostringstream res;
        res.precision(3);
        res << std::scientific << p.max_residual;
        os << "  [" << (p.passed ? "PASS" : "FAIL") << "] " << p.name << "  trials=" << p.trials
           << " max_residual=" << res.str() << " tol=" << p.tolerance << "\n";
        if (!p.passed && !p.counterexample.empty())
            os << "         counterexample: " << p.counterexample << "\n";
    }
    os << "suite " << r.suite << ": " << (r.all_passed() ? "PASS" : "FAIL") << "\n";
}

} // namespace weil
