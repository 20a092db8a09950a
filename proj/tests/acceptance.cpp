// Acceptance gate: one line per criterion, every tolerance pinned in code.
// Exit 0 iff all criteria pass.

#include "weil/algebra.hpp"
#include "weil/verify.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

namespace {

struct Criterion {
    int id;
    std::string name;
    weil::PropertyResult result;
    double seconds;
    double budget_seconds;  // 0 = no budget
    bool ok() const {
        return result.passed && (budget_seconds == 0.0 || seconds < budget_seconds);
    }
};

std::vector<Criterion> g_criteria;

template <class Fn>
void run(int id, const std::string& name, double budget_seconds, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    weil::PropertyResult r;
    try {
        r = fn();
    } catch (const std::exception& e) {
        r.name = name;
        r.passed = false;
        r.counterexample = std::string("unhandled exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    g_criteria.push_back({id, name, std::move(r), secs, budget_seconds});
}

} // namespace

int main() {
    using namespace weil;
    const std::uint64_t seed = 20240608;

    run(1, "dual-number derivative oracle (50 graphs x 10 points, 1e-6)", 5.0,
        [&] { return checks::dual_fd_oracle(seed, 50, 10, 1e-6); });

    run(2, "jet:3 symbolic oracle (50 polynomial graphs, 1e-9)", 5.0,
        [&] { return checks::jet_symbolic_oracle(seed + 1, 50, 1e-9); });

    run(3, "functoriality (200 pairs over dual, jet:3, dual*dual, jet:2:2, 1e-9)", 30.0, [&] {
        return checks::functoriality(
            seed + 2, 200,
            {dual_numbers(), jet_algebra(3), tensor_product(dual_numbers(), dual_numbers()),
             jet_algebra(2, 2)},
            1e-9);
    });

    run(4, "Taylor formula oracle = eval_lift (100 graphs over dual*dual, jet:2:2, 1e-9)", 0.0,
        [&] {
            return checks::formula_equivalence(
                seed + 3, 100,
                {tensor_product(dual_numbers(), dual_numbers()), jet_algebra(2, 2)}, 1e-9);
        });

    run(5, "naturality of homomorphisms (20 homs x 50 inputs, 1e-9)", 0.0,
        [&] { return checks::hom_naturality(seed + 4, 20, 50, 1e-9); });

    run(6, "tensor nesting D-then-D vs D*D + exact exchange swap (100 graphs, 1e-9)", 0.0,
        [&] { return checks::tensor_nesting(seed + 5, 100, 1e-9); });

    run(7, "minimal idempotent decomposition (20 rotated sums, 1e-9)", 10.0,
        [&] { return checks::decomposition_roundtrip(seed + 6, 20, 1e-9, 9); });

    run(8, "vector bundle criterion (dual yes; jet:2 no, witness > 1e-3)", 0.0,
        [&] { return checks::vector_bundle_cases(1e-3); });

    run(9, "manifold gluing on S1 and S2 (200 points each, 1e-9)", 0.0, [&] {
        weil::PropertyResult glue = checks::manifold_gluing(seed + 7, 200, 1e-9);
        weil::PropertyResult triple = checks::cocycle_triple_overlap(seed + 8, 200, 1e-9);
        weil::PropertyResult fun = checks::manifold_functoriality(seed + 9, 200, 1e-9);
        weil::PropertyResult out;
        out.name = glue.name;
        out.trials = glue.trials + triple.trials + fun.trials;
        out.tolerance = 1e-9;
        out.max_residual =
            std::max({glue.max_residual, triple.max_residual, fun.max_residual});
        out.passed = glue.passed && triple.passed && fun.passed;
        out.counterexample = !glue.passed ? glue.counterexample
                             : !triple.passed ? triple.counterexample
                                              : fun.counterexample;
        return out;
    });

    run(10, "Lie group suite on SO(2), SO(3), GL(2), unipotent(3) (100 trials, 1e-9)", 60.0,
        [&] {
            return checks::liegroup_laws(
                seed + 10, 100,
                {dual_numbers(), jet_algebra(2), tensor_product(dual_numbers(), dual_numbers())},
                1e-9);
        });

    run(11, "algebra recovered from the lifted product (presets, 1e-12)", 0.0,
        [&] { return checks::algebra_recovery(1e-12); });

    bool all_ok = true;
    for (const auto& c : g_criteria) {
        const bool ok = c.ok();
        all_ok = all_ok && ok;
        std::printf("[%2d] %s  %s  (trials=%d, max_residual=%.3e, tol=%.0e, %.2fs%s)\n", c.id,
                    ok ? "PASS" : "FAIL", c.name.c_str(), c.result.trials,
                    c.result.max_residual, c.result.tolerance, c.seconds,
                    c.budget_seconds > 0 ? (", budget " + std::to_string(int(c.budget_seconds)) + "s").c_str()
                                         : "");
        if (!c.result.passed && !c.result.counterexample.empty())
            std::printf("     counterexample: %s\n", c.result.counterexample.c_str());
        if (c.result.passed && c.budget_seconds > 0 && c.seconds >= c.budget_seconds)
            std::printf("     over runtime budget\n");
    }
    std::printf("acceptance: %s\n", all_ok ? "PASS" : "FAIL");
    return all_ok ? 0 : 1;
}
