// Command line surface: construct algebras, evaluate lifts, decompose, and
// run the verification suites.
//
// Exit codes: 0 success, 2 usage, 3 domain/math error, 4 verification failure.

#include "weil/algebra.hpp"
#include "weil/algebra_io.hpp"
#include "weil/decompose.hpp"
#include "weil/report.hpp"
#include "weil/verify.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitMath = 3;
constexpr int kExitVerification = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// `dual`, `jet:<r>`, `jet:<r>:<k>`, tensor expressions of presets joined by
// '*', or a path to a serialized algebra file.
weil::AlgebraPtr resolve_algebra(const std::string& spec) {
    if (spec.find('*') != std::string::npos) {
        weil::AlgebraPtr acc;
        std::string part;
        std::istringstream in(spec);
        while (std::getline(in, part, '*')) {
            weil::AlgebraPtr factor = resolve_algebra(part);
            acc = acc ? weil::tensor_product(acc, factor) : factor;
        }
        return acc;
    }
    if (spec == "dual") return weil::dual_numbers();
    if (spec == "r" || spec == "R") return weil::real_algebra();
    if (spec.rfind("jet:", 0) == 0) {
        int order = -1, vars = 1;
        const std::string rest = spec.substr(4);
        const auto colon = rest.find(':');
        try {
            order = std::stoi(colon == std::string::npos ? rest : rest.substr(0, colon));
            if (colon != std::string::npos) vars = std::stoi(rest.substr(colon + 1));
        } catch (const std::exception&) {
            throw UsageError("bad jet spec '" + spec + "' (expected jet:<r> or jet:<r>:<k>)");
        }
        if (order < 0 || vars < 1) throw UsageError("bad jet spec '" + spec + "'");
        return weil::jet_algebra(order, vars);
    }
    if (std::filesystem::exists(spec)) return weil::load_algebra_file(spec);
    throw UsageError("unknown algebra spec '" + spec +
                     "' (not a preset and no such file)");
}

std::vector<weil::SeedSlot> parse_seed_slots(const std::vector<std::string>& specs) {
    std::vector<weil::SeedSlot> slots;
    for (const auto& s : specs) {
        weil::SeedSlot slot;
        char extra = 0;
        const int fields =
            std::sscanf(s.c_str(), "%d:%d:%lf%c", &slot.var, &slot.basis, &slot.scale, &extra);
        if (fields != 3) {
            slot.scale = 1.0;
            if (std::sscanf(s.c_str(), "%d:%d%c", &slot.var, &slot.basis, &extra) != 2)
                throw UsageError("bad --seed-slot '" + s + "' (expected var:basis[:scale])");
        }
        slot.var -= 1;  // user-facing variables are x1, x2, ...
        slots.push_back(slot);
    }
    return slots;
}

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil algebra Taylor-lift toolkit"};
    app.require_subcommand(1);

    std::string algebra_spec, expr_text, out_path, suite = "all";
    std::vector<double> at;
    std::vector<std::string> slot_specs;
    std::uint64_t seed = 1;
    int trials = 100;

    auto* lift = app.add_subcommand("lift", "evaluate the lifted expression at a point");
    lift->add_option("expr", expr_text, "expression in x1..xn")->required();
    lift->add_option("--algebra", algebra_spec, "algebra preset, tensor spec or file")->required();
    lift->add_option("--at", at, "base point coordinates")->expected(-1);
    lift->add_option("--seed-slot", slot_specs, "explicit nilpotent seeding var:basis[:scale]");
    lift->add_option("--out", out_path, "write the table to a file");

    auto* decompose = app.add_subcommand("decompose", "split an algebra into local summands");
    decompose->add_option("algebra", algebra_spec, "algebra file or preset")->required();
    decompose->add_option("--out", out_path, "write the report to a file");

    auto* verify = app.add_subcommand("verify", "run randomized property suites");
    verify->add_option("suite", suite, "algebra | lift | manifold | liegroup | all");
    verify->add_option("--seed", seed, "PRNG seed");
    verify->add_option("--trials", trials, "trials per property")->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "write the report to a file");

    auto* tensor = app.add_subcommand("tensor", "print a tensor-product algebra");
    tensor->add_option("--algebra", algebra_spec, "tensor spec, e.g. dual*jet:2")->required();
    tensor->add_option("--out", out_path, "write the serialized algebra to a file");

    auto* validate_cmd = app.add_subcommand("validate", "check the Weil algebra axioms");
    validate_cmd->add_option("algebra", algebra_spec, "algebra file or preset")->required();
    validate_cmd->add_option("--out", out_path, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (lift->parsed()) {
            weil::AlgebraPtr a = resolve_algebra(algebra_spec);
            Eigen::VectorXd point(at.size());
            for (std::size_t i = 0; i < at.size(); ++i) point[int(i)] = at[i];

            weil::ExprGraph g;
            try {
                g = weil::parse_expression(expr_text, int(point.size()));
            } catch (const weil::ParseError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }
            weil::LiftedVector input =
                weil::build_seeded_input(a, point, parse_seed_slots(slot_specs));
            write_out(weil::lift_table(g, input), out_path);
            return 0;
        }

        if (decompose->parsed()) {
            weil::AlgebraPtr a = resolve_algebra(algebra_spec);
            weil::Decomposition dec = weil::minimal_idempotents(a);
            write_out(weil::decompose_report(dec), out_path);
            return 0;
        }

        if (verify->parsed()) {
            std::vector<weil::SuiteResult> results;
            try {
                results = weil::run_suites(suite, seed, trials);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitUsage;
            }
            std::ostringstream os;
            bool ok = true;
            for (const auto& r : results) {
                weil::print_report(os, r);
                ok = ok && r.all_passed();
            }
            write_out(os.str(), out_path);
            return ok ? 0 : kExitVerification;
        }

        if (tensor->parsed()) {
            weil::AlgebraPtr a = resolve_algebra(algebra_spec);
            write_out(weil::serialize_algebra(*a), out_path);
            return 0;
        }

        if (validate_cmd->parsed()) {
            weil::AlgebraPtr a = resolve_algebra(algebra_spec);
            weil::ValidationReport rep = weil::validate(a);
            write_out(rep.summary() + "\n", out_path);
            return rep.valid ? 0 : kExitVerification;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const weil::EvalDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    }
    return 0;
}
