#include "weil/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace weil {

LiftedVector build_seeded_input(const AlgebraPtr& a, const Eigen::VectorXd& point,
                                const std::vector<SeedSlot>& slots) {
    if (slots.empty()) {
        if (int(a->generators().size()) < point.size())
            throw std::domain_error(
                "algebra '" + a->name() + "' tracks " + std::to_string(a->generators().size()) +
                " nilpotent generators for " + std::to_string(point.size()) +
                " variables; pass explicit seed slots");
        return LiftedVector::seed_generators(a, point);
    }
    std::vector<AlgebraElement> entries;
    for (int i = 0; i < point.size(); ++i) entries.push_back(a->scalar(point[i]));
    for (const SeedSlot& s : slots) {
        if (s.var < 0 || s.var >= point.size())
            throw std::domain_error("seed slot variable index out of range");
        if (s.basis < 0 || s.basis >= a->dim())
            throw std::domain_error("seed slot basis index out of range");
        entries[s.var] += a->basis_element(s.basis) * s.scale;
    }
    return LiftedVector(a, std::move(entries));
}

std::string lift_table(const ExprGraph& g, const LiftedVector& input) {
    LiftedVector out = eval_lift(g, input);
    const auto& a = *input.algebra();

    std::size_t width = 1;
    for (int i = 0; i < a.dim(); ++i) width = std::max(width, a.label(i).size());

    std::ostringstream os;
    os.precision(12);
    for (int o = 0; o < out.size(); ++o) {
        if (out.size() > 1) os << "output " << o << "\n";
        for (int i = 0; i < a.dim(); ++i)
            os << std::left << std::setw(int(width) + 2) << a.label(i) << out[o].coeff(i) << "\n";
    }
    return os.str();
}

std::string decompose_report(const Decomposition& dec) {
    std::ostringstream os;
    os.precision(12);
    os << "k = " << dec.idempotents.size() << "\n";
    for (std::size_t i = 0; i < dec.idempotents.size(); ++i) {
        os << "idempotent " << i << ":";
        const auto& c = dec.idempotents[i].element.coeffs();
        for (int k = 0; k < c.size(); ++k) os << " " << c[k];
        os << "\n";
        os << "summand " << i << ": dim " << dec.summands[i]->dim() << " height "
           << dec.summands[i]->height() << "\n";
    }
    return os.str();
}

} // namespace weil
