#include "weil/algebra_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace weil {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("algebra file, line " + std::to_string(line) + ": " + msg);
}

} // namespace

std::string serialize_algebra(const WeilAlgebra& a) {
    std::ostringstream os;
    os.precision(17);
    os << "dim " << a.dim() << "\n";
    os << "unit";
    for (int i = 0; i < a.dim(); ++i) os << " " << a.unit()[i];
    os << "\naug";
    for (int i = 0; i < a.dim(); ++i) os << " " << a.aug()[i];
    os << "\nlabels";
    for (int i = 0; i < a.dim(); ++i) os << " " << a.label(i);
    os << "\n";
    if (!a.generators().empty()) {
        os << "gens";
        for (int g : a.generators()) os << " " << g;
        os << "\n";
    }
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j) {
            bool any = false;
            for (int k = 0; k < a.dim(); ++k)
                if (a.sc(i, j, k) != 0.0) { any = true; break; }
            if (!any) continue;
            os << "sc " << i << " " << j << " ->";
            for (int k = 0; k < a.dim(); ++k)
                if (a.sc(i, j, k) != 0.0) os << " " << k << ":" << a.sc(i, j, k);
            os << "\n";
        }
    return os.str();
}

AlgebraPtr parse_algebra(const std::string& text, const std::string& name) {
    int dim = -1;
    Eigen::VectorXd unit;
    Eigen::RowVectorXd aug;
    bool have_unit = false, have_aug = false;
    std::vector<std::string> labels;
    std::vector<int> gens;
    std::vector<double> sc;
    std::set<std::pair<int, int>> seen;

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

        if (key == "dim") {
            if (!(line >> dim) || dim < 1) fail(lineno, "dim must be a positive integer");
            sc.assign(std::size_t(dim) * dim * dim, 0.0);
        } else if (key == "unit" || key == "aug") {
            if (dim < 1) fail(lineno, "'" + key + "' before 'dim'");
            Eigen::VectorXd v(dim);
            for (int i = 0; i < dim; ++i)
                if (!(line >> v[i])) fail(lineno, "'" + key + "' needs " + std::to_string(dim) + " reals");
            double extra;
            if (line >> extra) fail(lineno, "'" + key + "' has more than " + std::to_string(dim) + " entries");
            if (key == "unit") { unit = v; have_unit = true; }
            else { aug = v.transpose(); have_aug = true; }
        } else if (key == "labels") {
            if (dim < 1) fail(lineno, "'labels' before 'dim'");
            std::string l;
            while (line >> l) labels.push_back(l);
            if (int(labels.size()) != dim) fail(lineno, "label count does not match dim");
        } else if (key == "gens") {
            if (dim < 1) fail(lineno, "'gens' before 'dim'");
            int g;
            while (line >> g) {
                if (g < 0 || g >= dim) fail(lineno, "generator index out of range");
                gens.push_back(g);
            }
        } else if (key == "sc") {
            if (dim < 1) fail(lineno, "'sc' before 'dim'");
            int i, j;
            std::string arrow;
            if (!(line >> i >> j >> arrow) || arrow != "->")
                fail(lineno, "expected 'sc i j -> k:v ...'");
            if (i < 0 || i >= dim || j < 0 || j >= dim) fail(lineno, "basis index out of range");
            if (i > j)
                fail(lineno, "structure constant line has i > j; only the i <= j half is stored "
                             "and mirrors are not inferred");
            if (!seen.insert({i, j}).second) fail(lineno, "duplicate sc line for this basis pair");
            std::string entry;
            while (line >> entry) {
                const auto colon = entry.find(':');
                if (colon == std::string::npos) fail(lineno, "entry '" + entry + "' is not k:v");
                int k;
                double v;
                try {
                    std::size_t used;
                    k = std::stoi(entry.substr(0, colon), &used);
                    if (used != colon) throw std::invalid_argument("");
                    v = std::stod(entry.substr(colon + 1), &used);
                    if (used != entry.size() - colon - 1) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    fail(lineno, "entry '" + entry + "' is not k:v");
                }
                if (k < 0 || k >= dim) fail(lineno, "target index out of range");
                if (!std::isfinite(v)) fail(lineno, "non-finite structure constant");
                sc[(std::size_t(i) * dim + j) * dim + k] = v;
                sc[(std::size_t(j) * dim + i) * dim + k] = v;
            }
        } else {
            fail(lineno, "unknown field '" + key + "'");
        }
    }

    if (dim < 1) throw std::runtime_error("algebra file: missing 'dim'");
    if (!have_unit) throw std::runtime_error("algebra file: missing 'unit'");
    if (!have_aug) throw std::runtime_error("algebra file: missing 'aug'");
    return WeilAlgebra::create(std::move(unit), std::move(sc), std::move(aug),
                               std::move(labels), std::move(gens), name);
}

AlgebraPtr load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open algebra file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra(buf.str(), path);
}

void save_algebra_file(const WeilAlgebra& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write algebra file '" + path + "'");
    out << serialize_algebra(a);
}

} // namespace weil
