#pragma once

#include "weil/expr.hpp"

#include <Eigen/Dense>
#include <map>
#include <vector>

namespace weil {

/// Exact multivariate polynomial: exponent vector → coefficient.
/// Used for symbolic expansion of polynomial expression graphs.
class Poly {
public:
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(double c, int nvars) {
        Poly p(nvars);
        if (c != 0.0) p.terms_[std::vector<int>(nvars, 0)] = c;
        return p;
    }

    static Poly variable(int i, int nvars) {
        Poly p(nvars);
        std::vector<int> e(nvars, 0);
        e[i] = 1;
        p.terms_[std::move(e)] = 1.0;
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }

    Poly operator+(const Poly& rhs) const {
        Poly out = *this;
        for (const auto& [e, c] : rhs.terms_) {
            auto [it, fresh] = out.terms_.try_emplace(e, c);
            if (!fresh && (it->second += c) == 0.0) out.terms_.erase(it);
        }
        return out;
    }

    Poly operator-() const {
        Poly out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    Poly operator-(const Poly& rhs) const { return *this + (-rhs); }

    Poly operator*(const Poly& rhs) const {
        Poly out(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : rhs.terms_) {
                std::vector<int> e(nvars_);
                for (int v = 0; v < nvars_; ++v) e[v] = ea[v] + eb[v];
                auto [it, fresh] = out.terms_.try_emplace(std::move(e), ca * cb);
                if (!fresh && (it->second += ca * cb) == 0.0) out.terms_.erase(it);
            }
        return out;
    }

    Poly pow(int k) const {
        Poly out = constant(1.0, nvars_);
        for (int i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    Poly partial(int v) const {
        Poly out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[v] == 0) continue;
            std::vector<int> d = e;
            d[v] -= 1;
            out.terms_[std::move(d)] = c * e[v];
        }
        return out;
    }

    /// Directional derivative Σ_v u_v ∂/∂x_v.
    Poly directional(const Eigen::VectorXd& u) const {
        Poly out(nvars_);
        for (int v = 0; v < nvars_; ++v)
            if (u[v] != 0.0) {
                Poly pv = partial(v);
                for (auto& [e, c] : pv.terms_) c *= u[v];
                out = out + pv;
            }
        return out;
    }

    double eval(const Eigen::VectorXd& x) const {
        double sum = 0.0;
        for (const auto& [e, c] : terms_) {
            double t = c;
            for (int v = 0; v < nvars_; ++v)
                for (int i = 0; i < e[v]; ++i) t *= x[v];
            sum += t;
        }
        return sum;
    }

private:
    int nvars_;
    std::map<std::vector<int>, double> terms_;
};

/// Expands every output of a polynomial expression graph symbolically.
/// Throws std::invalid_argument naming the first non-polynomial node.
std::vector<Poly> graph_polynomials(const ExprGraph& g);

} // namespace weil
