#include "snls/detail/polysystem.hpp"

#include <algorithm>
#include <stdexcept>

namespace snls::detail {

PolySystem::PolySystem(const std::vector<CoeffExpr>& equations, std::vector<SymbolId> unknowns,
                       const std::map<SymbolId, std::complex<double>>& fixed)
    : unknowns_(std::move(unknowns)) {
    const std::size_t n = unknowns_.size();
    for (const auto& eq : equations) {
        std::map<std::vector<std::uint8_t>, std::complex<double>> merged;
        for (const auto& [mono, c] : eq.terms()) {
            std::complex<double> coeff{static_cast<double>(c)};
            std::vector<std::uint8_t> exps(n, 0);
            for (const auto& [sym, e] : mono.factors()) {
                auto u = std::find(unknowns_.begin(), unknowns_.end(), sym);
                if (u != unknowns_.end()) {
                    exps[static_cast<std::size_t>(u - unknowns_.begin())] = static_cast<std::uint8_t>(e);
                    continue;
                }
                auto f = fixed.find(sym);
                if (f == fixed.end()) throw std::invalid_argument("PolySystem: no value or unknown slot for " + sym.name());
                for (unsigned p = 0; p < e; ++p) coeff *= f->second;
            }
            merged[exps] += coeff;
        }
        std::vector<Term> terms;
        for (auto& [exps, coeff] : merged) {
            if (coeff == std::complex<double>{0.0}) continue;
            unsigned deg = 0;
            for (auto e : exps) {
                deg += e;
                max_exponent_ = std::max<unsigned>(max_exponent_, e);
            }
            max_degree_ = std::max(max_degree_, deg);
            terms.push_back(Term{coeff, exps});
        }
        equations_.push_back(std::move(terms));
    }
}

namespace {

// powers[j][e] = x_j^e
std::vector<std::vector<std::complex<double>>> power_table(const Eigen::VectorXcd& x, unsigned max_e) {
    std::vector<std::vector<std::complex<double>>> pw(static_cast<std::size_t>(x.size()));
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        auto& row = pw[static_cast<std::size_t>(j)];
        row.resize(max_e + 1);
        row[0] = 1.0;
        for (unsigned e = 1; e <= max_e; ++e) row[e] = row[e - 1] * x[j];
    }
    return pw;
}

}  // namespace

Eigen::VectorXcd PolySystem::evaluate(const Eigen::VectorXcd& x) const {
    const auto pw = power_table(x, max_exponent_);
    Eigen::VectorXcd f = Eigen::VectorXcd::Zero(num_equations());
    for (std::size_t i = 0; i < equations_.size(); ++i) {
        std::complex<double> acc{0.0};
        for (const auto& t : equations_[i]) {
            std::complex<double> v = t.coeff;
            for (std::size_t j = 0; j < t.exponents.size(); ++j) v *= pw[j][t.exponents[j]];
            acc += v;
        }
        f[static_cast<Eigen::Index>(i)] = acc;
    }
    return f;
}

Eigen::MatrixXcd PolySystem::jacobian(const Eigen::VectorXcd& x) const {
    const auto pw = power_table(x, max_exponent_);
    const std::size_t n = unknowns_.size();
    Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(num_equations(), num_unknowns());
    for (std::size_t i = 0; i < equations_.size(); ++i) {
        for (const auto& t : equations_[i]) {
            for (std::size_t d = 0; d < n; ++d) {
                const unsigned ed = t.exponents[d];
                if (ed == 0) continue;
                std::complex<double> v = t.coeff * static_cast<double>(ed);
                for (std::size_t j = 0; j < n; ++j) v *= pw[j][j == d ? ed - 1 : t.exponents[j]];
                jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) += v;
            }
        }
    }
    return jac;
}

CoeffExpr halve_wave_number_exponents(const CoeffExpr& e) {
    const SymbolId k = SymbolId::wave_number();
    CoeffExpr out;
    for (const auto& [mono, c] : e.terms()) {
        Monomial m;
        for (const auto& [sym, p] : mono.factors()) {
            if (sym == k) {
                if (p % 2 != 0) throw std::invalid_argument("odd power of k in system");
                m = m * Monomial{sym, p / 2};
            } else {
                m = m * Monomial{sym, p};
            }
        }
        out += CoeffExpr{m, c};
    }
    return out;
}

}  // namespace snls::detail
