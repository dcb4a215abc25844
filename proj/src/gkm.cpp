#include "snls/gkm.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace snls {

OdeDescriptor reduce_pde(const ModelParams& params) {
    OdeDescriptor ode;
    ode.linear_coeff = params.H();
    return ode;
}

unsigned compute_balance(unsigned deriv_order, unsigned nonlin_degree, unsigned m) {
    if (m < 1) throw std::invalid_argument("compute_balance: M must be >= 1");
    if (nonlin_degree < 2 || deriv_order == 0)
        throw std::invalid_argument("compute_balance: need a derivative and a nonlinearity of degree >= 2");
    const unsigned denom = nonlin_degree - 1;
    if (deriv_order % denom != 0)
        throw std::invalid_argument("compute_balance: no integer balance for this derivative/nonlinearity pair");
    return m + deriv_order / denom;
}

PsiRational make_ansatz(AnsatzShape shape) {
    if (shape.m < 1 || shape.n < 1) throw std::invalid_argument("make_ansatz: M and N must be >= 1");
    std::vector<CoeffExpr> num(shape.n + 1);
    std::vector<CoeffExpr> den(shape.m + 1);
    for (unsigned i = 0; i <= shape.n; ++i) num[i] = CoeffExpr::symbol(SymbolId::a(i));
    for (unsigned j = 0; j <= shape.m; ++j) den[j] = CoeffExpr::symbol(SymbolId::b(j));
    return PsiRational{PsiPoly{std::move(num)}, PsiPoly{std::move(den)}};
}

PsiRational assemble_ode(AnsatzShape shape) {
    const PsiRational u = make_ansatz(shape);
    const PsiRational u2 = rat_second_derivative(u);
    const PsiPoly& t = u.numerator();
    const PsiPoly& v = u.denominator();

    const CoeffExpr k2 = CoeffExpr{Monomial{SymbolId::wave_number(), 2}, 1};
    const CoeffExpr h = CoeffExpr::symbol(SymbolId::h());

    // u'' already sits over V³.
    PsiPoly numerator = (-k2) * u2.numerator() + CoeffExpr{2} * (t * t * t) + h * (t * v * v);
    return PsiRational{std::move(numerator), v * v * v};
}

std::vector<CoeffExpr> generate_system(AnsatzShape shape) {
    // The expansion is the expensive part of every solve/verify call; shapes
    // are few, so results are memoized.
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::vector<CoeffExpr>> cache;
    const std::lock_guard lock(mu);
    const auto key = std::make_pair(shape.m, shape.n);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    const PsiPoly numerator = clear_denominators(assemble_ode(shape));
    std::vector<CoeffExpr> eqs(numerator.coefficients().begin(), numerator.coefficients().end());
    cache.emplace(key, eqs);
    return eqs;
}

// ---------------------------------------------------------------- CoefficientSet

AnsatzShape CoefficientSet::shape() const {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("CoefficientSet: need N >= 1 and M >= 1");
    return AnsatzShape{static_cast<unsigned>(b.size() - 1), static_cast<unsigned>(a.size() - 1)};
}

void CoefficientSet::validate() const {
    (void)shape();
    if (std::all_of(b.begin(), b.end(), [](auto z) { return z == std::complex<double>{0.0}; }))
        throw std::invalid_argument("CoefficientSet: denominator coefficients are all zero");
    if (gauge) {
        if (*gauge >= b.size()) throw std::invalid_argument("CoefficientSet: gauge index out of range");
        if (b[*gauge] != std::complex<double>{1.0})
            throw std::invalid_argument("CoefficientSet: gauge entry is not exactly 1");
    }
}

CoefficientSet CoefficientSet::gauge_normalized(unsigned index) const {
    if (index >= b.size()) throw std::invalid_argument("gauge_normalized: index out of range");
    const std::complex<double> scale = b[index];
    if (scale == std::complex<double>{0.0}) throw std::invalid_argument("gauge_normalized: pinned entry is zero");
    CoefficientSet out = *this;
    for (auto& z : out.a) z /= scale;
    for (auto& z : out.b) z /= scale;
    out.b[index] = 1.0;
    out.gauge = index;
    return out;
}

SymbolValues CoefficientSet::symbol_values(std::complex<double> H) const {
    return SymbolValues{a, b, k, H};
}

CoefficientSet CoefficientSet::with_residual(std::complex<double> H) const {
    CoefficientSet out = *this;
    out.residual = max_system_residual(generate_system(shape()), symbol_values(H));
    return out;
}

double max_system_residual(const std::vector<CoeffExpr>& system, const SymbolValues& values) {
    double worst = 0.0;
    for (const auto& eq : system) worst = std::max(worst, std::abs(eq.evaluate(values)));
    return worst;
}

}  // namespace snls
