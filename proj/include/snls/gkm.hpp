#pragma once

// Generalized Kudryashov pipeline for
//   i ψ_t - ψ_xx + 2|ψ|²ψ - 2ρ²ψ + σ ψ L_t = 0.
//
// The substitution ψ = e^{iθ} u(ξ), ξ = k(x + 2αt), θ = αx + υt + σL(t)
// absorbs the noise term into the phase and leaves -k²u'' + 2u³ + Hu = 0
// with H = α² - 2ρ² - υ. The ansatz u = (Σ A_i Ψ^i)/(Σ B_j Ψ^j) turns the
// ODE into a polynomial in Ψ whose coefficients must all vanish.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "snls/psi_algebra.hpp"

namespace snls {

/// Physical parameters of the stochastic NLS. H is always derived.
struct ModelParams {
    double alpha = 0.0;
    double upsilon = 0.0;
    double rho = 0.0;
    double sigma = 0.0;

    std::complex<double> H() const { return alpha * alpha - 2.0 * rho * rho - upsilon; }
};

/// Degrees of the rational ansatz: numerator N, denominator M.
struct AnsatzShape {
    unsigned m = 1;
    unsigned n = 2;

    friend bool operator==(const AnsatzShape&, const AnsatzShape&) = default;
};

/// Reduced travelling-wave ODE  c2·k²·u'' + c3·u³ + H·u = 0.
struct OdeDescriptor {
    int second_derivative_coeff = -1;  // multiplies k²·u''
    int cubic_coeff = 2;
    std::complex<double> linear_coeff;  // H
    std::string frame = "xi = k*(x + 2*alpha*t), theta = alpha*x + upsilon*t + sigma*L(t)";
};

OdeDescriptor reduce_pde(const ModelParams& params);

/// Balances the top Ψ-power of a derivative of order `deriv_order` against a
/// power-`nonlin_degree` nonlinearity. Each ξ-derivative raises the Ψ-degree
/// by one, so N - M = deriv_order / (nonlin_degree - 1); for u'' against u³
/// that is N = M + 1. Throws std::invalid_argument for M < 1 or when the
/// balance has no positive integer solution.
unsigned compute_balance(unsigned deriv_order, unsigned nonlin_degree, unsigned m);

/// Symbolic u = (A_0 + ... + A_N Ψ^N) / (B_0 + ... + B_M Ψ^M).
PsiRational make_ansatz(AnsatzShape shape);

/// -k²u'' + 2u³ + Hu over the common denominator V³.
PsiRational assemble_ode(AnsatzShape shape);

/// One equation per power of Ψ (Ψ^0 first). For (M=1, N=2): seven cubics.
std::vector<CoeffExpr> generate_system(AnsatzShape shape);

/// One numeric ansatz solution.
struct CoefficientSet {
    std::complex<double> k{0.0};
    std::vector<std::complex<double>> a;
    std::vector<std::complex<double>> b;
    /// Index j with b[j] pinned to exactly 1, when normalized.
    std::optional<unsigned> gauge;
    /// Max modulus over the generated system; refreshed by with_residual().
    double residual = 0.0;
    std::string family_tag;

    AnsatzShape shape() const;
    void validate() const;

    /// Divides every A_i and B_j by B_index so that B_index == 1 exactly.
    CoefficientSet gauge_normalized(unsigned index = 0) const;

    /// Copy with `residual` recomputed from the generated system at H.
    CoefficientSet with_residual(std::complex<double> H) const;

    SymbolValues symbol_values(std::complex<double> H) const;
};

/// Max modulus over the generated system at the given values.
double max_system_residual(const std::vector<CoeffExpr>& system, const SymbolValues& values);

}  // namespace snls
