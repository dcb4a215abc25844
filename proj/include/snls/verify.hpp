#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "snls/catalog.hpp"
#include "snls/field.hpp"
#include "snls/gkm.hpp"

namespace snls {

/// Max modulus of the generated equations at cs (shape taken from cs).
double system_residual(const CoefficientSet& cs, std::complex<double> H);

/// n points with Re ξ evenly spaced on [lo, hi]. A point closer than 0.25 to
/// a singularity of u is moved to ξ + 0.25i (or ξ - 0.25i if that is
/// farther from every singularity).
std::vector<std::complex<double>> screened_xi_grid(const CoefficientSet& cs, std::complex<double> a_const, double lo,
                                                   double hi, std::size_t n);

/// Both readings of the cubic term: 2u³ (as in the reduced ODE) and 2|u|²u
/// (as in the PDE).
struct ConventionResidual {
    double u3 = 0.0;
    double mod = 0.0;
};

/// max over the grid of |-k²u'' + 2u³ + Hu| (and the |u|²u variant), with
/// u'' from the exact rational second derivative. Points that hit a pole are
/// skipped; PoleError if every point does.
ConventionResidual ode_residual(const CoefficientSet& cs, std::complex<double> H, std::complex<double> a_const,
                                const std::vector<std::complex<double>>& xi_grid);

struct PdeGrid {
    std::vector<double> x;
    std::vector<double> t;
    double hx = 1e-4;
    double ht = 1e-4;
};

/// Residual of iψ_t - ψ_xx + 2|ψ|²ψ - 2ρ²ψ + σψ·c along L(t) = c·t, using
/// central differences (3-point in x and t) evaluated in long double.
/// The u3 entry replaces 2|ψ|²ψ by 2e^{iθ}u³. Grid points within 0.05 of a
/// pole in x are skipped. Throws std::invalid_argument for h < 1e-7 and
/// PoleError when no point is usable.
ConventionResidual pde_residual_smooth(const CoefficientSet& cs, const ModelParams& params, std::complex<double> a_const,
                                       double drift, const PdeGrid& grid);

struct VerificationReport {
    std::string label;
    std::complex<double> H{0.0};
    double system_residual = 0.0;
    std::optional<double> ode_residual_u3;
    std::optional<double> ode_residual_mod;
    std::optional<double> pde_residual_u3;
    std::optional<double> pde_residual_mod;
    std::vector<std::string> flags;
    bool flagged = false;
    bool passed = false;
};

struct VerifyOptions {
    std::complex<double> a_const{1.0};
    double system_tol = 1e-10;
    double ode_tol = 1e-9;
    std::size_t xi_points = 41;
    double xi_lo = -2.0;
    double xi_hi = 2.0;
    /// The PDE residual is reported (never asserted) for real H, with α = 1,
    /// ρ = 0, υ = 1 - H, σ = 0.7, c = 1.3 on a 9 × 9 grid.
    bool with_pde = true;
};

/// Checks a coefficient set; passed iff system and ODE (u³ convention)
/// residuals are within tolerance.
VerificationReport verify_set(const CoefficientSet& cs, std::complex<double> H, const VerifyOptions& options = {});

/// Catalog case. Flagged cases report residuals and set flagged; passed is
/// then informational only.
VerificationReport verify_case(int id, const CaseParams& params, const VerifyOptions& options = {});

}  // namespace snls
