#pragma once

// Strang split-step Fourier integration of
//   iψ_t = ψ_xx - 2|ψ|²ψ + 2ρ²ψ - σψL_t
// on a periodic grid, with the noise applied as the exact phase e^{iσΔL}.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "snls/catalog.hpp"
#include "snls/field.hpp"
#include "snls/gkm.hpp"
#include "snls/levy.hpp"

namespace snls {

struct SimGrid {
    double domain_length = 2.0 * 3.14159265358979323846;
    std::size_t n_modes = 256;
    double dt = 1e-4;
    double t_end = 0.5;
    double x_min = 0.0;

    void validate() const;
    double dx() const { return domain_length / static_cast<double>(n_modes); }
    std::vector<double> x_values() const;  // x_min + j·dx, j < n_modes
    std::size_t steps() const;             // last step shortened to land on t_end
};

/// modulus: 2|ψ|²ψ. literal: 2e^{iθ}u³ with u = e^{-iθ}ψ and θ = αx + υt + σL(t)
/// frozen over each nonlinear sub-step.
enum class Nonlinearity { modulus, literal };

std::string to_string(Nonlinearity n);

/// Evolves `initial` from t = 0 to grid.t_end. Throws BlowupError when
/// max|ψ| exceeds 10⁶ times its initial value.
std::vector<std::complex<double>> evolve(const std::vector<std::complex<double>>& initial, const ModelParams& params,
                                         const LevyPath& path, const SimGrid& grid,
                                         Nonlinearity nonlinearity = Nonlinearity::modulus);

double l2_norm(const std::vector<std::complex<double>>& psi, double dx);
/// ||a - b|| / ||b|| in L2 or max norm (absolute when ||b|| = 0).
double relative_l2_error(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b);
double relative_linf_error(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b);

enum class ErrorNorm { L2, Linf };

struct XcheckReport {
    std::string label;
    bool testable = false;
    std::string screening;
    std::vector<double> poles;  // x positions found on the domain
    ErrorNorm norm = ErrorNorm::L2;
    double error_modulus = 0.0;  // selected norm, 2|ψ|²ψ evolution
    double error_literal = 0.0;  // selected norm, 2e^{iθ}u³ evolution
    double l2_modulus = 0.0;
    double linf_modulus = 0.0;
    double l2_literal = 0.0;
    double linf_literal = 0.0;
};

/// Screens the exact solution on the periodic domain (poles at 11 times in
/// [0, t_end], then ψ(x_min) = ψ(x_min + L) at t = 0 and t_end); if it
/// passes, starts from it and compares against it at t_end.
XcheckReport xcheck_set(const CoefficientSet& cs, const ModelParams& params, std::complex<double> a_const,
                        const SimGrid& grid, const LevyPath& path, ErrorNorm norm, std::string label);

XcheckReport xcheck_case(int case_id, const CaseParams& case_params, const ModelParams& params,
                         std::complex<double> a_const, const SimGrid& grid, const LevyPath& path, ErrorNorm norm);

struct ConvergencePoint {
    double dt;
    double error;
};

/// Relative L2 error at t_end for each dt against a run at reference_dt.
std::vector<ConvergencePoint> dt_convergence(const std::vector<std::complex<double>>& initial, const ModelParams& params,
                                             const LevyPath& path, SimGrid grid, const std::vector<double>& dts,
                                             double reference_dt, Nonlinearity nonlinearity = Nonlinearity::modulus);

}  // namespace snls
