#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "snls/catalog.hpp"
#include "snls/field.hpp"
#include "snls/gkm.hpp"

namespace snls {

enum class LambdaTarget { alpha, upsilon, rho, sigma, H };
enum class MomentumConvention { modulus_squared, literal_square };

std::string to_string(LambdaTarget target);
std::string to_string(MomentumConvention convention);
LambdaTarget parse_lambda_target(const std::string& text);
MomentumConvention parse_convention(const std::string& text);  // "modulus"/"modulus_squared", "literal"/"literal_square"

struct StabilityConfig {
    double a = -10.0;
    double b = 10.0;
    unsigned quadrature_points = 1024;  // 16-point Gauss-Legendre panels
    std::complex<double> kappa{1.0};
    LambdaTarget lambda_target = LambdaTarget::upsilon;
    double fd_step = 1e-4;
    MomentumConvention integrand_convention = MomentumConvention::modulus_squared;
    double pole_epsilon = 1e-3;
    double panel_tol = 1e-13;  // relative, per panel, for adaptive bisection

    void validate() const;
};

struct MomentumResult {
    std::complex<double> Q{0.0};
    double excised_fraction = 0.0;
    std::vector<double> excised_poles;
};

/// Q = ½ ∫_a^b κ²·g(u(k(x + 2αt))) dx with g = |u|² (κ² read as |κ|²) or
/// g = u². Poles on [a, b] are cut out with (p - ε, p + ε). Throws
/// UnreliableQuadratureError when more than 10% of [a, b] is excised.
MomentumResult momentum(const CoefficientSet& cs, const WaveFrame& frame, const StabilityConfig& cfg, double t = 0.0);

/// Adaptive composite Gauss-Legendre on [a, b] minus excised windows; exposed
/// for tests. `panels` initial panels of 16 nodes each.
std::complex<double> integrate(const std::function<std::complex<double>(double)>& f, double a, double b, unsigned panels,
                               double panel_tol = 1e-13);

struct DerivativeResult {
    std::complex<double> value{0.0};       // (Q(λ+h) - Q(λ-h)) / 2h
    std::complex<double> half_step{0.0};   // same with h/2
    double relative_disagreement = 0.0;
};

/// Central difference of q at lambda0 with Richardson check at h/2; throws
/// StepSizeError when the two estimates differ by more than 5%.
DerivativeResult central_derivative(const std::function<std::complex<double>(double)>& q, double lambda0, double h);

/// λ ↦ (coefficients, parameters) for a catalog case whose H follows the
/// perturbed model parameters. λ = H moves υ.
struct CaseFamily {
    int case_id;
    CaseParams base;  // H is ignored; B0, B1, k are kept
    ModelParams params;
    LambdaTarget target;

    double lambda0() const;
    std::pair<CoefficientSet, ModelParams> at(double lambda) const;
};

struct StabilityReport {
    std::string label;
    LambdaTarget lambda_target;
    MomentumConvention convention;
    std::complex<double> Q{0.0};
    std::complex<double> dQ{0.0};
    double richardson_disagreement = 0.0;
    std::string verdict;
    double excised_fraction = 0.0;
    std::vector<double> excised_poles;
    std::string expected_sign = "positive (claimed stable)";
};

StabilityReport momentum_derivative(const CaseFamily& family, std::complex<double> a_const, const StabilityConfig& cfg,
                                    double t = 0.0);

enum class Verdict { stable, unstable, inconclusive };
std::string to_string(Verdict v);

Verdict stability_verdict(double derivative, double tolerance = 1e-8);

}  // namespace snls
