#pragma once

// ψ(x,t) = e^{iθ} u(ξ) with ξ = k(x + 2αt), θ = αx + υt + σL(t) and
// u = T(Ψ)/V(Ψ), Ψ = 1/(1 + A e^ξ).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "snls/errors.hpp"
#include "snls/gkm.hpp"
#include "snls/levy.hpp"

namespace snls {

inline constexpr double kPoleThreshold = 1e-12;

struct WaveFrame {
    std::complex<double> k{0.0};
    double alpha = 0.0;
    double upsilon = 0.0;
    double sigma = 0.0;
    std::complex<double> a_const{1.0};

    static WaveFrame from(const CoefficientSet& cs, const ModelParams& params, std::complex<double> a_const = 1.0) {
        return WaveFrame{cs.k, params.alpha, params.upsilon, params.sigma, a_const};
    }

    std::complex<double> xi(double x, double t) const { return k * (x + 2.0 * alpha * t); }
};

/// u at ξ in arithmetic type R (double or long double). Throws PoleError
/// when |1 + A e^ξ| or |V(Ψ)| falls below kPoleThreshold.
template <typename R>
std::complex<R> eval_u_as(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
                          std::complex<double> a_const, std::complex<R> xi) {
    using C = std::complex<R>;
    const C A{static_cast<R>(a_const.real()), static_cast<R>(a_const.imag())};
    C psi;
    if (xi.real() > R{0}) {
        // 1/(1 + A e^ξ) = e^{-ξ}/(e^{-ξ} + A) avoids overflow for large Re ξ.
        const C em = std::exp(-xi);
        const C d = em + A;
        if (std::abs(d) < static_cast<R>(kPoleThreshold) * std::abs(em) || d == C{0}) throw PoleError("1 + A*e^xi vanishes");
        psi = em / d;
    } else {
        const C d = C{1} + A * std::exp(xi);
        if (std::abs(d) < static_cast<R>(kPoleThreshold)) throw PoleError("1 + A*e^xi vanishes");
        psi = C{1} / d;
    }
    auto horner_c = [&](std::span<const std::complex<double>> c) {
        C acc{0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * psi + C{static_cast<R>(it->real()), static_cast<R>(it->imag())};
        return acc;
    };
    const C den = horner_c(b);
    if (std::abs(den) < static_cast<R>(kPoleThreshold)) throw PoleError("ansatz denominator vanishes");
    return horner_c(a) / den;
}

std::complex<double> eval_u(const CoefficientSet& cs, std::complex<double> a_const, std::complex<double> xi);

/// e^{i(αx + υt + σL(t))}·u(k(x + 2αt)).
std::complex<double> eval_psi(const CoefficientSet& cs, const WaveFrame& frame, const LevyPath& path, double x, double t);

/// Points ξ (one branch each, ξ + 2πi·n is also singular) where u is
/// singular: roots of V(Ψ) and the pole of Ψ itself.
std::vector<std::complex<double>> xi_singularities(const CoefficientSet& cs, std::complex<double> a_const);

/// Distance from ξ to the nearest singular point, counting the 2πi period.
double distance_to_singularity(const std::vector<std::complex<double>>& singular, std::complex<double> xi);

/// Real x in [x_lo, x_hi] where u(k(x + 2αt)) is singular at time t.
std::vector<double> locate_poles(const CoefficientSet& cs, const WaveFrame& frame, double t, double x_lo, double x_hi);

struct FieldProvenance {
    std::string source;  // "case N" or a solved-set digest
    std::uint64_t path_seed = 0;
    ModelParams params;
    std::complex<double> a_const{1.0};
};

struct FieldGrid {
    std::vector<double> x_values;
    std::vector<double> t_values;
    std::vector<std::optional<std::complex<double>>> samples;  // row-major, |t| × |x|; nullopt at poles
    std::vector<double> moduli;  // |u(ξ)| per cell (equal to |ψ|, free of phase rounding); NaN at poles
    FieldProvenance provenance;

    const std::optional<std::complex<double>>& at(std::size_t it, std::size_t ix) const {
        return samples[it * x_values.size() + ix];
    }
};

/// Dense nt × nx evaluation on closed ranges; pole cells hold nullopt.
FieldGrid field_grid(const CoefficientSet& cs, const ModelParams& params, const WaveFrame& frame, const LevyPath& path,
                     std::pair<double, double> x_range, std::pair<double, double> t_range, std::size_t nx, std::size_t nt,
                     std::string source);

/// Short stable identifier of a coefficient set for provenance records.
std::string coefficient_digest(const CoefficientSet& cs);

}  // namespace snls
