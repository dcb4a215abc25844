#include "snls/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "snls/detail/parallel.hpp"

namespace snls {

namespace {

using cd = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Roots of Σ c_j z^j (trailing zeros trimmed).
std::vector<cd> poly_roots(std::vector<cd> c) {
    while (!c.empty() && c.back() == cd{0.0}) c.pop_back();
    if (c.size() < 2) return {};
    const auto deg = static_cast<Eigen::Index>(c.size() - 1);
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
    for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + deg);
    return out;
}

}  // namespace

cd eval_u(const CoefficientSet& cs, cd a_const, cd xi) { return eval_u_as<double>(cs.a, cs.b, a_const, xi); }

cd eval_psi(const CoefficientSet& cs, const WaveFrame& frame, const LevyPath& path, double x, double t) {
    const double theta = frame.alpha * x + frame.upsilon * t + frame.sigma * path.evaluate(t);
    return std::polar(1.0, theta) * eval_u(cs, frame.a_const, frame.xi(x, t));
}

std::vector<cd> xi_singularities(const CoefficientSet& cs, cd a_const) {
    if (a_const == cd{0.0}) throw std::invalid_argument("A_const must be nonzero");
    std::vector<cd> out;
    // Ψ = ∞: A e^ξ = -1.
    out.push_back(std::log(-1.0 / a_const));
    for (const cd psi : poly_roots(cs.b)) {
        if (psi == cd{0.0}) continue;  // Ψ → 0 only as Re ξ → ∞
        const cd w = (1.0 / psi - 1.0) / a_const;
        if (std::abs(w) == 0.0) continue;  // Ψ = 1 only as Re ξ → -∞
        out.push_back(std::log(w));
    }
    return out;
}

double distance_to_singularity(const std::vector<cd>& singular, cd xi) {
    double best = std::numeric_limits<double>::infinity();
    for (const cd s : singular) {
        const double n = std::round((xi.imag() - s.imag()) / kTwoPi);
        best = std::min(best, std::abs(xi - (s + cd{0.0, kTwoPi * n})));
    }
    return best;
}

std::vector<double> locate_poles(const CoefficientSet& cs, const WaveFrame& frame, double t, double x_lo, double x_hi) {
    std::vector<double> poles;
    if (frame.k == cd{0.0}) return poles;
    const cd c = 1.0 / frame.k;
    const cd dz = cd{0.0, kTwoPi} * c;  // shift of z = ξ/k per period of ξ
    const double shift = 2.0 * frame.alpha * t;
    const double s_lo = x_lo + shift;
    const double s_hi = x_hi + shift;
    constexpr double tol = 1e-9;
    for (const cd s : xi_singularities(cs, frame.a_const)) {
        const cd z0 = s * c;
        if (std::abs(dz.imag()) > tol * std::abs(dz)) {
            const double n = std::round(-z0.imag() / dz.imag());
            const cd z = z0 + n * dz;
            if (std::abs(z.imag()) <= tol * (1.0 + std::abs(z)) && z.real() >= s_lo && z.real() <= s_hi)
                poles.push_back(z.real() - shift);
        } else if (std::abs(z0.imag()) <= tol * (1.0 + std::abs(z0))) {
            const double step = dz.real();
            const double n_lo = std::ceil((s_lo - z0.real()) / step);
            const double n_hi = std::floor((s_hi - z0.real()) / step);
            for (double n = std::min(n_lo, n_hi); n <= std::max(n_lo, n_hi); n += 1.0) {
                const double z = z0.real() + n * step;
                if (z >= s_lo && z <= s_hi) poles.push_back(z - shift);
            }
        }
    }
    std::sort(poles.begin(), poles.end());
    return poles;
}

FieldGrid field_grid(const CoefficientSet& cs, const ModelParams& params, const WaveFrame& frame, const LevyPath& path,
                     std::pair<double, double> x_range, std::pair<double, double> t_range, std::size_t nx, std::size_t nt,
                     std::string source) {
    if (nx < 2 || nt < 2) throw std::invalid_argument("field_grid: nx and nt must be >= 2");
    if (!(x_range.first < x_range.second) || !(t_range.first <= t_range.second))
        throw std::invalid_argument("field_grid: empty range");
    FieldGrid g;
    auto fill = [](std::vector<double>& v, std::pair<double, double> r, std::size_t n) {
        v.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = i + 1 == n ? r.second : r.first + (r.second - r.first) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    fill(g.x_values, x_range, nx);
    fill(g.t_values, t_range, nt);
    g.samples.assign(nx * nt, std::nullopt);
    g.moduli.assign(nx * nt, std::numeric_limits<double>::quiet_NaN());
    g.provenance = FieldProvenance{std::move(source), path.seed(), params, frame.a_const};
    detail::parallel_for(nt, [&](std::size_t it) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = g.x_values[ix];
            const double t = g.t_values[it];
            try {
                const std::complex<double> u = eval_u(cs, frame.a_const, frame.xi(x, t));
                const double theta = frame.alpha * x + frame.upsilon * t + frame.sigma * path.evaluate(t);
                g.samples[it * nx + ix] = std::polar(1.0, theta) * u;
                g.moduli[it * nx + ix] = std::abs(u);
            } catch (const PoleError&) {
            }
        }
    });
    return g;
}

std::string coefficient_digest(const CoefficientSet& cs) {
    // FNV-1a over the %.17g rendering of every coefficient.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](double v) {
        char buf[32];
        const int n = std::snprintf(buf, sizeof buf, "%.17g;", v);
        for (int i = 0; i < n; ++i) h = (h ^ static_cast<unsigned char>(buf[i])) * 0x100000001b3ULL;
    };
    feed(cs.k.real());
    feed(cs.k.imag());
    for (auto z : cs.a) feed(z.real()), feed(z.imag());
    for (auto z : cs.b) feed(z.real()), feed(z.imag());
    char out[24];
    std::snprintf(out, sizeof out, "set-%016llx", static_cast<unsigned long long>(h));
    return out;
}

}  // namespace snls
