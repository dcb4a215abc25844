#include "snls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "snls/psi_algebra.hpp"

namespace snls {

namespace {

using cd = std::complex<double>;
using cld = std::complex<long double>;

}  // namespace

double system_residual(const CoefficientSet& cs, cd H) {
    return max_system_residual(generate_system(cs.shape()), cs.symbol_values(H));
}

std::vector<cd> screened_xi_grid(const CoefficientSet& cs, cd a_const, double lo, double hi, std::size_t n) {
    if (n < 2 || !(lo < hi)) throw std::invalid_argument("screened_xi_grid: need n >= 2 and lo < hi");
    constexpr double shift = 0.25;
    const auto singular = xi_singularities(cs, a_const);
    std::vector<cd> grid(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cd xi{lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1), 0.0};
        if (distance_to_singularity(singular, xi) >= shift) {
            grid[i] = xi;
            continue;
        }
        const cd up = xi + cd{0.0, shift};
        const cd down = xi - cd{0.0, shift};
        grid[i] = distance_to_singularity(singular, up) >= distance_to_singularity(singular, down) ? up : down;
    }
    return grid;
}

ConventionResidual ode_residual(const CoefficientSet& cs, cd H, cd a_const, const std::vector<cd>& xi_grid) {
    const PsiRational u2 = rat_second_derivative(make_ansatz(cs.shape()));
    const SymbolValues values = cs.symbol_values(H);
    ConventionResidual out;
    std::size_t used = 0;
    for (const cd xi : xi_grid) {
        cd u;
        try {
            u = eval_u(cs, a_const, xi);
        } catch (const PoleError&) {
            continue;
        }
        const cd psi = 1.0 / (1.0 + a_const * std::exp(xi));
        const cd upp = u2.evaluate(values, psi);
        const cd lin = -cs.k * cs.k * upp + H * u;
        out.u3 = std::max(out.u3, std::abs(lin + 2.0 * u * u * u));
        out.mod = std::max(out.mod, std::abs(lin + 2.0 * std::norm(u) * u));
        ++used;
    }
    if (used == 0 && !xi_grid.empty()) throw PoleError("ode_residual: every grid point is a pole");
    return out;
}

ConventionResidual pde_residual_smooth(const CoefficientSet& cs, const ModelParams& params, cd a_const, double drift,
                                       const PdeGrid& grid) {
    if (!(grid.hx >= 1e-7) || !(grid.ht >= 1e-7)) throw std::invalid_argument("pde_residual_smooth: step below 1e-7");
    const WaveFrame frame = WaveFrame::from(cs, params, a_const);
    using R = long double;
    const cld k{cs.k.real(), cs.k.imag()};
    const R alpha = params.alpha;
    const R omega = static_cast<R>(params.upsilon) + static_cast<R>(params.sigma) * static_cast<R>(drift);
    const R rho2 = static_cast<R>(params.rho) * static_cast<R>(params.rho);
    const R sc = static_cast<R>(params.sigma) * static_cast<R>(drift);
    const cld i{0.0L, 1.0L};

    auto u_at = [&](R x, R t) { return eval_u_as<R>(cs.a, cs.b, a_const, k * (x + 2.0L * alpha * t)); };
    auto phase = [&](R x, R t) { return std::polar(1.0L, alpha * x + omega * t); };
    auto psi_at = [&](R x, R t) { return phase(x, t) * u_at(x, t); };

    ConventionResidual out;
    std::size_t used = 0;
    for (const double t : grid.t) {
        for (const double x : grid.x) {
            if (!locate_poles(cs, frame, t, x - 0.05, x + 0.05).empty()) continue;
            const R xl = x;
            const R tl = t;
            const R hx = grid.hx;
            const R ht = grid.ht;
            try {
                const cld u = u_at(xl, tl);
                const cld p = phase(xl, tl) * u;
                const cld p_t = (psi_at(xl, tl + ht) - psi_at(xl, tl - ht)) / (2.0L * ht);
                const cld p_xx = (psi_at(xl + hx, tl) - 2.0L * p + psi_at(xl - hx, tl)) / (hx * hx);
                const cld lin = i * p_t - p_xx - 2.0L * rho2 * p + sc * p;
                const cld mod = lin + 2.0L * std::norm(p) * p;
                const cld cube = lin + 2.0L * phase(xl, tl) * u * u * u;
                out.mod = std::max(out.mod, static_cast<double>(std::abs(mod)));
                out.u3 = std::max(out.u3, static_cast<double>(std::abs(cube)));
                ++used;
            } catch (const PoleError&) {
            }
        }
    }
    if (used == 0 && !grid.x.empty() && !grid.t.empty()) throw PoleError("pde_residual_smooth: no usable grid point");
    return out;
}

VerificationReport verify_set(const CoefficientSet& cs, cd H, const VerifyOptions& options) {
    cs.validate();
    VerificationReport r;
    r.label = cs.family_tag.empty() ? coefficient_digest(cs) : cs.family_tag;
    r.H = H;
    r.system_residual = system_residual(cs, H);
    bool ok = r.system_residual <= options.system_tol;
    try {
        const auto grid = screened_xi_grid(cs, options.a_const, options.xi_lo, options.xi_hi, options.xi_points);
        const ConventionResidual ode = ode_residual(cs, H, options.a_const, grid);
        r.ode_residual_u3 = ode.u3;
        r.ode_residual_mod = ode.mod;
        ok = ok && ode.u3 <= options.ode_tol;
        if (ode.mod > options.ode_tol) r.flags.push_back("|u|^2 u convention does not vanish (complex-valued u)");
    } catch (const PoleError&) {
        r.flags.push_back("ode grid entirely singular");
        ok = false;
    }
    if (options.with_pde && H.imag() == 0.0) {
        ModelParams p{1.0, 1.0 - H.real(), 0.0, 0.7};
        PdeGrid g;
        for (int j = 0; j < 9; ++j) {
            g.x.push_back(0.3 + 0.125 * j);
            g.t.push_back(0.2 + 0.05 * j);
        }
        try {
            const ConventionResidual pde = pde_residual_smooth(cs, p, options.a_const, 1.3, g);
            r.pde_residual_u3 = pde.u3;
            r.pde_residual_mod = pde.mod;
        } catch (const PoleError&) {
            r.flags.push_back("pde grid entirely singular");
        }
    }
    if (r.system_residual > options.system_tol) r.flags.push_back("system residual above tolerance");
    r.passed = ok;
    return r;
}

VerificationReport verify_case(int id, const CaseParams& params, const VerifyOptions& options) {
    const CatalogEntry& entry = catalog_entry(id);
    const CoefficientSet cs = make_case(id, params);
    VerificationReport r = verify_set(cs, params.H, options);
    r.label = "case " + std::to_string(id);
    if (entry.flagged) {
        r.flagged = true;
        r.flags.insert(r.flags.begin(), "flagged: " + std::string(entry.note));
    }
    return r;
}

}  // namespace snls
