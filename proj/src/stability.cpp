#include "snls/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "snls/errors.hpp"

namespace snls {

namespace {

using cd = std::complex<double>;

constexpr std::size_t kNodes = 16;

struct GaussLegendre {
    std::array<double, kNodes> x{};
    std::array<double, kNodes> w{};
};

GaussLegendre make_rule() {
    GaussLegendre r;
    for (std::size_t i = 0; i < kNodes; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (kNodes + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = z;
            for (std::size_t n = 2; n <= kNodes; ++n) {
                const double p2 = ((2.0 * n - 1.0) * z * p1 - (n - 1.0) * p0) / static_cast<double>(n);
                p0 = p1;
                p1 = p2;
            }
            dp = kNodes * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        r.x[i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
}

const GaussLegendre& rule() {
    static const GaussLegendre r = make_rule();
    return r;
}

cd panel(const std::function<cd(double)>& f, double l, double r) {
    const auto& g = rule();
    const double c = 0.5 * (l + r);
    const double h = 0.5 * (r - l);
    cd s{0.0};
    for (std::size_t i = 0; i < kNodes; ++i) s += g.w[i] * f(c + h * g.x[i]);
    return h * s;
}

cd adaptive(const std::function<cd(double)>& f, double l, double r, cd whole, double tol, int depth) {
    const double m = 0.5 * (l + r);
    const cd left = panel(f, l, m);
    const cd right = panel(f, m, r);
    const cd split = left + right;
    if (depth >= 20 || std::abs(split - whole) <= tol * std::max(std::abs(split), 1e-300)) return split;
    return adaptive(f, l, m, left, tol, depth + 1) + adaptive(f, m, r, right, tol, depth + 1);
}

cd pairwise_sum(const std::vector<cd>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 0) return 0.0;
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

std::string to_string(LambdaTarget target) {
    switch (target) {
        case LambdaTarget::alpha: return "alpha";
        case LambdaTarget::upsilon: return "upsilon";
        case LambdaTarget::rho: return "rho";
        case LambdaTarget::sigma: return "sigma";
        case LambdaTarget::H: return "H";
    }
    return "?";
}

std::string to_string(MomentumConvention convention) {
    return convention == MomentumConvention::modulus_squared ? "modulus_squared" : "literal_square";
}

LambdaTarget parse_lambda_target(const std::string& text) {
    for (auto t : {LambdaTarget::alpha, LambdaTarget::upsilon, LambdaTarget::rho, LambdaTarget::sigma, LambdaTarget::H})
        if (to_string(t) == text) return t;
    throw std::invalid_argument("unknown lambda target: " + text);
}

MomentumConvention parse_convention(const std::string& text) {
    if (text == "modulus" || text == "modulus_squared") return MomentumConvention::modulus_squared;
    if (text == "literal" || text == "literal_square") return MomentumConvention::literal_square;
    throw std::invalid_argument("unknown convention: " + text);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::unstable: return "unstable";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

void StabilityConfig::validate() const {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b)) throw std::invalid_argument("StabilityConfig: need a < b");
    if (quadrature_points < 64) throw std::invalid_argument("StabilityConfig: quadrature_points must be >= 64");
    if (!(fd_step > 0.0)) throw std::invalid_argument("StabilityConfig: fd_step must be positive");
    if (!(pole_epsilon > 0.0)) throw std::invalid_argument("StabilityConfig: pole_epsilon must be positive");
}

cd integrate(const std::function<cd(double)>& f, double a, double b, unsigned panels, double panel_tol) {
    if (!(a < b) || panels == 0) return 0.0;
    std::vector<cd> parts(panels);
    const double w = (b - a) / panels;
    for (unsigned p = 0; p < panels; ++p) {
        const double l = a + w * p;
        const double r = p + 1 == panels ? b : a + w * (p + 1);
        parts[p] = adaptive(f, l, r, panel(f, l, r), panel_tol, 0);
    }
    return pairwise_sum(parts, 0, parts.size());
}

MomentumResult momentum(const CoefficientSet& cs, const WaveFrame& frame, const StabilityConfig& cfg, double t) {
    cfg.validate();
    MomentumResult out;
    out.excised_poles = locate_poles(cs, frame, t, cfg.a - cfg.pole_epsilon, cfg.b + cfg.pole_epsilon);

    // [a, b] minus the union of (p - ε, p + ε).
    std::vector<std::pair<double, double>> keep;
    double cursor = cfg.a;
    double removed = 0.0;
    for (const double p : out.excised_poles) {
        const double lo = std::max(cfg.a, p - cfg.pole_epsilon);
        const double hi = std::min(cfg.b, p + cfg.pole_epsilon);
        if (lo > cursor) keep.emplace_back(cursor, lo);
        removed += std::max(0.0, hi - std::max(lo, cursor));
        cursor = std::max(cursor, hi);
    }
    if (cursor < cfg.b) keep.emplace_back(cursor, cfg.b);
    out.excised_fraction = removed / (cfg.b - cfg.a);
    if (out.excised_fraction > 0.1) {
        std::ostringstream msg;
        msg << "momentum: " << out.excised_fraction * 100.0 << "% of the interval excised around poles";
        throw UnreliableQuadratureError(msg.str());
    }

    const bool modulus = cfg.integrand_convention == MomentumConvention::modulus_squared;
    auto g = [&](double x) -> cd {
        const cd u = eval_u(cs, frame.a_const, frame.xi(x, t));
        return modulus ? cd{std::norm(u)} : u * u;
    };
    const unsigned total_panels = cfg.quadrature_points / kNodes;
    cd integral{0.0};
    for (const auto& [l, r] : keep) {
        const auto panels = std::max(1U, static_cast<unsigned>(std::lround(total_panels * (r - l) / (cfg.b - cfg.a))));
        integral += integrate(g, l, r, panels, cfg.panel_tol);
    }
    const cd scale = modulus ? cd{std::norm(cfg.kappa)} : cfg.kappa * cfg.kappa;
    out.Q = 0.5 * scale * integral;
    return out;
}

DerivativeResult central_derivative(const std::function<cd(double)>& q, double lambda0, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("central_derivative: step must be positive");
    DerivativeResult r;
    r.value = (q(lambda0 + h) - q(lambda0 - h)) / (2.0 * h);
    r.half_step = (q(lambda0 + 0.5 * h) - q(lambda0 - 0.5 * h)) / h;
    const double scale = std::max(std::abs(r.value), std::abs(r.half_step));
    r.relative_disagreement = scale <= 1e-12 ? 0.0 : std::abs(r.value - r.half_step) / scale;
    if (r.relative_disagreement > 0.05) {
        std::ostringstream msg;
        msg << "Richardson check failed: estimates at h and h/2 differ by " << r.relative_disagreement * 100.0 << "%";
        throw StepSizeError(msg.str());
    }
    return r;
}

double CaseFamily::lambda0() const {
    switch (target) {
        case LambdaTarget::alpha: return params.alpha;
        case LambdaTarget::upsilon: return params.upsilon;
        case LambdaTarget::rho: return params.rho;
        case LambdaTarget::sigma: return params.sigma;
        case LambdaTarget::H: return params.H().real();
    }
    return 0.0;
}

std::pair<CoefficientSet, ModelParams> CaseFamily::at(double lambda) const {
    ModelParams p = params;
    switch (target) {
        case LambdaTarget::alpha: p.alpha = lambda; break;
        case LambdaTarget::upsilon: p.upsilon = lambda; break;
        case LambdaTarget::rho: p.rho = lambda; break;
        case LambdaTarget::sigma: p.sigma = lambda; break;
        case LambdaTarget::H: p.upsilon = p.alpha * p.alpha - 2.0 * p.rho * p.rho - lambda; break;
    }
    CaseParams cp = base;
    cp.H = p.H();
    return {make_case(case_id, cp), p};
}

StabilityReport momentum_derivative(const CaseFamily& family, cd a_const, const StabilityConfig& cfg, double t) {
    cfg.validate();
    auto q = [&](double lambda) {
        const auto [cs, p] = family.at(lambda);
        return momentum(cs, WaveFrame::from(cs, p, a_const), cfg, t).Q;
    };
    const double l0 = family.lambda0();
    const auto [cs0, p0] = family.at(l0);
    const MomentumResult base = momentum(cs0, WaveFrame::from(cs0, p0, a_const), cfg, t);
    const DerivativeResult d = central_derivative(q, l0, cfg.fd_step);

    StabilityReport r;
    r.label = "case " + std::to_string(family.case_id);
    r.lambda_target = family.target;
    r.convention = cfg.integrand_convention;
    r.Q = base.Q;
    r.dQ = d.value;
    r.richardson_disagreement = d.relative_disagreement;
    r.verdict = to_string(stability_verdict(d.value.real()));
    r.excised_fraction = base.excised_fraction;
    r.excised_poles = base.excised_poles;
    return r;
}

Verdict stability_verdict(double derivative, double tolerance) {
    if (derivative > tolerance) return Verdict::stable;
    if (derivative < -tolerance) return Verdict::unstable;
    return Verdict::inconclusive;
}

}  // namespace snls
