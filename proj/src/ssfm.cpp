#include "snls/ssfm.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fftw3.h>

#include "snls/errors.hpp"

namespace snls {

namespace {

using cd = std::complex<double>;
using Field = std::vector<cd>;

std::mutex& planner_mutex() {
    static std::mutex mu;
    return mu;
}

// In-place forward/backward DFT on one buffer. Plan creation is serialized
// because the FFTW planner is not thread-safe.
class Fft {
public:
    explicit Fft(std::size_t n) : n_(n) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        if (buf_ == nullptr) throw std::bad_alloc();
        const std::lock_guard lock(planner_mutex());
        const int ni = static_cast<int>(n);
        fwd_ = fftw_plan_dft_1d(ni, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(ni, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    ~Fft() {
        const std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }

    // psi ← IFFT(mult · FFT(psi))
    void apply(Field& psi, const Field& mult) {
        auto* z = reinterpret_cast<cd*>(buf_);
        std::copy(psi.begin(), psi.end(), z);
        fftw_execute(fwd_);
        for (std::size_t j = 0; j < n_; ++j) z[j] *= mult[j];
        fftw_execute(bwd_);
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t j = 0; j < n_; ++j) psi[j] = z[j] * scale;
    }

private:
    std::size_t n_;
    fftw_complex* buf_ = nullptr;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

double max_abs(const Field& f) {
    double m = 0.0;
    for (const cd z : f) m = std::max(m, std::abs(z));
    return m;
}

// Exact flow of i w_t = -2w³ + 2ρ²w over time h, via v = w⁻²:
// v_t = 4iρ²v - 4i.
cd literal_flow(cd w, double rho2, double h) {
    if (w == cd{0.0}) return w;
    const cd v0 = 1.0 / (w * w);
    cd v;
    if (rho2 > 0.0) {
        const double phi = 4.0 * rho2 * h;
        const double s = std::sin(0.5 * phi);
        const cd em1{-2.0 * s * s, std::sin(phi)};  // e^{iφ} - 1
        v = v0 * (1.0 + em1) - em1 / rho2;
    } else {
        v = v0 - cd{0.0, 4.0 * h};
    }
    return w * std::sqrt(v0 / v);
}

}  // namespace

void SimGrid::validate() const {
    if (!(domain_length > 0.0) || !std::isfinite(domain_length)) throw std::invalid_argument("SimGrid: domain_length must be positive");
    if (n_modes < 64 || (n_modes & (n_modes - 1)) != 0) throw std::invalid_argument("SimGrid: n_modes must be a power of two >= 64");
    if (!(dt > 0.0) || !(t_end > 0.0) || dt > t_end) throw std::invalid_argument("SimGrid: need 0 < dt <= t_end");
    if (!std::isfinite(x_min)) throw std::invalid_argument("SimGrid: x_min must be finite");
}

std::vector<double> SimGrid::x_values() const {
    std::vector<double> x(n_modes);
    for (std::size_t j = 0; j < n_modes; ++j) x[j] = x_min + dx() * static_cast<double>(j);
    return x;
}

std::size_t SimGrid::steps() const { return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9)); }

std::string to_string(Nonlinearity n) { return n == Nonlinearity::modulus ? "modulus" : "literal"; }

Field evolve(const Field& initial, const ModelParams& params, const LevyPath& path, const SimGrid& grid,
             Nonlinearity nonlinearity) {
    grid.validate();
    if (initial.size() != grid.n_modes) throw std::invalid_argument("evolve: initial length differs from n_modes");
    if (path.horizon() < grid.t_end * (1.0 - 1e-12)) throw std::invalid_argument("evolve: path horizon shorter than t_end");

    const std::size_t n = grid.n_modes;
    const std::vector<double> x = grid.x_values();
    std::vector<double> kx2(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double m = j < n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
        const double kx = 2.0 * std::numbers::pi / grid.domain_length * m;
        kx2[j] = kx * kx;
    }
    auto linear_multiplier = [&](double h) {
        Field mult(n);
        for (std::size_t j = 0; j < n; ++j) mult[j] = std::polar(1.0, kx2[j] * h);
        return mult;
    };

    Field psi = initial;
    const double limit = 1e6 * max_abs(initial);
    if (limit == 0.0) return psi;

    const double rho2 = params.rho * params.rho;
    auto nonlinear = [&](double h, double t_mid, double noise_level) {
        if (nonlinearity == Nonlinearity::modulus) {
            for (auto& z : psi) z *= std::polar(1.0, h * (2.0 * std::norm(z) - 2.0 * rho2));
            return;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const cd phase = std::polar(1.0, params.alpha * x[j] + params.upsilon * t_mid + params.sigma * noise_level);
            psi[j] = phase * literal_flow(psi[j] / phase, rho2, h);
        }
    };

    Fft fft(n);
    const std::size_t steps = grid.steps();
    Field mult = linear_multiplier(grid.dt);
    double l_prev = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        const double t0 = grid.dt * static_cast<double>(s);
        const bool last = s + 1 == steps;
        const double t1 = last ? grid.t_end : t0 + grid.dt;
        const double h = t1 - t0;
        if (last && h != grid.dt) mult = linear_multiplier(h);

        nonlinear(0.5 * h, t0 + 0.5 * h, l_prev);
        fft.apply(psi, mult);
        nonlinear(0.5 * h, t0 + 0.5 * h, l_prev);

        const double l_next = path.evaluate(t1);
        if (params.sigma != 0.0) {
            const cd kick = std::polar(1.0, params.sigma * (l_next - l_prev));
            for (auto& z : psi) z *= kick;
        }
        l_prev = l_next;

        const double m = max_abs(psi);
        if (!std::isfinite(m) || m > limit) {
            std::ostringstream msg;
            msg << "evolve: max|psi| = " << m << " at t = " << t1 << " exceeds 1e6 x initial";
            throw BlowupError(msg.str());
        }
    }
    return psi;
}

double l2_norm(const Field& psi, double dx) {
    double s = 0.0;
    for (const cd z : psi) s += std::norm(z);
    return std::sqrt(s * dx);
}

double relative_l2_error(const Field& a, const Field& b) {
    if (a.size() != b.size()) throw std::invalid_argument("relative_l2_error: size mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        num += std::norm(a[j] - b[j]);
        den += std::norm(b[j]);
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

double relative_linf_error(const Field& a, const Field& b) {
    if (a.size() != b.size()) throw std::invalid_argument("relative_linf_error: size mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        num = std::max(num, std::abs(a[j] - b[j]));
        den = std::max(den, std::abs(b[j]));
    }
    return den == 0.0 ? num : num / den;
}

XcheckReport xcheck_set(const CoefficientSet& cs, const ModelParams& params, cd a_const, const SimGrid& grid,
                        const LevyPath& path, ErrorNorm norm, std::string label) {
    grid.validate();
    XcheckReport r;
    r.label = std::move(label);
    r.norm = norm;
    const WaveFrame frame = WaveFrame::from(cs, params, a_const);
    const double x_lo = grid.x_min;
    const double x_hi = grid.x_min + grid.domain_length;

    for (int i = 0; i <= 10; ++i) {
        const double t = grid.t_end * i / 10.0;
        for (const double p : locate_poles(cs, frame, t, x_lo, x_hi))
            if (std::none_of(r.poles.begin(), r.poles.end(), [&](double q) { return std::abs(q - p) < 1e-9; })) r.poles.push_back(p);
    }
    if (!r.poles.empty()) {
        std::sort(r.poles.begin(), r.poles.end());
        r.screening = "not testable: profile is singular on the domain";
        return r;
    }

    const std::vector<double> x = grid.x_values();
    auto exact = [&](double t) {
        Field f(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) f[j] = eval_psi(cs, frame, path, x[j], t);
        return f;
    };
    Field initial;
    Field target;
    try {
        initial = exact(0.0);
        target = exact(grid.t_end);
        for (const double t : {0.0, grid.t_end}) {
            const cd left = eval_psi(cs, frame, path, x_lo, t);
            const cd right = eval_psi(cs, frame, path, x_hi, t);
            constexpr double h = 1e-5;
            const cd dleft = (eval_psi(cs, frame, path, x_lo + h, t) - eval_psi(cs, frame, path, x_lo - h, t)) / (2.0 * h);
            const cd dright = (eval_psi(cs, frame, path, x_hi + h, t) - eval_psi(cs, frame, path, x_hi - h, t)) / (2.0 * h);
            const double scale = std::max({1.0, std::abs(left), std::abs(dleft)});
            if (std::abs(left - right) > 1e-8 * scale || std::abs(dleft - dright) > 1e-5 * scale) {
                r.screening = "not testable: exact solution is not periodic on the domain";
                return r;
            }
        }
    } catch (const PoleError& e) {
        r.screening = std::string("not testable: ") + e.what();
        return r;
    }

    r.testable = true;
    r.screening = "bounded, pole-free and periodic on the domain";
    const Field mod = evolve(initial, params, path, grid, Nonlinearity::modulus);
    const Field lit = evolve(initial, params, path, grid, Nonlinearity::literal);
    r.l2_modulus = relative_l2_error(mod, target);
    r.linf_modulus = relative_linf_error(mod, target);
    r.l2_literal = relative_l2_error(lit, target);
    r.linf_literal = relative_linf_error(lit, target);
    r.error_modulus = norm == ErrorNorm::L2 ? r.l2_modulus : r.linf_modulus;
    r.error_literal = norm == ErrorNorm::L2 ? r.l2_literal : r.linf_literal;
    return r;
}

XcheckReport xcheck_case(int case_id, const CaseParams& case_params, const ModelParams& params, cd a_const,
                         const SimGrid& grid, const LevyPath& path, ErrorNorm norm) {
    CaseParams cp = case_params;
    cp.H = params.H();
    return xcheck_set(make_case(case_id, cp), params, a_const, grid, path, norm, "case " + std::to_string(case_id));
}

std::vector<ConvergencePoint> dt_convergence(const Field& initial, const ModelParams& params, const LevyPath& path,
                                             SimGrid grid, const std::vector<double>& dts, double reference_dt,
                                             Nonlinearity nonlinearity) {
    grid.dt = reference_dt;
    const Field ref = evolve(initial, params, path, grid, nonlinearity);
    std::vector<ConvergencePoint> out;
    for (const double dt : dts) {
        grid.dt = dt;
        out.push_back({dt, relative_l2_error(evolve(initial, params, path, grid, nonlinearity), ref)});
    }
    return out;
}

}  // namespace snls
