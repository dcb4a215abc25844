// One PASS/FAIL line per acceptance criterion. `acceptance` runs all of
// them; `acceptance --criterion N` runs one. Exit status is nonzero if any
// selected criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "snls/catalog.hpp"
#include "snls/field.hpp"
#include "snls/gkm.hpp"
#include "snls/io.hpp"
#include "snls/levy.hpp"
#include "snls/solver.hpp"
#include "snls/ssfm.hpp"
#include "snls/stability.hpp"
#include "snls/verify.hpp"
#include "support/golden.hpp"

using namespace snls;
using cd = std::complex<double>;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const cd I{0.0, 1.0};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

fs::path scratch() {
    fs::path d = fs::temp_directory_path() / "snls_acceptance";
    fs::create_directories(d);
    return d;
}

int cli(const std::string& args) {
    const std::string cmd = std::string(SNLS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void system_fidelity(Outcome& o) {
    const auto golden = testing::load_golden(SNLS_TEST_DATA_DIR "/eq16_golden.txt");
    const auto sys = generate_system({1, 2});
    o.require(sys.size() == 7 && golden.size() == 7, "expected 7 rows");
    unsigned equal = 0;
    for (unsigned i = 0; i < sys.size() && i < golden.size(); ++i) {
        if (sys[i] == golden.at(i)) {
            ++equal;
        } else {
            o.require(false, "Psi^" + std::to_string(i) + " differs by " + (sys[i] - golden.at(i)).to_string());
        }
    }
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << equal << "/7 rows equal";
}

void case_verification(Outcome& o) {
    double worst_sys = 0.0;
    double worst_ode = 0.0;
    for (int id = 1; id <= 7; ++id) {
        for (cd H : {cd{1.0}, cd{2.0}}) {
            for (cd b0 : {cd{1.0}, cd{2.0, -1.0}}) {
                const VerificationReport r = verify_case(id, {H, b0});
                worst_sys = std::max(worst_sys, r.system_residual);
                worst_ode = std::max(worst_ode, r.ode_residual_u3.value_or(INFINITY));
                o.require(r.passed && !r.flagged, "case " + std::to_string(id) + " did not pass");
            }
        }
    }
    o.require(worst_sys <= 1e-10, "system residual " + sci(worst_sys));
    o.require(worst_ode <= 1e-9, "ode residual " + sci(worst_ode));
    const char* flagged[] = {
        "--case 8 --H 1,0 --B0 1,0 --B1 1,0 --k 1,0", "--case 9 --H 1,0 --B0 1,0 --B1 1,0 --k 1,0",
        "--case 10 --H 1,0 --B0 1,0 --B1 0.5,0",       "--case 11 --H 1,0 --B0 1,0 --B1 0.5,0",
        "--case 12 --H 1,0 --B0 1,0 --B1 0.5,0",
    };
    for (const char* args : flagged) {
        const int code = cli(std::string("verify ") + args);
        o.require(code == 2, std::string(args) + " exited " + std::to_string(code));
    }
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << "max system " << sci(worst_sys) << ", max ode " << sci(worst_ode);
}

void solver_recovery(Outcome& o) {
    const fs::path a = scratch() / "solve_a.json";
    const fs::path b = scratch() / "solve_b.json";
    const std::string args = "solve --H 1,0 --M 1 --seeds 200 --rng-seed 7 --out ";
    o.require(cli(args + a.string()) == 0, "first solve failed");
    o.require(cli(args + b.string()) == 0, "second solve failed");
    o.require(slurp(a) == slurp(b), "outputs differ between runs");
    std::vector<io::CoefficientRecord> roots;
    try {
        roots = io::read_coefficient_sets(a.string());
    } catch (const std::exception& e) {
        o.require(false, e.what());
        return;
    }
    for (int id : {1, 3}) {
        double best = INFINITY;
        for (const auto& r : roots) best = std::min(best, coefficient_distance(r.set, make_case(id, {1.0, 1.0})));
        o.require(best <= 1e-6, "case " + std::to_string(id) + " nearest root at " + sci(best));
        o.detail << (o.detail.tellp() > 0 ? "; " : "") << "case " << id << " distance " << sci(best);
    }
    o.detail << "; " << roots.size() << " roots";
}

void pde_crosscheck(Outcome& o) {
    const CoefficientSet cs = make_case(2, {1.0, 1.0});
    auto grid = [](double h) {
        PdeGrid g;
        for (int j = 0; j < 9; ++j) {
            g.x.push_back(0.3 + 0.125 * j);
            g.t.push_back(0.2 + 0.05 * j);
        }
        g.hx = g.ht = h;
        return g;
    };
    for (double sigma : {0.0, 0.7}) {
        const ModelParams p{1.0, 0.0, 0.0, sigma};
        const double r1 = pde_residual_smooth(cs, p, 1.0, 1.3, grid(1e-4)).u3;
        const double r2 = pde_residual_smooth(cs, p, 1.0, 1.3, grid(5e-5)).u3;
        const double ratio = r1 / r2;
        o.require(r1 <= 1e-4, "sigma " + sci(sigma) + " residual " + sci(r1));
        o.require(ratio >= 3.5 && ratio <= 4.5, "sigma " + sci(sigma) + " ratio " + sci(ratio));
        o.detail << (o.detail.tellp() > 0 ? "; " : "") << "sigma " << sigma << ": " << sci(r1) << ", ratio "
                 << sci(ratio);
    }
}

LevyPath jump_diffusion(std::uint64_t seed, double horizon) {
    LevySpec spec;
    spec.drift = 0.2;
    spec.diffusion = 1.0;
    spec.jump_rate = 4.0;
    spec.jump_law = NormalJumps{0.0, 0.6};
    spec.horizon = horizon;
    return sample_path(spec, 1e-3, seed);
}

void split_step(Outcome& o) {
    const SimGrid g;
    const double a = 0.5;
    const double alpha = 2.0 * std::numbers::pi / g.domain_length;
    const ModelParams plane{alpha, alpha * alpha + 2.0 * a * a, 0.0, 0.0};
    std::vector<cd> psi0;
    std::vector<cd> exact;
    for (double x : g.x_values()) {
        psi0.push_back(a * std::exp(I * alpha * x));
        exact.push_back(a * std::exp(I * (alpha * x + plane.upsilon * g.t_end)));
    }
    const double plane_err = relative_linf_error(evolve(psi0, plane, LevyPath::drift_only(0.0, 1.0), g), exact);
    o.require(plane_err <= 1e-6, "plane wave " + sci(plane_err));

    std::vector<cd> bump;
    for (double x : g.x_values()) bump.push_back(0.8 * std::exp(-2.0 * (x - 3.0) * (x - 3.0)) * std::exp(I * x));
    const ModelParams quiet{0.5, 0.0, 0.3, 0.0};
    ModelParams noisy = quiet;
    noisy.sigma = 0.7;
    const LevyPath path = jump_diffusion(5, 1.0);
    const auto out = evolve(bump, noisy, path, g);
    const double m0 = std::pow(l2_norm(bump, g.dx()), 2);
    const double drift = std::abs(std::pow(l2_norm(out, g.dx()), 2) - m0) / m0 / g.t_end;
    o.require(drift <= 1e-10, "mass drift " + sci(drift));

    const auto base = evolve(bump, quiet, LevyPath::drift_only(0.0, 1.0), g);
    std::vector<cd> rotated;
    for (cd v : base) rotated.push_back(v * std::exp(I * noisy.sigma * path.evaluate(g.t_end)));
    const double phase_err = relative_linf_error(out, rotated);
    o.require(phase_err <= 1e-9, "noise phase " + sci(phase_err));
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << "plane " << sci(plane_err) << ", mass drift " << sci(drift)
             << ", phase " << sci(phase_err);
}

void levy_axioms(Outcome& o) {
    LevySpec general;
    general.drift = 0.3;
    general.diffusion = 0.7;
    general.jump_rate = 2.0;
    general.jump_law = NormalJumps{0.1, 0.5};
    general.horizon = 5.0;
    bool zero = true;
    for (std::uint64_t s = 0; s < 1000; ++s) zero = zero && sample_path(general, 0.01, s).evaluate(0.0) == 0.0;
    o.require(zero, "L(0) != 0");

    LevySpec drift;
    drift.drift = 1.0;
    drift.horizon = 10.0;
    const LevyPath d = sample_path(drift, 0.01, 1);
    double worst = 0.0;
    for (double t : d.grid_times()) worst = std::max(worst, std::abs(d.evaluate(t) - t));
    o.require(worst <= 1e-12, "drift error " + sci(worst));

    LevySpec poisson;
    poisson.jump_rate = 2.0;
    poisson.horizon = 10.0;
    double jumps = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) jumps += static_cast<double>(sample_path(poisson, 0.1, s).jump_times().size());
    const double mean = jumps / 1000.0;
    o.require(mean >= 19.57 && mean <= 20.43, "mean jump count " + sci(mean));

    const IncrementMoments m = increment_moments(general, {{0.0, 2.0}, {2.5, 4.5}}, 1000, 2024);
    const double corr = m.correlation[0][1].value_or(INFINITY);
    const double band = 3.0 / std::sqrt(1000.0);
    o.require(std::abs(corr) <= band, "correlation " + sci(corr));
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << "mean jumps " << mean << ", correlation " << sci(corr);
}

void modulus_invariance(Outcome& o) {
    const LevyPath p1 = jump_diffusion(11, 2.0);
    const LevyPath p2 = jump_diffusion(12, 2.0);
    double worst = 0.0;
    std::size_t points = 0;
    for (int id = 1; id <= 7; ++id) {
        const CoefficientSet cs = make_case(id, {1.0, 1.0});
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) {
                const double x = 0.2 + 0.3 * i;
                const double t = 0.1 + 0.35 * j;
                std::vector<double> mods;
                try {
                    for (double sigma : {0.0, 0.5, 2.0})
                        for (const LevyPath* p : {&p1, &p2})
                            mods.push_back(std::abs(eval_psi(cs, WaveFrame::from(cs, {1.0, 0.0, 0.0, sigma}), *p, x, t)));
                } catch (const PoleError&) {
                    continue;
                }
                ++points;
                for (double m : mods) worst = std::max(worst, std::abs(m - mods.front()));
            }
        }
    }
    o.require(points == 7 * 25, "only " + std::to_string(points) + " off-pole points");
    o.require(worst <= 1e-13, "modulus spread " + sci(worst));
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << points << " points, spread " << sci(worst);
}

void stability_harness(Outcome& o) {
    const DerivativeResult syn = central_derivative([](double l) { return cd{l * l}; }, 1.0, 1e-4);
    o.require(std::abs(syn.value - 2.0) <= 1e-6, "synthetic derivative " + sci(syn.value.real()));

    const cd A{2.0};
    const CoefficientSet cs = make_case(2, {1.0, 1.0});
    const MomentumResult m = momentum(cs, WaveFrame::from(cs, {0.0, -1.0, 0.0, 0.0}, A), StabilityConfig{});
    auto profile = [&](double x) { return std::norm(I / (std::sqrt(2.0) * (1.0 - 2.0 / (1.0 + A * std::exp(I * std::sqrt(2.0) * x))))); };
    const std::size_t n = 1000000;
    const double h = 20.0 / static_cast<double>(n);
    double s = 0.5 * (profile(-10.0) + profile(10.0));
    for (std::size_t i = 1; i < n; ++i) s += profile(-10.0 + h * static_cast<double>(i));
    const double oracle = 0.5 * h * s;
    const double rel = std::abs(m.Q.real() - oracle) / std::abs(oracle);
    o.require(rel <= 1e-6, "quadrature vs trapezoid " + sci(rel));

    CaseFamily fam{2, CaseParams{1.0, 1.0}, ModelParams{0.0, -1.0, 0.0, 0.0}, LambdaTarget::upsilon};
    try {
        const StabilityReport r = momentum_derivative(fam, A, StabilityConfig{});
        o.require(r.richardson_disagreement <= 0.05, "Richardson " + sci(r.richardson_disagreement));
        o.detail << (o.detail.tellp() > 0 ? "; " : "") << "quadrature rel " << sci(rel) << ", dQ/dupsilon "
                 << sci(r.dQ.real()) << " (" << r.verdict << ", expected " << r.expected_sign << ")";
    } catch (const std::exception& e) {
        o.require(false, e.what());
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "system fidelity", 1.0, system_fidelity},
        {2, "case verification", 5.0, case_verification},
        {3, "solver recovery", 30.0, solver_recovery},
        {4, "PDE cross-check", 10.0, pde_crosscheck},
        {5, "split-step validation", 60.0, split_step},
        {6, "Levy axioms", 30.0, levy_axioms},
        {7, "modulus invariance", INFINITY, modulus_invariance},
        {8, "stability harness", 10.0, stability_harness},
    };
    bool ok = true;
    for (const auto& c : all) {
        if (only != 0 && c.id != only) continue;
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (std::isfinite(c.budget_s))
            o.require(secs <= c.budget_s, "runtime " + sci(secs) + " s over " + sci(c.budget_s) + " s");
        std::printf("criterion %d %s: %s (%s; %.2f s)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(),
                    secs);
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
