// snls: solve / verify / sample / field / stability / xcheck

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snls/catalog.hpp"
#include "snls/errors.hpp"
#include "snls/field.hpp"
#include "snls/gkm.hpp"
#include "snls/io.hpp"
#include "snls/levy.hpp"
#include "snls/solver.hpp"
#include "snls/ssfm.hpp"
#include "snls/stability.hpp"
#include "snls/verify.hpp"

namespace {

using cd = std::complex<double>;
using snls::io::json;

enum Exit : int { kOk = 0, kAssert = 1, kFlagged = 2, kDegenerate = 3, kUsage = 64, kData = 65 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cd parse_complex(const std::string& text) {
    std::istringstream in(text);
    double re = 0.0;
    double im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw UsageError("expected re,im but got '" + text + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw UsageError("expected re,im but got '" + text + "'");
    }
    std::string rest;
    if (in >> rest) throw UsageError("expected re,im but got '" + text + "'");
    return {re, im};
}

std::pair<double, double> parse_range(const std::string& text) {
    const cd z = parse_complex(text);
    if (!(z.real() < z.imag())) throw UsageError("range must be lo,hi with lo < hi: '" + text + "'");
    return {z.real(), z.imag()};
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) std::cout << text;
    else snls::io::write_text_file(out_path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Flags shared by commands that build a catalog case or read a set file.
struct SourceFlags {
    int case_id = 0;
    std::string set_file;
    std::string b0 = "1,0";
    std::string b1;
    std::string k;
    std::string a_const = "1,0";

    void add(CLI::App* cmd) {
        auto* c = cmd->add_option("--case", case_id, "catalog case 1..12")->check(CLI::Range(1, 12));
        auto* s = cmd->add_option("--set", set_file, "coefficient record file (JSON)");
        c->excludes(s);
        cmd->add_option("--B0", b0, "B0 as re,im");
        cmd->add_option("--B1", b1, "B1 as re,im (cases 8-12)");
        cmd->add_option("--k", k, "wave number as re,im (cases 8-9)");
        cmd->add_option("--A-const", a_const, "Riccati constant A as re,im");
    }

    bool has_source() const { return case_id != 0 || !set_file.empty(); }

    snls::CaseParams case_params(cd H, std::vector<std::string>* notes = nullptr) const {
        snls::CaseParams p;
        p.H = H;
        p.b0 = parse_complex(b0);
        if (!b1.empty()) p.b1 = parse_complex(b1);
        if (!k.empty()) p.k = parse_complex(k);
        const auto& entry = snls::catalog_entry(case_id);
        if (entry.needs_b1 && !p.b1) throw UsageError("case " + std::to_string(case_id) + " requires --B1");
        if (entry.needs_k && !p.k) {
            p.k = 1.0;
            if (notes) notes->push_back("k not determined by the case; using k = 1");
        }
        return p;
    }

    // The coefficient set and its label; H comes from the caller (model
    // parameters) for cases, and must agree for set files.
    std::pair<snls::CoefficientSet, std::string> build(cd H, std::vector<std::string>* notes = nullptr) const {
        if (case_id != 0) return {snls::make_case(case_id, case_params(H, notes)), "case " + std::to_string(case_id)};
        const auto records = snls::io::read_coefficient_sets(set_file);
        const auto& r = records.front();
        if (records.size() > 1 && notes) notes->push_back("set file holds several records; using the first");
        return {r.set, r.set.family_tag.empty() ? snls::coefficient_digest(r.set) : r.set.family_tag};
    }
};

struct ParamFlags {
    double alpha = 0.0;
    double upsilon = -1.0;
    double rho = 0.0;
    double sigma = 0.0;

    void add(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "phase wave number")->capture_default_str();
        cmd->add_option("--upsilon", upsilon, "phase frequency")->capture_default_str();
        cmd->add_option("--rho", rho, "rho")->capture_default_str();
        cmd->add_option("--sigma", sigma, "noise intensity")->capture_default_str()->check(CLI::NonNegativeNumber);
    }

    snls::ModelParams params() const { return {alpha, upsilon, rho, sigma}; }
};

struct PathFlags {
    double drift = 0.0;
    double diffusion = 0.0;
    double rate = 0.0;
    std::string law = "constant";
    double jump_size = 1.0;
    double jump_mean = 0.0;
    double jump_sd = 1.0;
    double horizon = 1.0;
    double step = 0.01;
    std::optional<std::uint64_t> seed;
    std::string path_file;

    void add(CLI::App* cmd, double default_horizon) {
        horizon = default_horizon;
        cmd->add_option("--drift", drift, "Levy drift")->capture_default_str();
        cmd->add_option("--diffusion", diffusion, "Brownian scale")->capture_default_str();
        cmd->add_option("--rate", rate, "jump intensity")->capture_default_str();
        cmd->add_option("--jump-law", law, "constant or normal")->check(CLI::IsMember({"constant", "normal"}));
        cmd->add_option("--jump-size", jump_size, "size of constant jumps")->capture_default_str();
        cmd->add_option("--jump-mean", jump_mean, "mean of normal jumps")->capture_default_str();
        cmd->add_option("--jump-sd", jump_sd, "sd of normal jumps")->capture_default_str();
        cmd->add_option("--horizon", horizon, "path horizon")->capture_default_str();
        cmd->add_option("--step", step, "Brownian grid step")->capture_default_str();
        cmd->add_option("--rng-seed", seed, "seed for all randomness");
    }

    void add_replay(CLI::App* cmd) { cmd->add_option("--path", path_file, "replay a path CSV written by 'sample'"); }

    snls::LevySpec spec() const {
        snls::LevySpec s;
        s.drift = drift;
        s.diffusion = diffusion;
        s.jump_rate = rate;
        s.horizon = horizon;
        if (law == "normal") s.jump_law = snls::NormalJumps{jump_mean, jump_sd};
        else s.jump_law = snls::ConstantJumps{jump_size};
        return s;
    }

    bool random() const { return diffusion != 0.0 || rate != 0.0; }

    snls::LevyPath path(bool always_require_seed) const {
        if (!path_file.empty()) {
            std::ifstream in(path_file);
            if (!in) throw snls::FormatError("cannot open " + path_file);
            return snls::io::read_path_csv(in);
        }
        if (!seed && (always_require_seed || random())) throw UsageError("--rng-seed is required");
        try {
            return snls::sample_path(spec(), std::min(step, horizon), seed.value_or(0));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
};

int run_solve(const std::string& h_text, unsigned m, unsigned seeds, std::optional<std::uint64_t> rng_seed, bool homotopy,
              const std::string& out) {
    if (!rng_seed) throw UsageError("--rng-seed is required");
    const cd H = parse_complex(h_text);
    const snls::AnsatzShape shape{m, snls::compute_balance(2, 3, m)};
    snls::SolveOptions opt;
    opt.H = H;
    opt.starts = seeds;
    opt.rng_seed = *rng_seed;
    opt.use_homotopy = homotopy;
    const auto result = snls::solve_system(shape, opt);
    emit(out, dump(snls::io::to_json(result, H, opt)));
    std::cerr << result.diagnostics.message << "\n";
    return result.roots.empty() ? kFlagged : kOk;
}

int run_verify(const SourceFlags& src, const std::string& h_text, const std::string& out) {
    if (!src.has_source()) throw UsageError("one of --case or --set is required");
    const cd H = parse_complex(h_text);
    snls::VerifyOptions vo;
    vo.a_const = parse_complex(src.a_const);
    json reports = json::array();
    bool flagged = false;
    bool passed = true;
    if (src.case_id != 0) {
        std::vector<std::string> notes;
        const auto p = src.case_params(H, &notes);
        auto r = snls::verify_case(src.case_id, p, vo);
        r.flags.insert(r.flags.end(), notes.begin(), notes.end());
        flagged = r.flagged;
        passed = r.passed;
        reports.push_back(snls::io::to_json(r));
    } else {
        for (const auto& rec : snls::io::read_coefficient_sets(src.set_file)) {
            auto r = snls::verify_set(rec.set, rec.H, vo);
            if (rec.case_id) {
                r.label = "case " + std::to_string(*rec.case_id);
                if (*rec.case_id >= 1 && *rec.case_id <= snls::kCatalogSize && snls::catalog_entry(*rec.case_id).flagged) {
                    r.flagged = true;
                    r.flags.insert(r.flags.begin(), "flagged: " + std::string(snls::catalog_entry(*rec.case_id).note));
                }
            }
            flagged = flagged || r.flagged;
            passed = passed && r.passed;
            reports.push_back(snls::io::to_json(r));
        }
    }
    emit(out, dump(reports.size() == 1 ? reports[0] : reports));
    if (flagged) return kFlagged;
    return passed ? kOk : kAssert;
}

int run_sample(const PathFlags& pf, const std::string& out) {
    const snls::LevyPath path = pf.path(true);
    std::ostringstream csv;
    snls::io::write_path_csv(csv, path);
    emit(out, csv.str());
    return kOk;
}

int run_field(const SourceFlags& src, const ParamFlags& pf, const PathFlags& lf, const std::string& x_range,
              const std::string& t_range, std::size_t nx, std::size_t nt, const std::string& out) {
    if (!src.has_source()) throw UsageError("one of --case or --set is required");
    const auto params = pf.params();
    const auto [cs, label] = src.build(params.H());
    const auto tr = parse_range(t_range);
    const snls::LevyPath path = lf.path(false);
    if (tr.second > path.horizon()) throw UsageError("t range exceeds the path horizon");
    const snls::WaveFrame frame = snls::WaveFrame::from(cs, params, parse_complex(src.a_const));
    const auto grid = snls::field_grid(cs, params, frame, path, parse_range(x_range), tr, nx, nt, label);
    std::ostringstream csv;
    snls::io::write_field_csv(csv, grid);
    emit(out, csv.str());
    if (!out.empty()) snls::io::write_text_file(out + ".json", dump(snls::io::field_sidecar(grid)));
    return kOk;
}

int run_stability(const SourceFlags& src, const ParamFlags& pf, const std::string& lambda, const std::string& convention,
                  const std::string& interval, unsigned points, const std::string& kappa, double fd_step, double t,
                  const std::string& out) {
    if (src.case_id == 0) throw UsageError("--case is required");
    snls::StabilityConfig cfg;
    const auto iv = parse_range(interval);
    cfg.a = iv.first;
    cfg.b = iv.second;
    cfg.quadrature_points = points;
    cfg.kappa = parse_complex(kappa);
    cfg.fd_step = fd_step;
    try {
        cfg.lambda_target = snls::parse_lambda_target(lambda);
        cfg.integrand_convention = snls::parse_convention(convention);
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto params = pf.params();
    const snls::CaseFamily family{src.case_id, src.case_params(params.H()), params, cfg.lambda_target};
    const auto report = snls::momentum_derivative(family, parse_complex(src.a_const), cfg, t);
    emit(out, dump(snls::io::to_json(report)));
    return kOk;
}

int run_xcheck(const SourceFlags& src, const ParamFlags& pf, const PathFlags& lf, snls::SimGrid grid,
               const std::string& norm, bool convergence, const std::string& snapshot, const std::string& out) {
    if (!src.has_source()) throw UsageError("one of --case or --set is required");
    try {
        grid.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto params = pf.params();
    const auto [cs, label] = src.build(params.H());
    const snls::LevyPath path = lf.path(false);
    const cd a_const = parse_complex(src.a_const);
    const auto n = norm == "Linf" ? snls::ErrorNorm::Linf : snls::ErrorNorm::L2;
    const auto report = snls::xcheck_set(cs, params, a_const, grid, path, n, label);
    json j = snls::io::to_json(report);
    if (report.testable && (convergence || !snapshot.empty())) {
        const snls::WaveFrame frame = snls::WaveFrame::from(cs, params, a_const);
        const auto x = grid.x_values();
        std::vector<cd> initial(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) initial[i] = snls::eval_psi(cs, frame, path, x[i], 0.0);
        if (convergence) {
            const std::vector<double> dts{grid.dt, grid.dt / 2, grid.dt / 4};
            j["convergence"] = snls::io::to_json(snls::dt_convergence(initial, params, path, grid, dts, grid.dt / 16));
        }
        if (!snapshot.empty()) {
            std::ostringstream csv;
            snls::io::write_snapshot_csv(csv, grid.t_end, x, snls::evolve(initial, params, path, grid));
            snls::io::write_text_file(snapshot, csv.str());
        }
    }
    emit(out, dump(j));
    return report.testable ? kOk : kFlagged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kudryashov solutions of the stochastic NLS: solve, verify, sample, field, stability, xcheck"};
    app.require_subcommand(1);

    std::string out;
    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out, "output file (stdout if omitted)"); };

    auto* solve = app.add_subcommand("solve", "solve the coefficient system numerically");
    std::string solve_h = "1,0";
    unsigned solve_m = 1;
    unsigned solve_seeds = 200;
    std::optional<std::uint64_t> solve_seed;
    bool no_homotopy = false;
    solve->add_option("--H", solve_h, "H as re,im")->capture_default_str();
    solve->add_option("--M", solve_m, "denominator degree")->capture_default_str()->check(CLI::PositiveNumber);
    solve->add_option("--seeds", solve_seeds, "random starts per stage")->capture_default_str()->check(CLI::PositiveNumber);
    solve->add_option("--rng-seed", solve_seed, "seed");
    solve->add_flag("--no-homotopy", no_homotopy, "random starts only");
    add_out(solve);

    auto* verify = app.add_subcommand("verify", "residual checks for a case or coefficient file");
    SourceFlags verify_src;
    std::string verify_h = "1,0";
    verify_src.add(verify);
    verify->add_option("--H", verify_h, "H as re,im")->capture_default_str();
    add_out(verify);

    auto* sample = app.add_subcommand("sample", "sample a Levy path to CSV");
    PathFlags sample_path;
    sample_path.add(sample, 10.0);
    add_out(sample);

    auto* field = app.add_subcommand("field", "evaluate psi(x,t) on a grid");
    SourceFlags field_src;
    ParamFlags field_params;
    PathFlags field_path;
    std::string x_range = "-5,5";
    std::string t_range = "0,1";
    std::size_t nx = 101;
    std::size_t nt = 11;
    field_src.add(field);
    field_params.add(field);
    field_path.add(field, 1.0);
    field_path.add_replay(field);
    field->add_option("--x-range", x_range, "lo,hi")->capture_default_str();
    field->add_option("--t-range", t_range, "lo,hi")->capture_default_str();
    field->add_option("--nx", nx, "x points")->capture_default_str()->check(CLI::Range(2, 1 << 20));
    field->add_option("--nt", nt, "t points")->capture_default_str()->check(CLI::Range(2, 1 << 20));
    add_out(field);

    auto* stability = app.add_subcommand("stability", "momentum and its parameter derivative");
    SourceFlags stab_src;
    ParamFlags stab_params;
    std::string lambda = "upsilon";
    std::string convention = "modulus";
    std::string interval = "-10,10";
    unsigned points = 1024;
    std::string kappa = "1,0";
    double fd_step = 1e-4;
    double stab_t = 0.0;
    stab_src.add(stability);
    stab_params.add(stability);
    stability->add_option("--lambda", lambda, "alpha, upsilon, rho, sigma or H")->capture_default_str();
    stability->add_option("--convention", convention, "modulus or literal")->capture_default_str();
    stability->add_option("--interval", interval, "a,b")->capture_default_str();
    stability->add_option("--points", points, "quadrature points")->capture_default_str();
    stability->add_option("--kappa", kappa, "amplitude scale as re,im")->capture_default_str();
    stability->add_option("--fd-step", fd_step, "finite-difference step")->capture_default_str();
    stability->add_option("--t", stab_t, "time slice")->capture_default_str();
    add_out(stability);

    auto* xcheck = app.add_subcommand("xcheck", "split-step integration against the exact solution");
    SourceFlags x_src;
    ParamFlags x_params;
    PathFlags x_path;
    snls::SimGrid grid;
    std::string norm = "L2";
    bool convergence = false;
    std::string snapshot;
    x_src.add(xcheck);
    x_params.add(xcheck);
    x_path.add(xcheck, 1.0);
    x_path.add_replay(xcheck);
    xcheck->add_option("--length", grid.domain_length, "periodic domain length")->capture_default_str();
    xcheck->add_option("--x-min", grid.x_min, "left end of the domain")->capture_default_str();
    xcheck->add_option("--modes", grid.n_modes, "Fourier modes (power of two)")->capture_default_str();
    xcheck->add_option("--dt", grid.dt, "time step")->capture_default_str();
    xcheck->add_option("--t-end", grid.t_end, "final time")->capture_default_str();
    xcheck->add_option("--norm", norm, "L2 or Linf")->check(CLI::IsMember({"L2", "Linf"}));
    xcheck->add_flag("--convergence", convergence, "add errors at dt, dt/2, dt/4 against dt/16");
    xcheck->add_option("--snapshot", snapshot, "write the final split-step state as CSV");
    add_out(xcheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*solve) return run_solve(solve_h, solve_m, solve_seeds, solve_seed, !no_homotopy, out);
        if (*verify) return run_verify(verify_src, verify_h, out);
        if (*sample) return run_sample(sample_path, out);
        if (*field) return run_field(field_src, field_params, field_path, x_range, t_range, nx, nt, out);
        if (*stability)
            return run_stability(stab_src, stab_params, lambda, convention, interval, points, kappa, fd_step, stab_t, out);
        if (*xcheck) return run_xcheck(x_src, x_params, x_path, grid, norm, convergence, snapshot, out);
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const snls::DegenerateModelError& e) {
        std::cerr << "degenerate model: " << e.what() << "\n";
        return kDegenerate;
    } catch (const snls::FormatError& e) {
        std::cerr << "data format: " << e.what() << "\n";
        return kData;
    } catch (const snls::PoleError& e) {
        std::cerr << "pole: " << e.what() << "\n";
        return kAssert;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAssert;
    }
    return kUsage;
}
