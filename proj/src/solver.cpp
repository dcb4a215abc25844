#include "snls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "snls/detail/homotopy.hpp"
#include "snls/detail/parallel.hpp"
#include "snls/detail/polysystem.hpp"
#include "snls/detail/rng.hpp"
#include "snls/errors.hpp"

namespace snls {

namespace detail {

namespace {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

struct SquaredSystem {
    const PolySystem& target;
    Mat mix;  // n × m
    cd gamma;
    unsigned degree;

    Vec start_value(const Vec& x) const {
        Vec s(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) s[i] = std::pow(x[i], static_cast<int>(degree)) - 1.0;
        return s;
    }

    Vec value(const Vec& x, double t) const { return (1.0 - t) * gamma * start_value(x) + t * (mix * target.evaluate(x)); }

    Mat dx(const Vec& x, double t) const {
        Mat j = t * (mix * target.jacobian(x));
        for (Eigen::Index i = 0; i < x.size(); ++i)
            j(i, i) += (1.0 - t) * gamma * static_cast<double>(degree) * std::pow(x[i], static_cast<int>(degree) - 1);
        return j;
    }

    Vec dt(const Vec& x) const { return mix * target.evaluate(x) - gamma * start_value(x); }

    Vec velocity(const Vec& x, double t) const { return dx(x, t).partialPivLu().solve(-dt(x)); }
};

std::optional<Vec> track(const SquaredSystem& h, Vec x, const HomotopyOptions& opt) {
    double t = 0.0;
    double step = 0.02;
    for (unsigned n = 0; n < opt.max_steps && t < 1.0; ++n) {
        const double ds = std::min(step, 1.0 - t);
        const Vec k1 = h.velocity(x, t);
        const Vec k2 = h.velocity(x + 0.5 * ds * k1, t + 0.5 * ds);
        const Vec k3 = h.velocity(x + 0.5 * ds * k2, t + 0.5 * ds);
        const Vec k4 = h.velocity(x + ds * k3, t + ds);
        Vec y = x + ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t1 = t + ds;
        bool ok = y.allFinite();
        if (ok) {
            ok = false;
            for (int it = 0; it < 3; ++it) {
                const Vec d = h.dx(y, t1).partialPivLu().solve(-h.value(y, t1));
                if (!d.allFinite()) break;
                y += d;
                if (d.norm() <= 1e-9 * (1.0 + y.norm())) {
                    ok = true;
                    break;
                }
            }
        }
        if (ok) {
            x = y;
            t = t1;
            step = std::min(0.1, step * 1.6);
            if (x.norm() > opt.divergence_norm) return std::nullopt;
        } else {
            step *= 0.5;
            if (step < 1e-13) break;
        }
    }
    if (t < 0.9 || !x.allFinite() || x.norm() > opt.divergence_norm) return std::nullopt;
    return x;
}

}  // namespace

std::optional<std::vector<Eigen::VectorXcd>> homotopy_endpoints(const PolySystem& system, const HomotopyOptions& options) {
    const auto n = static_cast<std::size_t>(system.num_unknowns());
    const auto m = system.num_equations();
    const unsigned degree = std::max(1U, system.max_degree());
    std::size_t paths = 1;
    for (std::size_t i = 0; i < n; ++i) {
        paths *= degree;
        if (paths > options.max_paths) return std::nullopt;
    }

    std::mt19937_64 gen(derive_seed(options.seed, 0x484F4D, 0));
    std::normal_distribution<double> normal;
    Mat mix(static_cast<Eigen::Index>(n), m);
    for (Eigen::Index r = 0; r < mix.rows(); ++r)
        for (Eigen::Index c = 0; c < mix.cols(); ++c) mix(r, c) = cd{normal(gen), normal(gen)};
    std::uniform_real_distribution<double> unit(0.0, 2.0 * std::numbers::pi);
    const SquaredSystem h{system, mix, std::polar(1.0, unit(gen)), degree};

    std::vector<std::optional<Vec>> ends(paths);
    parallel_for(paths, [&](std::size_t p) {
        Vec x(static_cast<Eigen::Index>(n));
        std::size_t code = p;
        for (std::size_t i = 0; i < n; ++i) {
            x[static_cast<Eigen::Index>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(code % degree) / degree);
            code /= degree;
        }
        ends[p] = track(h, x, options);
    });

    std::vector<Vec> out;
    for (auto& e : ends)
        if (e) out.push_back(std::move(*e));
    return out;
}

}  // namespace detail

namespace {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using detail::PolySystem;

struct Polished {
    Vec x;
    double residual;
    bool converged;
};

Polished gauss_newton(const PolySystem& sys, Vec x, const SolveOptions& opt) {
    Vec f = sys.evaluate(x);
    double r = f.cwiseAbs().maxCoeff();
    for (unsigned it = 0; it < opt.max_iterations && std::isfinite(r) && r > 0.0; ++it) {
        const Vec dx = sys.jacobian(x).completeOrthogonalDecomposition().solve(-f);
        if (!dx.allFinite()) break;
        double lambda = 1.0;
        bool improved = false;
        for (unsigned h = 0; h <= opt.max_halvings; ++h, lambda *= 0.5) {
            const Vec xn = x + lambda * dx;
            const Vec fn = sys.evaluate(xn);
            const double rn = fn.cwiseAbs().maxCoeff();
            if (std::isfinite(rn) && rn < r) {
                x = xn;
                f = fn;
                r = rn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return {x, r, std::isfinite(r) && r <= opt.residual_tol};
}

bool full_rank(const PolySystem& sys, const Vec& x) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.jacobian(x));
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return false;
    return s[s.size() - 1] > 1e-8 * s[0];
}

cd disc_point(std::mt19937_64& gen, double radius) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = radius * std::sqrt(unit(gen));
    return std::polar(r, 2.0 * std::numbers::pi * unit(gen));
}

// A root in κ = k² coordinates with the full B vector (B0 = 1).
struct Root {
    Vec a;
    Vec b;
    cd kappa;
    int stage;
};

double root_distance(const Root& l, const Root& r) {
    return std::sqrt((l.a - r.a).squaredNorm() + (l.b - r.b).squaredNorm() + std::norm(l.kappa - r.kappa));
}

void push_unique(std::vector<Root>& roots, const Root& r, double tol) {
    for (const auto& q : roots)
        if (root_distance(q, r) <= tol) return;
    roots.push_back(r);
}

struct Layout {
    unsigned n_a;
    unsigned n_b;  // including B0
};

struct StageOutcome {
    std::vector<Vec> regular;
    std::vector<Vec> singular;
};

// Polishes every start on `sys`; the first n_a unknowns are A coefficients.
StageOutcome run_stage(const PolySystem& sys, unsigned n_a, std::vector<Vec> starts, const SolveOptions& opt,
                       SolveDiagnostics& diag) {
    struct Slot {
        Polished p;
        bool regular = false;
    };
    std::vector<Slot> slots(starts.size());
    detail::parallel_for(starts.size(), [&](std::size_t i) {
        slots[i].p = gauss_newton(sys, starts[i], opt);
        if (slots[i].p.converged) slots[i].regular = full_rank(sys, slots[i].p.x);
    });

    StageOutcome out;
    auto add = [&](std::vector<Vec>& dst, const Vec& x) {
        for (const auto& y : dst)
            if ((y - x).norm() <= opt.dedup_tol) return;
        dst.push_back(x);
    };
    for (const auto& s : slots) {
        if (!s.p.converged) continue;
        ++diag.converged;
        if (s.p.x.head(n_a).cwiseAbs().maxCoeff() <= opt.trivial_tol) {
            ++diag.trivial_filtered;
            continue;
        }
        add(s.regular ? out.regular : out.singular, s.p.x);
    }
    return out;
}

std::vector<Vec> random_starts(std::size_t n_unknowns, std::size_t kappa_slot, std::uint64_t stream, const SolveOptions& opt) {
    std::vector<Vec> starts(opt.starts);
    for (unsigned i = 0; i < opt.starts; ++i) {
        std::mt19937_64 gen(detail::derive_seed(opt.rng_seed, stream, i));
        Vec x(static_cast<Eigen::Index>(n_unknowns));
        for (std::size_t j = 0; j < n_unknowns; ++j) {
            const cd z = disc_point(gen, opt.start_radius);
            x[static_cast<Eigen::Index>(j)] = j == kappa_slot ? z * z : z;
        }
        starts[i] = std::move(x);
    }
    return starts;
}

void append_homotopy(std::vector<Vec>& starts, const PolySystem& sys, std::uint64_t stream, const SolveOptions& opt,
                     SolveDiagnostics& diag) {
    if (!opt.use_homotopy) return;
    detail::HomotopyOptions h;
    h.seed = detail::derive_seed(opt.rng_seed, stream, 0);
    h.max_paths = opt.max_homotopy_paths;
    auto ends = detail::homotopy_endpoints(sys, h);
    if (!ends) return;
    std::size_t paths = 1;
    for (Eigen::Index i = 0; i < sys.num_unknowns(); ++i) paths *= std::max(1U, sys.max_degree());
    diag.homotopy_paths += static_cast<unsigned>(paths);
    starts.insert(starts.end(), ends->begin(), ends->end());
}

std::vector<SymbolId> a_symbols(const Layout& l) {
    std::vector<SymbolId> s;
    for (unsigned i = 0; i < l.n_a; ++i) s.push_back(SymbolId::a(i));
    return s;
}

cd principal_sqrt_or_zero(cd z) { return z == cd{0.0} ? cd{0.0} : std::sqrt(z); }

}  // namespace

double coefficient_distance(const CoefficientSet& lhs, const CoefficientSet& rhs) {
    if (lhs.a.size() != rhs.a.size() || lhs.b.size() != rhs.b.size()) return std::numeric_limits<double>::infinity();
    const CoefficientSet l = lhs.gauge_normalized(0);
    const CoefficientSet r = rhs.gauge_normalized(0);
    double s = std::norm(l.k - r.k);
    for (std::size_t i = 0; i < l.a.size(); ++i) s += std::norm(l.a[i] - r.a[i]);
    for (std::size_t j = 0; j < l.b.size(); ++j) s += std::norm(l.b[j] - r.b[j]);
    return std::sqrt(s);
}

SolveResult solve_system(const std::vector<CoeffExpr>& system, AnsatzShape shape, const SolveOptions& options) {
    if (options.H == cd{0.0}) throw DegenerateModelError("H = 0: the reduced ODE loses its linear term and every case collapses");
    if (options.starts == 0 && !options.use_homotopy) throw std::invalid_argument("solve_system: need at least one start");

    const Layout lay{shape.n + 1, shape.m + 1};
    std::vector<CoeffExpr> halved;
    halved.reserve(system.size());
    for (const auto& eq : system) halved.push_back(detail::halve_wave_number_exponents(eq));

    SolveResult result;
    SolveDiagnostics& diag = result.diagnostics;
    std::vector<Root> roots;

    // Stage 1: all of A, B1..BM and κ free.
    std::vector<SymbolId> unknowns = a_symbols(lay);
    for (unsigned j = 1; j < lay.n_b; ++j) unknowns.push_back(SymbolId::b(j));
    unknowns.push_back(SymbolId::wave_number());
    const PolySystem full(halved, unknowns, {{SymbolId::b(0), 1.0}, {SymbolId::h(), options.H}});
    const std::size_t kappa_slot = unknowns.size() - 1;

    auto starts = random_starts(unknowns.size(), kappa_slot, 1, options);
    diag.random_starts += options.starts;
    append_homotopy(starts, full, 2, options, diag);
    const StageOutcome s1 = run_stage(full, lay.n_a, std::move(starts), options, diag);
    for (const auto& x : s1.regular) {
        Root r{x.head(lay.n_a), Vec::Ones(lay.n_b), x[static_cast<Eigen::Index>(kappa_slot)], 1};
        r.b.tail(lay.n_b - 1) = x.segment(lay.n_a, lay.n_b - 1);
        push_unique(roots, r, options.dedup_tol);
    }
    diag.singular_roots += static_cast<unsigned>(s1.singular.size());

    // Stage 2: B pinned to each denominator seen at a regular root.
    std::vector<Vec> anchors_b;
    for (const auto& r : roots) {
        if (std::none_of(anchors_b.begin(), anchors_b.end(), [&](const Vec& b) { return (b - r.b).norm() <= options.dedup_tol; }))
            anchors_b.push_back(r.b);
    }
    std::vector<SymbolId> pinned_unknowns = a_symbols(lay);
    pinned_unknowns.push_back(SymbolId::wave_number());
    struct SingularHit {
        Vec a;
        Vec b;
    };
    std::vector<SingularHit> singular_hits;
    for (std::size_t ai = 0; ai < anchors_b.size(); ++ai) {
        std::map<SymbolId, cd> fixed{{SymbolId::h(), options.H}};
        for (unsigned j = 0; j < lay.n_b; ++j) fixed[SymbolId::b(j)] = anchors_b[ai][j];
        const PolySystem pinned(halved, pinned_unknowns, fixed);
        auto st = random_starts(pinned_unknowns.size(), lay.n_a, 100 + 2 * ai, options);
        diag.random_starts += options.starts;
        append_homotopy(st, pinned, 101 + 2 * ai, options, diag);
        const StageOutcome s2 = run_stage(pinned, lay.n_a, std::move(st), options, diag);
        for (const auto& x : s2.regular) push_unique(roots, Root{x.head(lay.n_a), anchors_b[ai], x[lay.n_a], 2}, options.dedup_tol);
        for (const auto& x : s2.singular) singular_hits.push_back({x.head(lay.n_a), anchors_b[ai]});
        diag.singular_roots += static_cast<unsigned>(s2.singular.size());
    }

    // Stage 3: components where k stays free after pinning B; pin κ too.
    std::vector<cd> anchors_kappa;
    for (const auto& r : roots) {
        if (std::none_of(anchors_kappa.begin(), anchors_kappa.end(), [&](cd k) { return std::abs(k - r.kappa) <= options.dedup_tol; }))
            anchors_kappa.push_back(r.kappa);
    }
    for (const auto& hit : singular_hits) {
        for (const cd kappa : anchors_kappa) {
            std::map<SymbolId, cd> fixed{{SymbolId::h(), options.H}, {SymbolId::wave_number(), kappa}};
            for (unsigned j = 0; j < lay.n_b; ++j) fixed[SymbolId::b(j)] = hit.b[j];
            const PolySystem sys(halved, a_symbols(lay), fixed);
            const Polished p = gauss_newton(sys, hit.a, options);
            if (!p.converged || p.x.cwiseAbs().maxCoeff() <= options.trivial_tol || !full_rank(sys, p.x)) continue;
            push_unique(roots, Root{p.x, hit.b, kappa, 3}, options.dedup_tol);
        }
    }

    // The system is odd in A: close the set under A -> -A.
    const std::size_t before_mirror = roots.size();
    for (std::size_t i = 0; i < before_mirror; ++i) {
        Root m = roots[i];
        m.a = -m.a;
        push_unique(roots, m, options.dedup_tol);
    }

    static const char* const kTags[] = {"", "isolated", "anchored: B pinned", "anchored: B and k pinned"};
    std::vector<CoefficientSet> sets;
    for (const auto& r : roots) {
        const cd k = principal_sqrt_or_zero(r.kappa);
        for (const cd sign : {cd{1.0}, cd{-1.0}}) {
            CoefficientSet cs;
            cs.k = sign * k;
            cs.a.assign(r.a.data(), r.a.data() + r.a.size());
            cs.b.assign(r.b.data(), r.b.data() + r.b.size());
            cs.gauge = 0U;
            cs.family_tag = kTags[r.stage];
            cs = cs.with_residual(options.H);
            if (cs.residual > options.residual_tol) continue;
            if (std::none_of(sets.begin(), sets.end(),
                             [&](const CoefficientSet& q) { return coefficient_distance(q, cs) <= options.dedup_tol; }))
                sets.push_back(std::move(cs));
            if (k == cd{0.0}) break;
        }
    }

    auto key = [](const CoefficientSet& cs) {
        auto q = [](double v) { return std::round(v * 1e8); };
        std::vector<double> out{q(cs.k.real()), q(cs.k.imag())};
        for (auto z : cs.a) {
            out.push_back(q(z.real()));
            out.push_back(q(z.imag()));
        }
        for (auto z : cs.b) {
            out.push_back(q(z.real()));
            out.push_back(q(z.imag()));
        }
        return out;
    };
    std::sort(sets.begin(), sets.end(), [&](const auto& l, const auto& r) { return key(l) < key(r); });

    for (const auto& cs : sets) {
        if (cs.family_tag == kTags[1]) ++diag.regular_roots;
        else ++diag.anchored_roots;
    }
    std::ostringstream msg;
    msg << sets.size() << " root(s): " << diag.regular_roots << " isolated, " << diag.anchored_roots << " anchored; "
        << diag.converged << " converged start(s), " << diag.trivial_filtered << " trivial";
    if (sets.empty()) msg << "; no convergent nontrivial start";
    diag.message = msg.str();
    result.roots = std::move(sets);
    return result;
}

}  // namespace snls
