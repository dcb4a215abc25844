#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "snls/gkm.hpp"

namespace snls {

struct SolveOptions {
    std::complex<double> H{1.0};
    unsigned starts = 200;        // random Newton starts per stage
    std::uint64_t rng_seed = 0;
    double start_radius = 3.0;    // starts drawn uniformly from this disc
    double residual_tol = 1e-10;  // max |equation| for an accepted root
    double dedup_tol = 1e-6;      // Euclidean distance after gauge B0 = 1
    double trivial_tol = 1e-8;    // max |A_i| below this is u ≡ 0
    unsigned max_iterations = 200;
    unsigned max_halvings = 30;
    bool use_homotopy = true;
    std::size_t max_homotopy_paths = 4096;
};

struct SolveDiagnostics {
    unsigned random_starts = 0;
    unsigned homotopy_paths = 0;
    unsigned converged = 0;
    unsigned trivial_filtered = 0;
    unsigned regular_roots = 0;
    unsigned singular_roots = 0;  // on positive-dimensional components
    unsigned anchored_roots = 0;
    std::string message;
};

struct SolveResult {
    std::vector<CoefficientSet> roots;
    SolveDiagnostics diagnostics;
};

/// Numerical roots of the gauge-fixed (B0 = 1) system at numeric H.
///
/// Every start (random points in a disc, plus total-degree homotopy
/// endpoints when the path count is affordable) is polished by damped
/// Gauss-Newton. Roots with a full-rank Jacobian are reported directly.
/// Roots on positive-dimensional solution components are re-solved with
/// the denominator, and if still free the wave number, pinned to values
/// found at regular roots, so each component is reported at the points
/// where it meets the regular ones. The trivial root u ≡ 0 is dropped.
/// Output is deduplicated and sorted by (Re k, Im k, Re A0, Im A0, ...).
///
/// Throws DegenerateModelError when H = 0.
SolveResult solve_system(const std::vector<CoeffExpr>& system, AnsatzShape shape, const SolveOptions& options);

inline SolveResult solve_system(AnsatzShape shape, const SolveOptions& options) {
    return solve_system(generate_system(shape), shape, options);
}

/// Distance between two gauge-normalized (B0 = 1) coefficient sets over
/// (k, A, B); infinity if shapes differ.
double coefficient_distance(const CoefficientSet& lhs, const CoefficientSet& rhs);

}  // namespace snls
