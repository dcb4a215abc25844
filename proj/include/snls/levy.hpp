#pragma once

// Jump-diffusion Lévy paths: L(t) = drift·t + W(t) + Σ_{τ_j ≤ t} J_j.

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace snls {

struct ConstantJumps {
    double size = 1.0;
};

struct NormalJumps {
    double mean = 0.0;
    double sd = 1.0;
};

using JumpLaw = std::variant<ConstantJumps, NormalJumps>;

struct LevySpec {
    double drift = 0.0;
    double diffusion = 0.0;  // Brownian scale; variance diffusion²·t
    double jump_rate = 0.0;  // Poisson intensity per unit time
    JumpLaw jump_law = ConstantJumps{};
    double horizon = 1.0;

    /// Throws std::invalid_argument on non-finite fields, horizon <= 0,
    /// negative diffusion or rate, or a negative jump sd.
    void validate() const;
};

class LevyPath {
public:
    LevyPath(std::vector<double> grid_times, std::vector<double> brownian_values, std::vector<double> jump_times,
             std::vector<double> jump_sizes, double drift, std::uint64_t seed);

    /// L(t) = c·t on [0, horizon]. The smooth surrogate used where L_t must exist.
    static LevyPath drift_only(double drift, double horizon);

    /// Right-continuous value at t in [0, horizon]; throws std::out_of_range outside.
    double evaluate(double t) const;
    /// lim_{s↑t} L(s); equals evaluate(0) at t = 0.
    double left_limit(double t) const;

    double horizon() const { return grid_times_.back(); }
    double drift() const { return drift_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& grid_times() const { return grid_times_; }
    const std::vector<double>& brownian_values() const { return brownian_; }
    const std::vector<double>& jump_times() const { return jump_times_; }
    const std::vector<double>& jump_sizes() const { return jump_sizes_; }

private:
    double checked_time(double t) const;
    double brownian_at(double t) const;

    std::vector<double> grid_times_;
    std::vector<double> brownian_;
    std::vector<double> jump_times_;
    std::vector<double> jump_sizes_;
    std::vector<double> jump_prefix_;  // jump_prefix_[j] = sum of the first j sizes
    double drift_ = 0.0;
    std::uint64_t seed_ = 0;
};

/// Grid 0, h, 2h, ... with a final (possibly shorter) cell ending at the
/// horizon. Brownian and jump parts use independent sub-streams of `seed`.
LevyPath sample_path(const LevySpec& spec, double grid_step, std::uint64_t seed);

struct WindowMoments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
};

struct IncrementMoments {
    std::vector<WindowMoments> windows;
    /// Pairwise sample correlation of the window increments; nullopt where
    /// either window has zero sample variance.
    std::vector<std::vector<std::optional<double>>> correlation;
    std::size_t n_paths = 0;
};

/// Statistics of L(b) - L(a) over `n_paths` independent paths for each
/// window [a, b]. Windows must be disjoint (shared endpoints allowed) and
/// n_paths >= 100.
IncrementMoments increment_moments(const LevySpec& spec, const std::vector<std::pair<double, double>>& windows,
                                   std::size_t n_paths, std::uint64_t seed, double grid_step = 0.01);

}  // namespace snls
