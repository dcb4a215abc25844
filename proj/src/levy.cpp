#include "snls/levy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "snls/detail/parallel.hpp"
#include "snls/detail/rng.hpp"

namespace snls {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void LevySpec::validate() const {
    require(std::isfinite(drift) && std::isfinite(diffusion) && std::isfinite(jump_rate) && std::isfinite(horizon),
            "LevySpec: non-finite field");
    require(horizon > 0.0, "LevySpec: horizon must be positive");
    require(diffusion >= 0.0, "LevySpec: diffusion must be non-negative");
    require(jump_rate >= 0.0, "LevySpec: jump_rate must be non-negative");
    std::visit(
        [](const auto& law) {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, ConstantJumps>) {
                require(std::isfinite(law.size), "LevySpec: non-finite jump size");
            } else {
                require(std::isfinite(law.mean) && std::isfinite(law.sd), "LevySpec: non-finite jump law");
                require(law.sd >= 0.0, "LevySpec: jump sd must be non-negative");
            }
        },
        jump_law);
}

LevyPath::LevyPath(std::vector<double> grid_times, std::vector<double> brownian_values, std::vector<double> jump_times,
                   std::vector<double> jump_sizes, double drift, std::uint64_t seed)
    : grid_times_(std::move(grid_times)),
      brownian_(std::move(brownian_values)),
      jump_times_(std::move(jump_times)),
      jump_sizes_(std::move(jump_sizes)),
      drift_(drift),
      seed_(seed) {
    require(grid_times_.size() >= 2, "LevyPath: need at least two grid times");
    require(grid_times_.size() == brownian_.size(), "LevyPath: grid and Brownian values differ in length");
    require(jump_times_.size() == jump_sizes_.size(), "LevyPath: jump times and sizes differ in length");
    require(grid_times_.front() == 0.0 && brownian_.front() == 0.0, "LevyPath: must start at t = 0 with W(0) = 0");
    require(std::isfinite(drift_), "LevyPath: non-finite drift");
    for (std::size_t i = 1; i < grid_times_.size(); ++i)
        require(grid_times_[i] > grid_times_[i - 1], "LevyPath: grid times must increase");
    for (std::size_t j = 0; j < jump_times_.size(); ++j) {
        require(jump_times_[j] > 0.0 && jump_times_[j] <= horizon(), "LevyPath: jump time outside (0, horizon]");
        require(j == 0 || jump_times_[j] > jump_times_[j - 1], "LevyPath: jump times must increase strictly");
    }
    for (double v : brownian_) require(std::isfinite(v), "LevyPath: non-finite Brownian value");
    jump_prefix_.resize(jump_sizes_.size() + 1, 0.0);
    for (std::size_t j = 0; j < jump_sizes_.size(); ++j) {
        require(std::isfinite(jump_sizes_[j]), "LevyPath: non-finite jump size");
        jump_prefix_[j + 1] = jump_prefix_[j] + jump_sizes_[j];
    }
}

LevyPath LevyPath::drift_only(double drift, double horizon) {
    require(std::isfinite(horizon) && horizon > 0.0, "LevyPath: horizon must be positive");
    return LevyPath({0.0, horizon}, {0.0, 0.0}, {}, {}, drift, 0);
}

double LevyPath::checked_time(double t) const {
    const double end = horizon();
    const double slack = 1e-12 * std::max(1.0, end);
    if (!(t >= 0.0 && t <= end + slack))
        throw std::out_of_range("LevyPath: t = " + std::to_string(t) + " outside [0, " + std::to_string(end) + "]");
    return std::min(t, end);
}

double LevyPath::brownian_at(double t) const {
    auto hi = std::upper_bound(grid_times_.begin(), grid_times_.end(), t);
    if (hi == grid_times_.end()) return brownian_.back();
    const auto i = static_cast<std::size_t>(hi - grid_times_.begin());
    const double t0 = grid_times_[i - 1];
    const double t1 = grid_times_[i];
    const double w = (t - t0) / (t1 - t0);
    return brownian_[i - 1] + w * (brownian_[i] - brownian_[i - 1]);
}

double LevyPath::evaluate(double t) const {
    t = checked_time(t);
    if (t == 0.0) return 0.0;
    const auto n = static_cast<std::size_t>(std::upper_bound(jump_times_.begin(), jump_times_.end(), t) - jump_times_.begin());
    return drift_ * t + brownian_at(t) + jump_prefix_[n];
}

double LevyPath::left_limit(double t) const {
    t = checked_time(t);
    if (t == 0.0) return 0.0;
    const auto n = static_cast<std::size_t>(std::lower_bound(jump_times_.begin(), jump_times_.end(), t) - jump_times_.begin());
    return drift_ * t + brownian_at(t) + jump_prefix_[n];
}

LevyPath sample_path(const LevySpec& spec, double grid_step, std::uint64_t seed) {
    spec.validate();
    require(std::isfinite(grid_step) && grid_step > 0.0, "sample_path: grid_step must be positive");
    require(grid_step <= spec.horizon, "sample_path: grid_step exceeds horizon");

    const auto cells = static_cast<std::size_t>(std::ceil(spec.horizon / grid_step - 1e-9));
    std::vector<double> times(cells + 1);
    for (std::size_t i = 0; i < cells; ++i) times[i] = static_cast<double>(i) * grid_step;
    times[cells] = spec.horizon;

    std::vector<double> w(cells + 1, 0.0);
    if (spec.diffusion > 0.0) {
        std::mt19937_64 gen(detail::derive_seed(seed, 1, 0));
        std::normal_distribution<double> normal;
        for (std::size_t i = 1; i <= cells; ++i)
            w[i] = w[i - 1] + spec.diffusion * std::sqrt(times[i] - times[i - 1]) * normal(gen);
    }

    std::vector<double> jump_times;
    std::vector<double> jump_sizes;
    if (spec.jump_rate > 0.0) {
        std::mt19937_64 gen(detail::derive_seed(seed, 2, 0));
        std::exponential_distribution<double> wait(spec.jump_rate);
        std::normal_distribution<double> normal;
        for (double t = wait(gen); t <= spec.horizon; t += wait(gen)) {
            if (!jump_times.empty() && t <= jump_times.back()) continue;
            jump_times.push_back(t);
            jump_sizes.push_back(std::visit(
                [&](const auto& law) {
                    using T = std::decay_t<decltype(law)>;
                    if constexpr (std::is_same_v<T, ConstantJumps>) return law.size;
                    else return law.mean + law.sd * normal(gen);
                },
                spec.jump_law));
        }
    }
    return LevyPath(std::move(times), std::move(w), std::move(jump_times), std::move(jump_sizes), spec.drift, seed);
}

IncrementMoments increment_moments(const LevySpec& spec, const std::vector<std::pair<double, double>>& windows,
                                   std::size_t n_paths, std::uint64_t seed, double grid_step) {
    spec.validate();
    require(n_paths >= 100, "increment_moments: need n_paths >= 100");
    require(!windows.empty(), "increment_moments: no windows");
    for (const auto& [a, b] : windows)
        require(a >= 0.0 && a < b && b <= spec.horizon, "increment_moments: window outside [0, horizon] or empty");
    auto sorted = windows;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        require(sorted[i].first >= sorted[i - 1].second, "increment_moments: windows overlap");

    const std::size_t nw = windows.size();
    std::vector<std::vector<double>> inc(n_paths, std::vector<double>(nw));
    detail::parallel_for(n_paths, [&](std::size_t p) {
        const LevyPath path = sample_path(spec, grid_step, detail::derive_seed(seed, 0x4C4556, p));
        for (std::size_t w = 0; w < nw; ++w) inc[p][w] = path.evaluate(windows[w].second) - path.evaluate(windows[w].first);
    });

    IncrementMoments out;
    out.n_paths = n_paths;
    const double n = static_cast<double>(n_paths);
    std::vector<double> mean(nw, 0.0);
    std::vector<bool> constant(nw, true);
    for (const auto& row : inc)
        for (std::size_t w = 0; w < nw; ++w) {
            mean[w] += row[w] / n;
            constant[w] = constant[w] && row[w] == inc.front()[w];
        }
    for (std::size_t w = 0; w < nw; ++w)
        if (constant[w]) mean[w] = inc.front()[w];
    std::vector<std::vector<double>> cov(nw, std::vector<double>(nw, 0.0));
    for (const auto& row : inc)
        for (std::size_t i = 0; i < nw; ++i)
            for (std::size_t j = 0; j < nw; ++j) cov[i][j] += (row[i] - mean[i]) * (row[j] - mean[j]) / (n - 1.0);
    for (std::size_t w = 0; w < nw; ++w) out.windows.push_back({mean[w], constant[w] ? 0.0 : cov[w][w]});
    out.correlation.assign(nw, std::vector<std::optional<double>>(nw));
    for (std::size_t i = 0; i < nw; ++i)
        for (std::size_t j = 0; j < nw; ++j)
            if (!constant[i] && !constant[j]) out.correlation[i][j] = cov[i][j] / std::sqrt(cov[i][i] * cov[j][j]);
    return out;
}

}  // namespace snls
