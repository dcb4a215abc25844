#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "snls/detail/polysystem.hpp"

namespace snls::detail {

struct HomotopyOptions {
    std::uint64_t seed = 0;
    std::size_t max_paths = 4096;
    double divergence_norm = 1e8;
    unsigned max_steps = 20000;
};

/// Total-degree homotopy for an (over)determined system: the equations are
/// squared up by a random complex combination R·f, and each path of
///   (1 - t)·γ·(x_i^D - 1) + t·(R f)_i
/// is tracked from a D-th-root-of-unity start to t = 1 (RK4 predictor,
/// Newton corrector). Returns the finite endpoints, in path order; nullopt
/// when D^n exceeds max_paths.
std::optional<std::vector<Eigen::VectorXcd>> homotopy_endpoints(const PolySystem& system,
                                                                const HomotopyOptions& options);

}  // namespace snls::detail
