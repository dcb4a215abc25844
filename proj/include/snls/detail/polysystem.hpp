#pragma once

// Numeric form of a polynomial system: the symbolic equations with some
// symbols replaced by fixed complex values, the rest treated as unknowns.

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "snls/psi_algebra.hpp"

namespace snls::detail {

class PolySystem {
public:
    struct Term {
        std::complex<double> coeff;
        std::vector<std::uint8_t> exponents;  // one per unknown
    };

    PolySystem(const std::vector<CoeffExpr>& equations, std::vector<SymbolId> unknowns,
               const std::map<SymbolId, std::complex<double>>& fixed);

    Eigen::Index num_equations() const { return static_cast<Eigen::Index>(equations_.size()); }
    Eigen::Index num_unknowns() const { return static_cast<Eigen::Index>(unknowns_.size()); }
    const std::vector<SymbolId>& unknowns() const { return unknowns_; }

    /// Largest total degree (in the unknowns) over all equations.
    unsigned max_degree() const { return max_degree_; }

    Eigen::VectorXcd evaluate(const Eigen::VectorXcd& x) const;
    Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const;

    double max_residual(const Eigen::VectorXcd& x) const { return evaluate(x).cwiseAbs().maxCoeff(); }

private:
    std::vector<std::vector<Term>> equations_;
    std::vector<SymbolId> unknowns_;
    unsigned max_degree_ = 0;
    unsigned max_exponent_ = 0;
};

/// Replaces every k^(2e) by k^e, so the symbol k stands for κ = k². Throws
/// std::invalid_argument if some k exponent is odd.
CoeffExpr halve_wave_number_exponents(const CoeffExpr& e);

}  // namespace snls::detail
