#pragma once

#include <stdexcept>
#include <string>

namespace snls {

/// H = 0 collapses every nontrivial branch of -k²u'' + 2u³ + Hu = 0.
class DegenerateModelError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Evaluation requested at (or within threshold of) a singularity of u(ξ).
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quadrature could not be trusted (too much of the interval excised).
class UnreliableQuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite-difference estimates at h and h/2 disagree.
class StepSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Split-step integration grew beyond the blow-up guard.
class BlowupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file (coefficient records, path CSV, golden files).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace snls
