#pragma once

// The twelve published coefficient sets for the (M=1, N=2) ansatz.
//
// Radicals use the principal branch: √H and √(2H) are std::sqrt of the
// complex H. Cases 1-7 fix B1 = -2 B0 and k. Cases 8-12 leave B1 free;
// cases 8 and 9 also leave k unspecified, so the caller must provide it.
// Cases 8-12 are "flagged": their residuals are reported, never asserted.

#include <complex>
#include <optional>
#include <span>
#include <string_view>

#include "snls/gkm.hpp"

namespace snls {

struct CaseParams {
    std::complex<double> H{1.0};
    std::complex<double> b0{1.0};
    std::optional<std::complex<double>> b1;  // cases 8-12
    std::optional<std::complex<double>> k;   // cases 8-9
};

struct CatalogEntry {
    int id;
    bool flagged;
    bool needs_b1;
    bool needs_k;
    std::string_view note;
};

inline constexpr int kCatalogSize = 12;

std::span<const CatalogEntry> case_catalog();
const CatalogEntry& catalog_entry(int id);

/// Builds case `id` (1..12) at the given parameters. Throws
/// std::out_of_range for an unknown id, DegenerateModelError for H = 0 and
/// std::domain_error for B0 = 0, 2B0 + B1 = 0 (cases 8, 9, 11, 12) or a
/// missing B1/k.
CoefficientSet make_case(int id, const CaseParams& p);

}  // namespace snls
