#include "snls/catalog.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "snls/errors.hpp"

namespace snls {

namespace {

using cd = std::complex<double>;

constexpr std::array<CatalogEntry, kCatalogSize> kEntries{{
    {1, false, false, false, "constant profile i*sqrt(H/2) written over B0 - 2*B0*Psi"},
    {2, false, false, false, "coth-type profile, pole where Psi = 1/2"},
    {3, false, false, false, "negative-sign partner of case 1"},
    {4, false, false, false, "k = -i*sqrt(H)/sqrt(2), quadratic numerator"},
    {5, false, false, false, "k = +i*sqrt(H)/sqrt(2), quadratic numerator"},
    {6, false, false, false, "negative-sign partner of case 2 with k -> -k"},
    {7, false, false, false, "case 1 with k -> -k"},
    {8, true, true, true, "k unspecified by the source; residual vanishes only for B1 = B0"},
    {9, true, true, true, "k unspecified by the source; printed field repeats case 8 with a sign"},
    {10, true, true, false, "printed field is identical to case 9 despite different coefficients"},
    {11, true, true, false, "B1 free"},
    {12, true, true, false, "B1 free"},
}};

}  // namespace

std::span<const CatalogEntry> case_catalog() { return kEntries; }

const CatalogEntry& catalog_entry(int id) {
    if (id < 1 || id > kCatalogSize) throw std::out_of_range("case id must be in 1..12, got " + std::to_string(id));
    return kEntries[static_cast<std::size_t>(id - 1)];
}

CoefficientSet make_case(int id, const CaseParams& p) {
    const CatalogEntry& entry = catalog_entry(id);
    if (p.H == cd{0.0}) throw DegenerateModelError("H = 0: every catalog case collapses");
    if (p.b0 == cd{0.0}) throw std::domain_error("B0 must be nonzero");
    if (entry.needs_b1 && !p.b1) throw std::domain_error("case " + std::to_string(id) + " requires B1");
    if (entry.needs_k && !p.k)
        throw std::domain_error("case " + std::to_string(id) + " does not determine k; supply it explicitly");

    const cd i{0.0, 1.0};
    const cd sqrt2{std::sqrt(2.0), 0.0};
    const cd rH = std::sqrt(p.H);
    const cd r2H = std::sqrt(2.0 * p.H);
    const cd b0 = p.b0;
    const cd b1 = p.b1.value_or(-2.0 * b0);

    auto checked_sum = [&] {
        const cd s = 2.0 * b0 + b1;
        if (s == cd{0.0}) throw std::domain_error("case " + std::to_string(id) + " requires 2*B0 + B1 != 0");
        return s;
    };

    CoefficientSet cs;
    cs.family_tag = "case " + std::to_string(id);
    cs.a.assign(3, cd{0.0});
    cs.b = {b0, b1};

    switch (id) {
        case 1:
            cs.k = i * r2H;
            cs.a = {i * rH * b0 / sqrt2, -i * r2H * b0, 0.0};
            cs.b = {b0, -2.0 * b0};
            break;
        case 2:
            cs.k = i * r2H;
            cs.a = {i * rH * b0 / sqrt2, 0.0, 0.0};
            cs.b = {b0, -2.0 * b0};
            break;
        case 3:
            cs.k = i * r2H;
            cs.a = {-i * rH * b0 / sqrt2, i * r2H * b0, 0.0};
            cs.b = {b0, -2.0 * b0};
            break;
        case 4:
            cs.k = -i * rH / sqrt2;
            cs.a = {-i * rH * b0 / sqrt2, i * r2H * b0, -i * r2H * b0};
            cs.b = {b0, -2.0 * b0};
            break;
        case 5:
            cs.k = i * rH / sqrt2;
            cs.a = {i * rH * b0 / sqrt2, -i * r2H * b0, i * r2H * b0};
            cs.b = {b0, -2.0 * b0};
            break;
        case 6:
            cs.k = -i * r2H;
            cs.a = {-i * rH * b0 / sqrt2, 0.0, 0.0};
            cs.b = {b0, -2.0 * b0};
            break;
        case 7:
            cs.k = -i * r2H;
            cs.a = {i * rH * b0 / sqrt2, -i * r2H * b0, 0.0};
            cs.b = {b0, -2.0 * b0};
            break;
        case 8: {
            const cd s = checked_sum();
            cs.k = *p.k;
            cs.a = {i * r2H * (2.0 * b0 * b0 + b0 * b1) / (2.0 * s), i * rH * b0 / sqrt2, 0.0};
            break;
        }
        case 9: {
            const cd s = checked_sum();
            cs.k = *p.k;
            cs.a = {-i * r2H * (2.0 * b0 * b0 + b0 * b1) / (2.0 * s), -i * rH * b0 / sqrt2, 0.0};
            break;
        }
        case 10:
            cs.k = -i * r2H;
            cs.a = {i * rH * b0 / sqrt2, i * r2H * (-b0 + b1), -i * r2H * b1};
            break;
        case 11: {
            const cd s = checked_sum();
            cs.k = -i * r2H;
            cs.a = {i * r2H * (2.0 * b0 * b0 + b0 * b1) / (2.0 * s), -i * rH * s / sqrt2, 0.0};
            break;
        }
        case 12: {
            const cd s = checked_sum();
            cs.k = i * r2H;
            cs.a = {i * r2H * (2.0 * b0 * b0 + b0 * b1) / (2.0 * s), i * rH * s / sqrt2, 0.0};
            break;
        }
        default: break;
    }
    return cs.with_residual(p.H);
}

}  // namespace snls
